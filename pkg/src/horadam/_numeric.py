"""Precision plumbing around mpmath.

Each precision gets its own :class:`mpmath.MPContext` so nothing here touches
the global ``mpmath.mp`` state.  Contexts are never mutated after creation,
which keeps them safe to share between threads.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath

MIN_PRECISION = 16
GUARD_BITS = 16


def check_precision(precision_bits) -> int:
    if isinstance(precision_bits, bool) or not isinstance(precision_bits, int):
        raise TypeError("precision_bits must be an int")
    if precision_bits < MIN_PRECISION:
        raise ValueError(f"precision_bits must be >= {MIN_PRECISION}, got {precision_bits}")
    return precision_bits


@lru_cache(maxsize=64)
def context(precision_bits: int) -> mpmath.MPContext:
    """Working context: the requested precision plus guard bits."""
    ctx = mpmath.MPContext()
    ctx.prec = check_precision(precision_bits) + GUARD_BITS
    return ctx


def to_mpf(ctx, x):
    if isinstance(x, Fraction):
        return ctx.mpf(x.numerator) / x.denominator
    if isinstance(x, str):
        x = x.strip()
        if "/" in x:
            return to_mpf(ctx, Fraction(x))
    return ctx.mpf(x)


def rel_err(ctx, approx, exact) -> "mpmath.mpf":
    """``|approx - exact| / max(1, |exact|)`` evaluated in ``ctx``."""
    exact = to_mpf(ctx, exact) if isinstance(exact, (Fraction, int)) else exact
    return abs(approx - exact) / max(ctx.mpf(1), abs(exact))


def digits_for(precision_bits: int) -> int:
    # Enough significant digits to round-trip the working precision.
    return int((precision_bits + GUARD_BITS) * 0.30103) + 2


def format_real(x, precision_bits: int) -> str:
    """Scientific notation with a precision-derived digit count."""
    ctx = context(precision_bits)
    return ctx.nstr(x, digits_for(precision_bits), min_fixed=0, max_fixed=0, strip_zeros=False, show_zero_exponent=True)


def format_complex(z, precision_bits: int) -> str:
    im = z.imag
    sign = "-" if im < 0 else "+"
    return f"{format_real(z.real, precision_bits)}{sign}{format_real(abs(im), precision_bits)}j"


def parse_complex(ctx, text: str):
    """Inverse of :func:`format_complex`."""
    body = text.strip()
    if not body.endswith("j"):
        raise ValueError(f"not a complex literal: {text!r}")
    body = body[:-1]
    # split at the sign that follows the real part's exponent
    cut = max(body.rfind("+"), body.rfind("-"))
    while cut > 0 and body[cut - 1] in "eE":
        cut = max(body.rfind("+", 0, cut - 1), body.rfind("-", 0, cut - 1))
    if cut <= 0:
        raise ValueError(f"not a complex literal: {text!r}")
    return ctx.mpc(ctx.mpf(body[:cut]), ctx.mpf(body[cut:]))
