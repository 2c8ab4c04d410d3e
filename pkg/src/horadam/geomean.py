"""The cube-root geometric-mean sequence ``g[n+3] = (g[n+2] g[n+1] g[n]) ** (1/3)``.

Every term is a weighted geometric mean of the initial values,
``g[n] = (a**x b**y c**z) ** (1 / 3**k)``, with integer weights driven by the
``T`` sequence (``T[n+3] = T[n+2] + 3 T[n+1] + 9 T[n]``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from ._numeric import check_precision, context, to_mpf
from .errors import DomainError, NoConvergence
from .recurrence import as_fraction, t_sequence


@dataclass(frozen=True)
class ExponentTriple:
    """``g = (a**num_a * b**num_b * c**num_c) ** (1 / 3**pow3)``."""

    num_a: int
    num_b: int
    num_c: int
    pow3: int

    @property
    def denominator(self) -> int:
        return 3**self.pow3

    def weights(self) -> tuple[Fraction, Fraction, Fraction]:
        d = self.denominator
        return (Fraction(self.num_a, d), Fraction(self.num_b, d), Fraction(self.num_c, d))

    def scaled(self, pow3: int) -> tuple[int, int, int]:
        """Numerators over the common denominator ``3**pow3``."""
        if pow3 < self.pow3:
            raise ValueError("cannot scale to a smaller power of 3")
        f = 3 ** (pow3 - self.pow3)
        return (self.num_a * f, self.num_b * f, self.num_c * f)

    def __str__(self):
        return f"a^{self.num_a} b^{self.num_b} c^{self.num_c} / 3^{self.pow3}"


@dataclass(frozen=True)
class GeoInit:
    a: object
    b: object
    c: object

    def __post_init__(self):
        for name in ("a", "b", "c"):
            v = getattr(self, name)
            if isinstance(v, str):
                v = as_fraction(v)
                object.__setattr__(self, name, v)
            if not v > 0:
                raise DomainError(f"initial value {name}={v} must be strictly positive")

    def as_tuple(self):
        return (self.a, self.b, self.c)


def _as_init(init) -> GeoInit:
    return init if isinstance(init, GeoInit) else GeoInit(*init)


def geo_exponents(n: int) -> ExponentTriple:
    if n < 0:
        raise IndexError("n must be >= 0")
    if n < 2:
        return ExponentTriple(int(n == 0), int(n == 1), 0, 0)
    k = n - 2
    t1 = t_sequence(k + 1)
    return ExponentTriple(t1, t1 + 3 * t_sequence(k), t_sequence(k + 2), k)


def _power_product(ctx, init: GeoInit, weights):
    # Merge equal bases first so that equal inits give an exact 0 exponent.
    merged: dict = {}
    for base, w in zip(init.as_tuple(), weights):
        key = base if hasattr(base, "_mpf_") else Fraction(base)
        merged[key] = merged.get(key, Fraction(0)) + w
    exact_part = ctx.mpf(1)
    log_sum = ctx.mpf(0)
    for base, w in merged.items():
        if w.denominator == 1:
            exact_part *= to_mpf(ctx, base) ** w.numerator
        else:
            log_sum += to_mpf(ctx, w) * ctx.ln(to_mpf(ctx, base))
    return exact_part * ctx.exp(log_sum) if log_sum else exact_part


def geo_term_symbolic(init, n: int, precision_bits: int = 128):
    """``g[n]`` evaluated from its exact exponent triple."""
    init = _as_init(init)
    ctx = context(check_precision(precision_bits))
    triple = geo_exponents(n)
    if n < 3:
        return to_mpf(ctx, init.as_tuple()[n])
    return _power_product(ctx, init, triple.weights())


def geo_term_iterative(init, n: int, precision_bits: int = 128):
    """``g[n]`` by iterating the cube-root recurrence numerically."""
    init = _as_init(init)
    if n < 0:
        raise IndexError("n must be >= 0")
    ctx = context(check_precision(precision_bits))
    x, y, z = (to_mpf(ctx, v) for v in init.as_tuple())
    if n < 3:
        return (x, y, z)[n]
    for _ in range(n - 2):
        x, y, z = y, z, ctx.cbrt(x * y * z)
    return z


def ratio_weights(n: int) -> tuple[Fraction, Fraction, Fraction]:
    """Exact exponents of ``g[n+1] / g[n]`` on ``(a, b, c)``."""
    hi = geo_exponents(n + 1).weights()
    lo = geo_exponents(n).weights()
    return tuple(h - l for h, l in zip(hi, lo))


def growth_ratio(init, n: int, precision_bits: int = 128):
    """``g[n+1] / g[n]`` computed from the exact exponent difference.

    Exactly 1 whenever ``a == b == c``, since the weights sum to 0.
    """
    init = _as_init(init)
    ctx = context(check_precision(precision_bits))
    return _power_product(ctx, init, ratio_weights(n))


@dataclass
class ConvergenceReport:
    crossing: int
    tol: object
    trace: list = field(default_factory=list)  # (n, ratio, |ratio - 1|)

    def rows(self):
        return list(self.trace)


def growth_convergence_report(init, n_max: int, tol, precision_bits: int = 128) -> ConvergenceReport:
    """Scan ``n = 0..n_max`` for the first ``|g[n+1]/g[n] - 1| < tol``.

    The whole trace up to ``n_max`` is kept for reporting.  Precision is raised
    to at least ``2 * log2(1/tol)`` bits so that the deviation is resolved.
    """
    init = _as_init(init)
    tol_f = as_fraction(tol) if isinstance(tol, (str, int, Fraction)) else tol
    if not tol_f > 0:
        raise ValueError("tol must be positive")
    need = math.ceil(2 * math.log2(1 / float(tol_f))) if tol_f < 1 else 0
    bits = max(check_precision(precision_bits), need)
    ctx = context(bits)
    tol_m = to_mpf(ctx, tol_f)
    crossing = None
    trace = []
    for n in range(n_max + 1):
        ratio = growth_ratio(init, n, bits)
        dev = abs(ratio - 1)
        trace.append((n, ratio, dev))
        if crossing is None and dev < tol_m:
            crossing = n
    if crossing is None:
        raise NoConvergence(n_max, tol)
    return ConvergenceReport(crossing, tol, trace)
