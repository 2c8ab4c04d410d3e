"""Characteristic roots and the Binet formula.

The cubic ``x^3 - r x^2 - s x - t`` is solved with Cardano's formulas in the
one-real/two-complex regime (positive discriminant only).  Binet evaluation
assembles the full complex sum and insists the imaginary part is roundoff.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._numeric import check_precision, context, rel_err, to_mpf
from .errors import DomainError, PrecisionError
from .recurrence import RecurrenceParams, SequenceSpec, term_iterative, v_sequence


def discriminant(params: RecurrenceParams) -> Fraction:
    """Exact ``r^3 t/27 - r^2 s^2/108 + r s t/6 - s^3/27 + t^2/4``."""
    r, s, t = params.as_tuple()
    return (
        r**3 * t / 27
        - r**2 * s**2 / 108
        + r * s * t / 6
        - s**3 / 27
        + t**2 / 4
    )


def residual_tolerance(precision_bits: int, scale=1):
    ctx = context(precision_bits)
    return ctx.ldexp(ctx.mpf(1), -precision_bits + 8) * scale


@dataclass(frozen=True)
class CubicRoots:
    alpha: object  # mpf, the real root
    omega1: object  # mpc, positive imaginary part
    omega2: object  # mpc, conjugate of omega1
    precision_bits: int
    delta: Fraction

    def as_tuple(self):
        return (self.alpha, self.omega1, self.omega2)

    def vieta_residuals(self, params: RecurrenceParams):
        """Absolute deviations of the three elementary symmetric functions."""
        ctx = context(self.precision_bits)
        a, w1, w2 = self.as_tuple()
        r, s, t = (to_mpf(ctx, v) for v in params.as_tuple())
        return (
            abs(a + w1 + w2 - r),
            abs(a * w1 + a * w2 + w1 * w2 + s),
            abs(a * w1 * w2 - t),
        )


def _real_cbrt(ctx, x):
    if x < 0:
        return -ctx.cbrt(-x)
    return ctx.cbrt(x)


def solve_cubic(params: RecurrenceParams, precision_bits: int = 128) -> CubicRoots:
    """Roots ``alpha, omega1, omega2`` of ``x^3 - r x^2 - s x - t``.

    Raises DomainError unless the discriminant is strictly positive.  Each
    root is checked against the cubic before returning.
    """
    check_precision(precision_bits)
    delta = discriminant(params)
    if delta <= 0:
        raise DomainError(
            f"discriminant {delta} <= 0; only the one-real-root regime (delta > 0) is supported"
        )
    ctx = context(precision_bits)
    r, s, t = (to_mpf(ctx, v) for v in params.as_tuple())
    centre = r**3 / 27 + r * s / 6 + t / 2
    root_delta = ctx.sqrt(to_mpf(ctx, delta))
    # A*B = (s + r^2/3)/3 exactly; take the cube root of the radicand that
    # cannot cancel and recover the other factor from the product.
    product = to_mpf(ctx, (params.s + params.r**2 / 3) / 3)
    if centre >= 0:
        A = _real_cbrt(ctx, centre + root_delta)
        B = product / A
    else:
        B = _real_cbrt(ctx, centre - root_delta)
        A = product / B
    eps = ctx.mpc(ctx.mpf(-1) / 2, ctx.sqrt(3) / 2)
    eps2 = ctx.conj(eps)
    shift = r / 3
    alpha = shift + A + B
    omega1 = shift + eps * A + eps2 * B
    omega2 = shift + eps2 * A + eps * B
    if omega1.imag < 0:
        omega1, omega2 = omega2, omega1

    for x in (alpha, omega1, omega2):
        resid = abs(x**3 - r * x**2 - s * x - t)
        if resid > residual_tolerance(precision_bits, max(1, abs(x) ** 3)):
            raise PrecisionError(f"root {x} leaves residual {resid}")
    return CubicRoots(alpha, omega1, omega2, precision_bits, delta)


@dataclass(frozen=True)
class BinetCoefficients:
    P: object
    Q: object
    R: object

    @classmethod
    def for_spec(cls, spec: SequenceSpec, roots: CubicRoots) -> "BinetCoefficients":
        ctx = context(roots.precision_bits)
        a, b, c = (to_mpf(ctx, v) for v in (spec.a, spec.b, spec.c))
        al, w1, w2 = roots.as_tuple()
        return cls(
            c - (w1 + w2) * b + w1 * w2 * a,
            c - (al + w2) * b + al * w2 * a,
            c - (al + w1) * b + al * w1 * a,
        )


def _binet_sum(roots: CubicRoots, coeffs: BinetCoefficients, n: int, shift: int = 0):
    al, w1, w2 = roots.as_tuple()
    k = n - shift
    return (
        coeffs.P * al**k / ((al - w1) * (al - w2))
        - coeffs.Q * w1**k / ((al - w1) * (w1 - w2))
        + coeffs.R * w2**k / ((al - w2) * (w1 - w2))
    )


def _real_part_checked(ctx, z, precision_bits):
    re = ctx.re(z)
    im = ctx.im(z)
    limit = ctx.ldexp(ctx.mpf(1), -(precision_bits // 2)) * max(ctx.mpf(1), abs(re))
    if abs(im) > limit:
        raise PrecisionError(f"imaginary residual {im} exceeds {limit}")
    return re


def binet_term(spec: SequenceSpec, n: int, precision_bits: int = 128):
    """``H[n]`` from the Binet formula, as a real mpf."""
    if n < 0:
        raise IndexError("n must be >= 0")
    roots = solve_cubic(spec.params, precision_bits)
    coeffs = BinetCoefficients.for_spec(spec, roots)
    ctx = context(precision_bits)
    return _real_part_checked(ctx, _binet_sum(roots, coeffs, n), precision_bits)


def fundamental_binet_check(params: RecurrenceParams, n: int, precision_bits: int = 128):
    """Compare the generic Binet sum for ``(1, 0, 0)`` with its ``t * x**(n-1)`` form.

    For unit initial triple ``(1, 0, 0)`` the numerators collapse to
    ``P = w1 w2, Q = alpha w2, R = alpha w1`` and ``P alpha**n = t alpha**(n-1)``
    (and likewise for the other roots).  Both sides are also held against the
    exact term.
    """
    from .identities import IdentityId, IdentityReport

    if n < 1:
        raise IndexError("n must be >= 1")
    roots = solve_cubic(params, precision_bits)
    ctx = context(precision_bits)
    spec = SequenceSpec(1, 0, 0, params)
    generic = _real_part_checked(
        ctx, _binet_sum(roots, BinetCoefficients.for_spec(spec, roots), n), precision_bits
    )
    t = to_mpf(ctx, params.t)
    collapsed = _real_part_checked(
        ctx, _binet_sum(roots, BinetCoefficients(t, t, t), n, shift=1), precision_bits
    )
    exact = term_iterative(spec, n)
    tol = ctx.ldexp(ctx.mpf(1), -(precision_bits // 2))
    ok = rel_err(ctx, generic, exact) <= tol and rel_err(ctx, collapsed, exact) <= tol
    return IdentityReport(
        IdentityId.BINET_FUNDAMENTAL,
        {"params": params.as_tuple(), "n": n, "precision_bits": precision_bits, "exact": exact},
        generic,
        collapsed,
        bool(ok),
        tolerance=tol,
    )


def v_limit_check(n_max: int, precision_bits: int = 128):
    """``max |V[n] / 3**n|`` over ``ceil(n_max/2) <= n <= n_max``."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    ctx = context(precision_bits)
    lo = -(-n_max // 2)
    worst = max(abs(Fraction(v_sequence(n), 3**n)) for n in range(lo, n_max + 1))
    return to_mpf(ctx, worst)
