"""Power-product recurrence ``z[n+3] = z[n+2]**r * z[n+1]**s * z[n]**t``.

Its terms are ``a**e_a * b**e_b * c**e_c`` where the exponents are the three
Horadam sequences with unit initial triples under the same ``(r, s, t)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._numeric import check_precision, context
from .errors import CapExceeded, DomainError
from .geomean import GeoInit, _as_init, _power_product
from .recurrence import RecurrenceParams, SequenceSpec, term_iterative

DIRECT_CAP = 20


@dataclass(frozen=True)
class FundamentalExponents:
    e_a: Fraction
    e_b: Fraction
    e_c: Fraction
    params: RecurrenceParams
    index: int

    def as_tuple(self):
        return (self.e_a, self.e_b, self.e_c)

    def combine(self, a, b, c) -> Fraction:
        """``H[index](a, b, c; params)`` by superposition."""
        return a * self.e_a + b * self.e_b + c * self.e_c


def fundamental_exponents(params: RecurrenceParams, n: int) -> FundamentalExponents:
    e = [term_iterative(SequenceSpec(*unit, params), n)
         for unit in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    return FundamentalExponents(*e, params=params, index=n)


def z_term_direct(init, params: RecurrenceParams, n: int) -> Fraction:
    """Iterate the power-product recurrence exactly (integer exponents only).

    Values grow doubly exponentially, so ``n`` is capped at 20.
    """
    if n < 0:
        raise IndexError("n must be >= 0")
    if n > DIRECT_CAP:
        raise CapExceeded(f"direct power-product iteration is capped at n={DIRECT_CAP}")
    exps = []
    for v in params.as_tuple():
        if v < 0 or v.denominator != 1:
            raise DomainError(f"direct form needs nonnegative integer exponents, got {v}")
        exps.append(v.numerator)
    r, s, t = exps
    init = _as_init(init)
    x, y, z = (Fraction(v) for v in init.as_tuple())
    if n < 3:
        return (x, y, z)[n]
    for _ in range(n - 2):
        x, y, z = y, z, z**r * y**s * x**t
    return z


def z_term_closed(init, params: RecurrenceParams, n: int, precision_bits: int = 128):
    """``a**e_a * b**e_b * c**e_c`` at the requested precision."""
    init = _as_init(init)
    ctx = context(check_precision(precision_bits))
    return _power_product(ctx, init, fundamental_exponents(params, n).as_tuple())


def z_term_closed_exact(init, params: RecurrenceParams, n: int) -> Fraction:
    """Closed form over exact rationals; needs integer exponents."""
    init = _as_init(init)
    out = Fraction(1)
    for base, e in zip(init.as_tuple(), fundamental_exponents(params, n).as_tuple()):
        if e.denominator != 1:
            raise DomainError("exact closed form needs integer exponents")
        out *= Fraction(base) ** e.numerator
    return out
