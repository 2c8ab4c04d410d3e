"""Exact third-order linear recurrences.

Terms of ``H(a, b, c; r, s, t)`` with ``H[n+3] = r H[n+2] + s H[n+1] + t H[n]``
are computed either by unrolling the recurrence or by square-and-multiply on
the companion matrix ``[[r, s, t], [1, 0, 0], [0, 1, 0]]``.  All arithmetic is
exact: values are :class:`fractions.Fraction` (or ``int`` when everything is
integral, which keeps big-integer work free of gcd overhead).
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import InconsistencyError

Number = Union[int, Fraction]
Matrix = tuple  # 3x3 tuple of tuples


def as_fraction(x) -> Fraction:
    """Coerce ``x`` to an exact rational.

    Accepts ints, Fractions, and strings such as ``"1/3"`` or ``"0.125"``
    (decimal strings are converted exactly).  Floats are refused because they
    would smuggle binary rounding into identities that must hold exactly.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _compact(x: Fraction) -> Number:
    return x.numerator if x.denominator == 1 else x


def _check_index(n, lower=0, name="n"):
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"{name} must be an int")
    if n < lower:
        raise IndexError(f"{name} must be >= {lower}, got {n}")


@dataclass(frozen=True)
class RecurrenceParams:
    """Coefficients ``(r, s, t)`` of the recurrence."""

    r: Fraction
    s: Fraction
    t: Fraction

    def __post_init__(self):
        for name in ("r", "s", "t"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))

    def as_tuple(self):
        return (self.r, self.s, self.t)

    @classmethod
    def lambda_family(cls, lam) -> "RecurrenceParams":
        lam = as_fraction(lam)
        return cls(lam, 3 * lam**2, 9 * lam**3)


@dataclass(frozen=True)
class SequenceSpec:
    """Initial values ``H0 = a, H1 = b, H2 = c`` plus the coefficients."""

    a: Fraction
    b: Fraction
    c: Fraction
    params: RecurrenceParams

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if not isinstance(self.params, RecurrenceParams):
            object.__setattr__(self, "params", RecurrenceParams(*self.params))

    @classmethod
    def of(cls, a, b, c, r, s, t) -> "SequenceSpec":
        return cls(a, b, c, RecurrenceParams(r, s, t))


@dataclass(frozen=True)
class StateVector:
    """Window ``(H[n+1], H[n], H[n-1])`` of a sequence."""

    top: Fraction
    mid: Fraction
    bot: Fraction

    def advance(self, params: RecurrenceParams) -> "StateVector":
        r, s, t = params.as_tuple()
        return StateVector(r * self.top + s * self.mid + t * self.bot, self.top, self.mid)


@dataclass(frozen=True)
class CompanionMatrix:
    params: RecurrenceParams

    @property
    def entries(self) -> Matrix:
        r, s, t = (_compact(v) for v in self.params.as_tuple())
        return ((r, s, t), (1, 0, 0), (0, 1, 0))

    def determinant(self) -> Fraction:
        return Fraction(mat_det(self.entries))

    def apply(self, state: StateVector) -> StateVector:
        top, mid, bot = mat_vec(self.entries, (state.top, state.mid, state.bot))
        return StateVector(Fraction(top), Fraction(mid), Fraction(bot))

    def power(self, e: int) -> tuple[Matrix, int]:
        return mat_pow(self.entries, e)


# -- small exact 3x3 helpers -------------------------------------------------

IDENTITY: Matrix = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def mat_mul(x: Matrix, y: Matrix) -> Matrix:
    return tuple(
        tuple(x[i][0] * y[0][j] + x[i][1] * y[1][j] + x[i][2] * y[2][j] for j in range(3))
        for i in range(3)
    )


def mat_vec(m: Matrix, v) -> tuple:
    return tuple(m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2] for i in range(3))


def mat_scale(k, m: Matrix) -> Matrix:
    return tuple(tuple(k * v for v in row) for row in m)


def mat_det(m: Matrix):
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def mat_pow(m: Matrix, e: int) -> tuple[Matrix, int]:
    """Return ``(m**e, number_of_matrix_multiplications)``.

    Left-to-right square-and-multiply, so the count is
    ``(bit_length(e) - 1) + (popcount(e) - 1)`` which never exceeds
    ``2 * log2(e)``.
    """
    _check_index(e, 0, "e")
    if e == 0:
        return IDENTITY, 0
    result = m
    count = 0
    for bit in bin(e)[3:]:
        result = mat_mul(result, result)
        count += 1
        if bit == "1":
            result = mat_mul(result, m)
            count += 1
    return result, count


# -- term computation --------------------------------------------------------

def term_iterative(spec: SequenceSpec, n: int) -> Fraction:
    """``H[n]`` by unrolling the recurrence from ``(a, b, c)``; O(n)."""
    _check_index(n)
    r, s, t = (_compact(v) for v in spec.params.as_tuple())
    x, y, z = (_compact(v) for v in (spec.a, spec.b, spec.c))
    if n < 3:
        return Fraction((x, y, z)[n])
    for _ in range(n - 2):
        x, y, z = y, z, r * z + s * y + t * x
    return Fraction(z)


def term_matrix(spec: SequenceSpec, n: int, *, with_count: bool = False):
    """``H[n]`` as the middle entry of ``M**(n-1) @ (c, b, a)``.

    Only defined for ``n >= 1``; use :func:`term_iterative` for ``n = 0``.
    With ``with_count=True`` returns ``(value, multiplications)``.
    """
    _check_index(n, 1)
    power, count = CompanionMatrix(spec.params).power(n - 1)
    vec = tuple(_compact(v) for v in (spec.c, spec.b, spec.a))
    row = power[1]
    value = Fraction(row[0] * vec[0] + row[1] * vec[1] + row[2] * vec[2])
    return (value, count) if with_count else value


TRIBONACCI_T = SequenceSpec.of(0, 0, 1, 1, 3, 9)
CLASSIC_TRIBONACCI = SequenceSpec.of(0, 1, 1, 1, 1, 1)


_T_CACHE = [0, 0, 1]
_T_LOCK = threading.Lock()
_T_CACHE_LIMIT = 5000


def t_sequence(n: int) -> int:
    """``T[n]`` of ``T[n+3] = T[n+2] + 3 T[n+1] + 9 T[n]``, ``T = 0, 0, 1, ...``."""
    _check_index(n)
    if n >= _T_CACHE_LIMIT:
        return term_iterative(TRIBONACCI_T, n).numerator
    with _T_LOCK:
        while len(_T_CACHE) <= n:
            _T_CACHE.append(_T_CACHE[-1] + 3 * _T_CACHE[-2] + 9 * _T_CACHE[-3])
        return _T_CACHE[n]


def classic_tribonacci(n: int) -> int:
    """0, 1, 1, 2, 4, 7, 13, ..."""
    return term_iterative(CLASSIC_TRIBONACCI, n).numerator


def h_sequence(params: RecurrenceParams, n: int) -> Fraction:
    """Generalized Tribonacci ``h[n]`` with ``h = 0, 1, r, ...``."""
    return term_iterative(SequenceSpec(0, 1, params.r, params), n)


def v_sequence(n: int) -> int:
    """``V[n+2] = -2 V[n+1] - 3 V[n]`` with ``V0 = -1, V1 = 3``."""
    _check_index(n)
    x, y = -1, 3
    for _ in range(n):
        x, y = y, -2 * y - 3 * x
    return x


def t_closed_form(n: int) -> int:
    """``T[n] = (3**(n-1) + V[n-1]) / 6`` for ``n >= 2``.

    The division is checked, not rounded: a nonzero remainder means the two
    sequences have drifted apart and raises :class:`InconsistencyError`.
    """
    _check_index(n, 2)
    q, rem = divmod(3 ** (n - 1) + v_sequence(n - 1), 6)
    if rem:
        raise InconsistencyError(f"3^{n - 1} + V[{n - 1}] is not divisible by 6")
    return q
