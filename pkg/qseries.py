"""
q-integers, q-shifted factorials, q-binomial coefficients and truncated
basic hypergeometric sums.

Summands are carried as factored Terms (lists of numerator and
denominator factors) so that sums can be put over a common denominator
by merging equal factors instead of multiplying every denominator out,
and so that residues and q -> 1 limits can be taken factor by factor.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce as fold
from operator import mul
from typing import Iterable, Sequence

from errors import EvalAtPole, InternalNonExactDivision, InvalidParams, VanishingDenominator, ZeroDivisor
from polynomials import ONE, ZERO, LPoly, Rat, RFunc, as_rat, dense_divmod, dense_mul, qmono


@dataclass(frozen=True)
class QBase:
    """The base q^step"""

    step: int = 1

    def __post_init__(self):
        if not isinstance(self.step, int) or self.step < 1:
            raise InvalidParams(f"base step must be a positive integer, got {self.step}")


def _as_base(base) -> QBase:
    return base if isinstance(base, QBase) else QBase(base)


def _as_poly(value) -> LPoly:
    return value if isinstance(value, LPoly) else LPoly.constant(value)


def qint(n: int, base=1) -> LPoly:
    """[n] = 1 + q^d + ... + q^((n-1)d)"""
    if n < 1:
        raise InvalidParams(f"q-integer needs n >= 1, got {n}")
    d = _as_base(base).step
    return LPoly.from_q_coeffs([1] * n).map_q(d)


def poch(a, base, n: int) -> tuple[LPoly, ...]:
    """The factors 1 - a*q^(jd), j < n, of (a; q^d)_n"""
    if n < 0:
        raise InvalidParams(f"q-shifted factorial needs n >= 0, got {n}")
    a = _as_poly(a)
    d = _as_base(base).step
    return tuple(ONE - a * qmono(j * d) for j in range(n))


def qpoch(a, base, n: int) -> LPoly:
    """(a; q^d)_n as an expanded polynomial; the empty product is 1"""
    return fold(mul, poch(a, base, n), ONE)


def qfac(base, n: int) -> tuple[LPoly, ...]:
    """Factors of (q^d; q^d)_n"""
    d = _as_base(base).step
    return poch(qmono(d), d, n)


@lru_cache(maxsize=4096)
def _qbinom_base_q(n: int, k: int) -> LPoly:
    num = [1]
    den = [1]
    for j in range(1, k + 1):
        num = dense_mul(num, [1] + [0] * (n - k + j - 1) + [-1])
        den = dense_mul(den, [1] + [0] * (j - 1) + [-1])
    quo, rem = dense_divmod(num, den)
    if rem:
        raise InternalNonExactDivision(f"q-binomial [{n}, {k}] left a remainder")
    return LPoly.from_q_coeffs(quo)


def qbinom(n: int, k: int, base=1) -> LPoly:
    """Gaussian binomial [n, k] in base q^d; zero outside 0 <= k <= n"""
    d = _as_base(base).step
    if k < 0 or k > n:
        return ZERO
    k = min(k, n - k)
    return _qbinom_base_q(n, k).map_q(d)


@dataclass(frozen=True)
class Term:
    """A summand as a product of numerator factors over denominator factors"""

    num: tuple[LPoly, ...] = ()
    den: tuple[LPoly, ...] = ()

    def times(self, *factors) -> Term:
        return Term(self.num + _flatten(factors), self.den)

    def over(self, *factors) -> Term:
        return Term(self.num, self.den + _flatten(factors))

    def __mul__(self, other: Term) -> Term:
        return Term(self.num + other.num, self.den + other.den)

    def is_zero(self) -> bool:
        return any(f.is_zero() for f in self.num)

    def value(self) -> RFunc:
        return RFunc(fold(mul, self.num, ONE), fold(mul, self.den, ONE))


def _flatten(factors) -> tuple[LPoly, ...]:
    out = []
    for f in factors:
        if isinstance(f, (tuple, list)):
            out.extend(_as_poly(g) for g in f)
        else:
            out.append(_as_poly(f))
    return tuple(out)


def term(num: Iterable = (), den: Iterable = ()) -> Term:
    return Term(_flatten(num), _flatten(den))


def sum_terms(terms: Iterable[Term]) -> RFunc:
    """
    Exact sum over a common denominator

    Denominator factors are normalized to primitive form and the common
    denominator is the multiset union of those forms.
    """
    prepared = []
    common: Counter = Counter()
    for t in terms:
        if t.is_zero():
            continue
        unit = ONE
        counts: Counter = Counter()
        for factor in t.den:
            if factor.is_zero():
                raise ZeroDivisor("summand with a zero denominator factor")
            u, prim = factor.primitive()
            unit = unit * u
            if prim != ONE:
                counts[prim] += 1
        prepared.append((t, unit, counts))
        common |= counts
    numerator = ZERO
    for t, unit, counts in prepared:
        part = fold(mul, t.num, ONE) / unit
        for factor, mult in (common - counts).items():
            for _ in range(mult):
                part = part * factor
        numerator = numerator + part
    denominator = ONE
    for factor, mult in sorted(common.items(), key=lambda item: item[0].render()):
        for _ in range(mult):
            denominator = denominator * factor
    return RFunc(numerator, denominator)


def phi_terms(upper: Sequence, lower: Sequence, base, z, terms: int) -> list[Term]:
    """Summands of the truncated series r+1 phi r(upper; lower; q^d, z)"""
    d = _as_base(base).step
    z = _as_poly(z)
    out = []
    for n in range(terms):
        den = qfac(d, n) + tuple(f for b in lower for f in poch(b, d, n))
        if any(f.is_zero() for f in den):
            raise VanishingDenominator(f"denominator vanishes at term {n}")
        num = tuple(f for a in upper for f in poch(a, d, n)) + (z ** n,)
        out.append(Term(num, den))
    return out


def phi_sum(upper: Sequence, lower: Sequence, base, z, terms: int) -> RFunc:
    """Truncated basic hypergeometric series as an exact rational function"""
    if terms < 0:
        raise InvalidParams("number of terms must be nonnegative")
    return sum_terms(phi_terms(upper, lower, base, z, terms))


def _split_at_one(f: LPoly) -> tuple[int, Fraction]:
    """f = (q - 1)^order * g with g(1) != 0; returns (order, g(1))"""
    _, coeffs = f.q_coefficients()
    if not coeffs:
        raise ZeroDivisor("zero factor has no value at q = 1")
    order = 0
    while True:
        value = sum(coeffs)
        if value:
            return order, Fraction(value)
        coeffs, _ = dense_divmod(coeffs, [-1, 1])
        order += 1


def term_at_one(t: Term) -> Rat:
    """Limit of a univariate summand as q -> 1"""
    if t.is_zero():
        return 0
    order = 0
    value = Fraction(1)
    for f in t.num:
        o, v = _split_at_one(f)
        order += o
        value *= v
    for f in t.den:
        o, v = _split_at_one(f)
        order -= o
        value /= v
    if order < 0:
        raise EvalAtPole("summand has a pole at q = 1")
    return as_rat(value) if order == 0 else 0


