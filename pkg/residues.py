"""
Arithmetic in Q[q]/([p]^r) and the elementary number theory the
congruences need: primality, Legendre symbols, least residues of
fractions and two-square decompositions.

Residues are kept as dense coefficient tuples of the unique remainder of
degree < r(p-1), so RElem equality is congruence.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from errors import (
    DenominatorDivisibleByP,
    DenominatorNotInvertible,
    EvenPrimeUnsupported,
    InvalidParams,
    NoRepresentation,
    NotInvertible,
    NotPrime,
)
from polynomials import (
    LPoly,
    as_rat,
    dense_add,
    dense_divmod,
    dense_mul,
    dense_rem,
    dense_scale,
    dense_sub,
    lp_pow,
    qmono,
)
from qseries import qint

logger = logging.getLogger(__name__)

TWO_SQUARE_CONVENTIONS = ("x_odd", "x_one_mod_4")


@dataclass(frozen=True)
class Modulus:
    """The ring Q[q]/([p]^r)"""

    p: int
    r: int
    modpoly: LPoly = field(repr=False)
    dense: tuple = field(repr=False, compare=False)

    @property
    def degree(self) -> int:
        return self.r * (self.p - 1)

    def element(self, coeffs) -> RElem:
        return RElem(self, tuple(coeffs))

    def zero(self) -> RElem:
        return RElem(self, ())

    def one(self) -> RElem:
        return RElem(self, (1,))

    def __call__(self, f) -> RElem:
        return reduce(f, self)


@dataclass(frozen=True)
class RElem:
    """Canonical residue class in a Modulus"""

    ring: Modulus
    coeffs: tuple

    @property
    def rep(self) -> LPoly:
        return LPoly.from_q_coeffs(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def _lift(self, other) -> RElem:
        if isinstance(other, RElem):
            if other.ring != self.ring:
                raise ValueError(f"mixing residues of {self.ring} and {other.ring}")
            return other
        return reduce(other, self.ring)

    def __add__(self, other) -> RElem:
        other = self._lift(other)
        return self.ring.element(dense_add(list(self.coeffs), list(other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> RElem:
        return self.ring.element(-c for c in self.coeffs)

    def __sub__(self, other) -> RElem:
        other = self._lift(other)
        return self.ring.element(dense_sub(list(self.coeffs), list(other.coeffs)))

    def __rsub__(self, other) -> RElem:
        return self._lift(other) - self

    def __mul__(self, other) -> RElem:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ring.element(dense_scale(list(self.coeffs), other))
        other = self._lift(other)
        product = dense_mul(list(self.coeffs), list(other.coeffs))
        return self.ring.element(dense_rem(product, list(self.ring.dense)))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> RElem:
        base = self if k >= 0 else invert(self, self.ring)
        result = self.ring.one()
        k = abs(k)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> RElem:
        return invert(self, self.ring)

    def render(self) -> str:
        return self.rep.render()

    __str__ = render


# bases that make Miller-Rabin exact for n < 3.3e24
WITNESS_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin over WITNESS_BASES"""
    if n < 2:
        return False
    for b in WITNESS_BASES:
        if n % b == 0:
            return n == b
    d = n - 1
    while d & 1 == 0:
        d >>= 1
    for b in WITNESS_BASES:
        t = d
        y = pow(b, t, n)
        while t != n - 1 and y != 1 and y != n - 1:
            y = y * y % n
            t <<= 1
        if y != n - 1 and t & 1 == 0:
            return False
    return True


def require_odd_prime(p: int) -> None:
    if p == 2:
        raise EvenPrimeUnsupported("p = 2 is not supported; statements assume an odd prime")
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"{p} is not prime")


@lru_cache(maxsize=None)
def make_ring(p: int, r: int = 1) -> Modulus:
    """Build Q[q]/([p]^r)"""
    require_odd_prime(p)
    if r < 1:
        raise InvalidParams(f"exponent r must be positive, got {r}")
    modpoly = lp_pow(qint(p), r)
    _, dense = modpoly.q_coefficients()
    logger.debug(f"Built residue ring for p={p}, r={r} (degree {r * (p - 1)})")
    return Modulus(p, r, modpoly, tuple(dense))


def _generalized_binomial(a: int, i: int) -> int:
    num = 1
    for j in range(i):
        num *= a - j
    return num // math.factorial(i)


@lru_cache(maxsize=None)
def _power_of_qp(p: int, r: int, a: int) -> tuple:
    """q^(a*p) = (1 + E)^a with E = q^p - 1 and E^r = (q-1)^r [p]^r == 0"""
    e = [-1] + [0] * (p - 1) + [1]
    result: list = []
    e_power = [1]
    for i in range(r):
        result = dense_add(result, dense_scale(e_power, _generalized_binomial(a, i)))
        e_power = dense_mul(e_power, e)
    return tuple(result)


@lru_cache(maxsize=1 << 16)
def _reduce_poly(f: LPoly, ring: Modulus) -> RElem:
    shift, coeffs = f.q_coefficients()
    p = ring.p
    rows: dict[int, list] = {}
    for i, c in enumerate(coeffs):
        if c:
            a, b = divmod(i + shift, p)
            row = rows.setdefault(a, [0] * p)
            row[b] += c
    acc: list = []
    for a, row in rows.items():
        if a == 0:
            acc = dense_add(acc, row)
        else:
            acc = dense_add(acc, dense_mul(row, list(_power_of_qp(p, ring.r, a))))
    return ring.element(dense_rem(acc, list(ring.dense)))


def reduce(f, ring: Modulus) -> RElem:
    """
    Canonical residue of a Laurent polynomial in q

    Exponents e = a*p + b are folded through q^(a*p) = (1 + (q^p - 1))^a,
    truncated after r terms, which also covers negative a since q is a unit.
    """
    if isinstance(f, RElem):
        if f.ring != ring:
            raise ValueError(f"residue belongs to {f.ring}, not {ring}")
        return f
    if not isinstance(f, LPoly):
        f = LPoly.constant(f)
    return _reduce_poly(f, ring)


def _dense_inverse(g: list, m: list) -> list:
    # invariant: s_i * g == r_i (mod m); r1 made monic every step
    r0, r1 = list(m), list(g)
    s0, s1 = [], [1]
    while r1:
        lead = r1[-1]
        if lead != 1:
            scale = Fraction(1) / lead
            r1 = dense_scale(r1, scale)
            s1 = dense_scale(s1, scale)
        quo, rem = dense_divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, dense_sub(s0, dense_mul(quo, s1))
    if len(r0) != 1:
        raise NotInvertible("element shares a factor with the modulus")
    return dense_rem(s0, m)


def invert(f, ring: Modulus) -> RElem:
    """Inverse by the extended Euclidean algorithm against the modulus"""
    elem = reduce(f, ring)
    if elem.is_zero():
        raise NotInvertible(f"{f} is divisible by [{ring.p}]")
    try:
        return ring.element(_dense_inverse(list(elem.coeffs), list(ring.dense)))
    except NotInvertible:
        raise NotInvertible(f"{f} is not invertible modulo [{ring.p}]^{ring.r}") from None


def reduce_ratio(num, den, ring: Modulus) -> RElem:
    return reduce(num, ring) * invert(den, ring)


def qpow_mod(ring: Modulus, f: int) -> RElem:
    """Residue of q^f for any integer f"""
    return reduce(qmono(f), ring)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion"""
    require_odd_prime(p)
    value = pow(a % p, (p - 1) // 2, p)
    return -1 if value == p - 1 else value


def frac_residue(u: int, v: int, p: int) -> int:
    """Least nonnegative residue of u/v modulo p"""
    if v % p == 0:
        raise DenominatorDivisibleByP(f"{v} is divisible by {p}")
    return (u * pow(v, -1, p)) % p


def two_square(p: int, convention: str = "x_odd") -> tuple[int, int]:
    """
    Write p = x^2 + y^2

    Args:
        p: a prime congruent to 1 mod 4
        convention: "x_odd" (x > 0 odd) or "x_one_mod_4" (x signed, x = 1 mod 4)

    Returns:
        tuple: (x, y) with y > 0
    """
    if convention not in TWO_SQUARE_CONVENTIONS:
        raise InvalidParams(f"unknown convention {convention!r}")
    require_odd_prime(p)
    if p % 4 != 1:
        raise NoRepresentation(f"{p} = 3 (mod 4) is not a sum of two squares")
    # Cornacchia: Euclid on (p, t) with t^2 = -1 (mod p) stops at the first remainder below sqrt(p)
    c = next(c for c in range(2, p) if legendre(c, p) == -1)
    a, b = p, pow(c, (p - 1) // 4, p)
    while b * b > p:
        a, b = b, a % b
    x, y = b, math.isqrt(p - b * b)
    if x * x + y * y != p:
        raise NoRepresentation(f"no decomposition found for {p}")
    if x % 2 == 0:
        x, y = y, x
    if convention == "x_one_mod_4" and x % 4 != 1:
        x = -x
    return x, y


def as_residue(value: Fraction | int, modulus: int) -> int:
    """Image of an exact rational in Z/modulus; the denominator must be a unit"""
    value = Fraction(as_rat(value))
    if math.gcd(value.denominator, modulus) != 1:
        raise DenominatorNotInvertible(f"{value.denominator} is not a unit modulo {modulus}")
    return (value.numerator * pow(value.denominator, -1, modulus)) % modulus
