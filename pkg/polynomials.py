"""
Exact sparse Laurent polynomials and rational functions over the rationals

Every monomial is an exponent vector over the fixed variable registry
VARIABLES, so structural equality of two LPoly values is mathematical
equality. Coefficients are ints when integral and Fractions otherwise;
both are exact rationals in lowest terms.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from operator import add
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Union

from errors import (
    EvalAtPole,
    MissingAssignment,
    NegativeExponent,
    NonInvertibleSubstitution,
    NotUnivariate,
    ZeroDivisor,
)

Rat = Union[int, Fraction]

VARIABLES = ("q", "x", "a", "b", "c", "z")


def as_rat(value) -> Rat:
    """
    Normalize a number to an exact rational

    Args:
        value: int, Fraction or a string such as "3/4"

    Returns:
        Rat: an int when the value is integral, otherwise a Fraction
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        return as_rat(Fraction(value))
    raise TypeError(f"not an exact rational: {value!r}")


class Monomial(NamedTuple):
    """Exponent vector aligned with VARIABLES; the all-zero vector is the unit"""

    q: int = 0
    x: int = 0
    a: int = 0
    b: int = 0
    c: int = 0
    z: int = 0

    def times(self, other: Monomial) -> Monomial:
        return Monomial._make(map(add, self, other))

    def power(self, k: int) -> Monomial:
        return Monomial._make(e * k for e in self)

    def degree(self) -> int:
        return sum(self)

    def exponents(self) -> dict[str, int]:
        return {name: e for name, e in zip(VARIABLES, self) if e}

    def render(self) -> str:
        parts = []
        for name, e in zip(VARIABLES, self):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts)


UNIT = Monomial()


def _var_index(var: str) -> int:
    try:
        return VARIABLES.index(var)
    except ValueError:
        raise ValueError(f"unknown variable {var!r}; expected one of {VARIABLES}") from None


def _order_key(mono: Monomial) -> tuple:
    # graded, then lexicographic with q > x > a > b > c > z
    return (mono.degree(), tuple(-e for e in mono))


class LPoly:
    """Sparse Laurent polynomial with exact rational coefficients"""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable | None = None):
        acc: dict[Monomial, Rat] = defaultdict(int)
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for mono, coeff in items:
                if not isinstance(mono, Monomial):
                    mono = Monomial(*mono)
                acc[mono] += as_rat(coeff)
        self._terms = {m: as_rat(c) for m, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _wrap(cls, clean: dict) -> LPoly:
        poly = cls.__new__(cls)
        poly._terms = clean
        poly._hash = None
        return poly

    # Constructors

    @classmethod
    def constant(cls, value) -> LPoly:
        value = as_rat(value)
        return cls._wrap({UNIT: value} if value else {})

    @classmethod
    def monomial(cls, coeff=1, **exponents: int) -> LPoly:
        coeff = as_rat(coeff)
        return cls._wrap({Monomial(**exponents): coeff} if coeff else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> LPoly:
        _var_index(name)
        return cls.monomial(1, **{name: power})

    @classmethod
    def from_q_coeffs(cls, coeffs: Iterable, shift: int = 0) -> LPoly:
        """Build sum(coeffs[i] * q^(i + shift))"""
        clean = {}
        for i, c in enumerate(coeffs):
            if c:
                clean[Monomial(q=i + shift)] = as_rat(c)
        return cls._wrap(clean)

    # Queries

    @property
    def terms(self) -> Mapping[Monomial, Rat]:
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and UNIT in self._terms)

    def constant_term(self) -> Rat:
        return self._terms.get(UNIT, 0)

    def coefficient(self, mono: Monomial) -> Rat:
        return self._terms.get(mono, 0)

    def variables(self) -> set[str]:
        found = set()
        for mono in self._terms:
            found.update(name for name, e in zip(VARIABLES, mono) if e)
        return found

    def degree(self, var: str = "q") -> int:
        i = _var_index(var)
        if not self._terms:
            raise ValueError("degree of the zero polynomial")
        return max(m[i] for m in self._terms)

    def min_degree(self, var: str = "q") -> int:
        i = _var_index(var)
        if not self._terms:
            raise ValueError("degree of the zero polynomial")
        return min(m[i] for m in self._terms)

    def is_univariate_q(self) -> bool:
        return all(not any(m[1:]) for m in self._terms)

    def q_coefficients(self) -> tuple[int, list[Rat]]:
        """
        Dense view of a polynomial in q alone

        Returns:
            tuple: (shift, coeffs) with self == sum(coeffs[i] * q^(i + shift))
        """
        if not self.is_univariate_q():
            raise NotUnivariate(f"expected a polynomial in q, got {self}")
        if not self._terms:
            return 0, []
        shift = min(m.q for m in self._terms)
        coeffs = [0] * (max(m.q for m in self._terms) - shift + 1)
        for m, c in self._terms.items():
            coeffs[m.q - shift] = c
        return shift, coeffs

    def single_term(self) -> tuple[Monomial, Rat]:
        if len(self._terms) != 1:
            raise ValueError(f"not a single term: {self}")
        return next(iter(self._terms.items()))

    def primitive(self) -> tuple[LPoly, LPoly]:
        """
        Split off a monomial unit: self == unit * rest, where rest has
        minimum exponent 0 in every variable and its lowest term has
        coefficient 1. Used to merge equal denominator factors.
        """
        if not self._terms:
            raise ZeroDivisor("primitive part of the zero polynomial")
        lows = Monomial._make(min(m[i] for m in self._terms) for i in range(len(VARIABLES)))
        lowest = min(self._terms, key=_order_key)
        lead = self._terms[lowest]
        shift = lows.power(-1)
        scale = Fraction(1) / lead if lead != 1 else 1
        rest = {m.times(shift): as_rat(c * scale) for m, c in self._terms.items()}
        return LPoly._wrap({lows: lead}), LPoly._wrap(rest)

    # Arithmetic

    @staticmethod
    def _coerce(other) -> LPoly | None:
        if isinstance(other, LPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return LPoly.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other._terms:
            return self
        result = dict(self._terms)
        for m, c in other._terms.items():
            total = result.get(m, 0) + c
            if total:
                result[m] = as_rat(total)
            else:
                result.pop(m, None)
        return LPoly._wrap(result)

    __radd__ = __add__

    def __neg__(self) -> LPoly:
        return LPoly._wrap({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self._terms or not other._terms:
            return LPoly._wrap({})
        acc: dict[Monomial, Rat] = defaultdict(int)
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                acc[m1.times(m2)] += c1 * c2
        return LPoly._wrap({m: as_rat(c) for m, c in acc.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LPoly:
        if k < 0:
            mono, coeff = self.single_term()
            return LPoly._wrap({mono.power(k): as_rat(Fraction(coeff) ** k)})
        return lp_pow(self, k)

    def __truediv__(self, other):
        """Exact division by a nonzero scalar or a single term"""
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisor("division by zero")
        mono, coeff = other.single_term()
        inverse = LPoly._wrap({mono.power(-1): as_rat(Fraction(1) / coeff)})
        return self * inverse

    def map_q(self, d: int) -> LPoly:
        """Substitute q -> q^d"""
        return LPoly._wrap({m._replace(q=m.q * d): c for m, c in self._terms.items()})

    def shift(self, mono: Monomial) -> LPoly:
        return LPoly._wrap({m.times(mono): c for m, c in self._terms.items()})

    # Comparison and rendering

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def render(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for mono in sorted(self._terms, key=_order_key):
            coeff = self._terms[mono]
            body = mono.render()
            sign = "-" if coeff < 0 else "+"
            size = abs(coeff)
            if not body:
                text = str(size)
            elif size == 1:
                text = body
            else:
                text = f"{size}*{body}"
            pieces.append((sign, text))
        first_sign, first = pieces[0]
        out = [("-" if first_sign == "-" else "") + first]
        out.extend(f" {sign} {text}" for sign, text in pieces[1:])
        return "".join(out)

    __str__ = render

    def __repr__(self) -> str:
        return f"LPoly({self.render()!r})"


ZERO = LPoly()
ONE = LPoly.constant(1)
Q = LPoly.var("q")
X = LPoly.var("x")
A = LPoly.var("a")
B = LPoly.var("b")
C = LPoly.var("c")
Z = LPoly.var("z")


def qmono(e: int, coeff=1) -> LPoly:
    """coeff * q^e"""
    return LPoly.monomial(coeff, q=e)


# Dense univariate helpers: lists indexed by exponent, no trailing zeros

def dense_trim(coeffs: list) -> list:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def dense_add(a: list, b: list) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return dense_trim(out)


def dense_sub(a: list, b: list) -> list:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return dense_trim(out)


def dense_scale(a: list, c) -> list:
    if not c:
        return []
    return [as_rat(x * c) for x in a]


def dense_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return dense_trim([as_rat(c) for c in out])


def dense_divmod(num: list, den: list) -> tuple[list, list]:
    """Long division over Q; returns (quotient, remainder)"""
    den = dense_trim(list(den))
    if not den:
        raise ZeroDivisor("division by the zero polynomial")
    rem = dense_trim(list(num))
    top = len(den) - 1
    if len(rem) <= top:
        return [], rem
    lead = den[-1]
    inv_lead = 1 if lead == 1 else Fraction(1) / lead
    quo = [0] * (len(rem) - top)
    for i in range(len(rem) - 1, top - 1, -1):
        c = rem[i]
        if not c:
            continue
        factor = c if lead == 1 else c * inv_lead
        quo[i - top] = as_rat(factor)
        for j, d in enumerate(den):
            if d:
                rem[i - top + j] -= factor * d
    return dense_trim(quo), dense_trim([as_rat(c) for c in rem[:top]])


def dense_rem(num: list, den: list) -> list:
    return dense_divmod(num, den)[1]


# Operations

def lp_arith(a: LPoly, b: LPoly, op: str) -> LPoly:
    """Exact add, sub or mul of two polynomials"""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def lp_pow(a: LPoly, k: int) -> LPoly:
    """a**k for k >= 0 by repeated squaring; a**0 == 1, also for a == 0"""
    if k < 0:
        raise ValueError("negative power of a general polynomial")
    result = ONE
    base = a
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def lp_substitute(a: LPoly, var: str, value) -> LPoly:
    """Replace var by value everywhere in a"""
    i = _var_index(var)
    value = LPoly._coerce(value)
    if value is None:
        raise TypeError("substituted value must be a polynomial or a rational")

    groups: dict[int, dict] = defaultdict(dict)
    for mono, coeff in a.terms.items():
        groups[mono[i]][mono._replace(**{var: 0})] = coeff
    if not groups:
        return ZERO

    if value.is_monomial():
        vmono, vcoeff = value.single_term()
        result = ZERO
        for e, rest in groups.items():
            scale = as_rat(Fraction(vcoeff) ** e)
            result = result + LPoly._wrap(
                {m.times(vmono.power(e)): as_rat(c * scale) for m, c in rest.items()}
            )
        return result

    if min(groups) < 0:
        raise NonInvertibleSubstitution(
            f"{var} occurs with a negative exponent; {value} is not a single term"
        )
    powers = {0: ONE}
    result = ZERO
    for e in sorted(groups):
        if e not in powers:
            powers[e] = lp_pow(value, e)
        result = result + LPoly._wrap(groups[e]) * powers[e]
    return result


def lp_eval(a: LPoly, assignment: Mapping[str, Rat]) -> Rat:
    """Evaluate at exact rational values for every variable of a"""
    missing = a.variables() - set(assignment)
    if missing:
        raise MissingAssignment(f"no value for {sorted(missing)}")
    values = [Fraction(as_rat(assignment[name])) if name in assignment else None
              for name in VARIABLES]
    total = Fraction(0)
    for mono, coeff in a.terms.items():
        term = Fraction(coeff)
        for value, e in zip(values, mono):
            if not e:
                continue
            if e < 0 and value == 0:
                raise EvalAtPole(f"{a} has a pole at {dict(assignment)}")
            term *= value ** e
        total += term
    return as_rat(total)


def lp_divrem_q(a: LPoly, m: LPoly) -> tuple[LPoly, LPoly]:
    """Division with remainder of polynomials in q with nonnegative exponents"""
    if m.is_zero():
        raise ZeroDivisor("division by the zero polynomial")
    dense = []
    for poly in (a, m):
        shift, coeffs = poly.q_coefficients()
        if shift < 0:
            raise NegativeExponent(f"negative exponent in {poly}")
        dense.append([0] * shift + coeffs)
    quo, rem = dense_divmod(dense[0], dense[1])
    return LPoly.from_q_coeffs(quo), LPoly.from_q_coeffs(rem)


@dataclass(frozen=True, eq=False)
class RFunc:
    """Quotient num/den of Laurent polynomials; equality by cross-multiplication"""

    num: LPoly
    den: LPoly = ONE

    def __post_init__(self):
        num = LPoly._coerce(self.num)
        den = LPoly._coerce(self.den)
        if num is None or den is None:
            raise TypeError("RFunc parts must be polynomials or rationals")
        if den.is_zero():
            raise ZeroDivisor("rational function with zero denominator")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @staticmethod
    def of(value) -> RFunc:
        return value if isinstance(value, RFunc) else RFunc(value)

    def __add__(self, other):
        other = RFunc.of(other)
        if self.den == other.den:
            return RFunc(self.num + other.num, self.den)
        return RFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> RFunc:
        return RFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RFunc.of(other))

    def __rsub__(self, other):
        return RFunc.of(other) - self

    def __mul__(self, other):
        other = RFunc.of(other)
        return RFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RFunc.of(other)
        if other.num.is_zero():
            raise ZeroDivisor("division by a zero rational function")
        return RFunc(self.num * other.den, self.den * other.num)

    def __eq__(self, other) -> bool:
        try:
            other = RFunc.of(other)
        except TypeError:
            return NotImplemented
        return rf_equal(self, other)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def substitute(self, var: str, value) -> RFunc:
        return RFunc(lp_substitute(self.num, var, value), lp_substitute(self.den, var, value))

    def evaluate(self, assignment: Mapping[str, Rat]) -> Rat:
        den = lp_eval(self.den, assignment)
        if den == 0:
            raise EvalAtPole(f"denominator {self.den} vanishes at {dict(assignment)}")
        return as_rat(Fraction(lp_eval(self.num, assignment)) / den)

    def render(self) -> str:
        if self.den == ONE:
            return self.num.render()
        return f"({self.num}) / ({self.den})"

    __str__ = render


def rf_equal(r1: RFunc, r2: RFunc) -> bool:
    """num1*den2 == num2*den1"""
    if r1.den == r2.den:
        return r1.num == r2.num
    return (r1.num * r2.den - r2.num * r1.den).is_zero()
