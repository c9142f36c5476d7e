"""
Integer supercongruences and the q = 1 counterparts of the q-displays.

Sums are evaluated exactly with Fractions and only then mapped to
Z/p^e, so a denominator that is not a unit shows up as
DenominatorNotInvertible instead of a wrong residue.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional

from errors import NoClassicalCounterpart, UnknownCheckId
from residues import as_residue, frac_residue, is_prime, legendre, two_square

Params = Mapping[str, int]

INTEGER = "integer"


def binom(n: int, k: int) -> int:
    return math.comb(n, k) if 0 <= k <= n else 0


def gbinom(a: Fraction, k: int) -> Fraction:
    """C(a, k) for rational a"""
    value = Fraction(1)
    for j in range(k):
        value *= (a - j) / (j + 1)
    return value


def rising(x: Fraction, k: int) -> Fraction:
    value = Fraction(1)
    for j in range(k):
        value *= x + j
    return value


def central(k: int) -> int:
    return binom(2 * k, k)


@dataclass(frozen=True)
class IntegerCheck:
    check_id: str
    summary: str
    params: tuple[str, ...]
    power: int
    lhs: Callable[[Params], Fraction]
    rhs: Callable[[Params], int]
    hypotheses: Callable[[Params], Optional[str]]


def _prime(P, minimum: int = 3, classes: Optional[tuple[int, tuple[int, ...]]] = None) -> Optional[str]:
    p = P["p"]
    if p < minimum or not is_prime(p):
        return f"p must be a prime >= {minimum}"
    if classes:
        mod, allowed = classes
        if p % mod not in allowed:
            return f"need p mod {mod} in {allowed}"
    return None


def _n(P) -> int:
    return (P["p"] - 1) // 2


def _beukers_target(P, mod_p_only: bool = False) -> int:
    p = P["p"]
    if p % 4 != 1:
        return 0
    x, _ = two_square(p)
    return 4 * x * x if mod_p_only else 4 * x * x - 2 * p


def _alternating_cubic(P) -> Fraction:
    n = _n(P)
    return sum((Fraction((-1) ** k * binom(n, k) * central(k) ** 2, 16 ** k) for k in range(n + 1)), Fraction(0))


def _cubic(P) -> Fraction:
    return sum((Fraction(central(k) ** 3, 64 ** k) for k in range(_n(P) + 1)), Fraction(0))


def _over_range(summand: Callable[[int], Fraction], top: int) -> Fraction:
    return sum((summand(k) for k in range(top + 1)), Fraction(0))


def _cyclic(m: int) -> Callable[[int], Fraction]:
    """(1/m)_k ((m-1)/m)_k / k!^2 written with ordinary binomials"""
    forms = {
        2: lambda k: Fraction(central(k) ** 2, 16 ** k),
        3: lambda k: Fraction(binom(3 * k, 2 * k) * central(k), 27 ** k),
        4: lambda k: Fraction(binom(4 * k, 2 * k) * central(k), 64 ** k),
        6: lambda k: Fraction(binom(6 * k, 3 * k) * binom(3 * k, k), 432 ** k),
    }
    return forms[m]


def _int17_hyp(P) -> Optional[str]:
    reason = _prime(P)
    if reason:
        return reason
    p, m, r = P["p"], P["m"], P["r"]
    if m not in (2, 3, 4, 6) or not 1 <= r < m:
        return "need m in {2, 3, 4, 6} and 1 <= r < m"
    if m % p == 0:
        return "p divides m"
    if frac_residue(-r, m, p) % 2 == 0:
        return "<a>_p must be odd"
    return None


def _int17_lhs(P) -> Fraction:
    a = Fraction(-P["r"], P["m"])
    return _over_range(lambda k: central(k) * gbinom(a, k) * gbinom(-1 - a, k) / 4 ** k, P["p"] - 1)


def _int112_hyp(P) -> Optional[str]:
    return _prime(P) or (None if 0 <= P["s"] <= _n(P) else "need 0 <= s <= (p-1)/2")


def _int112_lhs(P) -> Fraction:
    s = P["s"]
    return _over_range(lambda k: Fraction(central(k) * binom(2 * k + 2 * s, k + s), 4 ** (2 * k + s)), _n(P))


def _int21_hyp(P) -> Optional[str]:
    reason = _int112_hyp(P)
    if reason:
        return reason
    if (P["s"] - (P["p"] + 1) // 2) % 2:
        return "need s = (p+1)/2 (mod 2)"
    return None


def _int21_lhs(P) -> Fraction:
    s = P["s"]
    return _over_range(lambda k: Fraction(central(k) ** 2 * binom(2 * k, k + s), 64 ** k), _n(P))


def _int24_lhs(P) -> Fraction:
    n = _n(P)
    return Fraction(binom(n, n // 2) ** 2, 2 ** (P["p"] - 1))


def _int24_rhs(P) -> int:
    p = P["p"]
    x, _ = two_square(p, "x_one_mod_4")
    return 4 * x * x - 2 * p


def _int15_lhs(P, printed: bool = False) -> Fraction:
    # the printed C(4k, k) does not give a supercongruence
    top = (lambda k: binom(4 * k, k)) if printed else (lambda k: binom(4 * k, 2 * k))
    return _over_range(lambda k: Fraction(top(k) * central(k) ** 2, 256 ** k), P["p"] - 1)


SIGN_DENOMINATORS = {3: -3, 4: -2, 6: -1}


def _eq28_hyp(P) -> Optional[str]:
    return _prime(P, 5) or (None if P["m"] in SIGN_DENOMINATORS else "m must be 3, 4 or 6")


def _eq28_lhs(P) -> Fraction:
    return Fraction((-1) ** frac_residue(-1, P["m"], P["p"]))


def _eq28_rhs(P) -> int:
    return legendre(SIGN_DENOMINATORS[P["m"]], P["p"])


INTEGER_CHECKS: dict[str, IntegerCheck] = {c.check_id: c for c in (
    IntegerCheck("int1.1", "alternating sum of C(n,k) C(2k,k)^2 / 16^k", ("p",), 2,
                 _alternating_cubic, _beukers_target, lambda P: _prime(P, 5)),
    IntegerCheck("int1.2", "sum of C(2k,k)^3 / 64^k modulo p", ("p",), 1,
                 _cubic, lambda P: _beukers_target(P, mod_p_only=True), _prime),
    IntegerCheck("int1.3", "sum of C(2k,k)^3 / 64^k modulo p^2", ("p",), 2,
                 _cubic, _beukers_target, _prime),
    IntegerCheck("int1.4", "sum of C(3k,k) C(2k,k)^2 / 108^k vanishes", ("p",), 2,
                 lambda P: _over_range(lambda k: Fraction(binom(3 * k, k) * central(k) ** 2, 108 ** k), P["p"] - 1),
                 lambda P: 0, lambda P: _prime(P, 5, (3, (2,)))),
    IntegerCheck("int1.5", "sum of C(4k,2k) C(2k,k)^2 / 256^k vanishes", ("p",), 2,
                 _int15_lhs, lambda P: 0, lambda P: _prime(P, 3, (8, (5, 7)))),
    IntegerCheck("int1.6", "sum of C(6k,3k) C(3k,k) C(2k,k) / 1728^k vanishes", ("p",), 2,
                 lambda P: _over_range(
                     lambda k: Fraction(binom(6 * k, 3 * k) * binom(3 * k, k) * central(k), 1728 ** k), P["p"] - 1),
                 lambda P: 0, lambda P: _prime(P, 5, (4, (3,)))),
    IntegerCheck("int1.7", "sum of C(2k,k) C(a,k) C(-1-a,k) / 4^k vanishes for a = -r/m", ("p", "m", "r"), 2,
                 _int17_lhs, lambda P: 0, _int17_hyp),
    IntegerCheck("int1.8", "sum of C(2k,k)^2 / 16^k", ("p",), 2,
                 lambda P: _over_range(_cyclic(2), P["p"] - 1), lambda P: legendre(-1, P["p"]),
                 lambda P: _prime(P, 5)),
    IntegerCheck("int1.9", "sum of C(3k,2k) C(2k,k) / 27^k", ("p",), 2,
                 lambda P: _over_range(_cyclic(3), P["p"] - 1), lambda P: legendre(-3, P["p"]),
                 lambda P: _prime(P, 5)),
    IntegerCheck("int1.10", "sum of C(4k,2k) C(2k,k) / 64^k", ("p",), 2,
                 lambda P: _over_range(_cyclic(4), P["p"] - 1), lambda P: legendre(-2, P["p"]),
                 lambda P: _prime(P, 5)),
    IntegerCheck("int1.11", "sum of C(6k,3k) C(3k,k) / 432^k", ("p",), 2,
                 lambda P: _over_range(_cyclic(6), P["p"] - 1), lambda P: legendre(-1, P["p"]),
                 lambda P: _prime(P, 5)),
    IntegerCheck("int1.12", "sum of C(2k,k) C(2k+2s,k+s) / 4^(2k+s)", ("p", "s"), 2,
                 _int112_lhs, lambda P: legendre(-1, P["p"]), _int112_hyp),
    IntegerCheck("int2.1", "sum of C(2k,k)^2 C(2k,k+s) / 64^k vanishes off the parity of (p-1)/2", ("p", "s"), 2,
                 _int21_lhs, lambda P: 0, _int21_hyp),
    IntegerCheck("int2.4", "C((p-1)/2, (p-1)/4)^2 / 2^(p-1)", ("p",), 2,
                 _int24_lhs, _int24_rhs, lambda P: _prime(P, 5, (4, (1,)))),
    IntegerCheck("eq2.8", "(-1)^<-1/m>_p as a Legendre symbol", ("p", "m"), 1,
                 _eq28_lhs, _eq28_rhs, _eq28_hyp),
)}

INTEGER_CANDIDATES: dict[str, dict[str, Callable[[Params], Fraction]]] = {
    "int1.5": {"registered": _int15_lhs, "printed": lambda P: _int15_lhs(P, printed=True)},
}


def get_integer_check(check_id: str) -> IntegerCheck:
    try:
        return INTEGER_CHECKS[check_id]
    except KeyError:
        raise UnknownCheckId(f"unknown check id {check_id!r}") from None


def compare_mod(lhs: Fraction | int, rhs: Fraction | int, p: int, power: int) -> tuple[bool, int, int]:
    """(lhs == rhs mod p^power, residue of lhs, residue of rhs)"""
    modulus = p ** power
    left, right = as_residue(lhs, modulus), as_residue(rhs, modulus)
    return left == right, left, right


# q = 1 counterparts of the q-displays, as functions of the parameters
# returning the summands over the same index range as the q-display

def _clausen_counterpart(P, top: int, m: int, r: int) -> list[Fraction]:
    s = P["s"]
    if r == 1 and m in (3, 4, 6):
        named = {
            3: lambda k: Fraction(binom(3 * k, k) * central(k), 108 ** k),
            4: lambda k: Fraction(binom(4 * k, 2 * k) * central(k), 256 ** k),
            6: lambda k: Fraction(binom(6 * k, 3 * k) * binom(3 * k, k), 1728 ** k),
        }[m]
        return [binom(2 * k, k + s) * named(k) for k in range(s, top + 1)]
    x, y = Fraction(r, m), Fraction(m - r, m)
    return [binom(2 * k, k + s) * rising(x, k) * rising(y, k) / (4 ** k * math.factorial(k) ** 2)
            for k in range(s, top + 1)]


def _balanced_counterpart(P) -> list[Fraction]:
    p, m, r, s = P["p"], P["m"], P["r"], P["s"]
    x, y = Fraction(r, m), Fraction(m - r, m)
    return [rising(x, k) * rising(y, k + s) / (math.factorial(k) * math.factorial(k + s)) for k in range(p - s)]


def _cubic_counterpart(P, s: int) -> list[Fraction]:
    return [Fraction(central(k) ** 2 * binom(2 * k, k + s), 64 ** k) for k in range(_n(P) + 1)]


COUNTERPARTS: dict[str, Callable[[Params], list[Fraction]]] = {
    "thm2.1": lambda P: _cubic_counterpart(P, P["s"]),
    "cor2.2": lambda P: _cubic_counterpart(P, 0),
    "remark-cor2.2": lambda P: _cubic_counterpart(P, 0),
    "thm2.3-2.5": lambda P: _clausen_counterpart(P, _n(P), P["m"], P["r"]),
    "thm2.3-2.6": lambda P: _clausen_counterpart(P, P["p"] - 1, P["m"], P["r"]),
    "thm2.3-2.7": lambda P: _clausen_counterpart(P, _n(P), P["m"], P["r"]),
    "conj7.3": lambda P: _clausen_counterpart(P, P["p"] - 1, P["m"], P["r"]),
    "cor2.4": lambda P: _clausen_counterpart(P, _n(P), P["m"], 1),
    "conj7.4": lambda P: _clausen_counterpart(P, P["p"] - 1, P["m"], 1),
    "thm2.6": lambda P: [Fraction(central(k) * binom(2 * k + 2 * P["s"], k + P["s"]), 4 ** (2 * k + P["s"]))
                         for k in range(_n(P) + 1)],
    "thm2.7-2.11": _balanced_counterpart,
    "thm2.7-2.12": _balanced_counterpart,
    "cor2.8": _balanced_counterpart,
    "conj7.5": _balanced_counterpart,
    "conj7.6": _balanced_counterpart,
    "eq1.13": lambda P: [_cyclic(2)(k) for k in range(P["p"])],
    "eq1.14": lambda P: [_cyclic(3)(k) for k in range(P["p"])],
    "eq1.15": lambda P: [_cyclic(4)(k) for k in range(P["p"])],
    "eq1.16": lambda P: [_cyclic(6)(k) for k in range(P["p"])],
}


def classical_summands(check_id: str, params: Params) -> list[Fraction]:
    try:
        build = COUNTERPARTS[check_id]
    except KeyError:
        raise NoClassicalCounterpart(f"{check_id} has no q = 1 counterpart") from None
    return build(params)
