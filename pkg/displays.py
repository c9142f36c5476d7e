"""
Registry of the displayed sums: exact left- and right-hand sides for every
check id, with the hypotheses and case split of each statement.

A side is a Product: a list of sums, each a list of factored Terms, whose
value is the product of the sums. Identity checks expand it to an RFunc;
congruence checks reduce it term by term in Q[q]/([p]^r).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce as fold
from operator import mul
from typing import Callable, Mapping, Optional

from errors import InvalidParams, PreconditionViolated, UnknownCheckId
from polynomials import ONE, LPoly, RFunc, X, A as A_VAR, B as B_VAR, qmono
from qseries import Term, poch, qbinom, qfac, sum_terms, term
from residues import frac_residue, is_prime, legendre

Sum = list[Term]
Product = list[Sum]
Params = Mapping[str, int]

IDENTITY = "identity"
Q_CONGRUENCE = "q-congruence"

ZERO_SIDE: Product = [[]]


# Small builders

def qp(e: int, coeff=1) -> LPoly:
    return qmono(e, coeff)


def pq(e: int, d: int, n: int) -> tuple[LPoly, ...]:
    """(q^e; q^d)_n"""
    return poch(qp(e), d, n)


def npq(e: int, d: int, n: int) -> tuple[LPoly, ...]:
    """(-q^e; q^d)_n"""
    return poch(qp(e, -1), d, n)


def sgn(k: int) -> LPoly:
    return LPoly.constant(-1 if k % 2 else 1)


def tri(k: int) -> int:
    """C(k, 2), also for negative k"""
    return k * (k - 1) // 2


def closed(num=(), den=()) -> Product:
    return [[term(num, den)]]


Q_OVER_X = LPoly.monomial(q=1, x=-1)


@dataclass(frozen=True)
class Display:
    check_id: str
    family: str
    summary: str
    params: tuple[str, ...]
    lhs: Callable[[Params], Product]
    rhs: Callable[[Params], Product]
    power: int = 0
    hypotheses: Callable[[Params], Optional[str]] = lambda P: None
    branch: Callable[[Params], str] = lambda P: "main"
    conjecture: bool = False
    optional: tuple[str, ...] = ()


@dataclass(frozen=True)
class SumSpec:
    check_id: str
    params: dict = field(default_factory=dict)


# Residue-class data shared by the p-dependent statements

def half(P: Params) -> int:
    return (P["p"] - 1) // 2


def angles(P: Params) -> tuple[int, int]:
    """(<-r/m>_p, <-(m-r)/m>_p)"""
    p, m, r = P["p"], P["m"], P["r"]
    return frac_residue(-r, m, p), frac_residue(-(m - r), m, p)


QUADRATIC_TWIST = {3: -3, 4: -2, 6: -1}


def twisted_symbol(p: int, m: int) -> int:
    """(-d/p) with d = 3, 2, 1 for m = 3, 4, 6"""
    return legendre(QUADRATIC_TWIST[m], p)


def _exact(num: int, den: int) -> int:
    value, rem = divmod(num, den)
    if rem:
        raise InvalidParams(f"{num}/{den} is not an integer exponent")
    return value


# Hypothesis helpers; each returns a reason string when violated

def _odd_prime(P: Params, minimum: int = 3) -> Optional[str]:
    p = P["p"]
    if p < minimum or not is_prime(p):
        return f"p must be a prime >= {minimum}"
    return None


def _mr(P: Params, r_below_m: bool = False) -> Optional[str]:
    reason = _odd_prime(P)
    if reason:
        return reason
    p, m, r = P["p"], P["m"], P["r"]
    if m < 1 or r < 1:
        return "m and r must be positive"
    if m % p == 0:
        return "p divides m"
    if r % m == 0:
        return "m divides r"
    if r_below_m and r >= m:
        return "r must be below m"
    return None


def _first(*checks) -> Optional[str]:
    for reason in checks:
        if reason:
            return reason
    return None


# Identity family: §4 auxiliary identities

def _lemma41a_lhs(P):
    n = P["n"]
    return [[term(
        [sgn(n - k), qbinom(n, k), poch(A_VAR * qp(n), 1, k), qp(tri(n - k + 1))],
        [poch(A_VAR, 1, k), ONE - X * qp(-k)],
    ) for k in range(n + 1)]]


def _lemma41a_rhs(P):
    n = P["n"]
    return closed([poch(A_VAR * X, 1, n), qfac(1, n)], [poch(A_VAR, 1, n), poch(X * qp(-n), 1, n + 1)])


def _lemma41b_lhs(P):
    m = P["m"]
    return [[term(
        [sgn(m - j), qbinom(m, j), qp(tri(j)), qfac(1, m - j)],
        [poch(X, 1, m - j + 1)],
    ) for j in range(m + 1)]]


def _lemma41b_rhs(P):
    m = P["m"]
    return closed([qp(tri(m + 1))], [ONE - X * qp(m)])


def _eq43_lhs(P):
    m = P["m"]
    return closed([qfac(1, m)], [poch(X, 1, m + 1)])


def _eq43_rhs(P):
    m = P["m"]
    return [[term([qbinom(m, k), sgn(k), qp(tri(k + 1))], [ONE - X * qp(k)]) for k in range(m + 1)]]


A_OVER_X = LPoly.monomial(a=1, x=-1)


def _lemma42_lhs(P):
    n = P["n"]
    return [[term([poch(X, 1, n)]), term([poch(A_OVER_X, 1, n)])]]


def _lemma42a_rhs(P):
    n = P["n"]
    terms = [term([poch(X, 1, n), poch(A_OVER_X, 1, n)])]
    for k in range(n):
        for j in range(k + 1):
            terms.append(term(
                [poch(X, 1, k), poch(A_OVER_X, 1, k), ONE - qp(n), sgn(j), qbinom(k, j), qp(tri(j)),
                 poch(A_VAR * qp(k + j), 1, n - k)],
                [qfac(1, k), ONE - qp(n - k)],
            ))
    return [terms]


def _lemma42b_rhs(P):
    n = P["n"]
    terms = [term([poch(X, 1, n), poch(A_OVER_X, 1, n)]), term([poch(A_VAR, 1, n)])]
    for k in range(1, n):
        for j in range(1, n - k + 1):
            terms.append(term(
                [poch(X, 1, k), poch(A_OVER_X, 1, k), ONE - qp(n), sgn(j), qbinom(n - k - 1, j - 1),
                 qbinom(k + j - 1, j - 1), LPoly.monomial(q=tri(j) + k * j, a=j)],
                [ONE - qp(j)],
            ))
    return [terms]


def _nhms(P):
    n, h, m, s = P["n"], P["h"], P["m"], P["s"]
    if min(n, h, m, s) < 0 or h < 1:
        return "need h >= 1 and n, m, s >= 0"
    if m + h > n:
        return "need h <= n - m"
    if s > m:
        return "need s <= m"
    return None


def _lemma43_lhs(P):
    n, h, m, s = P["n"], P["h"], P["m"], P["s"]
    terms = []
    for j in range(s, m + 1):
        for k in range(s, n + 1):
            terms.append(term(
                [pq(-n, 1, j), pq(-n, 1, k), poch(X, 1, j), poch(X, 1, k),
                 pq(j - m - h + 1, 1, h - 1), pq(k - m - h + 1, 1, h - 1),
                 ONE - qp(k - j), qp(2 * j + k)],
                [qfac(1, j - s), qfac(1, j + s), qfac(1, k - s), qfac(1, k + s)],
            ))
    return [terms]


def _lemma43_rhs(P):
    n, h, m, s = P["n"], P["h"], P["m"], P["s"]
    e = (m * m + 3 * m - s * s + s) // 2 - m * n - m * h - h * h + h
    return closed(
        [qfac(1, n), qfac(1, n), qfac(1, h - 1), poch(X, 1, s), poch(X, 1, m + h),
         poch(LPoly.monomial(q=s + 1, x=-1), 1, n - s - h), LPoly.monomial(q=e, x=n - s - h),
         sgn(m - s - 1)],
        [qfac(1, m - s), qfac(1, m + s), qfac(1, n - s), qfac(1, n + s), qfac(1, n - m - h)],
    )


def _lemma44_lhs(P):
    n, h, m, s = P["n"], P["h"], P["m"], P["s"]
    terms = []
    for j in range(s, m + 1):
        for k in range(m + h, n + 1):
            terms.append(term(
                [pq(-2 * n, 2, j), pq(-2 * n, 2, k), ONE - qp(k - j), qp(j + k + j * h),
                 qbinom(k - m - 1, h - 1), qbinom(m + h - j - 1, h - 1)],
                [qfac(1, j - s), qfac(1, j + s), qfac(1, k - s), qfac(1, k + s)],
            ))
    return [terms]


def _lemma44_rhs(P, sign_shift: int = 0):
    # the sign is (-1)^(n-m); the printed (-1)^(n-m-h) is sign_shift = h
    n, h, m, s = P["n"], P["h"], P["m"], P["s"]
    return closed(
        [sgn(n - m + sign_shift), qfac(2, n), qfac(2, n), npq(1, 1, 2 * n - h),
         qp(m * m - n * n - 2 * m * n + m * h)],
        [qfac(1, m - s), qfac(1, m + s), qfac(2, n - s), qfac(2, n + s), qfac(1, h - 1),
         qfac(2, n - m - h)],
    )


def _qbinom_thm_lhs(P):
    n = P["n"]
    return [[term([sgn(k), qbinom(n, k), LPoly.monomial(q=tri(k + 1), x=k)]) for k in range(n + 1)]]


def _qbinom_thm_rhs(P):
    return closed([poch(X * qp(1), 1, P["n"])])


def _eq414_lhs(P):
    n, i = P["n"], P["i"]
    return [[term([sgn(k), qbinom(n, k), qp(tri(k + 1) - i * k)]) for k in range(n + 1)]]


def _eq414_rhs(P):
    return closed([qfac(1, P["n"])]) if P["i"] == 0 else ZERO_SIDE


def _qchu419_lhs(P):
    n, s, m = P["n"], P["s"], P["m"]
    inner = [term([pq(-2 * n, 2, j), qp(j)], [qfac(1, j - s), qfac(1, j + s)]) for j in range(s, n + 1)]
    outer = [term([pq(-2 * n, 2, m), qp(m)], [qfac(1, m - s), qfac(1, m + s)])]
    return [inner, outer]


def _qchu419_rhs(P):
    n, s, m = P["n"], P["s"], P["m"]
    return closed(
        [sgn(n - m), qfac(2, n), qfac(2, n), npq(1, 1, 2 * n), qp(m * m - n * n - 2 * m * n)],
        [qfac(1, m - s), qfac(1, m + s), qfac(2, n - s), qfac(2, n + s), qfac(2, n - m)],
    )


def _qchu421_lhs(P):
    n, m = P["n"], P["m"]
    return [[term(
        [sgn(h), npq(1, 1, 2 * n - h), qp(tri(h + 1) + 2 * m * h)],
        [qfac(1, h), qfac(2, n - m - h)],
    ) for h in range(n - m + 1)]]


def _qchu421_rhs(P):
    n, m = P["n"], P["m"]
    return closed([qfac(2, m + n)], [qfac(2, n - m), qfac(1, 2 * m)])


def _qdixon_lhs(P):
    a, b, c = P["a"], P["b"], P["c"]
    return [[term(
        [sgn(k), qp((3 * k * k + k) // 2), qbinom(a + b, a + k), qbinom(b + c, b + k), qbinom(c + a, c + k)]
    ) for k in range(-a, a + 1)]]


def _qdixon_rhs(P):
    a, b, c = P["a"], P["b"], P["c"]
    return closed([qbinom(a + b + c, a + b), qbinom(a + b, a)])


# Identity family: the terminating q-Watson formula and the Clausen-type chain

def _watson_ab(P) -> tuple[LPoly, LPoly]:
    a = qp(P["a_exp"]) if "a_exp" in P else A_VAR
    b = qp(P["b_exp"]) if "b_exp" in P else B_VAR
    return a, b


def _watson_lhs(P):
    n = P["n"]
    a, b = _watson_ab(P)
    upper = [qp(-n), a * a * qp(n + 1), b, -b]
    lower = [a * qp(1), -a * qp(1), b * b]
    terms = []
    for k in range(n + 1):
        terms.append(term(
            [f for u in upper for f in poch(u, 1, k)] + [qp(k)],
            list(qfac(1, k)) + [f for v in lower for f in poch(v, 1, k)],
        ))
    return [terms]


def _watson_rhs(P):
    n = P["n"]
    if n % 2:
        return ZERO_SIDE
    a, b = _watson_ab(P)
    h = n // 2
    return closed(
        [b ** n, pq(1, 2, h), poch(a * a * qp(2) * (b ** -2), 2, h)],
        [poch(a * a * qp(2), 2, h), poch(b * b * qp(1), 2, h)],
    )


def _lemma32_lhs(P):
    n, s = P["n"], P["s"]
    return [[term(
        [qbinom(n + k, 2 * k), qbinom(2 * k, k), qbinom(2 * k, k + s), sgn(k), qp(tri(n - k))],
        [npq(1, 1, k), npq(1, 1, k)],
    ) for k in range(n + 1)]]


def _lemma32_rhs(P):
    n, s = P["n"], P["s"]
    if (n - s) % 2 or s > n:
        return ZERO_SIDE
    c = qbinom(n, (n - s) // 2, 2)
    return closed(
        [sgn(s), qp((n * n - s * s) // 2), c, c, qfac(1, n - s), qfac(1, n + s)],
        [qfac(2, n), qfac(2, n)],
    )


def _thm25_lhs(P):
    n, s = P["n"], P["s"]
    sums = []
    for y in (X, Q_OVER_X):
        sums.append([term([pq(-2 * n, 2, k), poch(y, 1, k), qp(k)], [qfac(1, k - s), qfac(1, k + s)])
                     for k in range(s, n + 1)])
    return sums


def _thm25_rhs(P):
    n, s = P["n"], P["s"]
    prefactor = [term([sgn(n), qfac(2, n), qfac(2, n), qp(-n * n)], [qfac(2, n - s), qfac(2, n + s)])]
    inner = [term(
        [sgn(k), qfac(2, n + k), poch(X, 1, k), poch(Q_OVER_X, 1, k), qp(k * k - 2 * n * k)],
        [qfac(2, n - k), qfac(1, k - s), qfac(1, k + s), qfac(1, 2 * k)],
    ) for k in range(s, n + 1)]
    return [prefactor, inner]


def _conj72_lhs(P):
    n, r = P["n"], P["r"]
    first = [term([pq(-n, 1, k), poch(X, 2, k), qp(k)], [qfac(1, k - r), qfac(1, k + r)])
             for k in range(r, n + 1)]
    second = [term([pq(-n, 1, k), poch(X, 2, k), LPoly.monomial(q=(n + 1) * k - tri(k), x=-k)],
                   [qfac(1, k - r), qfac(1, k + r)])
              for k in range(r, n + 1)]
    return [first, second]


Q2_OVER_X = LPoly.monomial(q=2, x=-1)


def _conj72_rhs(P):
    n, r = P["n"], P["r"]
    prefactor = [term(
        [sgn(r), qfac(1, n), qfac(1, n), poch(X, 2, r), LPoly.monomial(q=r, x=-r)],
        [qfac(1, n - r), qfac(1, n + r), poch(Q2_OVER_X, 2, r)],
    )]
    inner = [term(
        [pq(-n, 1, k), pq(n + 1, 1, k), poch(X, 2, k), poch(Q2_OVER_X, 2, k), qp(k)],
        [qfac(1, k - r), qfac(1, k + r), qfac(1, 2 * k)],
    ) for k in range(r, n + 1)]
    return [prefactor, inner]


# Identity family: the equivalent forms used for the reductions

def _lemma61a_lhs(P):
    n, m = P["n"], P["m"]
    return [[term([sgn(k), qbinom(n, k), qbinom(m + k, n), qp(tri(k) - n * k)]) for k in range(n + 1)]]


def _lemma61a_rhs(P):
    n = P["n"]
    return closed([sgn(n), qp(-tri(n + 1))])


def _lemma61b_lhs(P):
    n, s = P["n"], P["s"]
    return [[term(
        [sgn(k), qbinom(n + k, 2 * k, 2), qbinom(2 * k + 2 * s, k + s, 2), qp(k * k - k - 2 * n * k)],
        [npq(2 * k + 1, 1, 2 * s)],
    ) for k in range(n + 1)]]


def _lemma61b_rhs(P):
    n = P["n"]
    return closed([sgn(n), qp(-n * (n + 1))])


def _eq63_lhs(P):
    n, m = P["n"], P["m"]
    return [[term([sgn(k), qbinom(n, k), qbinom(m + n - k, n), qp(tri(k + 1))]) for k in range(n + 1)]]


def _eq64_lhs(P):
    n, s = P["n"], P["s"]
    return [[term(
        [sgn(k), qbinom(n, k, 2), qbinom(2 * n - k, n, 2), pq(2 * n - 2 * k + 1, 2, s), qp(2 * tri(k + 1))],
        [pq(2 * n - 2 * k + 2, 2, s)],
    ) for k in range(n + 1)]]


def _one(P):
    return closed([ONE])


# q-congruence family

def _cubic_den(k: int) -> list:
    """(-q^2; q^2)_k^2 (-q; q)_{2k}^2"""
    return [npq(2, 2, k), npq(2, 2, k), npq(1, 1, 2 * k), npq(1, 1, 2 * k)]


def _lemma31_lhs(P):
    n, k = half(P), P["k"]
    return closed([qbinom(n + k, 2 * k, 2)])


def _lemma31_rhs(P):
    p, k = P["p"], P["k"]
    return closed([sgn(k), qbinom(2 * k, k, 2), qp(k * p - k * k)], [npq(1, 1, 2 * k), npq(1, 1, 2 * k)])


def _thm21_lhs(P):
    n, s = half(P), P["s"]
    return [[term(
        [qbinom(2 * k, k, 2), qbinom(2 * k, k, 2), qbinom(2 * k, k + s, 2), qp(2 * k)], _cubic_den(k)
    ) for k in range(n + 1)]]


def _thm21_rhs(P):
    n, s = half(P), P["s"]
    if (s - n) % 2:
        return ZERO_SIDE
    c = qbinom(n, (n - s) // 2, 4)
    return closed(
        [sgn(s), qp(n - s * s), c, c, qfac(2, n - s), qfac(2, n + s)],
        [qfac(4, n), qfac(4, n)],
    )


def _thm21_branch(P):
    return "closed-form" if (P["s"] - half(P)) % 2 == 0 else "zero"


def _cor22_lhs(P):
    return _thm21_lhs({"p": P["p"], "s": 0})


def _cor22_rhs(P):
    p, n = P["p"], half(P)
    if p % 4 != 1:
        return ZERO_SIDE
    c = qbinom(n, n // 2, 4)
    return closed([qp(n), c, c], [npq(2, 2, n), npq(2, 2, n)])


def _remark22_lhs(P):
    n = half(P)
    return [[term([qbinom(2 * k, k, 2)] * 3 + [qp(k - 2 * k * k)], _cubic_den(k)) for k in range(n + 1)]]


def clausen_term(m: int, r: int, s: int, k: int) -> Term:
    """[2k, k+s]_{q^m} (q^r; q^m)_k (q^(m-r); q^m)_k q^(mk) / (q^2m; q^2m)_k^2"""
    return term(
        [qbinom(2 * k, k + s, m), pq(r, m, k), pq(m - r, m, k), qp(m * k)],
        [qfac(2 * m, k), qfac(2 * m, k)],
    )


def _clausen_sum(P, top: int) -> Product:
    m, r, s = P["m"], P["r"], P["s"]
    return [[clausen_term(m, r, s, k) for k in range(s, top + 1)]]


def _thm23_hyp(P, parity: int):
    reason = _mr(P)
    if reason:
        return reason
    a, b = angles(P)
    s = P["s"]
    if s < 0 or s > min(a, b):
        return f"need 0 <= s <= min({a}, {b})"
    if (a - s - parity) % 2:
        return f"<-r/m>_p = {a} has the wrong parity for s = {s}"
    return None


def _thm23_7_rhs(P, printed: bool = False):
    p, m, s = P["p"], P["m"], P["s"]
    n = half(P)
    a, b = angles(P)
    if printed:
        lead = [qp(m * (s + n))]
    else:
        # two lemma5.1 closed forms; the q^2m-factorial ratio is (-1)^s q^(m s^2) mod [p]
        lead = [sgn(n + s), qp(m * ((p * p - 1) // 4 + s * (p - s)))]
    return closed(
        lead + [pq(m, 2 * m, (a - s) // 2), pq(m, 2 * m, (b - s) // 2), pq(-m * a, m, s), pq(-m * b, m, s)],
        [qfac(2 * m, (a + s) // 2), qfac(2 * m, (b + s) // 2)],
    )


def _cor24_hyp(P):
    reason = _odd_prime(P, 5)
    if reason:
        return reason
    p, m, s = P["p"], P["m"], P["s"]
    if m not in QUADRATIC_TWIST:
        return "m must be 3, 4 or 6"
    if s < 0 or s > (p - 1) // m:
        return f"need 0 <= s <= (p-1)/{m}"
    if (s - (1 + twisted_symbol(p, m)) // 2) % 2:
        return "s has the wrong parity"
    return None


def _cor24_lhs(P):
    return _clausen_sum({"m": P["m"], "r": 1, "s": P["s"]}, half(P))


def _lemma51_hyp(P):
    reason = _mr(P)
    if reason:
        return reason
    a, b = angles(P)
    if P["s"] < 0 or P["s"] > min(a, b):
        return f"need 0 <= s <= min({a}, {b})"
    return None


def _lemma51_lhs(P):
    m, r, s = P["m"], P["r"], P["s"]
    return [[term([pq(m, 2 * m, k), pq(r, m, k), qp(m * k)], [qfac(m, k - s), qfac(m, k + s)])
             for k in range(s, half(P) + 1)]]


def _lemma51_rhs(P, printed: bool = False):
    m, s = P["m"], P["s"]
    a, _ = angles(P)
    if (a - s) % 2:
        return ZERO_SIDE
    exponent = (a + s) // 2 if printed else (a + s) // 2 + s * (a - s)
    return closed(
        [qp(m * exponent), pq(m, 2 * m, (a - s) // 2), pq(-m * a, m, s)],
        [qfac(2 * m, (a + s) // 2)],
    )


def _lemma51_branch(P):
    a, _ = angles(P)
    return "closed-form" if (a - P["s"]) % 2 == 0 else "zero"


def _eq65_hyp(P):
    return _first(_mr(P), None if 0 <= P["k"] <= P["p"] - 1 else "need 0 <= k <= p-1")


def _eq65_lhs(P):
    m, r, k = P["m"], P["r"], P["k"]
    return closed([pq(r, m, k)], [qfac(m, k)])


def _eq65_rhs(P):
    m, k = P["m"], P["k"]
    a, _ = angles(P)
    return closed([sgn(k), qbinom(a, k, m), qp(m * tri(k) - m * k * a)])


def _eq66_hyp(P):
    ok = P["k"] >= 0 and P["s"] >= 0 and P["k"] + P["s"] <= P["p"] - 1
    return _first(_mr(P), None if ok else "need k, s >= 0 and k + s <= p-1")


def _eq66_lhs(P):
    m, r, t = P["m"], P["r"], P["k"] + P["s"]
    return closed([pq(m - r, m, t)], [qfac(m, t)])


def _eq66_rhs(P):
    m, t = P["m"], P["k"] + P["s"]
    a, _ = angles(P)
    return closed([qbinom(a + t, t, m)])


def _thm26_hyp(P):
    return _first(_odd_prime(P), None if 0 <= P["s"] <= half(P) else "need 0 <= s <= (p-1)/2")


def _thm26_lhs(P):
    s = P["s"]
    return [[term([pq(1, 2, k), pq(1, 2, k + s)], [qfac(2, k), qfac(2, k + s)]) for k in range(half(P) + 1)]]


def _thm26_rhs(P):
    p = P["p"]
    return closed([LPoly.constant(legendre(-1, p)), qp((1 - p * p) // 4)])


def balanced_sum(m: int, r: int, s: int, p: int) -> Product:
    """sum_{k=0}^{p-s-1} (q^r; q^m)_k (q^(m-r); q^m)_(k+s) / ((q^m; q^m)_k (q^m; q^m)_(k+s))"""
    return [[term([pq(r, m, k), pq(m - r, m, k + s)], [qfac(m, k), qfac(m, k + s)])
             for k in range(p - s)]]


def _thm27_hyp(P, pm_one: bool = False):
    reason = _mr(P, r_below_m=True)
    if reason:
        return reason
    _, b = angles(P)
    if P["s"] < 0 or P["s"] > b:
        return f"need 0 <= s <= {b}"
    if pm_one and P["p"] % P["m"] not in (1, P["m"] - 1):
        return "need p = +-1 (mod m)"
    return None


def _thm27_lhs(P):
    return balanced_sum(P["m"], P["r"], P["s"], P["p"])


def _thm211_rhs(P):
    a, _ = angles(P)
    return closed([sgn(a), qp(-P["m"] * a * (a + 1) // 2)])


def _thm212_rhs(P):
    p, m, r = P["p"], P["m"], P["r"]
    a, _ = angles(P)
    return closed([sgn(a), qp(_exact(r * (m - r) * (1 - p * p), 2 * m))])


CYCLIC_EXPONENT = {3: (1, 3), 4: (3, 8), 6: (5, 12)}


def cyclic_exponent(p: int, m: int, printed: bool = False) -> int:
    """Exponent of q in the m = 3, 4, 6 evaluations; printed=True is (1-p^2)/4 for m = 3"""
    if printed and m == 3:
        return _exact(1 - p * p, 4)
    num, den = CYCLIC_EXPONENT[m]
    return _exact(num * (1 - p * p), den)


def _cor28_hyp(P):
    reason = _odd_prime(P, 5)
    if reason:
        return reason
    m, r = P["m"], P["r"]
    if m not in QUADRATIC_TWIST or r not in (1, m - 1):
        return "need m in {3, 4, 6} and r in {1, m-1}"
    return _thm27_hyp(P)


def _cor28_rhs(P, printed: bool = False):
    p, m = P["p"], P["m"]
    return closed([LPoly.constant(twisted_symbol(p, m)), qp(cyclic_exponent(p, m, printed))])


def _conj73_hyp(P):
    reason = _mr(P)
    if reason:
        return reason
    a, _ = angles(P)
    s = P["s"]
    if s < 0 or s > P["p"] - 1:
        return "need 0 <= s <= p-1"
    if (a - s - 1) % 2:
        return f"<-r/m>_p = {a} has the wrong parity for s = {s}"
    return None


def _termwise_branch(P):
    a, b = angles(P)
    return "termwise-zero" if P["s"] > min(a, b) else "main"


def _conj74_hyp(P):
    reason = _odd_prime(P, 5)
    if reason:
        return reason
    p, m, s = P["p"], P["m"], P["s"]
    if m not in QUADRATIC_TWIST:
        return "m must be 3, 4 or 6"
    if s < 0 or s > p - 1:
        return "need 0 <= s <= p-1"
    if (s - (1 + twisted_symbol(p, m)) // 2) % 2:
        return "s has the wrong parity"
    return None


def _conj74_lhs(P):
    return _clausen_sum({"m": P["m"], "r": 1, "s": P["s"]}, P["p"] - 1)


def _eq113_lhs(P):
    return [[term([pq(1, 2, k), pq(1, 2, k)], [qfac(2, k), qfac(2, k)]) for k in range(P["p"])]]


def _cyclic_lhs(m: int):
    def build(P):
        return [[term([pq(1, m, k), pq(m - 1, m, k)], [qfac(m, k), qfac(m, k)]) for k in range(P["p"])]]
    return build


def _cyclic_rhs(m: int):
    def build(P):
        p = P["p"]
        return closed([LPoly.constant(twisted_symbol(p, m)), qp(cyclic_exponent(p, m))])
    return build


def _nonneg(*names):
    def check(P):
        if any(P[name] < 0 for name in names):
            return f"{', '.join(names)} must be nonnegative"
        return None
    return check


def _ordered(*names):
    """names[0] <= names[1] <= ..., all nonnegative"""
    def check(P):
        values = [P[name] for name in names]
        if values[0] < 0 or any(x > y for x, y in zip(values, values[1:])):
            return "need 0 <= " + " <= ".join(names)
        return None
    return check


def _at_least_one(name):
    def check(P):
        return None if P[name] >= 1 else f"{name} must be positive"
    return check


def _parity_branch(P, a: str, b: str) -> str:
    return "closed-form" if (P[a] - P[b]) % 2 == 0 else "zero"


DISPLAYS: dict[str, Display] = {}


def _register(*displays: Display) -> None:
    for d in displays:
        DISPLAYS[d.check_id] = d


_register(
    Display("lemma4.1a", IDENTITY, "partial fractions of (ax;q)_n (q;q)_n / ((a;q)_n (xq^-n;q)_(n+1))",
            ("n",), _lemma41a_lhs, _lemma41a_rhs, hypotheses=_nonneg("n")),
    Display("lemma4.1b", IDENTITY, "partial fractions of q^C(m+1,2)/(1 - x q^m)",
            ("m",), _lemma41b_lhs, _lemma41b_rhs, hypotheses=_nonneg("m")),
    Display("eq4.3", IDENTITY, "partial fractions of (q;q)_m / (x;q)_(m+1)",
            ("m",), _eq43_lhs, _eq43_rhs, hypotheses=_nonneg("m")),
    Display("lemma4.2a", IDENTITY, "(x;q)_n + (a/x;q)_n expanded over (x)_k (a/x)_k, inner sum form",
            ("n",), _lemma42_lhs, _lemma42a_rhs, hypotheses=_at_least_one("n")),
    Display("lemma4.2b", IDENTITY, "(x;q)_n + (a/x;q)_n expanded over (x)_k (a/x)_k, double sum form",
            ("n",), _lemma42_lhs, _lemma42b_rhs, hypotheses=_at_least_one("n")),
    Display("lemma4.3", IDENTITY, "double sum in x with (q^-n;q)_j (q^-n;q)_k weights",
            ("n", "h", "m", "s"), _lemma43_lhs, _lemma43_rhs, hypotheses=_nhms),
    Display("lemma4.4", IDENTITY, "double sum with (q^-2n;q^2) weights and q-binomial kernels",
            ("n", "h", "m", "s"), _lemma44_lhs, _lemma44_rhs, hypotheses=_nhms),
    Display("qbinom-thm", IDENTITY, "finite q-binomial theorem",
            ("n",), _qbinom_thm_lhs, _qbinom_thm_rhs, hypotheses=_nonneg("n")),
    Display("eq4.14", IDENTITY, "alternating q-binomial sums with q^(-ik) vanish for 1 <= i <= n",
            ("n", "i"), _eq414_lhs, _eq414_rhs, hypotheses=_ordered("i", "n"),
            branch=lambda P: "i=0" if P["i"] == 0 else "zero"),
    Display("qchu-4.19", IDENTITY, "q-Chu-Vandermonde evaluation with (q^-2n;q^2)_j",
            ("n", "s", "m"), _qchu419_lhs, _qchu419_rhs, hypotheses=_ordered("s", "m", "n")),
    Display("qchu-4.21", IDENTITY, "q-Chu-Vandermonde evaluation with (-q;q)_(2n-h)",
            ("n", "m"), _qchu421_lhs, _qchu421_rhs, hypotheses=_ordered("m", "n")),
    Display("qdixon", IDENTITY, "terminating q-Dixon identity",
            ("a", "b", "c"), _qdixon_lhs, _qdixon_rhs, hypotheses=_nonneg("a", "b", "c")),
    Display("andrews-watson", IDENTITY, "terminating q-Watson 4phi3 summation",
            ("n",), _watson_lhs, _watson_rhs, hypotheses=_nonneg("n"),
            branch=lambda P: "zero" if P["n"] % 2 else "closed-form", optional=("a_exp", "b_exp")),
    Display("lemma3.2", IDENTITY, "triple q-binomial sum with q^C(n-k,2)/(-q;q)_k^2",
            ("n", "s"), _lemma32_lhs, _lemma32_rhs, hypotheses=_ordered("s", "n"),
            branch=lambda P: _parity_branch(P, "n", "s")),
    Display("thm2.5", IDENTITY, "q-Clausen-type product of two terminating sums",
            ("n", "s"), _thm25_lhs, _thm25_rhs, hypotheses=_ordered("s", "n")),
    Display("conj7.2", IDENTITY, "Clausen-type product with (x;q^2)_k and q^-n",
            ("n", "r"), _conj72_lhs, _conj72_rhs, hypotheses=_ordered("r", "n"), conjecture=True),
    Display("lemma6.1a", IDENTITY, "alternating sum of [n,k][m+k,n] q^(C(k,2)-nk)",
            ("n", "m"), _lemma61a_lhs, _lemma61a_rhs, hypotheses=_nonneg("n", "m")),
    Display("lemma6.1b", IDENTITY, "alternating sum with base q^2 binomials over (-q^(2k+1);q)_2s",
            ("n", "s"), _lemma61b_lhs, _lemma61b_rhs, hypotheses=_ordered("s", "n")),
    Display("eq6.3", IDENTITY, "reflected form of the [n,k][m+k,n] sum",
            ("n", "m"), _eq63_lhs, _one, hypotheses=_nonneg("n", "m")),
    Display("eq6.4", IDENTITY, "reflected form of the base q^2 sum",
            ("n", "s"), _eq64_lhs, _one, hypotheses=_ordered("s", "n")),
)

_register(
    Display("lemma3.1", Q_CONGRUENCE, "[(p-1)/2 + k, 2k]_{q^2} against [2k, k]_{q^2}",
            ("p", "k"), _lemma31_lhs, _lemma31_rhs, power=2,
            hypotheses=lambda P: _first(_odd_prime(P), None if 0 <= P["k"] <= half(P) else "need 0 <= k <= (p-1)/2")),
    Display("thm2.1", Q_CONGRUENCE, "cubic q-binomial sum with [2k, k+s]_{q^2}",
            ("p", "s"), _thm21_lhs, _thm21_rhs, power=2,
            hypotheses=lambda P: _first(_odd_prime(P), None if 0 <= P["s"] <= half(P) else "need 0 <= s <= (p-1)/2"),
            branch=_thm21_branch),
    Display("cor2.2", Q_CONGRUENCE, "cubic q-binomial sum, s = 0",
            ("p",), _cor22_lhs, _cor22_rhs, power=2, hypotheses=_odd_prime,
            branch=lambda P: "closed-form" if P["p"] % 4 == 1 else "zero"),
    Display("remark-cor2.2", Q_CONGRUENCE, "cubic sum with q^(k-2k^2) vanishes for p = 3 (mod 4)",
            ("p",), _remark22_lhs, lambda P: ZERO_SIDE, power=1,
            hypotheses=lambda P: _first(_odd_prime(P), None if P["p"] % 4 == 3 else "need p = 3 (mod 4)")),
    Display("thm2.3-2.5", Q_CONGRUENCE, "Clausen-type sum to (p-1)/2 vanishes",
            ("p", "m", "r", "s"), lambda P: _clausen_sum(P, half(P)), lambda P: ZERO_SIDE, power=2,
            hypotheses=lambda P: _thm23_hyp(P, 1)),
    Display("thm2.3-2.6", Q_CONGRUENCE, "Clausen-type sum to p-1 vanishes",
            ("p", "m", "r", "s"), lambda P: _clausen_sum(P, P["p"] - 1), lambda P: ZERO_SIDE, power=2,
            hypotheses=lambda P: _thm23_hyp(P, 1)),
    Display("thm2.3-2.7", Q_CONGRUENCE,
            "Clausen-type sum to (p-1)/2 against the product over both residues <-r/m>_p, <-(m-r)/m>_p",
            ("p", "m", "r", "s"), lambda P: _clausen_sum(P, half(P)), _thm23_7_rhs, power=1,
            hypotheses=lambda P: _thm23_hyp(P, 0)),
    Display("cor2.4", Q_CONGRUENCE, "Clausen-type sums for m = 3, 4, 6 and r = 1 vanish",
            ("p", "m", "s"), _cor24_lhs, lambda P: ZERO_SIDE, power=2, hypotheses=_cor24_hyp),
    Display("lemma5.1", Q_CONGRUENCE, "sum with (q^m; q^2m)_k (q^r; q^m)_k",
            ("p", "m", "r", "s"), _lemma51_lhs, _lemma51_rhs, power=1, hypotheses=_lemma51_hyp,
            branch=_lemma51_branch),
    Display("eq6.5", Q_CONGRUENCE, "(q^r; q^m)_k / (q^m; q^m)_k as a q-binomial",
            ("p", "m", "r", "k"), _eq65_lhs, _eq65_rhs, power=1, hypotheses=_eq65_hyp),
    Display("eq6.6", Q_CONGRUENCE, "(q^(m-r); q^m)_t / (q^m; q^m)_t as a q-binomial",
            ("p", "m", "r", "k", "s"), _eq66_lhs, _eq66_rhs, power=1, hypotheses=_eq66_hyp),
    Display("thm2.6", Q_CONGRUENCE, "sum of (q;q^2)_k (q;q^2)_(k+s) / ((q^2;q^2)_k (q^2;q^2)_(k+s))",
            ("p", "s"), _thm26_lhs, _thm26_rhs, power=2, hypotheses=_thm26_hyp),
    Display("thm2.7-2.11", Q_CONGRUENCE, "balanced sum against (-1)^a q^(-m a (a+1)/2)",
            ("p", "m", "r", "s"), _thm27_lhs, _thm211_rhs, power=1, hypotheses=_thm27_hyp),
    Display("thm2.7-2.12", Q_CONGRUENCE, "balanced sum for p = +-1 (mod m)",
            ("p", "m", "r", "s"), _thm27_lhs, _thm212_rhs, power=1,
            hypotheses=lambda P: _thm27_hyp(P, pm_one=True)),
    Display("cor2.8", Q_CONGRUENCE, "balanced sums for m = 3, 4, 6 against Legendre symbols",
            ("p", "m", "r", "s"), _thm27_lhs, _cor28_rhs, power=1, hypotheses=_cor28_hyp),
    Display("eq1.13", Q_CONGRUENCE, "sum of (q;q^2)_k^2 / (q^2;q^2)_k^2 to p-1",
            ("p",), _eq113_lhs, _thm26_rhs, power=2, hypotheses=_odd_prime),
    Display("eq1.14", Q_CONGRUENCE, "sum of (q;q^3)_k (q^2;q^3)_k / (q^3;q^3)_k^2 to p-1",
            ("p",), _cyclic_lhs(3), _cyclic_rhs(3), power=1, hypotheses=lambda P: _odd_prime(P, 5)),
    Display("eq1.15", Q_CONGRUENCE, "sum of (q;q^4)_k (q^3;q^4)_k / (q^4;q^4)_k^2 to p-1",
            ("p",), _cyclic_lhs(4), _cyclic_rhs(4), power=1, hypotheses=lambda P: _odd_prime(P, 5)),
    Display("eq1.16", Q_CONGRUENCE, "sum of (q;q^6)_k (q^5;q^6)_k / (q^6;q^6)_k^2 to p-1",
            ("p",), _cyclic_lhs(6), _cyclic_rhs(6), power=1, hypotheses=lambda P: _odd_prime(P, 5)),
    Display("conj7.3", Q_CONGRUENCE, "Clausen-type sum to p-1 vanishes for every s <= p-1 of the right parity",
            ("p", "m", "r", "s"), lambda P: _clausen_sum(P, P["p"] - 1), lambda P: ZERO_SIDE, power=2,
            hypotheses=_conj73_hyp, branch=_termwise_branch, conjecture=True),
    Display("conj7.4", Q_CONGRUENCE, "Clausen-type sums for m = 3, 4, 6 to p-1 vanish",
            ("p", "m", "s"), _conj74_lhs, lambda P: ZERO_SIDE, power=2, hypotheses=_conj74_hyp,
            branch=lambda P: _termwise_branch({**P, "r": 1}), conjecture=True),
    Display("conj7.5", Q_CONGRUENCE, "balanced sums for m = 3, 4, 6 modulo [p]^2",
            ("p", "m", "r", "s"), _thm27_lhs, _cor28_rhs, power=2, hypotheses=_cor28_hyp, conjecture=True),
    Display("conj7.6", Q_CONGRUENCE, "balanced sum for p = +-1 (mod m) modulo [p]^2",
            ("p", "m", "r", "s"), _thm27_lhs, _thm212_rhs, power=2,
            hypotheses=lambda P: _thm27_hyp(P, pm_one=True), conjecture=True),
)

# Printed readings that differ from the registered forms; resolve_display compares them
CANDIDATES: dict[str, dict[str, Callable[[Params], Product]]] = {
    "thm2.3-2.7": {"registered": _thm23_7_rhs, "printed": lambda P: _thm23_7_rhs(P, printed=True)},
    "cor2.8": {"registered": _cor28_rhs, "printed": lambda P: _cor28_rhs(P, printed=True)},
    "lemma5.1": {"registered": _lemma51_rhs, "printed": lambda P: _lemma51_rhs(P, printed=True)},
    "lemma4.4": {"registered": _lemma44_rhs, "printed": lambda P: _lemma44_rhs(P, sign_shift=P["h"])},
}


def get_display(check_id: str) -> Display:
    try:
        return DISPLAYS[check_id]
    except KeyError:
        raise UnknownCheckId(f"unknown check id {check_id!r}") from None


def validate(spec: SumSpec) -> Display:
    """Check parameter names and types, then the statement's hypotheses"""
    display = get_display(spec.check_id)
    missing = [name for name in display.params if name not in spec.params]
    if missing:
        raise InvalidParams(f"{spec.check_id} needs {', '.join(missing)}")
    allowed = set(display.params) | set(display.optional)
    extra = [name for name in spec.params if name not in allowed]
    if extra:
        raise InvalidParams(f"{spec.check_id} does not take {', '.join(extra)}")
    for name, value in spec.params.items():
        if isinstance(value, bool) or not isinstance(value, int):
            raise InvalidParams(f"parameter {name} must be an integer, got {value!r}")
    reason = display.hypotheses(spec.params)
    if reason:
        raise PreconditionViolated(f"{spec.check_id} {dict(spec.params)}: {reason}")
    return display


def expand(side: Product) -> RFunc:
    return fold(mul, (sum_terms(s) for s in side), RFunc(ONE))


def lhs_product(spec: SumSpec) -> Product:
    return validate(spec).lhs(spec.params)


def rhs_product(spec: SumSpec) -> Product:
    return validate(spec).rhs(spec.params)


def build_lhs(spec: SumSpec) -> RFunc:
    """Exact left-hand side of the display"""
    return expand(lhs_product(spec))


def build_rhs(spec: SumSpec) -> RFunc:
    """Exact right-hand side; zero for the vanishing displays"""
    return expand(rhs_product(spec))
