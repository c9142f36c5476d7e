"""
Run identity, q-congruence and integer checks and enumerate the admissible
parameter tuples of each statement.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Optional

from classical import (
    COUNTERPARTS,
    INTEGER,
    INTEGER_CANDIDATES,
    INTEGER_CHECKS,
    classical_summands,
    compare_mod,
    get_integer_check,
)
from displays import (
    CANDIDATES,
    DISPLAYS,
    IDENTITY,
    Q_CONGRUENCE,
    Product,
    SumSpec,
    angles,
    expand,
    get_display,
    half,
    validate,
)
from errors import (
    DenominatorNotInvertible,
    InvalidParams,
    NoClassicalCounterpart,
    NotInvertible,
    PreconditionViolated,
    QCLabError,
    UnknownCheckId,
)
from models import CONJECTURE_SCAN, THEOREM, CheckResult, Status
from polynomials import rf_equal
from qseries import term_at_one
from residues import Modulus, RElem, invert, is_prime, make_ring, reduce

logger = logging.getLogger(__name__)

Q_TO_ONE_SUFFIX = "/q->1"

# Check ids that stand for several displays of one statement
FAMILY_ALIASES = {
    "thm2.3": ("thm2.3-2.5", "thm2.3-2.6", "thm2.3-2.7"),
    "thm2.7": ("thm2.7-2.11", "thm2.7-2.12"),
}

DEFAULT_BOUNDS = {
    "primes": [3, 5, 7],
    "n_max": 4,
    "m_max": 6,
}

WITNESS_WIDTH = 400


@dataclass(frozen=True)
class Case:
    check_id: str
    params: dict = field(hash=False)
    branch: str = "main"
    reason: Optional[str] = None

    @property
    def excluded(self) -> bool:
        return self.reason is not None


def family_of(check_id: str) -> str:
    if check_id in DISPLAYS:
        return DISPLAYS[check_id].family
    if check_id in INTEGER_CHECKS:
        return INTEGER
    raise UnknownCheckId(f"unknown check id {check_id!r}")


def expand_ids(ids: Iterable[str]) -> list[str]:
    out = []
    for check_id in ids:
        for member in FAMILY_ALIASES.get(check_id, (check_id,)):
            family_of(member)
            if member not in out:
                out.append(member)
    return out


def ids_of(family: str) -> list[str]:
    if family == INTEGER:
        return sorted(INTEGER_CHECKS)
    return sorted(i for i, d in DISPLAYS.items() if d.family == family)


def is_conjecture(check_id: str) -> bool:
    return check_id in DISPLAYS and DISPLAYS[check_id].conjecture


def _kind(check_id: str) -> str:
    return CONJECTURE_SCAN if is_conjecture(check_id) else THEOREM


def _clip(text: str) -> str:
    return text if len(text) <= WITNESS_WIDTH else text[:WITNESS_WIDTH] + " ..."


def _result(check_id, params, status, witness=None, started=None, branch=None) -> CheckResult:
    elapsed = time.perf_counter() - started if started is not None else 0.0
    return CheckResult(check_id, dict(params), status, witness, elapsed, _kind(check_id), branch)


def run_identity_check(check_id: str, params: Mapping[str, int]) -> CheckResult:
    """Compare both sides of an identity as exact rational functions"""
    started = time.perf_counter()
    spec = SumSpec(check_id, dict(params))
    try:
        display = validate(spec)
    except PreconditionViolated as e:
        return _result(check_id, params, Status.SKIPPED, str(e), started)
    if display.family != IDENTITY:
        raise InvalidParams(f"{check_id} is not an identity")
    branch = display.branch(spec.params)
    lhs = expand(display.lhs(spec.params))
    rhs = expand(display.rhs(spec.params))
    if rf_equal(lhs, rhs):
        return _result(check_id, params, Status.PASS, None, started, branch)
    diff = lhs - rhs
    logger.debug(f"{check_id} {dict(params)} failed")
    return _result(check_id, params, Status.FAIL, _clip(f"numerator of LHS - RHS: {diff.num.render()}"),
                   started, branch)


def _term_residue(term, ring: Modulus) -> RElem:
    num = ring.one()
    for f in term.num:
        num = num * reduce(f, ring)
    den = ring.one()
    for f in term.den:
        den = den * reduce(f, ring)
    return num * invert(den, ring)


def side_residue(side: Product, ring: Modulus) -> RElem:
    """Residue of a product of sums, summand by summand"""
    total = ring.one()
    for terms in side:
        acc = ring.zero()
        for t in terms:
            if not t.is_zero():
                acc = acc + _term_residue(t, ring)
        total = total * acc
    return total


def _with_p(p: int, params: Mapping[str, int]) -> dict:
    merged = dict(params)
    if "p" in merged and merged["p"] != p:
        raise InvalidParams(f"conflicting primes {p} and {merged['p']}")
    merged["p"] = p
    return merged


def run_q_congruence_check(check_id: str, p: int, params: Optional[Mapping[str, int]] = None) -> CheckResult:
    """Compare both sides modulo [p]^r with r the power of the display"""
    started = time.perf_counter()
    params = _with_p(p, params or {})
    spec = SumSpec(check_id, params)
    try:
        display = validate(spec)
    except PreconditionViolated as e:
        return _result(check_id, params, Status.SKIPPED, str(e), started)
    if display.family != Q_CONGRUENCE:
        raise InvalidParams(f"{check_id} is not a q-congruence")
    branch = display.branch(params)
    ring = make_ring(p, display.power)
    try:
        lhs = side_residue(display.lhs(params), ring)
        rhs = side_residue(display.rhs(params), ring)
    except NotInvertible as e:
        return _result(check_id, params, Status.FAIL, f"denominator not invertible: {e}", started, branch)
    if lhs == rhs:
        return _result(check_id, params, Status.PASS, None, started, branch)
    diff = lhs - rhs
    modulus = f"[{p}]" if display.power == 1 else f"[{p}]^{display.power}"
    return _result(check_id, params, Status.FAIL, _clip(f"LHS - RHS = {diff.render()} (mod {modulus})"),
                   started, branch)


def run_int_congruence_check(check_id: str, p: int, params: Optional[Mapping[str, int]] = None) -> CheckResult:
    """Evaluate an integer sum exactly and compare residues modulo p^e"""
    started = time.perf_counter()
    params = _with_p(p, params or {})
    check = get_integer_check(check_id)
    missing = [name for name in check.params if name not in params]
    if missing:
        raise InvalidParams(f"{check_id} needs {', '.join(missing)}")
    reason = check.hypotheses(params)
    if reason:
        return _result(check_id, params, Status.SKIPPED, f"{check_id} {params}: {reason}", started)
    try:
        ok, left, right = compare_mod(check.lhs(params), check.rhs(params), p, check.power)
    except DenominatorNotInvertible as e:
        return _result(check_id, params, Status.FAIL, f"denominator not invertible: {e}", started)
    if ok:
        return _result(check_id, params, Status.PASS, None, started)
    return _result(check_id, params, Status.FAIL, f"LHS = {left}, expected {right} (mod {p}^{check.power})", started)


def run_case(case: Case) -> CheckResult:
    """Dispatch one enumerated case; excluded cases come back as skipped rows"""
    if case.excluded:
        return CheckResult(case.check_id, dict(case.params), Status.SKIPPED, case.reason, 0.0, _kind(case.check_id),
                           case.branch)
    family = family_of(case.check_id)
    if family == IDENTITY:
        return run_identity_check(case.check_id, case.params)
    params = {k: v for k, v in case.params.items() if k != "p"}
    if family == Q_CONGRUENCE:
        return run_q_congruence_check(case.check_id, case.params["p"], params)
    return run_int_congruence_check(case.check_id, case.params["p"], params)


# Enumeration

def _primes(bounds: Mapping[str, Any]) -> list[int]:
    if "p" in bounds:
        return [bounds["p"]]
    if "primes" in bounds:
        return sorted(bounds["primes"])
    if "prime_max" in bounds:
        return [p for p in range(3, bounds["prime_max"] + 1) if is_prime(p)]
    return list(DEFAULT_BOUNDS["primes"])


CYCLIC_M = (3, 4, 6)
CYCLIC_M_IDS = {"cor2.4", "cor2.8", "conj7.4", "conj7.5", "eq2.8"}


def _choices(check_id: str, name: str, P: dict, bounds: Mapping[str, Any]) -> list[int]:
    if name in bounds:
        return [bounds[name]]
    if name == "p":
        return _primes(bounds)
    n_max = bounds.get("n_max", DEFAULT_BOUNDS["n_max"])
    s_cap = bounds.get("s_max")

    def capped(values):
        return [v for v in values if s_cap is None or v <= s_cap]

    if family_of(check_id) == IDENTITY:
        n = P.get("n", n_max)
        if name == "n":
            start = 1 if check_id in ("lemma4.2a", "lemma4.2b", "lemma4.3", "lemma4.4") else 0
            return list(range(start, n_max + 1))
        if name == "h":
            return list(range(1, n + 1))
        if name == "m":
            if check_id in ("lemma4.3", "lemma4.4"):
                return list(range(0, n - P["h"] + 1))
            if check_id == "qchu-4.19":
                return list(range(P["s"], n + 1))
            return list(range(0, (n if "n" in P else n_max) + 1))
        if name == "s":
            return capped(range(0, (P["m"] if check_id in ("lemma4.3", "lemma4.4") else n) + 1))
        if name in ("i", "r"):
            return list(range(0, n + 1))
        if name in ("a", "b", "c"):
            return list(range(0, n_max + 1))
        raise InvalidParams(f"no range for {name} in {check_id}")

    p = P["p"]
    if name == "m":
        if check_id in CYCLIC_M_IDS:
            return list(CYCLIC_M)
        if check_id == "int1.7":
            return [2, 3, 4, 6]
        return list(range(2, bounds.get("m_max", DEFAULT_BOUNDS["m_max"]) + 1))
    if name == "r":
        m = P["m"]
        if check_id in ("cor2.8", "conj7.5"):
            return sorted({1, m - 1})
        return list(range(1, bounds.get("r_max", m - 1) + 1))
    if name == "k":
        if check_id == "lemma3.1":
            return list(range(0, half(P) + 1))
        return list(range(0, p))
    if name == "s":
        if check_id in ("thm2.3-2.5", "thm2.3-2.6", "thm2.3-2.7", "lemma5.1") and P["m"] % p and P["r"] % P["m"]:
            return capped(range(0, min(angles(P)) + 1))
        if check_id in ("thm2.7-2.11", "thm2.7-2.12", "cor2.8", "conj7.5", "conj7.6") and P["m"] % p:
            return capped(range(0, angles(P)[1] + 1))
        if check_id == "cor2.4":
            return capped(range(0, (p - 1) // P["m"] + 1))
        if check_id in ("conj7.3", "conj7.4"):
            return capped(range(0, p))
        if check_id == "eq6.6":
            return capped(range(0, p - P["k"]))
        return capped(range(0, half(P) + 1))
    raise InvalidParams(f"no range for {name} in {check_id}")


def _param_names(check_id: str) -> tuple[str, ...]:
    if check_id in DISPLAYS:
        return DISPLAYS[check_id].params
    return INTEGER_CHECKS[check_id].params


def _grid(check_id: str, names: tuple[str, ...], bounds: Mapping[str, Any]):
    def walk(i: int, P: dict):
        if i == len(names):
            yield dict(P)
            return
        for value in _choices(check_id, names[i], P, bounds):
            P[names[i]] = value
            yield from walk(i + 1, P)
        P.pop(names[i], None)

    yield from walk(0, {})


def _classify(check_id: str, params: dict) -> tuple[str, Optional[str]]:
    if check_id in DISPLAYS:
        display = DISPLAYS[check_id]
        try:
            reason = display.hypotheses(params)
        except QCLabError as e:
            reason = str(e)
        if reason:
            return "excluded", reason
        return display.branch(params), None
    reason = INTEGER_CHECKS[check_id].hypotheses(params)
    return ("excluded", reason) if reason else ("main", None)


def enumerate_cases(check_id: str, bounds: Optional[Mapping[str, Any]] = None,
                    include_excluded: bool = False) -> list[Case]:
    """
    Every parameter tuple within bounds, tagged with its branch

    Args:
        check_id: a registered id or a family alias such as thm2.3
        bounds: fixed parameters (p, m, r, ...) and maxima (primes, prime_max,
            n_max, m_max, r_max, s_max)
        include_excluded: also return tuples that violate a hypothesis

    Returns:
        list: Cases sorted by (id, params)
    """
    bounds = dict(bounds or {})
    cases = []
    for member in expand_ids([check_id]):
        for params in _grid(member, _param_names(member), bounds):
            branch, reason = _classify(member, params)
            if reason and not include_excluded:
                continue
            cases.append(Case(member, params, branch, reason))
    cases.sort(key=lambda c: (c.check_id, tuple(sorted(c.params.items()))))
    return cases


# q -> 1 and ambiguous displays

def q_to_one_consistency(check_id: str, p: int, params: Optional[Mapping[str, int]] = None,
                         bounds: Optional[Mapping[str, Any]] = None) -> CheckResult:
    """
    Compare each summand of the q-display at q = 1 with the classical summand

    Without params every admissible tuple at p is compared.
    """
    started = time.perf_counter()
    if family_of(check_id) != Q_CONGRUENCE:
        raise NoClassicalCounterpart(f"{check_id} is not a q-congruence")
    if check_id not in COUNTERPARTS:
        raise NoClassicalCounterpart(f"{check_id} has no q = 1 counterpart")
    display = get_display(check_id)
    if params is not None:
        tuples = [_with_p(p, params)]
    else:
        tuples = [c.params for c in enumerate_cases(check_id, {**(bounds or {}), "p": p})]
    result_params = dict(params) if params is not None else {}
    result_params["p"] = p
    row_id = check_id + Q_TO_ONE_SUFFIX
    compared = 0
    for P in tuples:
        reason = display.hypotheses(P)
        if reason:
            if params is not None:
                return _result(row_id, result_params, Status.SKIPPED, reason, started)
            continue
        expected = classical_summands(check_id, P)
        sums = display.lhs(P)
        if len(sums) != 1:
            raise NoClassicalCounterpart(f"{check_id} is not a single sum")
        actual = [term_at_one(t) for t in sums[0]]
        if len(actual) != len(expected):
            return _result(row_id, result_params, Status.FAIL,
                           f"{P}: {len(actual)} summands against {len(expected)}", started)
        for k, (a, b) in enumerate(zip(actual, expected)):
            if a != b:
                return _result(row_id, result_params, Status.FAIL,
                               f"{P}: summand {k} is {a} at q = 1, expected {b}", started)
        compared += 1
    if not compared:
        return _result(row_id, result_params, Status.SKIPPED, "no admissible parameters", started)
    return _result(row_id, result_params, Status.PASS, None, started)


def has_classical_counterpart(check_id: str) -> bool:
    return check_id in COUNTERPARTS


def resolve_display(check_id: str, p: Optional[int] = None, params: Optional[Mapping[str, int]] = None,
                    bounds: Optional[Mapping[str, Any]] = None) -> list[CheckResult]:
    """
    Evaluate every candidate reading of an ambiguous display

    One row per candidate, id "<check>@<candidate>"; pass means the
    candidate holds on every tuple tried.
    """
    if check_id not in CANDIDATES and check_id not in INTEGER_CANDIDATES:
        raise UnknownCheckId(f"{check_id} has a single reading")
    if params is not None:
        tuples = [_with_p(p, params) if p is not None else dict(params)]
    else:
        fixed = dict(bounds or {})
        if p is not None:
            fixed["p"] = p
        tuples = [c.params for c in enumerate_cases(check_id, fixed)]
    rows = []
    if check_id in INTEGER_CANDIDATES:
        check = get_integer_check(check_id)
        for name, lhs in sorted(INTEGER_CANDIDATES[check_id].items()):
            started = time.perf_counter()
            witness = None
            for P in tuples:
                if check.hypotheses(P):
                    continue
                ok, left, right = compare_mod(lhs(P), check.rhs(P), P["p"], check.power)
                if not ok:
                    witness = f"{P}: LHS = {left}, expected {right}"
                    break
            rows.append(_result(f"{check_id}@{name}", {"cases": len(tuples)},
                                Status.FAIL if witness else Status.PASS, witness, started))
        return rows
    display = get_display(check_id)
    for name, rhs in sorted(CANDIDATES[check_id].items()):
        started = time.perf_counter()
        witness = None
        for P in tuples:
            if display.hypotheses(P):
                continue
            if display.family == IDENTITY:
                holds = rf_equal(expand(display.lhs(P)), expand(rhs(P)))
            else:
                ring = make_ring(P["p"], display.power)
                holds = side_residue(display.lhs(P), ring) == side_residue(rhs(P), ring)
            if not holds:
                witness = f"fails at {P}"
                break
        rows.append(_result(f"{check_id}@{name}", {"cases": len(tuples)},
                            Status.FAIL if witness else Status.PASS, witness, started))
    return rows
