import pytest

from classical import INTEGER
from displays import IDENTITY, Q_CONGRUENCE
from errors import InvalidParams, NoClassicalCounterpart, UnknownCheckId
from models import CONJECTURE_SCAN, THEOREM, Status
from verifier import (
    Case,
    enumerate_cases,
    expand_ids,
    family_of,
    has_classical_counterpart,
    ids_of,
    q_to_one_consistency,
    resolve_display,
    run_case,
    run_identity_check,
    run_int_congruence_check,
    run_q_congruence_check,
)


def _svalues(cases, check_id=None):
    return [c.params['s'] for c in cases if check_id is None or c.check_id == check_id]


class TestLookup:

    def test_family_of(self):
        assert family_of('thm2.5') == IDENTITY
        assert family_of('thm2.1') == Q_CONGRUENCE
        assert family_of('int1.3') == INTEGER

    def test_unknown(self):
        with pytest.raises(UnknownCheckId):
            family_of('thm0.0')

    def test_aliases(self):
        assert expand_ids(['thm2.3']) == ['thm2.3-2.5', 'thm2.3-2.6', 'thm2.3-2.7']
        assert expand_ids(['thm2.7', 'thm2.7-2.11']) == ['thm2.7-2.11', 'thm2.7-2.12']

    def test_ids_of(self):
        assert 'int2.4' in ids_of(INTEGER)
        assert 'thm2.5' in ids_of(IDENTITY)
        assert 'int2.4' not in ids_of(Q_CONGRUENCE)


class TestIdentityChecks:

    @pytest.mark.parametrize('check_id,params', [
        ('andrews-watson', {'n': 3, 'a_exp': 2, 'b_exp': 3}),
        ('andrews-watson', {'n': 2}),
        ('thm2.5', {'n': 1, 's': 0}),
        ('thm2.5', {'n': 2, 's': 1}),
        ('lemma4.3', {'n': 2, 'h': 1, 'm': 1, 's': 0}),
        ('lemma4.4', {'n': 2, 'h': 1, 'm': 1, 's': 1}),
        ('eq4.14', {'n': 2, 'i': 0}),
        ('eq4.14', {'n': 3, 'i': 2}),
        ('qbinom-thm', {'n': 3}),
        ('qdixon', {'a': 1, 'b': 1, 'c': 2}),
        ('lemma3.2', {'n': 3, 's': 1}),
        ('lemma3.2', {'n': 3, 's': 0}),
        ('lemma4.1a', {'n': 2}),
        ('lemma4.1b', {'m': 2}),
        ('eq4.3', {'m': 2}),
        ('lemma4.2a', {'n': 2}),
        ('lemma4.2b', {'n': 3}),
        ('qchu-4.19', {'n': 2, 's': 1, 'm': 1}),
        ('qchu-4.21', {'n': 2, 'm': 1}),
        ('lemma6.1a', {'n': 2, 'm': 1}),
        ('lemma6.1b', {'n': 2, 's': 1}),
        ('eq6.3', {'n': 2, 'm': 1}),
        ('eq6.4', {'n': 2, 's': 1}),
    ])
    def test_passes(self, check_id, params):
        result = run_identity_check(check_id, params)
        assert result.status is Status.PASS, result.witness

    def test_branch(self):
        assert run_identity_check('andrews-watson', {'n': 3}).branch == 'zero'
        assert run_identity_check('lemma3.2', {'n': 3, 's': 0}).branch == 'zero'

    def test_conjecture_rows_are_tagged(self):
        assert run_identity_check('conj7.2', {'n': 1, 'r': 0}).kind == CONJECTURE_SCAN
        assert run_identity_check('thm2.5', {'n': 1, 's': 0}).kind == THEOREM

    def test_precondition(self):
        result = run_identity_check('thm2.5', {'n': 1, 's': 2})
        assert result.status is Status.SKIPPED
        assert 'need 0 <= s <= n' in result.witness

    def test_wrong_family(self):
        with pytest.raises(InvalidParams):
            run_identity_check('thm2.1', {'p': 3, 's': 0})


class TestQCongruenceChecks:

    def test_cubic_sum_for_three(self):
        result = run_q_congruence_check('cor2.2', 3)
        assert result.status is Status.PASS
        assert result.params == {'p': 3}

    def test_thm26_for_three(self):
        assert run_q_congruence_check('thm2.6', 3, {'s': 0}).status is Status.PASS

    @pytest.mark.parametrize('s,branch', [(0, 'closed-form'), (1, 'zero'), (2, 'closed-form')])
    def test_thm21_branches(self, s, branch):
        result = run_q_congruence_check('thm2.1', 5, {'s': s})
        assert result.status is Status.PASS, result.witness
        assert result.branch == branch

    @pytest.mark.parametrize('check_id,p,params', [
        ('lemma3.1', 5, {'k': 2}),
        ('remark-cor2.2', 7, {}),
        ('thm2.3-2.5', 5, {'m': 3, 'r': 1, 's': 0}),
        ('thm2.3-2.6', 5, {'m': 3, 'r': 1, 's': 0}),
        ('thm2.3-2.7', 5, {'m': 3, 'r': 1, 's': 1}),
        ('thm2.3-2.7', 7, {'m': 2, 'r': 1, 's': 1}),
        ('thm2.3-2.7', 11, {'m': 3, 'r': 1, 's': 1}),
        ('cor2.4', 7, {'m': 3, 's': 1}),
        ('lemma5.1', 5, {'m': 3, 'r': 1, 's': 0}),
        ('lemma5.1', 5, {'m': 3, 'r': 1, 's': 1}),
        ('lemma5.1', 11, {'m': 3, 'r': 1, 's': 1}),
        ('eq6.5', 5, {'m': 3, 'r': 1, 'k': 2}),
        ('eq6.6', 5, {'m': 3, 'r': 1, 'k': 1, 's': 1}),
        ('thm2.7-2.11', 5, {'m': 3, 'r': 1, 's': 0}),
        ('thm2.7-2.12', 7, {'m': 3, 'r': 1, 's': 0}),
        ('cor2.8', 5, {'m': 3, 'r': 1, 's': 1}),
        ('eq1.13', 5, {}),
        ('eq1.14', 5, {}),
        ('eq1.15', 7, {}),
        ('eq1.16', 5, {}),
    ])
    def test_passes(self, check_id, p, params):
        result = run_q_congruence_check(check_id, p, params)
        assert result.status is Status.PASS, result.witness

    def test_precondition(self):
        result = run_q_congruence_check('remark-cor2.2', 5)
        assert result.status is Status.SKIPPED
        assert 'p = 3 (mod 4)' in result.witness

    def test_conflicting_primes(self):
        with pytest.raises(InvalidParams):
            run_q_congruence_check('cor2.2', 5, {'p': 7})


class TestIntegerChecks:

    @pytest.mark.parametrize('check_id,p,params', [
        ('int1.1', 5, {}),
        ('int1.2', 3, {}),
        ('int1.3', 5, {}),
        ('int1.3', 13, {}),
        ('int1.4', 5, {}),
        ('int1.5', 5, {}),
        ('int1.6', 7, {}),
        ('int1.7', 5, {'m': 3, 'r': 1}),
        ('int1.8', 5, {}),
        ('int1.9', 5, {}),
        ('int1.10', 7, {}),
        ('int1.11', 7, {}),
        ('int1.12', 3, {'s': 0}),
        ('int1.12', 5, {'s': 0}),
        ('int2.1', 5, {'s': 1}),
        ('int2.4', 5, {}),
        ('eq2.8', 7, {'m': 4}),
    ])
    def test_passes(self, check_id, p, params):
        result = run_int_congruence_check(check_id, p, params)
        assert result.status is Status.PASS, result.witness

    def test_int11_excludes_three(self):
        assert run_int_congruence_check('int1.1', 3).status is Status.SKIPPED

    def test_missing_parameter(self):
        with pytest.raises(InvalidParams):
            run_int_congruence_check('int1.12', 5)


class TestEnumeration:

    def test_thm21_branches(self):
        cases = enumerate_cases('thm2.1', {'p': 5})
        assert _svalues(cases) == [0, 1, 2]
        assert [c.branch for c in cases] == ['closed-form', 'zero', 'closed-form']

    def test_thm23_s_range(self):
        cases = enumerate_cases('thm2.3', {'p': 5, 'm': 3, 'r': 1})
        assert _svalues(cases, 'thm2.3-2.5') == [0]
        assert _svalues(cases, 'thm2.3-2.7') == [1]
        everything = enumerate_cases('thm2.3', {'p': 5, 'm': 3, 'r': 1}, include_excluded=True)
        assert max(_svalues(everything)) == 1

    def test_cor28_s_range(self):
        assert _svalues(enumerate_cases('cor2.8', {'p': 5, 'm': 3, 'r': 1})) == [0, 1]

    def test_excluded_cases_are_kept_on_request(self):
        cases = enumerate_cases('thm2.3-2.5', {'p': 5, 'm': 3, 'r': 1}, include_excluded=True)
        excluded = [c for c in cases if c.excluded]
        assert [c.params['s'] for c in excluded] == [1]
        assert run_case(excluded[0]).status is Status.SKIPPED

    def test_sorted_output(self):
        cases = enumerate_cases('thm2.7', {'primes': [5, 7], 'm_max': 4})
        keys = [(c.check_id, tuple(sorted(c.params.items()))) for c in cases]
        assert keys == sorted(keys)

    def test_integer_prime_range(self):
        cases = enumerate_cases('int1.2', {'prime_max': 13})
        assert [c.params['p'] for c in cases] == [3, 5, 7, 11, 13]

    def test_identity_grid(self):
        cases = enumerate_cases('thm2.5', {'n_max': 2})
        assert [(c.params['n'], c.params['s']) for c in cases] == [(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2)]

    def test_s_cap(self):
        cases = enumerate_cases('thm2.1', {'p': 7, 's_max': 1})
        assert _svalues(cases) == [0, 1]

    def test_run_case_dispatch(self):
        case = Case('int1.3', {'p': 5})
        assert run_case(case).status is Status.PASS

    @pytest.mark.parametrize('check_id', ['thm2.1', 'lemma3.1', 'lemma5.1', 'thm2.6', 'cor2.4'])
    def test_grid_passes(self, check_id):
        for case in enumerate_cases(check_id, {'primes': [5, 7], 'm_max': 4}):
            result = run_case(case)
            assert result.status is Status.PASS, (case, result.witness)

    @pytest.mark.parametrize('check_id', ['lemma5.1', 'thm2.3-2.7'])
    def test_positive_shift_grid(self, check_id):
        grid = enumerate_cases(check_id, {'primes': [5, 7, 11], 'm_max': 4, 's_max': 2})
        cases = [c for c in grid if c.params['s'] >= 1]
        assert {c.params['s'] for c in cases} == {1, 2}
        for case in cases:
            result = run_case(case)
            assert result.status is Status.PASS, (case, result.witness)

    @pytest.mark.slow
    @pytest.mark.parametrize('check_id', [
        'thm2.1', 'cor2.2', 'lemma3.1', 'thm2.3', 'cor2.4', 'lemma5.1', 'thm2.6', 'thm2.7', 'cor2.8',
        'eq1.13', 'eq1.14', 'eq1.15', 'eq1.16',
    ])
    def test_acceptance_grid(self, check_id):
        for case in enumerate_cases(check_id, {'primes': [3, 5, 7, 11, 13], 'm_max': 8}):
            result = run_case(case)
            assert result.status is Status.PASS, (case, result.witness)


class TestQToOne:

    def test_cubic_summand(self):
        result = q_to_one_consistency('cor2.2', 5)
        assert result.status is Status.PASS
        assert result.id == 'cor2.2/q->1'

    @pytest.mark.parametrize('check_id,p', [('thm2.6', 5), ('thm2.6', 7), ('cor2.4', 7), ('cor2.4', 5),
                                            ('thm2.1', 5), ('thm2.3-2.5', 7), ('eq1.14', 7), ('thm2.7-2.11', 5)])
    def test_counterparts(self, check_id, p):
        result = q_to_one_consistency(check_id, p, bounds={'m_max': 4})
        assert result.status is Status.PASS, result.witness

    def test_single_tuple(self):
        assert q_to_one_consistency('thm2.6', 5, params={'s': 0}).status is Status.PASS

    def test_no_counterpart(self):
        assert not has_classical_counterpart('lemma3.1')
        with pytest.raises(NoClassicalCounterpart):
            q_to_one_consistency('lemma3.1', 5)
        with pytest.raises(NoClassicalCounterpart):
            q_to_one_consistency('thm2.5', 5)


class TestResolve:

    def test_cor28_exponent(self):
        rows = {r.id: r for r in resolve_display('cor2.8', bounds={'primes': [5, 7]})}
        assert rows['cor2.8@registered'].status is Status.PASS
        assert rows['cor2.8@printed'].status is Status.FAIL

    def test_thm23_7_prefactor(self):
        rows = {r.id: r for r in resolve_display('thm2.3-2.7', bounds={'primes': [5, 7], 'm_max': 4})}
        assert rows['thm2.3-2.7@registered'].status is Status.PASS
        assert rows['thm2.3-2.7@printed'].status is Status.FAIL

    def test_lemma51_exponent(self):
        rows = {r.id: r for r in resolve_display('lemma5.1', bounds={'primes': [5, 7], 'm_max': 4})}
        assert rows['lemma5.1@registered'].status is Status.PASS
        assert rows['lemma5.1@printed'].status is Status.FAIL

    def test_lemma51_readings_agree_without_shift(self):
        rows = resolve_display('lemma5.1', p=5, params={'m': 3, 'r': 1, 's': 0})
        assert all(r.status is Status.PASS for r in rows)

    def test_lemma44_sign(self):
        rows = {r.id: r for r in resolve_display('lemma4.4', bounds={'n_max': 3})}
        assert rows['lemma4.4@registered'].status is Status.PASS
        assert rows['lemma4.4@printed'].status is Status.FAIL

    def test_int15_binomial(self):
        rows = {r.id: r for r in resolve_display('int1.5', bounds={'prime_max': 30})}
        assert rows['int1.5@registered'].status is Status.PASS
        assert rows['int1.5@printed'].status is Status.FAIL

    def test_single_reading(self):
        with pytest.raises(UnknownCheckId):
            resolve_display('thm2.1', p=5)

