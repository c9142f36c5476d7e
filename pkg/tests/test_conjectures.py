import pytest

from conjectures import (
    F_TABLE_ID,
    PUBLISHED_F,
    FEntry,
    annotate_scan,
    brute_bound,
    brute_f,
    check_f_recurrence,
    check_f_symmetry,
    entry_result,
    expected_residue,
    f_entry,
    f_table,
    holds_at,
    matching_f,
    scan_conjecture,
    sign_of,
    solve_f,
)
from errors import InvalidParams, NotPrime
from models import CONJECTURE_SCAN, CheckResult, Status

# printed values that are not the solved exponent; they are compared modulo p only
MISPRINTED = {(7, 9, 16), (7, 9, 17), (5, 8, 1)}


def _entry(p, m, r, f):
    return FEntry(p, m, r, f, sign_of(p, m, r))


class TestSolve:

    @pytest.mark.parametrize('p,m,r,expected', [(3, 2, 1, -2), (3, 2, 5, 3), (5, 3, 8, 10), (7, 9, 1, -54)])
    def test_known_exponents(self, p, m, r, expected):
        assert solve_f(p, m, r) == expected

    def test_sign(self):
        assert sign_of(3, 2, 1) == -1
        assert expected_residue(3, 2, 1) == 1

    @pytest.mark.parametrize('r', [1, 3, 5, 7])
    def test_agrees_with_linear_scan(self, r):
        assert brute_f(3, 2, r, brute_bound(3, 2, r)) == solve_f(3, 2, r)

    def test_linear_scan(self):
        assert brute_f(3, 2, 5, 20) == 3
        assert brute_f(5, 3, 4, 40) == -9
        assert brute_f(3, 2, 1, 20) == -2

    def test_scan_outside_window(self):
        assert brute_f(5, 3, 4, 5) is None

    def test_exponent_is_unique(self):
        assert matching_f(3, 2, 1, 30) == [-2]

    def test_holds_at_s(self):
        assert holds_at(3, 2, 1, 0, -2)
        assert not holds_at(3, 2, 1, 0, 1)

    def test_inadmissible(self):
        with pytest.raises(InvalidParams):
            solve_f(5, 3, 3)
        with pytest.raises(InvalidParams):
            solve_f(5, 10, 1)

    def test_not_prime(self):
        with pytest.raises(NotPrime):
            solve_f(9, 2, 1)


class TestPublishedValues:

    @pytest.mark.parametrize('key', sorted(k for k in PUBLISHED_F if k not in MISPRINTED and k[0] < 7))
    def test_matches(self, key):
        assert solve_f(*key) == PUBLISHED_F[key]

    @pytest.mark.slow
    @pytest.mark.parametrize('key', sorted(k for k in PUBLISHED_F if k not in MISPRINTED and k[0] == 7))
    def test_matches_for_seven(self, key):
        assert solve_f(*key) == PUBLISHED_F[key]

    @pytest.mark.parametrize('key', sorted(MISPRINTED))
    def test_residue_modulo_p(self, key):
        p = key[0]
        assert solve_f(*key) % p == expected_residue(*key)

    @pytest.mark.parametrize('key', [(7, 9, 16), (7, 9, 17)])
    def test_printed_value_has_the_wrong_residue(self, key):
        assert PUBLISHED_F[key] % key[0] != expected_residue(*key)

    @pytest.mark.parametrize('key,solved,lower', [((7, 9, 16), 21, (7, 9, 7)), ((7, 9, 17), -62, (7, 9, 8))])
    def test_misprints_follow_the_recurrence(self, key, solved, lower):
        assert solve_f(*key) == solved
        r = lower[2]
        assert solved == (-PUBLISHED_F[lower] if r % 7 == 0 else PUBLISHED_F[lower] - r)

    def test_entry_notes_the_contradiction(self):
        entry = f_entry(7, 9, 16, s_range='basic')
        assert entry.matches is False
        assert 'contradicts' in entry.note
        row = entry_result(entry)
        assert row.status is Status.PASS
        assert row.witness.startswith(f'f = {entry.f}')


class TestEntries:

    def test_basic_range(self):
        entry = f_entry(3, 2, 1, s_range='basic')
        assert entry.f == -2
        assert entry.matches is True
        assert entry.checked_s == [0, 1]
        assert entry.note == ''

    def test_skipped_tuple(self):
        entry = f_entry(5, 3, 3)
        assert entry.f is None
        assert entry_result(entry).status is Status.SKIPPED

    def test_result_row(self):
        row = entry_result(f_entry(3, 2, 1))
        assert row.id == F_TABLE_ID
        assert row.params == {'p': 3, 'm': 2, 'r': 1}
        assert row.kind == CONJECTURE_SCAN
        assert row.witness == 'f = -2, sign = -1'

    def test_table_is_sorted(self):
        entries = f_table([5, 3], [(2, [3, 1])], s_range='basic')
        assert [e.key() for e in entries] == [(3, 2, 1), (3, 2, 3), (5, 2, 1), (5, 2, 3)]


class TestProperties:

    def test_symmetry(self):
        entries = [_entry(5, 3, 1, -8), _entry(5, 3, 2, -8), _entry(7, 9, 2, -21), _entry(7, 9, 7, -21)]
        row = check_f_symmetry(entries)
        assert row.status is Status.PASS
        assert row.params == {'pairs': 2}

    def test_broken_symmetry(self):
        row = check_f_symmetry([_entry(5, 3, 1, -8), _entry(5, 3, 2, -7)])
        assert row.status is Status.FAIL
        assert 'f(5,3,1) = -8' in row.witness

    def test_recurrence(self):
        entries = [_entry(3, 2, 1, -2), _entry(3, 2, 3, -3), _entry(3, 2, 5, 3),
                   _entry(3, 2, 11, 9), _entry(3, 2, 13, -2)]
        row = check_f_recurrence(entries)
        assert row.status is Status.PASS
        assert row.params == {'pairs': 3}

    def test_broken_recurrence(self):
        row = check_f_recurrence([_entry(3, 2, 1, -2), _entry(3, 2, 3, 4)])
        assert row.status is Status.FAIL

    def test_single_entry(self):
        entries = [_entry(5, 8, 1, -23)]
        assert check_f_symmetry(entries).status is Status.SKIPPED
        assert check_f_recurrence(entries).status is Status.SKIPPED

    def test_unsolved_entries_are_ignored(self):
        row = check_f_symmetry([_entry(5, 3, 1, -8), FEntry(5, 3, 2, None, 1)])
        assert row.status is Status.SKIPPED


class TestScan:

    def test_clausen_conjecture(self):
        rows = scan_conjecture('conj7.3', {'p': 5, 'm': 3, 'r': 1})
        assert [row.params['s'] for row in rows] == [0, 2, 4]
        assert all(row.status is Status.PASS for row in rows)
        assert all(row.kind == CONJECTURE_SCAN for row in rows)
        assert rows[0].notes == []
        assert rows[1].notes == ['every summand vanishes modulo [p]^2']

    def test_clausen_product_identity(self):
        rows = scan_conjecture('conj7.2', {'n_max': 2})
        assert len(rows) == 6
        assert all(row.status is Status.PASS for row in rows)

    def test_not_a_conjecture(self):
        with pytest.raises(InvalidParams):
            scan_conjecture('thm2.1', {'p': 5})

    def test_annotation_is_idempotent(self):
        row = CheckResult('conj7.3', {'p': 5}, Status.PASS, branch='termwise-zero')
        annotate_scan(annotate_scan([row]))
        assert row.notes == ['every summand vanishes modulo [p]^2']
