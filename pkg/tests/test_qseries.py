from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from errors import EvalAtPole, InvalidParams
from polynomials import ONE, A, LPoly, RFunc, lp_eval, qmono, rf_equal
from qseries import QBase, phi_sum, poch, qbinom, qfac, qint, qpoch, sum_terms, term, term_at_one


class TestQInt:

    def test_one(self):
        assert qint(1) == ONE

    def test_three(self, q_poly):
        assert qint(3) == q_poly(1, 1, 1)

    @pytest.mark.parametrize('p', [3, 5, 7])
    def test_value_at_one(self, p):
        assert lp_eval(qint(p), {'q': 1}) == p

    def test_base(self, q_poly):
        assert qint(2, 3) == q_poly(1, 0, 0, 1)

    def test_rejects_zero(self):
        with pytest.raises(InvalidParams):
            qint(0)

    def test_bad_base(self):
        with pytest.raises(InvalidParams):
            QBase(0)


class TestPochhammer:

    def test_empty_product(self):
        assert qpoch(A, 1, 0) == ONE

    def test_q_base_q_squared(self, q_poly):
        assert qpoch(qmono(1), 2, 2) == q_poly(1, -1) * q_poly(1, 0, 0, -1)

    def test_negative_argument(self, q_poly):
        assert qpoch(-qmono(1), 1, 2) == q_poly(1, 1) * q_poly(1, 0, 1)

    def test_factors(self):
        assert poch(A, 1, 2) == (ONE - A, ONE - A * qmono(1))

    def test_factorial_factors(self, q_poly):
        assert qfac(2, 2) == (q_poly(1, 0, -1), q_poly(1, 0, 0, 0, -1))

    def test_negative_length(self):
        with pytest.raises(InvalidParams):
            poch(A, 1, -1)

    @given(st.integers(min_value=0, max_value=5), st.integers(min_value=0, max_value=5))
    def test_splits(self, j, k):
        left = qpoch(A, 1, j + k)
        right = qpoch(A, 1, j) * qpoch(A * qmono(j), 1, k)
        assert left == right


class TestQBinomial:

    def test_two_one(self, q_poly):
        assert qbinom(2, 1) == q_poly(1, 1)

    def test_four_two(self, q_poly):
        assert qbinom(4, 2) == q_poly(1, 1, 2, 1, 1)

    def test_outside_range(self):
        assert qbinom(2, 3).is_zero()
        assert qbinom(2, -1).is_zero()

    def test_base_q_squared(self, q_poly):
        assert qbinom(2, 1, 2) == q_poly(1, 0, 1)

    @given(st.integers(min_value=0, max_value=9), st.integers(min_value=0, max_value=9))
    def test_symmetry(self, n, k):
        assert qbinom(n, k) == qbinom(n, n - k)

    @given(st.integers(min_value=1, max_value=9), st.integers(min_value=1, max_value=8))
    def test_pascal(self, n, k):
        assert qbinom(n, k) == qbinom(n - 1, k - 1) + qmono(k) * qbinom(n - 1, k)

    @given(st.integers(min_value=0, max_value=9), st.integers(min_value=0, max_value=9))
    def test_value_at_one(self, n, k):
        expected = comb(n, k) if k <= n else 0
        assert lp_eval(qbinom(n, k), {'q': 1}) == expected


class TestSums:

    def test_single_term(self):
        assert rf_equal(phi_sum([A, qmono(2)], [qmono(3)], 1, qmono(1), 1), RFunc(ONE))

    def test_two_term_series(self, q_poly):
        upper = [qmono(-1), -qmono(2)]
        lower = [-qmono(1)]
        value = phi_sum(upper, lower, 1, ONE, 2)
        second = RFunc((ONE - qmono(-1)) * q_poly(1, 0, 1), q_poly(1, -1) * q_poly(1, 1))
        assert rf_equal(value, RFunc(ONE) + second)

    def test_terminating_series(self):
        # q^-1 in the numerator stops the series after two terms
        short = phi_sum([qmono(-1)], [], 1, qmono(1), 2)
        long = phi_sum([qmono(-1)], [], 1, qmono(1), 5)
        assert rf_equal(short, long)

    def test_common_denominator(self, q_poly):
        terms = [term([ONE], [q_poly(1, 1)]), term([ONE], [q_poly(2, 2)]), term([qmono(1)], [q_poly(1, 0, 1)])]
        total = sum_terms(terms)
        expected = RFunc(Fraction(3, 2), q_poly(1, 1)) + RFunc(qmono(1), q_poly(1, 0, 1))
        assert rf_equal(total, expected)

    def test_zero_summands_are_dropped(self, q_poly):
        total = sum_terms([term([LPoly()], [q_poly(1, 1)]), term([ONE])])
        assert rf_equal(total, RFunc(ONE))

    def test_negative_term_count(self):
        with pytest.raises(InvalidParams):
            phi_sum([A], [], 1, ONE, -1)


class TestAtOne:

    def test_central_ratio(self):
        # (q;q^2)_2 / (q^2;q^2)_2 -> C(4,2)/16
        t = term(poch(qmono(1), 2, 2), qfac(2, 2))
        assert term_at_one(t) == Fraction(6, 16)

    def test_cubic_summand(self):
        # [2,1]_{q^2}^3 q^2 / ((-q^2;q^2)_1^2 (-q;q)_2^2) -> 8/64
        den = [ONE + qmono(2)] * 2 + [ONE + qmono(1), ONE + qmono(2)] * 2
        t = term([qbinom(2, 1, 2)] * 3 + [qmono(2)], den)
        assert term_at_one(t) == Fraction(8, 64)

    def test_vanishing_numerator_order(self):
        t = term([qint(3) * (ONE - qmono(1)) ** 2], [ONE - qmono(1)])
        assert term_at_one(t) == 0

    def test_zero_summand(self):
        assert term_at_one(term([LPoly()], [ONE - qmono(1)])) == 0

    def test_pole(self):
        with pytest.raises(EvalAtPole):
            term_at_one(term([ONE], [ONE - qmono(1)]))
