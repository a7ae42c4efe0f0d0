from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detmld.core import INF, MldValue, PreconditionError, new_pair, new_partition
from detmld.mld import beta_coefficients, mld_at_rank
from detmld.oracle import (
    ABOVE_TRUNCATION,
    LocusTarget,
    PointTarget,
    compare_with_closed_form,
    discrepancy_objective,
    full_partition,
    iter_tails,
    minimize_objective,
    series_minor_order,
)


def naive_tail_count(pair, target, bound):
    """Independent recursive count of admissible nonincreasing tails."""

    def count(remaining, hi, floors):
        if remaining == 0:
            return 1
        return sum(
            count(remaining - 1, v, floors[1:]) for v in range(floors[0], hi + 1)
        )

    k = pair.k
    if isinstance(target, PointTarget):
        free = k - target.q
        return count(free, bound, (1,) * free)
    floors = (1,) * target.j + (0,) * (k - target.j)
    return count(k, bound, floors)


class TestObjective:
    def test_point_value(self):
        pair = new_pair(3, 2, [])
        lam = full_partition(pair, (1, 1))
        assert discrepancy_objective(pair, lam, PointTarget(0)) == 6

    def test_point_value_corner(self):
        pair = new_pair(2, 1, [])
        lam = full_partition(pair, (1,))
        assert discrepancy_objective(pair, lam, PointTarget(0)) == 2

    def test_locus_value(self):
        pair = new_pair(3, 2, [])
        lam = full_partition(pair, (1, 0))
        assert discrepancy_objective(pair, lam, LocusTarget(1)) == 2

    def test_membership_violation_rejected(self):
        pair = new_pair(3, 2, [])
        with pytest.raises(PreconditionError):
            discrepancy_objective(pair, full_partition(pair, (1, 1)), PointTarget(1))

    def test_infinite_entries_rejected(self):
        pair = new_pair(3, 2, [])
        lam = new_partition([INF, INF, 1])
        with pytest.raises(PreconditionError):
            discrepancy_objective(pair, lam, LocusTarget(1))

    @settings(max_examples=80)
    @given(st.data())
    def test_linear_form_decomposition(self, data):
        # the objective equals q(2m-q) + sum(beta_i * tail_i) over the free entries
        m = data.draw(st.integers(1, 5))
        k = data.draw(st.integers(1, m))
        q = data.draw(st.integers(0, k))
        alphas = [data.draw(st.integers(-4, 8)) * Fraction(1, 4) for _ in range(k)]
        pair = new_pair(m, k, alphas)
        free = sorted(
            (data.draw(st.integers(1, 3)) for _ in range(k - q)), reverse=True
        )
        tail = tuple(free) + (0,) * q
        value = discrepancy_objective(pair, full_partition(pair, tail), PointTarget(q))
        betas = beta_coefficients(pair, k - q)
        linear = q * (2 * m - q) + sum(
            (b * t for b, t in zip(betas, free)), Fraction(0)
        )
        assert value == linear

    @settings(max_examples=80)
    @given(st.data())
    def test_locus_linear_form_decomposition(self, data):
        # for a sublocus target the objective is sum(beta_i * tail_i) over all k entries
        m = data.draw(st.integers(1, 5))
        k = data.draw(st.integers(1, m))
        j = data.draw(st.integers(1, k))
        alphas = [data.draw(st.integers(-4, 8)) * Fraction(1, 4) for _ in range(k)]
        pair = new_pair(m, k, alphas)
        base = sorted((data.draw(st.integers(0, 3)) for _ in range(k)), reverse=True)
        tail = tuple(max(e, 1) if pos < j else e for pos, e in enumerate(base))
        value = discrepancy_objective(pair, full_partition(pair, tail), LocusTarget(j))
        betas = beta_coefficients(pair, k)
        linear = sum((b * t for b, t in zip(betas, tail)), Fraction(0))
        assert value == linear


class TestMinimize:
    def test_zero_coefficients(self):
        result = minimize_objective(new_pair(3, 2, []), PointTarget(0), 3)
        assert result.minimum == MldValue.finite(6)
        assert result.argmin == (1, 1)
        assert not result.at_boundary
        assert not result.prefix_unbounded

    def test_analytic_neg_infinity_certificate(self):
        result = minimize_objective(
            new_pair(3, 2, [Fraction(5, 2), 0]), PointTarget(0), 8
        )
        assert result.prefix_unbounded
        assert result.minimum == MldValue.NEG_INFINITY
        assert result.argmin is None

    def test_locus_minimum(self):
        result = minimize_objective(new_pair(2, 1, []), LocusTarget(1), 3)
        assert result.minimum == MldValue.finite(2)
        assert result.argmin == (1,)

    def test_bound_rejected(self):
        with pytest.raises(PreconditionError):
            minimize_objective(new_pair(2, 1, []), PointTarget(0), 0)

    def test_boundary_flag(self):
        # with bound 1 the only admissible tail is all ones, which sits on the
        # boundary; the flag marks the minimum as an upper bound only
        result = minimize_objective(new_pair(3, 2, []), PointTarget(0), 1)
        assert result.argmin == (1, 1)
        assert result.at_boundary
        assert result.minimum == MldValue.finite(6)

    def test_diagonal_ties_prefer_small_argmin(self):
        # beta = (1, -1): every diagonal tail ties at 0; report (1, 1)
        pair = new_pair(3, 2, [1, Fraction(4)])
        betas = beta_coefficients(pair, 2)
        assert betas.betas == (1, -1)
        result = minimize_objective(pair, PointTarget(0), 5)
        assert result.minimum == MldValue.finite(0)
        assert result.argmin == (1, 1)
        assert not result.at_boundary

    @settings(max_examples=40)
    @given(st.data())
    def test_enumeration_count_matches_recursion(self, data):
        m = data.draw(st.integers(1, 5))
        k = data.draw(st.integers(1, m))
        bound = data.draw(st.integers(1, 3))
        if data.draw(st.booleans()):
            target = PointTarget(data.draw(st.integers(0, k)))
        else:
            target = LocusTarget(data.draw(st.integers(1, k)))
        pair = new_pair(m, k, [])
        tails = list(iter_tails(pair, target, bound))
        assert len(tails) == len(set(tails))
        assert len(tails) == naive_tail_count(pair, target, bound)
        assert tails == sorted(tails, reverse=True)
        for tail in tails:
            assert all(a >= b for a, b in zip(tail, tail[1:]))


class TestComparison:
    def test_agreement(self):
        comp = compare_with_closed_form(new_pair(4, 2, []), PointTarget(1), 3)
        assert comp.closed_form == MldValue.finite(10)
        assert comp.oracle.minimum == MldValue.finite(10)
        assert comp.agree

    def test_documented_divergence(self):
        pair = new_pair(3, 2, [1, Fraction(7, 2)])
        comp = compare_with_closed_form(pair, PointTarget(0), 6)
        assert comp.closed_form == MldValue.NEG_INFINITY
        assert comp.oracle.minimum == MldValue.finite(Fraction(1, 2))
        assert comp.oracle.argmin == (1, 1)
        assert not comp.oracle.at_boundary
        assert not comp.agree

    def test_smooth_ambient(self):
        comp = compare_with_closed_form(new_pair(2, 2, []), PointTarget(0), 2)
        assert comp.closed_form == MldValue.finite(4)
        assert comp.agree

    def test_closed_form_sweep_zero_alpha(self):
        # all beta are positive when alpha = 0, so the all-ones tail is optimal
        for m in range(1, 7):
            for k in range(1, m + 1):
                pair = new_pair(m, k, [])
                for q in range(0, k + 1):
                    comp = compare_with_closed_form(pair, PointTarget(q), 2)
                    assert comp.agree, (m, k, q)
                    assert comp.closed_form == mld_at_rank(pair, q)


class TestSeriesOracle:
    def test_full_minor(self):
        assert series_minor_order((2, 1), 2, 2, 10) == 3

    def test_entry_minor(self):
        assert series_minor_order((2, 1), 2, 1, 10) == 1

    def test_unit_minors(self):
        assert series_minor_order((0, 0, 0), 3, 2, 5) == 0

    def test_above_truncation(self):
        # exponents N+1 stand for infinite entries
        assert series_minor_order((7, 1), 2, 2, 6) is ABOVE_TRUNCATION

    def test_invalid_size_rejected(self):
        with pytest.raises(PreconditionError):
            series_minor_order((1, 1), 2, 3, 10)

    def test_truncation_below_sum_rejected(self):
        with pytest.raises(PreconditionError):
            series_minor_order((3, 2), 2, 2, 4)

    def test_conjugation_invariance(self):
        lam = (3, 2, 1)
        N = 6
        base = series_minor_order(lam, 3, 2, N)
        assert base == 3
        for seed in range(5):
            assert series_minor_order(lam, 3, 2, N, seed=seed) == base

    def test_matches_contact_order(self):
        # agrees with the partition-arithmetic contact order (sum of the s
        # smallest exponents), for a sample of partitions
        from detmld.orbits import contact_order_subvariety

        m = 3
        for entries in ((3, 1, 0), (2, 2, 2), (3, 3, 0), (1, 0, 0)):
            N = max(sum(entries), 1)
            lam = new_partition(entries)
            pair = new_pair(m, m, [])
            for s in range(1, m + 1):
                expected = contact_order_subvariety(lam, pair, m - s + 1)
                assert series_minor_order(entries, m, s, N) == expected

    def test_matches_contact_order_with_infinite_entries(self):
        # exhaustive over {INF, 3..0}-partitions: infinite contact orders
        # correspond exactly to orders above the truncation (INF entries are
        # passed to the series oracle as exponent N+1)
        from itertools import combinations_with_replacement

        from detmld.orbits import contact_order_subvariety

        for m in (2, 3):
            pair = new_pair(m, m, [])
            for entries in combinations_with_replacement((INF, 3, 2, 1, 0), m):
                lam = new_partition(entries)
                finite_sum = sum(e for e in entries if e is not INF)
                truncation = max(finite_sum, 1)
                padded = tuple(
                    truncation + 1 if e is INF else e for e in entries
                )
                for s in range(1, m + 1):
                    expected = contact_order_subvariety(lam, pair, m - s + 1)
                    got = series_minor_order(padded, m, s, truncation)
                    if expected is INF:
                        assert got is ABOVE_TRUNCATION, (entries, s)
                    else:
                        assert got == expected, (entries, s)
