import random
from fractions import Fraction
from itertools import combinations

import pytest

from detmld.core import PreconditionError
from detmld.forms import (
    ExteriorForm,
    chart_form,
    chart_variable_set,
    d_minor,
    d_minor_terms,
    reduce_top_form,
    reference_chart_indices,
    verify_chart_transition,
    verify_nash,
)
from detmld.polynomials import MinorIndex, MultiPoly, minor_poly
from detmld.tableaux import canonical_mod_minors


def x(m, i, j):
    return MultiPoly.variable(m, i, j)


def partial_derivative(p, m, i, j):
    """Independent oracle: formal partial derivative on exponent vectors."""
    idx = (i - 1) * m + (j - 1)
    out = {}
    for exp, coef in p.terms.items():
        e = exp[idx]
        if e == 0:
            continue
        new = list(exp)
        new[idx] = e - 1
        out[tuple(new)] = coef * e
    return MultiPoly(m, out)


class TestWedgeAlgebra:
    def test_anticommutativity(self):
        m = 2
        a = ExteriorForm(m, 1, {((1, 1),): MultiPoly.one(m)})
        b = ExteriorForm(m, 1, {((1, 2),): MultiPoly.one(m)})
        ab = a.wedge(b)
        ba = b.wedge(a)
        assert ab == -ba

    def test_square_is_zero(self):
        m = 2
        a = ExteriorForm(m, 1, {((1, 1),): x(m, 2, 2)})
        assert not a.wedge(a).terms

    def test_unsorted_input_normalized(self):
        m = 2
        form = ExteriorForm.single(m, MultiPoly.one(m), [(2, 1), (1, 1)])
        assert list(form.terms) == [((1, 1), (2, 1))]
        assert form.terms[((1, 1), (2, 1))] == -MultiPoly.one(m)


class TestDMinor:
    def test_two_by_two(self):
        m = 2
        dm = d_minor_terms(MinorIndex((1, 2), (1, 2)), m)
        assert dm[(1, 1)] == x(m, 2, 2)
        assert dm[(1, 2)] == -x(m, 2, 1)
        assert dm[(2, 1)] == -x(m, 1, 2)
        assert dm[(2, 2)] == x(m, 1, 1)

    def test_single_entry(self):
        dm = d_minor_terms(MinorIndex((1,), (3,)), 3)
        assert dm == {(1, 3): MultiPoly.one(3)}

    def test_full_three_by_three_center(self):
        m = 3
        dm = d_minor_terms(MinorIndex((1, 2, 3), (1, 2, 3)), m)
        assert dm[(2, 2)] == minor_poly(MinorIndex((1, 3), (1, 3)), m)

    def test_matches_partial_derivatives(self):
        # the differential agrees with the formal gradient, for all minors m <= 3
        for m in (2, 3):
            for size in range(1, m + 1):
                for rows in combinations(range(1, m + 1), size):
                    for cols in combinations(range(1, m + 1), size):
                        idx = MinorIndex(rows, cols)
                        poly = minor_poly(idx, m)
                        dm = d_minor_terms(idx, m)
                        for i in range(1, m + 1):
                            for j in range(1, m + 1):
                                expected = partial_derivative(poly, m, i, j)
                                got = dm.get((i, j), MultiPoly.zero(m))
                                assert got == expected

    def test_form_wrapper(self):
        m = 2
        form = d_minor(MinorIndex((1, 2), (1, 2)), m)
        assert form.degree == 1
        assert form.terms[((1, 1),)] == x(m, 2, 2)


class TestChartForm:
    def test_reference_chart(self):
        chart = chart_form((1,), (1,), 2, 1)
        assert chart.variables == ((1, 1), (1, 2), (2, 1))
        assert chart.exponent == 1
        assert chart.sign == 1

    def test_row_swapped_chart(self):
        chart = chart_form((2,), (1,), 2, 1)
        assert set(chart.variables) == {(1, 1), (2, 1), (2, 2)}
        # frozen from the reduction in the reference chart:
        # dx11 ^ dx21 ^ dx22 = -x21 * w
        assert chart.sign == -1

    def test_smooth_case(self):
        chart = chart_form((1, 2), (1, 2), 2, 2)
        assert chart.exponent == 0
        assert len(chart.variables) == 4
        assert chart.sign == 1

    def test_size_mismatch_rejected(self):
        with pytest.raises(PreconditionError):
            chart_form((1, 2), (1,), 3, 2)


class TestReduceTopForm:
    def test_chart_set_yields_minor_power(self):
        chart = chart_form((1,), (1,), 2, 1)
        result = reduce_top_form([(1, 1), (1, 2), (2, 1)], chart)
        assert result.coefficient == x(2, 1, 1)
        assert result.certificate.is_member

    def test_one_bad_entry(self):
        # independent substitution oracle: x22 = x12 x21 / x11 on the chart
        # gives dx11 ^ dx12 ^ dx22 = (x12/x11) dx11 ^ dx12 ^ dx21, so F = x12
        chart = chart_form((1,), (1,), 2, 1)
        result = reduce_top_form([(1, 1), (1, 2), (2, 2)], chart)
        assert result.coefficient == x(2, 1, 2)

    def test_symmetric_case(self):
        # same substitution oracle: F = -x22 (canonically, -x12 x21 / x11)
        chart = chart_form((1,), (1,), 2, 1)
        result = reduce_top_form([(1, 2), (2, 1), (2, 2)], chart)
        assert result.coefficient == -x(2, 2, 2)

    def test_wrong_cardinality_rejected(self):
        chart = chart_form((1,), (1,), 2, 1)
        with pytest.raises(PreconditionError):
            reduce_top_form([(1, 1), (1, 2)], chart)

    def test_order_independence_with_many_bad_entries(self):
        chart = chart_form((1,), (1,), 3, 1)
        subset = [(1, 1), (2, 2), (2, 3), (3, 2), (3, 3)]
        lex = reduce_top_form(subset, chart, elimination_order="lex")
        rev = reduce_top_form(subset, chart, elimination_order="revlex")
        assert lex.coefficient == rev.coefficient
        assert lex.certificate.is_member

    def test_division_path_produces_member(self):
        # four bad entries force clearing more than (m - k) powers of the minor
        chart = chart_form((1,), (1,), 3, 1)
        subset = [(1, 2), (2, 2), (2, 3), (3, 2), (3, 3)]
        result = reduce_top_form(subset, chart, elimination_order="lex")
        assert result.denominator_power > chart.exponent
        assert result.certificate.is_member
        degree = result.coefficient.homogeneous_degree()
        assert degree in (None, 2)  # zero polynomial reports no degree

    def test_nonreference_chart_reduces_its_own_set(self):
        chart = chart_form((2,), (1,), 2, 1)
        result = reduce_top_form([(1, 1), (2, 1), (2, 2)], chart)
        assert result.coefficient == chart.sign * x(2, 2, 1)

    def test_chart_consistency(self):
        # the same top-form reduces to the same coefficient of the one global
        # canonical form in every chart containing it
        m, k = 2, 1
        charts = [chart_form((i,), (j,), m, k) for i in (1, 2) for j in (1, 2)]
        for subset in combinations([(1, 1), (1, 2), (2, 1), (2, 2)], 3):
            values = {reduce_top_form(subset, c).coefficient for c in charts}
            assert len(values) == 1, subset

    def test_chart_consistency_three_by_three(self):
        m, k = 3, 2
        pairs = list(combinations(range(1, 4), 2))
        charts = [chart_form(rows, cols, m, k) for rows in pairs for cols in pairs]
        subset = [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2)]
        values = {reduce_top_form(subset, c).coefficient for c in charts}
        assert len(values) == 1

    def test_chart_consistency_rank_one_in_three(self):
        m, k = 3, 1
        charts = [
            chart_form((i,), (j,), m, k) for i in range(1, 4) for j in range(1, 4)
        ]
        subset = [(1, 1), (1, 2), (2, 1), (2, 2), (3, 3)]
        values = {reduce_top_form(subset, c).coefficient for c in charts}
        assert len(values) == 1


class TestChartTransitions:
    def test_row_swap_two_by_two(self):
        assert verify_chart_transition((1,), (1,), (2,), (1,), 2, 1)

    def test_column_swap_three_by_three(self):
        assert verify_chart_transition((1,), (1,), (1,), (2,), 3, 1)

    def test_identity_transition(self):
        assert verify_chart_transition((1,), (1,), (1,), (1,), 2, 1)

    def test_double_swap_rejected(self):
        with pytest.raises(PreconditionError):
            verify_chart_transition((1,), (1,), (2,), (2,), 2, 1)

    def test_k_two_row_swap(self):
        assert verify_chart_transition((1, 2), (1, 2), (1, 3), (1, 2), 3, 2)


class TestVerifyNash:
    def test_two_by_two_rank_one(self):
        report = verify_nash(2, 1)
        assert report.passed
        assert len(report.subsets) == 4
        # the reduced coefficients span all four matrix entries
        coefficients = {
            tuple(sorted(tuple(e["exp"]) for e in entry["F"])) for entry in report.subsets
        }
        assert len(coefficients) == 4

    def test_report_certificates_reexpand(self):
        # the emitted certificate is a rectangular standard expansion of F
        from detmld.tableaux import DoubleTableau, bideterminant
        from detmld.core import parse_rational

        m, k = 2, 1
        report = verify_nash(m, k)
        for entry in report.subsets:
            assert entry["certificate"] is not None
            total = MultiPoly.zero(m)
            for term in entry["certificate"]:
                tab = DoubleTableau.from_json(term)
                assert all(r == k for r in tab.shape.rows)
                total = total + parse_rational(term["coef"]) * bideterminant(tab, m)
            assert total == MultiPoly.from_json(m, entry["F"])

    def test_smooth_cases_are_units(self):
        for m, k in ((2, 2), (3, 3)):
            report = verify_nash(m, k)
            assert report.passed
            assert len(report.subsets) == 1
            (entry,) = report.subsets
            assert entry["F"] == MultiPoly.one(m).to_json()

    def test_guard(self):
        with pytest.raises(PreconditionError):
            verify_nash(4, 2)

    def test_threads_do_not_change_values(self):
        serial = verify_nash(2, 1, threads=1)
        threaded = verify_nash(2, 1, threads=4)
        strip = lambda rep: [
            {k: v for k, v in entry.items() if k != "seconds"} for entry in rep.subsets
        ]
        assert strip(serial) == strip(threaded)
        assert serial.passed and threaded.passed

    def test_thread_count_from_environment(self, monkeypatch):
        from detmld.forms import default_thread_count

        monkeypatch.delenv("DETMLD_THREADS", raising=False)
        assert default_thread_count() == 1
        monkeypatch.setenv("DETMLD_THREADS", "3")
        assert default_thread_count() == 3
        monkeypatch.setenv("DETMLD_THREADS", "zero")
        with pytest.raises(PreconditionError):
            default_thread_count()
        monkeypatch.setenv("DETMLD_THREADS", "0")
        with pytest.raises(PreconditionError):
            default_thread_count()


class TestSubstitutionOracle:
    def test_all_top_forms_m2_k1(self):
        # parametrize the chart by (x11, x12, x21) with x22 = x12 x21 / x11 and
        # expand each wedge in that basis; clears denominators exactly
        m, k = 2, 1
        chart = chart_form((1,), (1,), m, k)
        positions = [(1, 1), (1, 2), (2, 1), (2, 2)]
        for subset in combinations(positions, 3):
            reduced = reduce_top_form(subset, chart)
            oracle_num, oracle_pow = _substitution_oracle(subset)
            lhs = canonical_mod_minors(
                reduced.coefficient * x(m, 1, 1) ** oracle_pow, m, k
            )
            rhs = canonical_mod_minors(oracle_num * x(m, 1, 1), m, k)
            assert lhs == rhs, subset


def _numeric_det(rows):
    rows = [row[:] for row in rows]
    n = len(rows)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        inv = Fraction(1) / rows[col][col]
        for r in range(col + 1, n):
            if rows[r][col]:
                f = rows[r][col] * inv
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    return det


def _numeric_form_oracle(m, k, subset, rng):
    """Independent pointwise oracle for the reduction.

    Samples a random rank <= k matrix with invertible leading k x k block,
    computes the dependent entries and their differentials by implicit
    differentiation of the vanishing (k+1)-minors, and expands the wedge of
    the chosen differentials in the chart coordinate basis.  Returns the
    value the reduced coefficient must take at that point, and the point.
    """
    ref = tuple(range(1, k + 1))
    good = chart_variable_set(ref, ref, m)
    good_index = {pos: a for a, pos in enumerate(good)}
    delta = minor_poly(MinorIndex(ref, ref), m)
    while True:
        values = [Fraction(0)] * (m * m)
        for i, j in good:
            values[(i - 1) * m + (j - 1)] = Fraction(rng.randint(-9, 9), rng.randint(1, 3))
        if delta.evaluate(values) != 0:
            break
    bigs = {}
    for i in range(k + 1, m + 1):
        for j in range(k + 1, m + 1):
            big = minor_poly(MinorIndex(ref + (i,), ref + (j,)), m)
            bigs[(i, j)] = big
            slope = big.partial(i, j).evaluate(values)
            offset = big.evaluate(values)  # the (i, j) slot still holds zero
            values[(i - 1) * m + (j - 1)] = -offset / slope
    rows = []
    for i, j in sorted(subset):
        if (i, j) in good_index:
            row = [Fraction(0)] * len(good)
            row[good_index[(i, j)]] = Fraction(1)
        else:
            big = bigs[(i, j)]
            denom = big.partial(i, j).evaluate(values)
            row = [-big.partial(p, q).evaluate(values) / denom for p, q in good]
        rows.append(row)
    return _numeric_det(rows) * delta.evaluate(values) ** (m - k), values


class TestNumericParametrizationOracle:
    @pytest.mark.parametrize("m,k", [(2, 1), (3, 1), (3, 2)])
    def test_reduction_matches_pointwise(self, m, k):
        # evaluate both sides of (wedge) = F * w at random points of the
        # rank <= k locus; independent of the elimination and straightening code
        rng = random.Random(100 * m + k)
        ref = reference_chart_indices(k)
        chart = chart_form(ref, ref, m, k)
        positions = [(i, j) for i in range(1, m + 1) for j in range(1, m + 1)]
        for subset in combinations(positions, k * (2 * m - k)):
            reduced = reduce_top_form(subset, chart)
            for _ in range(2):
                expected, values = _numeric_form_oracle(m, k, subset, rng)
                assert reduced.coefficient.evaluate(values) == expected, subset


def _substitution_oracle(subset):
    """Wedge of the chosen differentials in the chart basis (dx11, dx12, dx21).

    Entries of dx22 carry denominator x11**2; returns (numerator, power) with
    the wedge equal to numerator / x11**power times dx11 ^ dx12 ^ dx21.
    """
    m = 2
    one, zero = MultiPoly.one(m), MultiPoly.zero(m)
    basis_rows = {
        (1, 1): ([one, zero, zero], 0),
        (1, 2): ([zero, one, zero], 0),
        (2, 1): ([zero, zero, one], 0),
        (2, 2): (
            [-(x(m, 1, 2) * x(m, 2, 1)), x(m, 2, 1) * x(m, 1, 1), x(m, 1, 2) * x(m, 1, 1)],
            2,
        ),
    }
    rows = [basis_rows[pos] for pos in sorted(subset)]
    power = sum(p for _, p in rows)
    det = zero
    from itertools import permutations

    for perm in permutations(range(3)):
        sign = 1
        for a in range(3):
            for b in range(a + 1, 3):
                if perm[a] > perm[b]:
                    sign = -sign
        term = one
        for r in range(3):
            term = term * rows[r][0][perm[r]]
        det = det + (term if sign > 0 else -term)
    return det, power
