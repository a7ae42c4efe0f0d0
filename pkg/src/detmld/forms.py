"""Symbolic exterior algebra over the matrix polynomial ring.

Implements differentials of minors, the canonical top-degree form on the
charts of the rank <= k locus, reduction of arbitrary top-forms to a single
polynomial coefficient against that canonical form, chart-transition
verification, and the exhaustive Nash-ideal check at small sizes.

On the chart where a fixed k x k minor D is invertible, the variables
sharing a row or column with D are coordinates, and the canonical generator
of the top differential forms is (up to sign) D**-(m-k) times the wedge of
their differentials in lexicographic order.  Any top-form on the ambient
space restricts to F times that generator; F is found by repeatedly
eliminating differentials dx_ij with both indices outside the chart, using
the vanishing of d(minor) for each (k+1) x (k+1) minor.  Every identity is
verified in the polynomial ring after clearing the exact power of D the
elimination produced, with equality tested modulo the (k+1)-minor ideal via
the standard-basis projection; no fraction fields appear anywhere.
"""

from __future__ import annotations

import bisect
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from .core import PreconditionError
from .linalg import PreparedSolver
from .polynomials import MinorIndex, MultiPoly, minor_poly
from .tableaux import (
    DoubleTableau,
    Membership,
    StandardExpansion,
    bideterminant,
    canonical_mod_minors,
    enumerate_standard_basis,
    standard_coordinates,
    subalgebra_membership,
)

IndexPair = Tuple[int, int]
Wedge = Tuple[IndexPair, ...]

VERIFY_GUARD_M = 3


class ExteriorForm:
    """Finite sum of (polynomial coefficient, sorted wedge of dx_ij) terms.

    Wedge keys are tuples of (i, j) pairs sorted lexicographically; sign
    bookkeeping happens on insertion, a repeated differential kills the term.
    """

    __slots__ = ("m", "degree", "terms")

    def __init__(self, m: int, degree: int, terms: Optional[Dict[Wedge, MultiPoly]] = None):
        self.m = m
        self.degree = degree
        self.terms: Dict[Wedge, MultiPoly] = {}
        if terms:
            for wedge, poly in terms.items():
                if len(wedge) != degree:
                    raise PreconditionError(
                        f"wedge {wedge} has length {len(wedge)}, expected {degree}"
                    )
                if not poly.is_zero:
                    self.terms[tuple(wedge)] = poly

    @classmethod
    def zero(cls, m: int, degree: int) -> "ExteriorForm":
        return cls(m, degree)

    @classmethod
    def single(cls, m: int, coeff: MultiPoly, pairs) -> "ExteriorForm":
        wedge, sign = _sort_wedge(tuple(pairs))
        if wedge is None:
            return cls.zero(m, len(tuple(pairs)))
        poly = coeff if sign == 1 else -coeff
        return cls(m, len(wedge), {wedge: poly})

    def __add__(self, other: "ExteriorForm") -> "ExteriorForm":
        if self.m != other.m or self.degree != other.degree:
            raise PreconditionError("cannot add forms of different layout or degree")
        terms = dict(self.terms)
        for wedge, poly in other.terms.items():
            acc = terms.get(wedge)
            acc = poly if acc is None else acc + poly
            if acc.is_zero:
                terms.pop(wedge, None)
            else:
                terms[wedge] = acc
        return ExteriorForm(self.m, self.degree, terms)

    def __neg__(self) -> "ExteriorForm":
        return ExteriorForm(self.m, self.degree, {w: -p for w, p in self.terms.items()})

    def scale(self, poly: MultiPoly) -> "ExteriorForm":
        return ExteriorForm(self.m, self.degree, {w: poly * p for w, p in self.terms.items()})

    def wedge(self, other: "ExteriorForm") -> "ExteriorForm":
        if self.m != other.m:
            raise PreconditionError("cannot wedge forms over different layouts")
        out: Dict[Wedge, MultiPoly] = {}
        for w1, p1 in self.terms.items():
            for w2, p2 in other.terms.items():
                merged, sign = _merge_wedges(w1, w2)
                if merged is None:
                    continue
                poly = p1 * p2
                if sign < 0:
                    poly = -poly
                acc = out.get(merged)
                acc = poly if acc is None else acc + poly
                if acc.is_zero:
                    out.pop(merged, None)
                else:
                    out[merged] = acc
        return ExteriorForm(self.m, self.degree + other.degree, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExteriorForm):
            return NotImplemented
        return self.m == other.m and self.degree == other.degree and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for wedge, poly in sorted(self.terms.items()):
            dxs = "^".join(f"dx{i}{j}" for i, j in wedge)
            parts.append(f"({poly!r}) {dxs}")
        return " + ".join(parts)


def _sort_wedge(pairs: Wedge):
    """Sort a wedge, returning (sorted tuple, permutation sign); None on repeats."""
    if len(set(pairs)) != len(pairs):
        return None, 0
    inversions = 0
    items = list(pairs)
    for a in range(len(items)):
        for b in range(a + 1, len(items)):
            if items[a] > items[b]:
                inversions += 1
    return tuple(sorted(items)), (-1) ** inversions


def _merge_wedges(w1: Wedge, w2: Wedge):
    """Merge two sorted wedges; sign counts transpositions, None on repeats."""
    merged = []
    inversions = 0
    i = j = 0
    while i < len(w1) and j < len(w2):
        if w1[i] == w2[j]:
            return None, 0
        if w1[i] < w2[j]:
            merged.append(w1[i])
            i += 1
        else:
            merged.append(w2[j])
            inversions += len(w1) - i
            j += 1
    merged.extend(w1[i:])
    merged.extend(w2[j:])
    return tuple(merged), (-1) ** inversions


_D_MINOR_CACHE: Dict[tuple, Dict[IndexPair, MultiPoly]] = {}


def d_minor_terms(idx: MinorIndex, m: int) -> Dict[IndexPair, MultiPoly]:
    """Coefficients of the differential of a minor, keyed by (i, j).

    The coefficient of dx_ij is the complementary minor with the antidiagonal
    parity sign of (i, j) inside the submatrix.
    """
    key = (m, idx.rows, idx.cols)
    cached = _D_MINOR_CACHE.get(key)
    if cached is not None:
        return cached
    if idx.rows[-1] > m or idx.cols[-1] > m:
        raise PreconditionError(f"minor {idx} does not fit in a {m}x{m} matrix")
    out: Dict[IndexPair, MultiPoly] = {}
    for r, i in enumerate(idx.rows, start=1):
        for c, j in enumerate(idx.cols, start=1):
            if idx.size == 1:
                comp = MultiPoly.one(m)
            else:
                comp = minor_poly(
                    MinorIndex(
                        tuple(x for x in idx.rows if x != i),
                        tuple(x for x in idx.cols if x != j),
                    ),
                    m,
                )
            out[(i, j)] = comp if (r + c) % 2 == 0 else -comp
    _D_MINOR_CACHE[key] = out
    return out


def d_minor(idx: MinorIndex, m: int) -> ExteriorForm:
    """The degree-1 exterior derivative of the minor polynomial."""
    terms = {((i, j),): poly for (i, j), poly in d_minor_terms(idx, m).items()}
    return ExteriorForm(m, 1, terms)


def chart_variable_set(rows, cols, m: int) -> Wedge:
    """Positions sharing a row or column with the chart minor, sorted lex."""
    rows = set(rows)
    cols = set(cols)
    return tuple(
        (i, j)
        for i in range(1, m + 1)
        for j in range(1, m + 1)
        if i in rows or j in cols
    )


def reference_chart_indices(k: int) -> tuple:
    return tuple(range(1, k + 1))


@dataclass(frozen=True)
class ChartForm:
    """Chart data of the canonical top-form: y the minor inverted, the
    coordinate variable set, the exponent m-k, and the sign relative to the
    reference chart (rows = cols = 1..k), where the sign is +1."""

    rows: tuple
    cols: tuple
    m: int
    k: int
    sign: int

    @property
    def exponent(self) -> int:
        return self.m - self.k

    @property
    def minor_index(self) -> MinorIndex:
        return MinorIndex(self.rows, self.cols)

    @property
    def variables(self) -> Wedge:
        return chart_variable_set(self.rows, self.cols, self.m)


def _validate_chart(rows, cols, m: int, k: int) -> tuple:
    rows = tuple(sorted(rows))
    cols = tuple(sorted(cols))
    if len(rows) != k or len(cols) != k:
        raise PreconditionError(f"chart needs k={k} rows and columns, got {rows}, {cols}")
    if len(set(rows)) != k or len(set(cols)) != k:
        raise PreconditionError(f"repeated chart index in {rows} or {cols}")
    if not 1 <= k <= m:
        raise PreconditionError(f"need 1 <= k <= m, got k={k}, m={m}")
    if rows[-1] > m or cols[-1] > m:
        raise PreconditionError(f"chart {rows} x {cols} does not fit in m={m}")
    return rows, cols


def chart_form(rows, cols, m: int, k: int) -> ChartForm:
    """Chart form with its sign, fixed to +1 on the reference chart and
    propagated to the others by reducing their own variable wedge there."""
    rows, cols = _validate_chart(rows, cols, m, k)
    ref = reference_chart_indices(k)
    if rows == ref and cols == ref:
        return ChartForm(rows, cols, m, k, 1)
    sign = _chart_sign(rows, cols, m, k)
    return ChartForm(rows, cols, m, k, sign)


def _chart_sign(rows, cols, m: int, k: int) -> int:
    """Sign s with wedge(S_chart) = s * (chart minor)**(m-k) * w, computed by
    reduction in the reference chart."""
    coeff = _reduce_to_reference(chart_variable_set(rows, cols, m), m, k)
    expected = canonical_mod_minors(minor_poly(MinorIndex(rows, cols), m) ** (m - k), m, k)
    if coeff == expected:
        return 1
    if coeff == -expected:
        return -1
    raise RuntimeError(
        f"chart {rows} x {cols}: reduced coefficient is not +-(minor)^{m - k}; "
        "the canonical form does not glue"
    )


@dataclass(frozen=True)
class ReductionResult:
    """Outcome of reducing a top-form: the coefficient F with form = F * w on
    the chart, and the minor-subalgebra certificate for F."""

    coefficient: MultiPoly
    certificate: Membership
    denominator_power: int


def _replace_in_wedge(wedge: Wedge, old: IndexPair, new: IndexPair):
    """Substitute one differential, with the sign of resorting; None on repeat."""
    pos_old = wedge.index(old)
    rest = wedge[:pos_old] + wedge[pos_old + 1:]
    if new in rest:
        return None, 0
    pos_new = bisect.bisect_left(rest, new)
    new_wedge = rest[:pos_new] + (new,) + rest[pos_new:]
    return new_wedge, (-1) ** (pos_old + pos_new)


def _reduce_positions(
    positions: Wedge, rows: tuple, cols: tuple, m: int, k: int, order: str
) -> Tuple[MultiPoly, int]:
    """Eliminate all differentials with both indices outside the chart.

    Returns (N, B) with  wedge(positions) = N / delta**B * wedge(S_chart),
    where delta is the chart minor; N is a polynomial and B >= 0.
    """
    if order not in ("lex", "revlex"):
        raise PreconditionError(f"unknown elimination order {order!r}")
    good_rows = set(rows)
    good_cols = set(cols)
    delta = minor_poly(MinorIndex(rows, cols), m)
    full_good = chart_variable_set(rows, cols, m)
    start = tuple(sorted(positions))
    stack: List[Tuple[MultiPoly, Wedge, int]] = [(MultiPoly.one(m), start, 0)]
    collected: List[Tuple[MultiPoly, int]] = []
    while stack:
        coeff, wedge, bpow = stack.pop()
        bad = [pq for pq in wedge if pq[0] not in good_rows and pq[1] not in good_cols]
        if not bad:
            if wedge != full_good:
                raise RuntimeError("terminal wedge differs from the chart variable set")
            collected.append((coeff, bpow))
            continue
        i, j = bad[0] if order == "lex" else bad[-1]
        minor_idx = MinorIndex(tuple(sorted(rows + (i,))), tuple(sorted(cols + (j,))))
        dm = d_minor_terms(minor_idx, m)
        pivot = dm[(i, j)]
        if pivot == delta:
            pivot_sign = 1
        elif pivot == -delta:
            pivot_sign = -1
        else:
            raise RuntimeError("pivot coefficient is not the chart minor")
        for (p, q), comp in dm.items():
            if (p, q) == (i, j):
                continue
            new_wedge, swap_sign = _replace_in_wedge(wedge, (i, j), (p, q))
            if new_wedge is None:
                continue
            new_coeff = coeff * comp
            if pivot_sign * swap_sign < 0:
                new_coeff = -new_coeff
            stack.append((-new_coeff, new_wedge, bpow + 1))
    if not collected:
        return MultiPoly.zero(m), 0
    top = max(b for _, b in collected)
    total = MultiPoly.zero(m)
    for coeff, b in collected:
        total = total + coeff * (delta ** (top - b))
    return total, top


_DIVISION_CACHE: Dict[tuple, tuple] = {}


def _division_solver(m: int, k: int, rows: tuple, cols: tuple, power: int):
    """Prepared solve of  delta**power * F == N  (mod the (k+1)-minor ideal)
    for F in the span of standard bideterminants of degree k(m-k), rows <= k."""
    key = (m, k, rows, cols, power)
    cached = _DIVISION_CACHE.get(key)
    if cached is not None:
        return cached
    basis = enumerate_standard_basis(m, degree=k * (m - k), k_bound=k)
    delta_pow = minor_poly(MinorIndex(rows, cols), m) ** power
    col_dicts = []
    keys: Dict[DoubleTableau, int] = {}
    for dt in basis:
        coords = {
            tab: coef
            for coef, tab in standard_coordinates(delta_pow * bideterminant(dt, m), m, k_bound=k)
        }
        col_dicts.append(coords)
        for tab in coords:
            keys.setdefault(tab, len(keys))
    ordered = sorted(keys, key=DoubleTableau.sort_key)
    index = {tab: i for i, tab in enumerate(ordered)}
    columns = []
    for coords in col_dicts:
        vec = [0] * len(ordered)
        for tab, coef in coords.items():
            vec[index[tab]] = coef
        columns.append(vec)
    solver = PreparedSolver(columns)
    result = (ordered, index, basis, solver)
    _DIVISION_CACHE[key] = result
    return result


def _resolve_coefficient(
    numerator: MultiPoly, bpow: int, rows: tuple, cols: tuple, m: int, k: int
) -> MultiPoly:
    """Clear the collected denominator: the canonical representative of
    numerator * delta**(m - k - bpow) modulo the (k+1)-minor ideal."""
    if numerator.is_zero:
        return MultiPoly.zero(m)
    spare = (m - k) - bpow
    delta = minor_poly(MinorIndex(rows, cols), m)
    if spare >= 0:
        return canonical_mod_minors(numerator * (delta ** spare), m, k)
    ordered, index, basis, solver = _division_solver(m, k, rows, cols, -spare)
    rhs = [0] * len(ordered)
    for coef, tab in standard_coordinates(numerator, m, k_bound=k):
        slot = index.get(tab)
        if slot is None:
            raise RuntimeError("numerator escapes the divisible span; reduction is unsound")
        rhs[slot] = coef
    solution = solver.solve(rhs)
    if solution is None:
        raise RuntimeError("division by the chart minor failed; reduction is unsound")
    out = MultiPoly.zero(m)
    for coef, dt in zip(solution, basis):
        if coef:
            out = out + coef * bideterminant(dt, m)
    return out


def reduce_top_form(
    positions, chart: ChartForm, elimination_order: str = "lex"
) -> ReductionResult:
    """Write the wedge of the given differentials (lexicographic order) as
    F * w on the chart, returning F and its minor-subalgebra certificate.

    F is reported as the canonical representative modulo the (k+1)-minor
    ideal, so results from different elimination orders compare directly.
    A form that restricts to zero yields F = 0, not an error.
    """
    m, k = chart.m, chart.k
    positions = tuple(sorted(tuple(p) for p in positions))
    expected = k * (2 * m - k)
    if len(positions) != expected or len(set(positions)) != len(positions):
        raise PreconditionError(
            f"need {expected} distinct positions, got {len(positions)}"
        )
    for i, j in positions:
        if not (1 <= i <= m and 1 <= j <= m):
            raise PreconditionError(f"position ({i},{j}) outside the {m}x{m} matrix")
    numerator, bpow = _reduce_positions(
        positions, chart.rows, chart.cols, m, k, elimination_order
    )
    coeff = _resolve_coefficient(numerator, bpow, chart.rows, chart.cols, m, k)
    if chart.sign < 0:
        coeff = -coeff
    certificate = subalgebra_membership(coeff, m, k)
    return ReductionResult(coefficient=coeff, certificate=certificate, denominator_power=bpow)


def _reduce_to_reference(positions, m: int, k: int) -> MultiPoly:
    """Coefficient of the reference-chart canonical form, without certificates."""
    ref = reference_chart_indices(k)
    numerator, bpow = _reduce_positions(tuple(sorted(positions)), ref, ref, m, k, "lex")
    return _resolve_coefficient(numerator, bpow, ref, ref, m, k)


def _swap_data(a: tuple, b: tuple):
    """For tuples differing in one element, return (removed, added)."""
    removed = sorted(set(a) - set(b))
    added = sorted(set(b) - set(a))
    if len(removed) == 1 and len(added) == 1:
        return removed[0], added[0]
    return None


def verify_chart_transition(rows1, cols1, rows2, cols2, m: int, k: int) -> bool:
    """Verify that two charts one swap apart induce the same canonical form.

    Structurally: for each transported index, wedging the appropriate
    (k+1)-minor differential with the common wedge leaves exactly the two
    predicted terms, whose coefficients are the two chart minors.  Globally:
    each chart's variable wedge reduces in the reference chart to plus or
    minus its own minor power.  Identical charts verify trivially.
    """
    rows1, cols1 = _validate_chart(rows1, cols1, m, k)
    rows2, cols2 = _validate_chart(rows2, cols2, m, k)
    if rows1 == rows2 and cols1 == cols2:
        return True
    row_swap = _swap_data(rows1, rows2)
    col_swap = _swap_data(cols1, cols2)
    if row_swap and cols1 == cols2 and col_swap is None:
        if not _transition_identity(rows1, cols1, row_swap, m, k, transpose=False):
            return False
    elif col_swap and rows1 == rows2 and row_swap is None:
        if not _transition_identity(cols1, rows1, col_swap, m, k, transpose=True):
            return False
    else:
        raise PreconditionError(
            "charts must differ by exactly one row swap or one column swap"
        )
    for rows, cols in ((rows1, cols1), (rows2, cols2)):
        try:
            _chart_sign(rows, cols, m, k)
        except RuntimeError:
            return False
    return True


def _transition_identity(
    swapped: tuple, fixed: tuple, swap, m: int, k: int, transpose: bool
) -> bool:
    """The two-term elimination identity for one transported index.

    For a row swap i -> i2 (transpose=False), every column j outside the
    chart must satisfy: the common wedge times the differential of the
    (k+1)-minor on rows (swapped + i2) and columns (fixed + j) has exactly
    the terms dx_i,j and dx_i2,j with coefficients the two chart minors.
    """
    i, i2 = swap
    others = [j for j in range(1, m + 1) if j not in fixed]
    minor_a = minor_poly(
        _oriented_minor(tuple(sorted(set(swapped) - {i} | {i2})), fixed, transpose), m
    )
    minor_b = minor_poly(_oriented_minor(swapped, fixed, transpose), m)
    for j in others:
        big = _oriented_minor(tuple(sorted(set(swapped) | {i2})), tuple(sorted(fixed + (j,))), transpose)
        dm = d_minor_terms(big, m)
        pair_1 = (j, i) if transpose else (i, j)
        pair_2 = (j, i2) if transpose else (i2, j)
        lam = [
            pq
            for pq in _minor_positions(big)
            if pq not in (pair_1, pair_2)
        ]
        lam_form = ExteriorForm.single(m, MultiPoly.one(m), lam)
        total = ExteriorForm.zero(m, len(lam) + 1)
        for (p, q), comp in dm.items():
            total = total + lam_form.wedge(
                ExteriorForm(m, 1, {((p, q),): comp})
            )
        keys = set(total.terms)
        w1, _ = _merge_wedges(tuple(sorted(lam)), (pair_1,))
        w2, _ = _merge_wedges(tuple(sorted(lam)), (pair_2,))
        if keys != {w1, w2}:
            return False
        c1 = total.terms[w1]
        c2 = total.terms[w2]
        if c1 != minor_a and c1 != -minor_a:
            return False
        if c2 != minor_b and c2 != -minor_b:
            return False
    return True


def _oriented_minor(rows: tuple, cols: tuple, transpose: bool) -> MinorIndex:
    return MinorIndex(cols, rows) if transpose else MinorIndex(rows, cols)


def _minor_positions(idx: MinorIndex) -> list:
    return [(i, j) for i in idx.rows for j in idx.cols]


def default_thread_count() -> int:
    raw = os.environ.get("DETMLD_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError as exc:
        raise PreconditionError(f"DETMLD_THREADS must be an integer, got {raw!r}") from exc
    if n < 1:
        raise PreconditionError(f"DETMLD_THREADS must be >= 1, got {n}")
    return n


@dataclass
class NashReport:
    """Exhaustive reduction report for one (m, k)."""

    m: int
    k: int
    subsets: list = field(default_factory=list)
    charts: list = field(default_factory=list)
    all_member: bool = False
    order_independent: bool = False
    minors_realized: bool = False
    transitions_ok: bool = False
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return (
            self.all_member
            and self.order_independent
            and self.minors_realized
            and self.transitions_ok
        )

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "k": self.k,
            "passed": self.passed,
            "all_member": self.all_member,
            "order_independent": self.order_independent,
            "minors_realized": self.minors_realized,
            "transitions_ok": self.transitions_ok,
            "elapsed_seconds": self.elapsed,
            "subsets": self.subsets,
            "charts": self.charts,
        }


def verify_nash(m: int, k: int, threads: Optional[int] = None) -> NashReport:
    """Reduce every top-form of the right degree and certify the Nash-ideal
    containment: each coefficient F lies in the subalgebra of k x k minors
    in degree m-k, every chart minor power is realized by its own chart
    wedge, reductions are elimination-order independent, and all single-swap
    chart transitions verify.  Guarded to m <= 3 (exhaustive subsets)."""
    if not 1 <= k <= m:
        raise PreconditionError(f"need 1 <= k <= m, got k={k}, m={m}")
    if m > VERIFY_GUARD_M:
        raise PreconditionError(
            f"exhaustive verification is guarded to m <= {VERIFY_GUARD_M}, got m={m}"
        )
    threads = default_thread_count() if threads is None else threads
    if threads < 1:
        raise PreconditionError(f"threads must be >= 1, got {threads}")
    started = time.perf_counter()
    chart = chart_form(reference_chart_indices(k), reference_chart_indices(k), m, k)
    positions = [(i, j) for i in range(1, m + 1) for j in range(1, m + 1)]
    size = k * (2 * m - k)
    subsets = list(combinations(positions, size))

    def reduce_both(subset):
        t0 = time.perf_counter()
        first = reduce_top_form(subset, chart, elimination_order="lex")
        second = reduce_top_form(subset, chart, elimination_order="revlex")
        return subset, first, second, time.perf_counter() - t0

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(reduce_both, subsets))
    else:
        rows = [reduce_both(s) for s in subsets]

    report = NashReport(m=m, k=k)
    by_subset: Dict[Wedge, MultiPoly] = {}
    all_member = True
    order_ok = True
    for subset, first, second, seconds in rows:
        matches = first.coefficient == second.coefficient
        order_ok = order_ok and matches
        all_member = all_member and first.certificate.is_member
        by_subset[subset] = first.coefficient
        witness = first.certificate.expansion
        report.subsets.append(
            {
                "positions": [list(p) for p in subset],
                "F": first.coefficient.to_json(),
                "member": first.certificate.is_member,
                "certificate": witness.to_json() if witness is not None else None,
                "order_independent": matches,
                "denominator_power": first.denominator_power,
                "seconds": seconds,
            }
        )

    realized_all = True
    index_range = range(1, m + 1)
    chart_indices = list(combinations(index_range, k))
    for rows_sel in chart_indices:
        for cols_sel in chart_indices:
            expected = canonical_mod_minors(
                minor_poly(MinorIndex(rows_sel, cols_sel), m) ** (m - k), m, k
            )
            wedge_key = chart_variable_set(rows_sel, cols_sel, m)
            actual = by_subset[wedge_key]
            if actual == expected:
                sign = 1
            elif actual == -expected:
                sign = -1
            else:
                sign = 0
                realized_all = False
            report.charts.append(
                {"rows": list(rows_sel), "cols": list(cols_sel), "sign": sign, "realized": sign != 0}
            )

    transitions_ok = True
    for rows_a, cols_a, rows_b, cols_b in _single_swap_pairs(chart_indices):
        if not verify_chart_transition(rows_a, cols_a, rows_b, cols_b, m, k):
            transitions_ok = False

    report.all_member = all_member
    report.order_independent = order_ok
    report.minors_realized = realized_all
    report.transitions_ok = transitions_ok
    report.elapsed = time.perf_counter() - started
    return report


def _single_swap_pairs(chart_indices: list):
    for a_pos, rows_a in enumerate(chart_indices):
        for rows_b in chart_indices[a_pos + 1:]:
            if len(set(rows_a) ^ set(rows_b)) == 2:
                for cols in chart_indices:
                    yield rows_a, cols, rows_b, cols
    for cols_pos, cols_a in enumerate(chart_indices):
        for cols_b in chart_indices[cols_pos + 1:]:
            if len(set(cols_a) ^ set(cols_b)) == 2:
                for rows in chart_indices:
                    yield rows, cols_a, rows, cols_b
