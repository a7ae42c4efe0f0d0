"""Standard monomial theory on the matrix polynomial ring.

Young diagrams and tableaux, the dominance and tableau partial orders,
bideterminant polynomials, expansion into the standard basis
("straightening"), and the rectangular-shape membership test for the
subalgebra generated by the k x k minors.

Conventions.  A tableau is standard when every row strictly increases left
to right and every column is nondecreasing top to bottom.  A row of a double
tableau names the row set (left side) and column set (right side) of a
minor; the bideterminant is the product of those minors over all rows, and
depends on the rows only as sets.

Straightening is implemented by exact linear algebra: within each content
block the standard bideterminants form a basis of the span of the monomials
of that content, so expanding a polynomial amounts to one invertible solve
per content, which we cache.  Working modulo the ideal of (k+1)-minors is
realized by dropping standard terms with a row longer than k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional

from .core import PreconditionError
from .linalg import PreparedSolver
from .polynomials import Exponents, MinorIndex, MultiPoly, minor_poly

MAX_DEGREE = 6
MAX_BASIS = 50_000


@dataclass(frozen=True)
class YoungDiagram:
    """Nonincreasing tuple of positive row lengths (possibly empty)."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if any(r < 1 for r in rows):
            raise PreconditionError(f"row lengths must be positive: {rows}")
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise PreconditionError(f"row lengths must be nonincreasing: {rows}")

    @property
    def size(self) -> int:
        return sum(self.rows)

    def __len__(self) -> int:
        return len(self.rows)


def dominance_leq(sigma: YoungDiagram, tau: YoungDiagram) -> bool:
    """Prefix-sum comparison; missing rows count as zero."""
    acc_s = acc_t = 0
    for j in range(max(len(sigma), len(tau))):
        acc_s += sigma.rows[j] if j < len(sigma.rows) else 0
        acc_t += tau.rows[j] if j < len(tau.rows) else 0
        if acc_s > acc_t:
            return False
    return True


@dataclass(frozen=True)
class Tableau:
    """A filling of a Young diagram with positive integers."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        for row in rows:
            if any(v < 1 for v in row):
                raise PreconditionError(f"entries must be >= 1: {row}")
            if not row:
                raise PreconditionError("empty tableau row")
        lengths = tuple(len(row) for row in rows)
        if any(a < b for a, b in zip(lengths, lengths[1:])):
            raise PreconditionError(f"row lengths must be nonincreasing: {lengths}")

    @property
    def shape(self) -> YoungDiagram:
        return YoungDiagram(tuple(len(row) for row in self.rows))

    @property
    def size(self) -> int:
        return sum(len(row) for row in self.rows)

    @property
    def max_entry(self) -> int:
        return max((v for row in self.rows for v in row), default=0)

    def content(self, m: int) -> tuple:
        """Multiplicity of each value 1..m, as a length-m tuple."""
        counts = [0] * m
        for row in self.rows:
            for v in row:
                if v > m:
                    raise PreconditionError(f"entry {v} exceeds m={m}")
                counts[v - 1] += 1
        return tuple(counts)

    def to_json(self) -> dict:
        return {"shape": [len(r) for r in self.rows], "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> "Tableau":
        t = cls(tuple(tuple(r) for r in data["rows"]))
        if "shape" in data and tuple(data["shape"]) != t.shape.rows:
            raise PreconditionError(
                f"declared shape {data['shape']} does not match rows {t.shape.rows}"
            )
        return t


def tableau_leq(t: Tableau, other: Tableau) -> bool:
    """T <= T' iff, for every p and q, the first p rows of T contain at most
    as many entries <= q as the first p rows of T'."""
    depth = max(len(t.rows), len(other.rows))
    top = max(t.max_entry, other.max_entry)
    for p in range(1, depth + 1):
        vals_t = [v for row in t.rows[:p] for v in row]
        vals_o = [v for row in other.rows[:p] for v in row]
        for q in range(1, top + 1):
            if sum(1 for v in vals_t if v <= q) > sum(1 for v in vals_o if v <= q):
                return False
    return True


def double_tableau_leq(dt: "DoubleTableau", other: "DoubleTableau") -> bool:
    """Componentwise comparison of the two sides."""
    return tableau_leq(dt.left, other.left) and tableau_leq(dt.right, other.right)


def is_standard(t: Tableau) -> bool:
    """Rows strictly increase left to right; columns nondecrease top to bottom."""
    for row in t.rows:
        if any(a >= b for a, b in zip(row, row[1:])):
            return False
    for r in range(len(t.rows) - 1):
        upper, lower = t.rows[r], t.rows[r + 1]
        if any(upper[c] > lower[c] for c in range(len(lower))):
            return False
    return True


@dataclass(frozen=True)
class DoubleTableau:
    """A pair of tableaux of the same shape; its rows index minors."""

    left: Tableau
    right: Tableau

    def __post_init__(self):
        if self.left.shape != self.right.shape:
            raise PreconditionError(
                f"sides have different shapes: {self.left.shape.rows} vs {self.right.shape.rows}"
            )

    @property
    def shape(self) -> YoungDiagram:
        return self.left.shape

    @property
    def is_standard(self) -> bool:
        return is_standard(self.left) and is_standard(self.right)

    def sort_key(self) -> tuple:
        return (self.left.rows, self.right.rows)

    def to_json(self) -> dict:
        return {"left": self.left.to_json(), "right": self.right.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "DoubleTableau":
        return cls(Tableau.from_json(data["left"]), Tableau.from_json(data["right"]))


@dataclass(frozen=True)
class StandardExpansion:
    """Expansion in the standard basis: a tuple of (coefficient, standard DT) terms."""

    terms: tuple

    def __iter__(self):
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def shapes(self) -> list:
        return [dt.shape for _, dt in self.terms]

    def restrict_rows(self, k_bound: int) -> "StandardExpansion":
        """Drop terms with any row longer than k_bound (these vanish modulo
        the ideal of (k_bound+1)-minors)."""
        kept = tuple(
            (c, dt) for c, dt in self.terms if all(r <= k_bound for r in dt.shape.rows)
        )
        return StandardExpansion(kept)

    def to_poly(self, m: int) -> MultiPoly:
        total = MultiPoly.zero(m)
        for coef, dt in self.terms:
            total = total + coef * bideterminant(dt, m)
        return total

    def to_json(self) -> list:
        return [
            {"coef": str(coef), "left": dt.left.to_json(), "right": dt.right.to_json()}
            for coef, dt in self.terms
        ]


def bideterminant(dt: DoubleTableau, m: int) -> MultiPoly:
    """Product over rows of the minor with row set = left row, column set = right row.

    Rows are read as index sets, so the value is insensitive to the order of
    entries within a row; repeated entries within a row are rejected.
    """
    result = MultiPoly.one(m)
    for lrow, rrow in zip(dt.left.rows, dt.right.rows):
        if len(set(lrow)) != len(lrow) or len(set(rrow)) != len(rrow):
            raise PreconditionError(f"repeated entry within a row: {lrow} | {rrow}")
        if max(lrow) > m or max(rrow) > m:
            raise PreconditionError(f"row {lrow} | {rrow} does not fit in m={m}")
        result = result * minor_poly(MinorIndex(tuple(lrow), tuple(rrow)), m)
    return result


def _partitions(total: int, max_part: int) -> Iterable[tuple]:
    """Nonincreasing compositions of `total` with parts in 1..max_part."""
    if total == 0:
        yield ()
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def enumerate_standard_tableaux(
    m: int, shape: tuple, content: Optional[tuple] = None
) -> List[Tableau]:
    """All standard fillings of `shape` with entries in 1..m.

    With `content` (a length-m tuple of multiplicities) only fillings of that
    content are produced.  Order is lexicographic on the rows.
    """
    shape = tuple(shape)
    if not shape:
        if content is not None and any(content):
            return []
        return [Tableau(())]
    results: List[Tableau] = []
    remaining = list(content) if content is not None else None

    def rows_for(length: int, lower: tuple) -> Iterable[tuple]:
        # strictly increasing rows, entrywise >= the row above
        def extend(prefix: tuple, start: int) -> Iterable[tuple]:
            pos = len(prefix)
            if pos == length:
                yield prefix
                return
            floor = max(start, lower[pos] if pos < len(lower) else 1)
            for v in range(floor, m + 1):
                if remaining is not None and remaining[v - 1] == 0:
                    continue
                if remaining is not None:
                    remaining[v - 1] -= 1
                yield from extend(prefix + (v,), v + 1)
                if remaining is not None:
                    remaining[v - 1] += 1

        yield from extend((), 1)

    def build(row_idx: int, rows: tuple) -> None:
        if row_idx == len(shape):
            if remaining is None or all(c == 0 for c in remaining):
                results.append(Tableau(rows))
            return
        lower = rows[-1] if rows else ()
        for row in rows_for(shape[row_idx], lower):
            build(row_idx + 1, rows + (row,))

    build(0, ())
    return results


def enumerate_standard_basis(
    m: int,
    degree: Optional[int] = None,
    content: Optional[tuple] = None,
    k_bound: Optional[int] = None,
    max_degree: int = MAX_DEGREE,
    max_basis: int = MAX_BASIS,
) -> List[DoubleTableau]:
    """All standard double tableaux of the given total degree or content.

    `content`, when given, is a pair (left counts, right counts) of length-m
    tuples with equal totals.  `k_bound` keeps only shapes with rows <= k_bound.
    Enumeration beyond the guards is rejected rather than attempted.
    """
    if (degree is None) == (content is None):
        raise PreconditionError("specify exactly one of degree or content")
    if content is not None:
        left_content, right_content = (tuple(c) for c in content)
        if len(left_content) != m or len(right_content) != m:
            raise PreconditionError(f"content tuples must have length m={m}")
        if sum(left_content) != sum(right_content):
            raise PreconditionError("left and right contents must have equal totals")
        degree = sum(left_content)
    else:
        left_content = right_content = None
    if degree > max_degree:
        raise PreconditionError(f"degree {degree} exceeds enumeration guard {max_degree}")
    max_part = min(m, k_bound) if k_bound is not None else m
    out: List[DoubleTableau] = []
    for shape in _partitions(degree, max_part):
        lefts = enumerate_standard_tableaux(m, shape, left_content)
        rights = enumerate_standard_tableaux(m, shape, right_content)
        for lt in lefts:
            for rt in rights:
                out.append(DoubleTableau(lt, rt))
                if len(out) > max_basis:
                    raise PreconditionError(
                        f"standard basis exceeds enumeration guard {max_basis}"
                    )
    out.sort(key=DoubleTableau.sort_key)
    return out


class _ContentBlock:
    """Change of basis between monomials and standard bideterminants of one content."""

    def __init__(self, m: int, row_content: tuple, col_content: tuple):
        self.m = m
        self.monomials = _monomials_with_content(m, row_content, col_content)
        self.index = {exp: i for i, exp in enumerate(self.monomials)}
        self.tableaux = enumerate_standard_basis(
            m, content=(row_content, col_content), max_degree=max(sum(row_content), MAX_DEGREE)
        )
        if len(self.tableaux) != len(self.monomials):
            raise RuntimeError(
                "standard basis size does not match the monomial count for content "
                f"{row_content} | {col_content}: this contradicts the straightening law"
            )
        columns = []
        for dt in self.tableaux:
            vec = [Fraction(0)] * len(self.monomials)
            for exp, coef in bideterminant(dt, m).terms.items():
                vec[self.index[exp]] = coef
            columns.append(vec)
        try:
            self.solver = PreparedSolver(columns)
        except ArithmeticError as exc:
            raise RuntimeError(
                "standard bideterminants are linearly dependent within a content "
                "block: this contradicts the straightening law"
            ) from exc

    def coordinates(self, terms: Dict[Exponents, Fraction]) -> List[tuple]:
        rhs = [Fraction(0)] * len(self.monomials)
        for exp, coef in terms.items():
            rhs[self.index[exp]] = coef
        solution = self.solver.solve(rhs)
        if solution is None:
            raise RuntimeError(
                "monomials of a content block escaped the standard span: this "
                "contradicts the straightening law"
            )
        return [
            (coef, self.tableaux[i]) for i, coef in enumerate(solution) if coef != 0
        ]


def _monomials_with_content(m: int, row_content: tuple, col_content: tuple) -> List[Exponents]:
    """Exponent vectors of all monomials with the prescribed row/column contents."""
    results: List[Exponents] = []
    n = m * m
    exp = [0] * n
    cols_left = list(col_content)

    def fill_row(i: int, j: int, budget: int) -> None:
        if i == m:
            results.append(tuple(exp))
            return
        if j == m:
            if budget == 0:
                fill_row(i + 1, 0, row_content[i + 1] if i + 1 < m else 0)
            return
        upper = min(budget, cols_left[j])
        for e in range(upper, -1, -1):
            exp[i * m + j] = e
            cols_left[j] -= e
            fill_row(i, j + 1, budget - e)
            cols_left[j] += e
            exp[i * m + j] = 0

    fill_row(0, 0, row_content[0] if m else 0)
    return results


_BLOCK_CACHE: Dict[tuple, _ContentBlock] = {}


def _content_block(m: int, row_content: tuple, col_content: tuple) -> _ContentBlock:
    key = (m, row_content, col_content)
    block = _BLOCK_CACHE.get(key)
    if block is None:
        block = _ContentBlock(m, row_content, col_content)
        _BLOCK_CACHE[key] = block
    return block


def standard_coordinates(
    p: MultiPoly, m: int, k_bound: Optional[int] = None
) -> StandardExpansion:
    """Expansion of p in the standard basis, content block by content block.

    With k_bound set, terms with rows longer than k_bound are dropped: the
    result represents the image of p modulo the ideal of (k_bound+1)-minors.
    """
    if p.m != m:
        raise PreconditionError(f"polynomial lives in a {p.m}x{p.m} layout, expected {m}")
    by_content: Dict[tuple, Dict[Exponents, Fraction]] = {}
    for exp, coef in p.terms.items():
        rc, cc = p.monomial_content(exp)
        by_content.setdefault((rc, cc), {})[exp] = coef
    terms: List[tuple] = []
    for (rc, cc), chunk in by_content.items():
        terms.extend(_content_block(m, rc, cc).coordinates(chunk))
    terms.sort(key=lambda t: t[1].sort_key())
    expansion = StandardExpansion(tuple(terms))
    if k_bound is not None:
        expansion = expansion.restrict_rows(k_bound)
    return expansion


def canonical_mod_minors(p: MultiPoly, m: int, k: int) -> MultiPoly:
    """Canonical polynomial representative of p modulo the ideal of (k+1)-minors."""
    return standard_coordinates(p, m, k_bound=k).to_poly(m)


def straighten(
    dt: DoubleTableau,
    m: int,
    k_bound: Optional[int] = None,
    max_degree: int = MAX_DEGREE,
) -> StandardExpansion:
    """Expand the bideterminant of dt in the standard basis.

    Every resulting shape dominates the shape of dt and the content is
    preserved.  With k_bound, the expansion is taken modulo the ideal of
    (k_bound+1)-minors by dropping terms with rows longer than k_bound.
    """
    if dt.shape.size > max_degree:
        raise PreconditionError(
            f"degree {dt.shape.size} exceeds straightening guard {max_degree}"
        )
    p = bideterminant(dt, m)
    return standard_coordinates(p, m, k_bound=k_bound)


@dataclass(frozen=True)
class Membership:
    """Outcome of the minor-subalgebra test.

    When `is_member` holds, `expansion` is a standard expansion of the input
    modulo the (k+1)-minor ideal in which every shape is the rectangle
    (k, ..., k); re-expanding it writes the input as a polynomial in the
    k x k minors.
    """

    is_member: bool
    expansion: Optional[StandardExpansion]
    offending: Optional[DoubleTableau] = None


def subalgebra_membership(F: MultiPoly, m: int, k: int) -> Membership:
    """Decide whether F, modulo the ideal of (k+1)-minors, is a polynomial in
    the k x k minors.

    F must be homogeneous with degree divisible by k.  The image of F is
    expanded in the standard basis with rows <= k; membership holds exactly
    when every surviving shape is the rectangle (k, ..., k).
    """
    if not 1 <= k <= m:
        raise PreconditionError(f"need 1 <= k <= m, got k={k}, m={m}")
    if F.m != m:
        raise PreconditionError(f"polynomial layout {F.m} does not match m={m}")
    if F.is_zero:
        return Membership(True, StandardExpansion(()))
    degree = F.homogeneous_degree()
    if degree is None:
        raise PreconditionError("membership test requires a homogeneous polynomial")
    if degree % k != 0:
        raise PreconditionError(f"degree {degree} is not divisible by k={k}")
    expansion = standard_coordinates(F, m, k_bound=k)
    for _, tab in expansion:
        if any(r != k for r in tab.shape.rows):
            return Membership(False, None, offending=tab)
    return Membership(True, expansion)
