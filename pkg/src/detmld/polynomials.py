"""Sparse exact-rational polynomials in the m*m matrix entries x_ij.

The variable layout is fixed and row-major: x_ij sits at index (i-1)*m + (j-1)
of the exponent vector, so monomial-basis linear algebra downstream is stable.
Also provides determinant polynomials of submatrices (memoized cofactor
expansion, no division) and exact truncated power series for the valuation
oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Sequence, Tuple

from .core import PreconditionError, format_rational, parse_rational

Exponents = Tuple[int, ...]


def var_index(m: int, i: int, j: int) -> int:
    """Index of x_ij in the exponent vector, 1-based i, j."""
    if not (1 <= i <= m and 1 <= j <= m):
        raise PreconditionError(f"entry ({i},{j}) outside a {m}x{m} matrix")
    return (i - 1) * m + (j - 1)


class MultiPoly:
    """Sparse polynomial: map from exponent vectors (length m*m) to nonzero Fractions."""

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: Dict[Exponents, Fraction] | None = None):
        if not isinstance(m, int) or m < 1:
            raise PreconditionError(f"matrix size must be a positive integer, got {m}")
        self.m = m
        clean: Dict[Exponents, Fraction] = {}
        if terms:
            n = m * m
            for exp, coef in terms.items():
                coef = Fraction(coef)
                if coef == 0:
                    continue
                exp = tuple(exp)
                if len(exp) != n:
                    raise PreconditionError(
                        f"exponent vector of length {len(exp)}, expected {n}"
                    )
                clean[exp] = coef
        self.terms = clean

    @classmethod
    def zero(cls, m: int) -> "MultiPoly":
        return cls(m)

    @classmethod
    def constant(cls, m: int, value) -> "MultiPoly":
        return cls(m, {(0,) * (m * m): Fraction(value)})

    @classmethod
    def one(cls, m: int) -> "MultiPoly":
        return cls.constant(m, 1)

    @classmethod
    def variable(cls, m: int, i: int, j: int) -> "MultiPoly":
        exp = [0] * (m * m)
        exp[var_index(m, i, j)] = 1
        return cls(m, {tuple(exp): Fraction(1)})

    def _check_layout(self, other: "MultiPoly") -> None:
        if self.m != other.m:
            raise PreconditionError(
                f"variable layout mismatch: {self.m}x{self.m} vs {other.m}x{other.m}"
            )

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, frozenset(self.terms.items())))

    def __add__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.m, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_layout(other)
        terms = dict(self.terms)
        for exp, coef in other.terms.items():
            acc = terms.get(exp, 0) + coef
            if acc:
                terms[exp] = acc
            else:
                terms.pop(exp, None)
        out = MultiPoly(self.m)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        out = MultiPoly(self.m)
        out.terms = {exp: -coef for exp, coef in self.terms.items()}
        return out

    def __sub__(self, other) -> "MultiPoly":
        return self + (-other if isinstance(other, MultiPoly) else MultiPoly.constant(self.m, -Fraction(other)))

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if other == 0:
                return MultiPoly.zero(self.m)
            out = MultiPoly(self.m)
            out.terms = {exp: coef * other for exp, coef in self.terms.items()}
            return out
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_layout(other)
        terms: Dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                acc = terms.get(exp, 0) + c1 * c2
                if acc:
                    terms[exp] = acc
                else:
                    terms.pop(exp, None)
        out = MultiPoly(self.m)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if not isinstance(n, int) or n < 0:
            raise PreconditionError(f"polynomial power must be a nonnegative integer, got {n}")
        result = MultiPoly.one(self.m)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def partial(self, i: int, j: int) -> "MultiPoly":
        """Formal partial derivative with respect to x_ij."""
        idx = var_index(self.m, i, j)
        terms: Dict[Exponents, Fraction] = {}
        for exp, coef in self.terms.items():
            e = exp[idx]
            if e == 0:
                continue
            lowered = exp[:idx] + (e - 1,) + exp[idx + 1:]
            terms[lowered] = terms.get(lowered, Fraction(0)) + coef * e
        return MultiPoly(self.m, terms)

    def evaluate(self, values: Sequence) -> Fraction:
        """Exact value at a point, given the m*m entries in row-major order."""
        if len(values) != self.m * self.m:
            raise PreconditionError(
                f"need {self.m * self.m} values, got {len(values)}"
            )
        values = [Fraction(v) for v in values]
        total = Fraction(0)
        for exp, coef in self.terms.items():
            term = coef
            for idx, e in enumerate(exp):
                if e:
                    term *= values[idx] ** e
            total += term
        return total

    def total_degree(self) -> int:
        """Largest total degree among terms; 0 for the zero polynomial."""
        return max((sum(exp) for exp in self.terms), default=0)

    def homogeneous_degree(self):
        """Common total degree of all terms, or None if inhomogeneous or zero."""
        degs = {sum(exp) for exp in self.terms}
        if len(degs) != 1:
            return None
        return degs.pop()

    def monomial_content(self, exp: Exponents) -> tuple:
        """(row counts, column counts) of a monomial, each a length-m tuple."""
        m = self.m
        rows = [0] * m
        cols = [0] * m
        for idx, e in enumerate(exp):
            if e:
                rows[idx // m] += e
                cols[idx % m] += e
        return tuple(rows), tuple(cols)

    def to_json(self) -> list:
        items = sorted(self.terms.items())
        return [{"exp": list(exp), "coef": format_rational(coef)} for exp, coef in items]

    @classmethod
    def from_json(cls, m: int, data: Iterable[dict]) -> "MultiPoly":
        terms: Dict[Exponents, Fraction] = {}
        for item in data:
            exp = tuple(item["exp"])
            terms[exp] = terms.get(exp, Fraction(0)) + parse_rational(str(item["coef"]))
        return cls(m, terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        m = self.m
        parts = []
        for exp, coef in sorted(self.terms.items()):
            factors = []
            for idx, e in enumerate(exp):
                if e:
                    i, j = divmod(idx, m)
                    name = f"x{i + 1}{j + 1}"
                    factors.append(name if e == 1 else f"{name}^{e}")
            mono = "*".join(factors) if factors else "1"
            parts.append(f"({format_rational(coef)})*{mono}")
        return " + ".join(parts)


@dataclass(frozen=True)
class MinorIndex:
    """Row and column index sets of a square submatrix, sorted and 1-based."""

    rows: tuple
    cols: tuple

    def __post_init__(self):
        rows = tuple(sorted(self.rows))
        cols = tuple(sorted(self.cols))
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        if len(rows) != len(cols):
            raise PreconditionError(f"minor must be square, got {rows} x {cols}")
        for seq in (rows, cols):
            if len(set(seq)) != len(seq):
                raise PreconditionError(f"repeated index in {seq}")
            if seq and seq[0] < 1:
                raise PreconditionError(f"indices must be >= 1, got {seq}")

    @property
    def size(self) -> int:
        return len(self.rows)


_MINOR_CACHE: Dict[Tuple[int, tuple, tuple], MultiPoly] = {}


def minor_poly(idx: MinorIndex, m: int) -> MultiPoly:
    """Determinant of the selected submatrix, by memoized cofactor expansion."""
    if idx.size == 0:
        raise PreconditionError("empty minor")
    if idx.rows[-1] > m or idx.cols[-1] > m:
        raise PreconditionError(f"minor {idx} does not fit in a {m}x{m} matrix")
    return _minor_poly(m, idx.rows, idx.cols)


def _minor_poly(m: int, rows: tuple, cols: tuple) -> MultiPoly:
    key = (m, rows, cols)
    cached = _MINOR_CACHE.get(key)
    if cached is not None:
        return cached
    if len(rows) == 1:
        result = MultiPoly.variable(m, rows[0], cols[0])
    else:
        i = rows[0]
        rest = rows[1:]
        result = MultiPoly.zero(m)
        sign = 1
        for pos, j in enumerate(cols):
            sub = _minor_poly(m, rest, cols[:pos] + cols[pos + 1:])
            term = MultiPoly.variable(m, i, j) * sub
            result = result + (term if sign > 0 else -term)
            sign = -sign
    _MINOR_CACHE[key] = result
    return result


class TruncatedSeries:
    """Power series in t modulo t**(N+1), stored as a dense coefficient list."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        self.coeffs = list(coeffs)
        if not self.coeffs:
            raise PreconditionError("series needs at least the constant coefficient")

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, truncation: int) -> "TruncatedSeries":
        return cls([0] * (truncation + 1))

    @classmethod
    def monomial(cls, order: int, truncation: int, coeff=1) -> "TruncatedSeries":
        """coeff * t**order, or the zero series when order exceeds the truncation."""
        coeffs = [0] * (truncation + 1)
        if 0 <= order <= truncation:
            coeffs[order] = coeff
        return cls(coeffs)

    def _check(self, other: "TruncatedSeries") -> None:
        if len(self.coeffs) != len(other.coeffs):
            raise PreconditionError(
                f"truncation mismatch: {self.truncation} vs {other.truncation}"
            )

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-a for a in self.coeffs])

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        n = len(self.coeffs)
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs[: n - i]):
                if b != 0:
                    out[i + j] += a * b
        return TruncatedSeries(out)

    def scale(self, c) -> "TruncatedSeries":
        if c == 0:
            return TruncatedSeries.zero(self.truncation)
        if isinstance(c, Fraction) and c.denominator == 1:
            c = c.numerator
        return TruncatedSeries([c * a for a in self.coeffs])

    def order(self):
        """Smallest exponent with nonzero coefficient, or None if zero mod t**(N+1)."""
        for i, a in enumerate(self.coeffs):
            if a != 0:
                return i
        return None

    def __repr__(self) -> str:
        parts = [f"{a}*t^{i}" for i, a in enumerate(self.coeffs) if a != 0]
        return " + ".join(parts) if parts else f"O(t^{len(self.coeffs)})"


def substitute_series(
    p: MultiPoly, assignment: Sequence[Sequence[TruncatedSeries]], truncation: int
) -> TruncatedSeries:
    """Evaluate p at an m x m matrix of truncated series, exactly mod t**(N+1)."""
    m = p.m
    if len(assignment) != m or any(len(row) != m for row in assignment):
        raise PreconditionError(f"assignment must be an {m}x{m} matrix of series")
    for row in assignment:
        for s in row:
            if s.truncation != truncation:
                raise PreconditionError(
                    f"series truncated at {s.truncation}, expected {truncation}"
                )
    total = TruncatedSeries.zero(truncation)
    for exp, coef in p.terms.items():
        term = None
        for idx, e in enumerate(exp):
            if e == 0:
                continue
            factor = assignment[idx // m][idx % m]
            for _ in range(e):
                term = factor if term is None else term * factor
                if term.is_zero:
                    break
            if term is not None and term.is_zero:
                break
        if term is None:
            term = TruncatedSeries.monomial(0, truncation)
        if term.is_zero:
            continue
        total = total + term.scale(coef)
    return total
