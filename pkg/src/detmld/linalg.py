"""Exact linear solves over the rationals for the straightening machinery.

Systems here are tall and thin (a few dozen unknowns) and get reused with
many right-hand sides, so the solver precomputes the inverse of a pivot
square once and then answers each solve with a matrix-vector product plus a
full residual check.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence


class PreparedSolver:
    """Solve A x = b exactly for a fixed full-column-rank A and many b."""

    def __init__(self, columns: Sequence[Sequence[Fraction]]):
        if not columns:
            self.ncols = 0
            self.nrows = 0
            self.pivot_rows: List[int] = []
            self.inverse: List[List[Fraction]] = []
            self.rows: List[List[Fraction]] = []
            return
        self.ncols = len(columns)
        self.nrows = len(columns[0])
        if any(len(col) != self.nrows for col in columns):
            raise ValueError("ragged column list")
        self.rows = [
            [Fraction(columns[c][r]) for c in range(self.ncols)] for r in range(self.nrows)
        ]
        self.pivot_rows = self._find_pivot_rows()
        square = [self.rows[r][:] for r in self.pivot_rows]
        self.inverse = _invert(square)

    def _find_pivot_rows(self) -> List[int]:
        work = [row[:] for row in self.rows]
        pivots: List[int] = []
        used = set()
        for col in range(self.ncols):
            pivot = next(
                (r for r in range(self.nrows) if r not in used and work[r][col] != 0),
                None,
            )
            if pivot is None:
                raise ArithmeticError("columns are linearly dependent")
            pivots.append(pivot)
            used.add(pivot)
            inv = Fraction(1, 1) / work[pivot][col]
            work[pivot] = [v * inv for v in work[pivot]]
            for r in range(self.nrows):
                if r != pivot and work[r][col] != 0:
                    f = work[r][col]
                    work[r] = [a - f * b for a, b in zip(work[r], work[pivot])]
        return pivots

    def solve(self, rhs: Sequence[Fraction]) -> Optional[List[Fraction]]:
        """Exact solution vector, or None when the system is inconsistent."""
        if self.ncols == 0:
            return [] if all(v == 0 for v in rhs) else None
        if len(rhs) != self.nrows:
            raise ValueError(f"rhs length {len(rhs)}, expected {self.nrows}")
        sub = [rhs[r] for r in self.pivot_rows]
        x = [
            sum((self.inverse[i][j] * sub[j] for j in range(self.ncols)), Fraction(0))
            for i in range(self.ncols)
        ]
        for r in range(self.nrows):
            acc = sum((self.rows[r][c] * x[c] for c in range(self.ncols)), Fraction(0))
            if acc != rhs[r]:
                return None
        return x


def _invert(matrix: List[List[Fraction]]) -> List[List[Fraction]]:
    n = len(matrix)
    aug = [row[:] + [Fraction(int(i == r)) for i in range(n)] for r, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ArithmeticError("singular pivot square")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = Fraction(1, 1) / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]
