"""Independent verification engines for the closed mld formulas.

Two oracles:

* brute-force minimization of the discrepancy objective
  codim - (Nash contact order) - sum alpha_i * w_i
  over all valid orbit partitions with bounded entries, together with an
  analytic certificate of unboundedness from the beta prefix sums;

* a truncated-power-series computation of contact orders, evaluating every
  minor of a matrix of monomial series directly (optionally conjugated by
  random invertible constant matrices, which leaves the orders unchanged).

The search runs over nonincreasing tails only: orbits are indexed by
extended partitions, so unsorted tuples label no orbit.  Where that domain
and the closed formulas disagree (possible when some beta coefficient is
negative while all beta prefix sums stay nonnegative), both values are
reported and flagged rather than reconciled.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Optional, Union

from .core import INF, DeterminantalPair, ExtendedPartition, MldValue, PreconditionError
from .mld import beta_coefficients, mld_along, mld_at_rank
from .orbits import (
    contact_order_subvariety,
    nash_contact_order,
    orbit_codim,
    orbit_codim_point,
    orbit_has_finite_codim,
    orbit_meets_point_fiber,
)
from .polynomials import MinorIndex, TruncatedSeries, minor_poly, substitute_series


@dataclass(frozen=True)
class PointTarget:
    """Minimize over arcs through a fixed matrix of rank q."""

    q: int


@dataclass(frozen=True)
class LocusTarget:
    """Minimize over arcs centered in the rank <= k-j sublocus."""

    j: int


Target = Union[PointTarget, LocusTarget]


class _AboveTruncation:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ABOVE_TRUNCATION"


ABOVE_TRUNCATION = _AboveTruncation()


@dataclass(frozen=True)
class OracleResult:
    """Outcome of a bounded objective search.

    `at_boundary` means some searched coordinate of the reported argmin hit
    the bound, so the minimum is only an upper bound on the true infimum.
    `prefix_unbounded` is the analytic certificate that some beta prefix sum
    is negative, in which case the infimum over the sorted domain is minus
    infinity regardless of the bound.
    """

    minimum: MldValue
    argmin: Optional[tuple]
    at_boundary: bool
    prefix_unbounded: bool

    def to_json(self) -> dict:
        return {
            "minimum": str(self.minimum),
            "argmin": list(self.argmin) if self.argmin is not None else None,
            "at_boundary": self.at_boundary,
            "prefix_unbounded": self.prefix_unbounded,
        }


@dataclass(frozen=True)
class OracleComparison:
    """Oracle search result next to the closed-form value."""

    oracle: OracleResult
    closed_form: MldValue
    agree: bool

    def to_json(self) -> dict:
        out = self.oracle.to_json()
        out["closed_form"] = str(self.closed_form)
        out["agree"] = self.agree
        return out


def _validate_target(pair: DeterminantalPair, target: Target) -> None:
    if isinstance(target, PointTarget):
        if not 0 <= target.q <= pair.k:
            raise PreconditionError(f"need 0 <= q <= k={pair.k}, got q={target.q}")
    elif isinstance(target, LocusTarget):
        if not 1 <= target.j <= pair.k:
            raise PreconditionError(f"need 1 <= j <= k={pair.k}, got j={target.j}")
    else:
        raise PreconditionError(f"unknown target {target!r}")


def full_partition(pair: DeterminantalPair, tail) -> ExtendedPartition:
    """Prepend the INF prefix of length m-k to a finite tail of length k."""
    tail = tuple(tail)
    if len(tail) != pair.k:
        raise PreconditionError(f"tail must have length k={pair.k}, got {len(tail)}")
    return ExtendedPartition((INF,) * (pair.m - pair.k) + tail)


def discrepancy_objective(
    pair: DeterminantalPair, lam: ExtendedPartition, target: Target
) -> Fraction:
    """codim - (Nash contact order) - sum_i alpha_i * w_i for one orbit.

    The codimension is taken relative to the target: through a rank-q point
    for a point target, plain orbit codimension for a locus target.  The
    orbit must satisfy the target's membership conditions with finite
    codimension.
    """
    _validate_target(pair, target)
    if not orbit_has_finite_codim(lam, pair):
        raise PreconditionError(
            f"orbit {lam.entries} has infinite codimension; objective undefined"
        )
    if isinstance(target, PointTarget):
        if not orbit_meets_point_fiber(lam, pair, target.q):
            raise PreconditionError(
                f"orbit {lam.entries} misses the fiber over a rank-{target.q} point"
            )
        cod = orbit_codim_point(lam, pair, target.q)
    else:
        m, k = pair.m, pair.k
        if any(lam[m - k + i] <= 0 for i in range(target.j)):
            raise PreconditionError(
                f"orbit {lam.entries} is not centered in the rank <= {k - target.j} sublocus"
            )
        cod = orbit_codim(lam, pair)
    nash = nash_contact_order(lam, pair)
    weighted = sum(
        (
            pair.alphas[i - 1] * contact_order_subvariety(lam, pair, i)
            for i in range(1, pair.k + 1)
        ),
        Fraction(0),
    )
    return Fraction(cod - nash) - weighted


def _descending_tails(length: int, hi: int, floors: tuple) -> Iterator[tuple]:
    if length == 0:
        yield ()
        return
    for v in range(hi, floors[0] - 1, -1):
        for rest in _descending_tails(length - 1, v, floors[1:]):
            yield (v,) + rest


def iter_tails(pair: DeterminantalPair, target: Target, bound: int) -> Iterator[tuple]:
    """All nonincreasing finite tails with entries in [0, bound] meeting the
    target's membership constraints, in descending lexicographic order."""
    _validate_target(pair, target)
    if bound < 1:
        raise PreconditionError(f"bound must be >= 1, got {bound}")
    k = pair.k
    if isinstance(target, PointTarget):
        free = k - target.q
        zeros = (0,) * target.q
        for head in _descending_tails(free, bound, (1,) * free):
            yield head + zeros
    else:
        floors = (1,) * target.j + (0,) * (k - target.j)
        yield from _descending_tails(k, bound, floors)


def minimize_objective(
    pair: DeterminantalPair, target: Target, bound: int
) -> OracleResult:
    """Minimize the discrepancy objective over the bounded sorted domain.

    When some beta prefix sum is negative the infimum over the (unbounded)
    sorted domain is minus infinity; this is certified analytically and no
    enumeration is attempted.  Ties in the minimum report the
    lexicographically smallest argmin.
    """
    _validate_target(pair, target)
    if bound < 1:
        raise PreconditionError(f"bound must be >= 1, got {bound}")
    count = pair.k - target.q if isinstance(target, PointTarget) else pair.k
    betas = beta_coefficients(pair, count)
    if any(s < 0 for s in betas.prefix_sums()):
        return OracleResult(
            minimum=MldValue.NEG_INFINITY,
            argmin=None,
            at_boundary=False,
            prefix_unbounded=True,
        )
    searched = count
    best: Optional[Fraction] = None
    best_tail: Optional[tuple] = None
    for tail in iter_tails(pair, target, bound):
        value = discrepancy_objective(pair, full_partition(pair, tail), target)
        if best is None or value < best or (value == best and tail < best_tail):
            best, best_tail = value, tail
    if best is None:
        raise PreconditionError("empty search domain")
    at_boundary = any(v == bound for v in best_tail[:searched])
    return OracleResult(
        minimum=MldValue.finite(best),
        argmin=best_tail,
        at_boundary=at_boundary,
        prefix_unbounded=False,
    )


def compare_with_closed_form(
    pair: DeterminantalPair, target: Target, bound: int
) -> OracleComparison:
    """Run the bounded search and set the agreement flag against the closed form."""
    result = minimize_objective(pair, target, bound)
    if isinstance(target, PointTarget):
        closed = mld_at_rank(pair, target.q)
    else:
        closed = mld_along(pair, target.j)
    return OracleComparison(oracle=result, closed_form=closed, agree=result.minimum == closed)


def _random_invertible(m: int, rng: random.Random) -> list:
    while True:
        mat = [[rng.randint(-3, 3) for _ in range(m)] for _ in range(m)]
        if _int_det(mat) != 0:
            return mat


def _int_det(mat: list) -> int:
    n = len(mat)
    if n == 1:
        return mat[0][0]
    total = 0
    sign = 1
    for c in range(n):
        sub = [row[:c] + row[c + 1:] for row in mat[1:]]
        total += sign * mat[0][c] * _int_det(sub)
        sign = -sign
    return total


def series_minor_order(
    exponents, m: int, size: int, truncation: int, seed: Optional[int] = None
):
    """Minimum t-adic order over all size x size minors of diag(t**e_1, ..., t**e_m),
    computed mod t**(truncation+1).

    Exponents above the truncation play the role of infinite entries.  With a
    seed, the diagonal matrix is conjugated as G * diag * H by seeded random
    invertible integer matrices before evaluating; the orders are invariant
    under this.  Returns ABOVE_TRUNCATION when every minor vanishes to order
    beyond the truncation.
    """
    exponents = tuple(exponents)
    if len(exponents) != m:
        raise PreconditionError(f"need m={m} exponents, got {len(exponents)}")
    if any(not isinstance(e, int) or e < 0 for e in exponents):
        raise PreconditionError(f"exponents must be nonnegative integers: {exponents}")
    if not 1 <= size <= m:
        raise PreconditionError(f"need 1 <= size <= m={m}, got {size}")
    if truncation < 0:
        raise PreconditionError(f"truncation must be >= 0, got {truncation}")
    finite_total = sum(e for e in exponents if e <= truncation)
    if finite_total > truncation:
        raise PreconditionError(
            f"truncation {truncation} below the sum {finite_total} of finite exponents"
        )
    if seed is None:
        assignment = [
            [
                TruncatedSeries.monomial(exponents[i], truncation)
                if i == j
                else TruncatedSeries.zero(truncation)
                for j in range(m)
            ]
            for i in range(m)
        ]
    else:
        rng = random.Random(seed)
        left = _random_invertible(m, rng)
        right = _random_invertible(m, rng)
        assignment = []
        for a in range(m):
            row = []
            for b in range(m):
                coeffs = [0] * (truncation + 1)
                for c in range(m):
                    if exponents[c] <= truncation:
                        coeffs[exponents[c]] += left[a][c] * right[c][b]
                row.append(TruncatedSeries(coeffs))
            assignment.append(row)

    best = None
    indices = range(1, m + 1)
    for rows in combinations(indices, size):
        for cols in combinations(indices, size):
            poly = minor_poly(MinorIndex(rows, cols), m)
            order = substitute_series(poly, assignment, truncation).order()
            if order is not None and (best is None or order < best):
                best = order
                if best == 0:
                    return 0
    return best if best is not None else ABOVE_TRUNCATION
