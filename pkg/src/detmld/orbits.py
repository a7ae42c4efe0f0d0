"""Arithmetic on arc-space orbits of determinantal varieties.

An extended partition lam of length m labels the orbit of the diagonal arc
diag(t**lam_1, ..., t**lam_m) under the two-sided action of invertible
matrices on arcs.  Everything here is pure integer arithmetic on the
partition entries: membership predicates, contact orders along the
determinantal subvarieties, and orbit codimensions.

Indices follow the 1-based conventions of the underlying geometry; the
docstrings state them explicitly.
"""

from __future__ import annotations

from .core import INF, DeterminantalPair, ExtendedPartition, PreconditionError


def _check_lengths(lam: ExtendedPartition, pair: DeterminantalPair) -> None:
    if len(lam) != pair.m:
        raise PreconditionError(
            f"partition has length {len(lam)}, expected m={pair.m}"
        )


def _require_in_jet_space(lam: ExtendedPartition, pair: DeterminantalPair) -> None:
    if not orbit_in_jet_space(lam, pair):
        raise PreconditionError(
            f"orbit {lam.entries} does not lie in the jet space for k={pair.k}: "
            f"the first m-k={pair.m - pair.k} entries must be INF"
        )


def orbit_in_jet_space(lam: ExtendedPartition, pair: DeterminantalPair) -> bool:
    """True iff the orbit lies in the arc space of the rank <= k locus.

    This happens exactly when lam_1 = ... = lam_{m-k} = INF (vacuous for k = m).
    """
    _check_lengths(lam, pair)
    return all(lam[i] is INF for i in range(pair.m - pair.k))


def orbit_has_finite_codim(lam: ExtendedPartition, pair: DeterminantalPair) -> bool:
    """True iff the orbit has finite codimension, i.e. lam_{m-k+1} < INF."""
    _require_in_jet_space(lam, pair)
    return lam[pair.m - pair.k] is not INF


def orbit_meets_point_fiber(lam: ExtendedPartition, pair: DeterminantalPair, q: int) -> bool:
    """True iff the orbit meets the arcs through a fixed rank-q base point.

    Requires lam_1, ..., lam_{m-q} > 0 and lam_{m-q+1} = ... = lam_m = 0.
    """
    _require_in_jet_space(lam, pair)
    if not 0 <= q <= pair.k:
        raise PreconditionError(f"need 0 <= q <= k={pair.k}, got q={q}")
    m = pair.m
    head = all(lam[i] > 0 for i in range(m - q))
    tail = all(lam[i] == 0 for i in range(m - q, m))
    return head and tail


def contact_order_subvariety(lam: ExtendedPartition, pair: DeterminantalPair, i: int):
    """Contact order of the orbit along the rank <= k-i sublocus, for 1 <= i <= k.

    Equals lam_{m-k+i} + ... + lam_m, the t-adic order of the size-(k-i+1)
    minors along the diagonal arc (INF-absorbing sum).
    """
    _require_in_jet_space(lam, pair)
    if not 1 <= i <= pair.k:
        raise PreconditionError(f"need 1 <= i <= k={pair.k}, got i={i}")
    return sum(lam[pair.m - pair.k + i - 1:])


def nash_contact_order(lam: ExtendedPartition, pair: DeterminantalPair):
    """Contact order along the Nash ideal: (m-k) * (lam_{m-k+1} + ... + lam_m).

    The Nash ideal has the same contact loci as the (m-k)-th power of the
    ideal of maximal allowed minors; for k = m it is the unit ideal, so the
    order is 0.
    """
    _require_in_jet_space(lam, pair)
    if pair.k == pair.m:
        return 0
    return (pair.m - pair.k) * sum(lam[pair.m - pair.k:])


def orbit_codim(lam: ExtendedPartition, pair: DeterminantalPair) -> int:
    """Codimension of the orbit inside the arc space of the rank <= k locus.

    Equals sum over i = m-k+1, ..., m of (2i - 1) * lam_i; requires finite
    codimension.
    """
    if not orbit_has_finite_codim(lam, pair):
        raise PreconditionError(
            f"orbit {lam.entries} has infinite codimension for k={pair.k}"
        )
    m, k = pair.m, pair.k
    return sum((2 * i - 1) * lam[i - 1] for i in range(m - k + 1, m + 1))


def orbit_codim_point(lam: ExtendedPartition, pair: DeterminantalPair, q: int) -> int:
    """Codimension of the orbit intersected with the arcs through a rank-q point.

    Equals q(2m - q) + orbit_codim(lam); the correction term is the dimension
    of the rank-q matrix locus swept out by the group action.
    """
    if not orbit_meets_point_fiber(lam, pair, q):
        raise PreconditionError(
            f"orbit {lam.entries} misses the fiber over a rank-{q} point"
        )
    return q * (2 * pair.m - q) + orbit_codim(lam, pair)
