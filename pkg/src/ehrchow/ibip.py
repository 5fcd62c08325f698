"""Triangulations induced by interior points.

Three conditions on a unimodular triangulation: every boundary lattice
point shares an edge with an interior one, the closed stars of any set of
interior points overlap in a full-dimensional region, and each closed star
of an interior point is convex.

Closed stars are subcomplexes, so their intersections are too, and the
dimension of an intersection is the largest face it contains. A maximal
simplex lies in ``clstar(p)`` only when it has ``p`` as a vertex, hence the
intersection over a set ``S`` is full-dimensional iff some maximal simplex
contains all of ``S``.
"""
import itertools
from dataclasses import dataclass

from .triangulation import closed_star, covers_hull


@dataclass(frozen=True)
class IbipReport:
    boundary_connected: bool
    boundary_witness: tuple  # boundary points with no interior neighbour
    cech_ok: bool
    cech_witness: tuple  # first failing set of interior points, or None
    polytopial_ok: bool
    polytopial_witness: tuple  # interior point with a non-convex closed star, or None
    interior_points: tuple

    @property
    def is_ibip(self):
        return self.boundary_connected and self.cech_ok and self.polytopial_ok

    def failures(self):
        out = []
        if not self.boundary_connected:
            out.append("boundary_connectivity")
        if not self.cech_ok:
            out.append("cech")
        if not self.polytopial_ok:
            out.append("polytopial")
        return out


def check_boundary_connectivity(T):
    """``(ok, points)``: boundary points lacking an edge to an interior point.

    Without interior points the condition cannot hold, so the answer is
    false with every boundary point as witness.
    """
    interior = set(T.interior_vertices)
    bad = []
    for b in T.boundary_vertices:
        if not any(tuple(sorted((b, p))) in T.faces for p in interior):
            bad.append(T.points[b])
    return not bad, tuple(bad)


def _shared_cell(T, S):
    return any(all(p in s for p in S) for s in T.maximal)


def check_cech_condition(T, exhaustive=False):
    """``(ok, witness)`` for full-dimensional overlaps of closed stars.

    Subsets are scanned by size and then lexicographically; supersets of a
    failing subset are skipped, so the witness is a smallest failing subset.
    Unless ``exhaustive``, the whole interior set is tried first: by
    monotonicity it succeeding settles every subset.
    """
    interior = T.interior_vertices
    if not exhaustive and (not interior or _shared_cell(T, interior)):
        return True, None
    failed = []
    first = None
    for r in range(1, len(interior) + 1):
        for S in itertools.combinations(interior, r):
            if not exhaustive and any(set(F) <= set(S) for F in failed):
                continue
            if not _shared_cell(T, S):
                failed.append(S)
                if first is None:
                    first = S
    if first is None:
        return True, None
    return False, tuple(T.points[p] for p in first)


def check_polytopial(T):
    """``(ok, point)``: first interior point whose closed star is not convex."""
    for p in T.interior_vertices:
        if not covers_hull(closed_star(T, p)):
            return False, T.points[p]
    return True, None


def is_ibip(T):
    bc, bw = check_boundary_connectivity(T)
    co, cw = check_cech_condition(T)
    po, pw = check_polytopial(T)
    return IbipReport(bc, bw, co, cw, po, pw, tuple(T.points[p] for p in T.interior_vertices))
