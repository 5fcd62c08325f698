"""Named fixture triangulations with expected invariants.

Expected values carry a provenance tag: ``TRIVIAL`` for read-off facts and
``DERIVED: <oracle>`` for values computed independently (brute-force counts,
hand area bookkeeping) and frozen here. The test suite recomputes each one.
"""
import itertools
from dataclasses import dataclass, field

from .triangulation import build_triangulation


@dataclass(frozen=True)
class Fixture:
    name: str
    triangulation: object
    expected: dict
    provenance: dict = field(default_factory=dict)

    def document(self, weights=None):
        return as_document(self.triangulation, weights)


def as_document(T, weights=None):
    """Input document for the command line tool."""
    doc = {
        "ambient_dim": T.ambient_dim,
        "points": [list(p) for p in T.points],
        "maximal_simplices": [list(s) for s in T.maximal],
    }
    if weights is not None:
        doc["weights"] = [str(weights[i]) if i in weights else "0" for i in range(len(T.points))]
    return doc


def _from_coords(cells):
    """Triangulation from simplices given by coordinates; points sorted."""
    pts = sorted({tuple(p) for c in cells for p in c})
    idx = {p: i for i, p in enumerate(pts)}
    return build_triangulation(pts, [[idx[tuple(p)] for p in c] for c in cells])


def _fan(apex, path):
    return [(apex, a, b) for a, b in zip(path, path[1:])]


def seg2():
    return _from_coords([[(0,), (1,)], [(1,), (2,)]])


def sq1():
    return _from_coords([[(0, 0), (1, 0), (1, 1)], [(0, 0), (0, 1), (1, 1)]])


def sq2star():
    ring = [(0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2), (0, 1), (0, 0)]
    return _from_coords(_fan((1, 1), ring))


def grid2uni():
    cells = []
    for x, y in itertools.product(range(2), repeat=2):
        cells.append([(x, y), (x + 1, y), (x + 1, y + 1)])
        cells.append([(x, y), (x, y + 1), (x + 1, y + 1)])
    return _from_coords(cells)


def rect32():
    p, q = (1, 1), (2, 1)
    cells = _fan(p, [(1, 0), (0, 0), (0, 1), (0, 2), (1, 2)])
    cells += [(p, (1, 0), (2, 0)), (p, (2, 0), q), (p, q, (2, 2)), (p, (2, 2), (1, 2))]
    cells += _fan(q, [(2, 0), (3, 0), (3, 1), (3, 2), (2, 2)])
    return _from_coords(cells)


def simplex(d):
    pts = [tuple(0 for _ in range(d))] + [tuple(int(i == j) for i in range(d)) for j in range(d)]
    return build_triangulation(pts, [list(range(d + 1))])


def nonconvex_clstar():
    # clstar((1,1)) wraps around (2,1) and has a reflex corner there
    p, q = (1, 1), (2, 1)
    cells = [(p, q, (3, 2)), (p, q, (3, 0))]
    cells += _fan(p, [(3, 0), (2, 0), (1, 0), (0, 0), (0, 1), (0, 2), (1, 2), (2, 2), (3, 2)])
    cells += _fan(q, [(3, 2), (3, 1), (3, 0)])
    return _from_coords(cells)


def edge_only_overlap():
    # the stars of (1,1) and (2,1) meet only along the edge (1,2)-(2,0)
    p, q, u, v = (1, 1), (2, 1), (1, 2), (2, 0)
    cells = _fan(p, [u, v, (1, 0), (0, 0), (0, 1), (0, 2), u])
    cells += _fan(q, [u, v, (3, 0), (3, 1), (3, 2), (2, 2), u])
    return _from_coords(cells)


def cube_flag(d):
    """``[-1,1]^d`` split into flags of face centres; a star from the origin."""
    cells = []
    for signs in itertools.product((-1, 1), repeat=d):
        for perm in itertools.permutations(range(d)):
            c = list(signs)
            chain = [tuple(c)]
            for j in perm:
                c[j] = 0
                chain.append(tuple(c))
            cells.append(chain)
    return _from_coords(cells)


def freudenthal(n, d):
    """``[0,n]^d`` with every unit cube split along the permutation simplices."""
    cells = []
    for corner in itertools.product(range(n), repeat=d):
        for perm in itertools.permutations(range(d)):
            c = list(corner)
            chain = [tuple(c)]
            for j in perm:
                c[j] += 1
                chain.append(tuple(c))
            cells.append(chain)
    return _from_coords(cells)


def nonregular():
    """Twisted triangulation of a big triangle around a small inner one.

    Going around, each outer edge is coned to the inner vertex that forces
    a cyclic chain of strict fold inequalities with no solution.
    """
    a, b, c = (0, 0), (12, 0), (0, 12)
    x, y, z = (3, 3), (6, 3), (3, 6)
    return _from_coords([(x, y, z), (a, b, y), (a, y, x), (b, c, z), (b, z, y), (c, a, x), (c, x, z)])


_BRUTE = "DERIVED: bounding-box lattice point count"


def _entry(builder, delta, regular=True, unimodular=True, ibip=True, failure=None, tags=None):
    return builder, {
        "delta": delta,
        "chow_dims": delta if regular and unimodular else None,
        "regular": regular,
        "unimodular": unimodular,
        "ibip": ibip,
        "ibip_failure": failure,
    }, tags or {}


_TABLE = {
    "SEG2": _entry(seg2, (1, 1)),
    "SQ1": _entry(sq1, (1, 1, 0), ibip=False, failure="boundary_connectivity",
                 tags={"ibip": "TRIVIAL: no interior lattice point"}),
    "SQ2STAR": _entry(sq2star, (1, 6, 1)),
    "GRID2UNI": _entry(grid2uni, (1, 6, 1), ibip=False, failure="boundary_connectivity",
                      tags={"ibip": "DERIVED: edge enumeration, (0,2) and (2,0) miss (1,1)"}),
    "RECT32": _entry(rect32, (1, 9, 2)),
    "NONCONVEX_CLSTAR": _entry(nonconvex_clstar, (1, 9, 2), ibip=False, failure="polytopial",
                              tags={"ibip": "DERIVED: hull area of clstar((1,1)) exceeds its triangles"}),
    "EDGE_ONLY_OVERLAP": _entry(edge_only_overlap, (1, 9, 2), ibip=False, failure="cech",
                               tags={"ibip": "DERIVED: no triangle contains both (1,1) and (2,1)"}),
    "CUBE_FLAG_3": _entry(lambda: cube_flag(3), (1, 23, 23, 1)),
    "NONREGULAR": _entry(nonregular, None, regular=False, unimodular=False, ibip=None,
                        tags={"regular": "DERIVED: cyclic fold inequalities, LP infeasible"}),
}
for _d in range(1, 5):
    _TABLE[f"SIMPLEX_{_d}"] = _entry(lambda d=_d: simplex(d), (1,) + (0,) * _d, ibip=False,
                                    failure="boundary_connectivity",
                                    tags={"delta": "TRIVIAL: single unimodular cell"})

NAMES = tuple(_TABLE)


def fixture(name):
    try:
        builder, expected, tags = _TABLE[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(NAMES)}") from None
    prov = {k: "DERIVED: checker output" for k in expected if expected[k] is not None}
    if expected["delta"] is not None:
        prov["delta"] = _BRUTE
    prov.update(tags)
    return Fixture(name, builder(), dict(expected), prov)
