"""Command line interface.

    ehrchow check|delta|chow|verify [--no-ibip] [--max-degree K] [--json out.json] input.json
    ehrchow fixture NAME [--json out.json]

Input documents are JSON objects with ``ambient_dim``, ``points``,
``maximal_simplices`` and optionally ``weights`` (rationals as ``"p/q"``
strings, one per point). Reports contain only integers, booleans, strings
and rationals written as strings. Exit codes: 0 success, 1 bad input,
2 a mathematical precondition or verdict failed.
"""
import argparse
import json
import sys
import time
from fractions import Fraction

from . import chow, corpus, ehrhart, ibip, regularity, triangulation
from .triangulation import TriangulationError

EXIT_OK, EXIT_INPUT, EXIT_VERDICT = 0, 1, 2


class InputError(ValueError):
    pass


def _rational(x, where):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InputError(f"{where}: expected an integer or a 'p/q' string, got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{where}: cannot parse rational {x!r}") from None


def _int(x, where):
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{where}: expected an integer, got {x!r}")
    return x


def parse_document(text):
    """``(Triangulation, weights or None)`` from a JSON document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object")
    for key in ("ambient_dim", "points", "maximal_simplices"):
        if key not in doc:
            raise InputError(f"missing field '{key}'")
    n = _int(doc["ambient_dim"], "ambient_dim")
    if n < 1:
        raise InputError("ambient_dim: must be positive")
    if not isinstance(doc["points"], list) or not doc["points"]:
        raise InputError("points: expected a nonempty list")
    points = []
    for i, p in enumerate(doc["points"]):
        if not isinstance(p, list) or len(p) != n:
            raise InputError(f"points[{i}]: expected a list of {n} integers")
        points.append(tuple(_int(x, f"points[{i}][{j}]") for j, x in enumerate(p)))
    if len(set(points)) != len(points):
        raise InputError("points: duplicate entries")
    if not isinstance(doc["maximal_simplices"], list) or not doc["maximal_simplices"]:
        raise InputError("maximal_simplices: expected a nonempty list")
    cells = []
    for i, s in enumerate(doc["maximal_simplices"]):
        if not isinstance(s, list) or not s:
            raise InputError(f"maximal_simplices[{i}]: expected a nonempty list of indices")
        for j, v in enumerate(s):
            if not 0 <= _int(v, f"maximal_simplices[{i}][{j}]") < len(points):
                raise InputError(f"maximal_simplices[{i}][{j}]: index {v} out of range 0..{len(points) - 1}")
        cells.append(s)
    weights = None
    if doc.get("weights") is not None:
        ws = doc["weights"]
        if not isinstance(ws, list) or len(ws) != len(points):
            raise InputError(f"weights: expected a list of {len(points)} rationals")
        weights = {i: _rational(x, f"weights[{i}]") for i, x in enumerate(ws)}
    try:
        T = triangulation.build_triangulation(points, cells)
    except TriangulationError as e:
        raise InputError(f"maximal_simplices: {e}") from None
    return T, weights


def _q(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _pts(ps):
    return [list(p) for p in ps]


def _validation(T):
    rep = triangulation.validate_triangulation(T)
    return rep, {
        "union": rep.union,
        "proper_intersection": rep.proper_intersection,
        "closure": rep.closure,
        "valid": rep.valid,
        "improper_pairs": [[list(s), list(t)] for s, t in rep.improper_pairs],
    }


def _regularity(T, weights):
    out = {}
    w = None
    if weights is not None:
        ok = regularity.verify_witness(T, weights)
        out["input_witness_valid"] = ok
        if ok:
            w = weights
    if w is None:
        w = regularity.find_regularity_witness(T)
        source = "computed"
    else:
        source = "input"
    out["regular"] = w is not None
    out["witness"] = [_q(w[v]) if v in w else None for v in range(len(T.points))] if w else None
    out["witness_source"] = source if w else None
    return w, out


def _ibip(T):
    rep = ibip.is_ibip(T)
    return rep, {
        "is_ibip": rep.is_ibip,
        "boundary_connected": rep.boundary_connected,
        "boundary_witness": _pts(rep.boundary_witness),
        "cech_ok": rep.cech_ok,
        "cech_witness": _pts(rep.cech_witness) if rep.cech_witness else None,
        "polytopial_ok": rep.polytopial_ok,
        "polytopial_witness": list(rep.polytopial_witness) if rep.polytopial_witness else None,
        "interior_points": _pts(rep.interior_points),
        "failures": rep.failures(),
    }


def cmd_check(T, weights, args):
    rep, val = _validation(T)
    report = {"command": "check", "dim": T.dim, "validation": val}
    if not rep.valid:
        return report, EXIT_VERDICT
    report["unimodular"] = triangulation.is_unimodular(T)
    report["regularity"] = _regularity(T, weights)[1]
    if report["unimodular"]:
        report["ibip"] = _ibip(T)[1]
    return report, EXIT_OK


def cmd_delta(T, weights, args):
    P = T.polytope
    delta = ehrhart.delta_vector(P)
    report = {
        "command": "delta",
        "dim": T.dim,
        "delta": list(delta),
        "counts": list(ehrhart.ehrhart_counts(P).counts),
        "ehrhart_polynomial": [_q(c) for c in ehrhart.ehrhart_counts(P).poly],
        "reciprocity": ehrhart.reciprocity_check(P),
        "f_vector": list(triangulation.f_vector(T)),
        "h_vector": list(triangulation.h_vector(T)),
    }
    uni = triangulation.is_unimodular(T)
    report["unimodular"] = uni
    report["h_equals_delta"] = tuple(report["h_vector"]) == delta if uni else None
    return report, EXIT_OK


def _max_degree(T, args):
    k = args.max_degree
    return T.dim + 1 if k is None else k


def cmd_chow(T, weights, args):
    rep, val = _validation(T)
    report = {"command": "chow", "dim": T.dim, "validation": val}
    if not rep.valid:
        return report, EXIT_VERDICT
    top = _max_degree(T, args)
    dims = chow.chow_dims(T, top)
    report["max_degree"] = top
    report["chow_dims"] = list(dims)
    report["sr_dims"] = [chow.sr_dimension(T, i) for i in range(top + 1)]
    report["generators_act_as_zero"] = [chow.generators_act_as_zero(T, i) for i in range(top)]
    hyp = triangulation.is_unimodular(T) and regularity.is_regular(T)
    report["regular_unimodular"] = hyp
    if hyp:
        delta = ehrhart.delta_vector(T.polytope)
        report["dims_equal_delta"] = _dims_match(dims, delta)
    else:
        report["dims_equal_delta"] = None
    return report, EXIT_OK


def _dims_match(dims, delta):
    # a run truncated by --max-degree is compared on the degrees it computed
    d = len(delta) - 1
    head = list(dims[:d + 1]) == list(delta[:len(dims)])
    return head and not any(dims[d + 1:])


def cmd_verify(T, weights, args):
    rep, val = _validation(T)
    report = {"command": "verify", "dim": T.dim, "validation": val}
    if not rep.valid:
        report["error"] = "triangulation is not valid"
        return report, EXIT_VERDICT
    report["unimodular"] = triangulation.is_unimodular(T)
    w, report["regularity"] = _regularity(T, weights)
    if not report["unimodular"] or w is None:
        report["error"] = "triangulation must be regular and unimodular"
        return report, EXIT_VERDICT

    d = T.dim
    top = max(_max_degree(T, args), d)
    delta = ehrhart.delta_vector(T.polytope)
    dims = chow.chow_dims(T, top)
    report["delta"] = list(delta)
    report["chow_dims"] = list(dims)
    report["dims_equal_delta"] = _dims_match(dims, delta)
    report["delta_increasing_to_middle"] = ehrhart.increasing_to_middle(delta)
    report["delta_unimodal"] = ehrhart.is_unimodal(delta)
    if args.no_ibip:
        report["ibip"] = None
        return report, EXIT_OK

    irep, report["ibip"] = _ibip(T)
    if not irep.is_ibip:
        report["error"] = "triangulation is not ibip"
        return report, EXIT_VERDICT
    covering, cech = {}, {}
    for i in range(d + 1):
        m = chow.covering_map(T, i, w, check_preconditions=False)
        r = m.rank()
        covering[str(i)] = {"rank": r, "dim": dims[i], "target_dim": m.shape[0], "injective": r == dims[i]}
        c = chow.cech_complex(T, i, w, check_preconditions=False)
        cech[str(i)] = {"dims": list(c.dims), "ranks": list(c.ranks), "exact": c.exact}
    lef = {}
    for k, e in chow.lefschetz_table(T, w).items():
        lef[str(k)] = {
            "injective": e.injective,
            "rank": e.rank,
            "power": e.power,
            "source_degree": e.source_degree,
            "target_degree": e.target_degree,
            "source_dim": e.source_dim,
            "target_dim": e.target_dim,
            "delta_step_ok": delta[e.source_degree] <= delta[e.target_degree],
        }
    report["covering"] = covering
    report["cech"] = cech
    report["lefschetz"] = lef
    verdicts = [report["dims_equal_delta"], report["delta_increasing_to_middle"], report["delta_unimodal"]]
    verdicts += [v["injective"] for v in covering.values()]
    verdicts += [v["exact"] for v in cech.values()]
    verdicts += [v["injective"] and v["delta_step_ok"] for v in lef.values()]
    report["all_verified"] = all(verdicts)
    return report, EXIT_OK if report["all_verified"] else EXIT_VERDICT


COMMANDS = {"check": cmd_check, "delta": cmd_delta, "chow": cmd_chow, "verify": cmd_verify}


def _emit(report, args):
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)


def build_parser():
    parser = argparse.ArgumentParser(prog="ehrchow", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "check": "validate, then test unimodularity, regularity and ibip",
        "delta": "Ehrhart counts, delta-vector, f- and h-vectors",
        "chow": "Chow ring dimensions by degree",
        "verify": "compare Chow dimensions with delta and run the ring checks",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps.get(name))
        p.add_argument("input", help="input JSON document ('-' for stdin)")
        p.add_argument("--no-ibip", action="store_true", help="skip the checks that need an ibip triangulation")
        p.add_argument("--max-degree", type=int, default=None, metavar="K", help="highest Chow degree to build")
        p.add_argument("--json", metavar="OUT", help="also write the report to this file")
        p.add_argument("--timing", action="store_true", help="add elapsed milliseconds to the report")
    p = sub.add_parser("fixture", help="print a named fixture as an input document")
    p.add_argument("name", choices=corpus.NAMES)
    p.add_argument("--json", metavar="OUT")
    p.add_argument("--weights", action="store_true", help="include a regularity witness")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "fixture":
        T = corpus.fixture(args.name).triangulation
        w = regularity.find_regularity_witness(T) if args.weights else None
        _emit(corpus.as_document(T, w), args)
        return EXIT_OK
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input) as fh:
                text = fh.read()
        T, weights = parse_document(text)
    except (OSError, InputError) as e:
        print(f"ehrchow: {e}", file=sys.stderr)
        return EXIT_INPUT
    if args.max_degree is not None and args.max_degree < 0:
        print("ehrchow: --max-degree must be nonnegative", file=sys.stderr)
        return EXIT_INPUT
    start = time.perf_counter()
    try:
        report, code = COMMANDS[args.command](T, weights, args)
    except (chow.ChowError, ehrhart.CountingError) as e:
        report, code = {"command": args.command, "error": str(e)}, EXIT_VERDICT
    if args.timing:
        report["elapsed_ms"] = int((time.perf_counter() - start) * 1000)
    _emit(report, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
