"""Command-line front end.  JSON out, expression-grammar strings in.

Exit codes: 0 success, 1 domain error (JSON error object on stdout),
2 usage error, 130 interrupted.
"""

import argparse
import json
import os
import random
import signal
import sys
from fractions import Fraction

import mpmath

from . import elliptic, expr, finite, graph, isometry
from .algebraic import (
    AlgReal, EQUAL, LESS, compare, is_rational_angle, rational_angle_witness,
    real_roots, to_float,
)
from .errors import ParseError, RotagraphError
from .finite import FiniteGraph, FiniteGroup, PermGroup, Permutation


def _approx_str(v, bits):
    fr = to_float(v, bits)
    digits = max(3, int(bits * 0.30103) + 1)
    with mpmath.workprec(bits + 16):
        return mpmath.nstr(mpmath.mpf(fr.numerator) / fr.denominator, digits)


def _render(obj, bits):
    """Exact values -> expression strings; with --approx, add parallel
    decimal fields next to dictionary entries."""
    if isinstance(obj, elliptic.ProjPoint):
        x, y, z = obj.lift
        return _render({"x": x, "y": y, "z": z}, bits)
    if isinstance(obj, elliptic.DistCos):
        return _render(obj.value, bits)
    if isinstance(obj, AlgReal):
        return expr.to_expr(obj)
    if isinstance(obj, Fraction):
        return expr.to_expr(AlgReal(obj))
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            out[k] = _render(v, bits)
            if bits and isinstance(v, (AlgReal, elliptic.DistCos)):
                val = v.value if isinstance(v, elliptic.DistCos) else v
                out[k + "_approx"] = _approx_str(val, bits)
        return out
    if isinstance(obj, (list, tuple)):
        return [_render(v, bits) for v in obj]
    return obj


def _emit(obj, args):
    text = json.dumps(_render(obj, args.approx), indent=2 if args.pretty else None,
                      sort_keys=False)
    sys.stdout.write(text + "\n")


def _parse_point(text):
    text = text.strip()
    if text.startswith("{"):
        return elliptic.point_from_json(json.loads(text))
    parts = text.split(",")
    if len(parts) != 3:
        raise ParseError("a point is JSON {x,y,z} or a comma triple")
    return elliptic.make_point(*(expr.parse(p) for p in parts))


def _parse_matrix(text):
    return isometry.matrix_from_json(json.loads(text))


def _parse_group(text, degree=None):
    """Permutation generators: cycle strings separated by semicolons."""
    parts = [p for p in (s.strip() for s in text.split(";")) if p]
    if not parts:
        raise ParseError("empty generator list")
    if degree is None:
        degree = 1
        for p in parts:
            for tok in p.replace("(", " ").replace(")", " ").replace(",", " ").split():
                degree = max(degree, int(tok) + 1)
    gens = [Permutation.from_cycles(p, degree) for p in parts]
    return PermGroup(degree, gens)


def _parse_graph(text):
    return FiniteGraph.from_json(json.loads(text))


def _parse_finite_group(args):
    if getattr(args, "table", None):
        return FiniteGroup(json.loads(args.table))
    if getattr(args, "group", None):
        return FiniteGroup.from_permutations(
            list(_parse_group(args.group, getattr(args, "degree", None)).generators))
    raise ParseError("supply --table or --group")


def _resolve_element(grp, text):
    text = text.strip()
    if text in grp.names:
        return grp.names.index(text)
    try:
        i = int(text)
    except ValueError:
        raise ParseError(f"unknown element {text!r}") from None
    if not 0 <= i < grp.order:
        raise ParseError("element index out of range")
    return i


# -- field --------------------------------------------------------------------

def cmd_field_eval(args):
    return {"value": expr.parse(args.expr)}


def cmd_field_compare(args):
    r = compare(expr.parse(args.a), expr.parse(args.b))
    return {"result": {LESS: "less", EQUAL: "equal"}.get(r, "greater")}


def cmd_field_roots(args):
    coeffs = tuple(int(c) for c in args.poly.split(","))
    return {"roots": real_roots(coeffs)}


def _angle_string(k, m):
    if k == 0:
        return "0"
    num = "pi" if k == 1 else f"{k}pi"
    return num if m == 1 else f"{num}/{m}"


def cmd_field_angle_rational(args):
    c = expr.parse(args.cos)
    if not is_rational_angle(c):
        return {"rational_angle": False}
    k, m = rational_angle_witness(c)
    return {"rational_angle": True, "witness": _angle_string(k, m)}


# -- plane --------------------------------------------------------------------

def cmd_plane_dist(args):
    return {"cos_d": elliptic.dist_cos(_parse_point(args.p), _parse_point(args.q))}


def cmd_plane_equidistant(args):
    pt = elliptic.equidistant_point(_parse_point(args.p), _parse_point(args.q),
                                    expr.parse(args.cos_l))
    return {"point": pt}


def cmd_plane_step(args):
    pt = elliptic.geodesic_step(_parse_point(args.p), _parse_point(args.q),
                                expr.parse(args.cos_l))
    return {"point": pt}


def cmd_plane_ellncos(args):
    return {"cos_ln": elliptic.ell_n_cos(expr.parse(args.cos_l), args.n)}


def cmd_plane_witness(args):
    cos_l = expr.parse(args.cos_l)
    o, chain = elliptic.construct_ell_n_witness(
        _parse_point(args.p), _parse_point(args.q), cos_l, args.n)
    return {"center": o, "chain": list(chain),
            "verified": elliptic.verify_ell_n_witness(o, chain, cos_l)}


# -- iso ----------------------------------------------------------------------

def cmd_iso_fixed_point(args):
    m = _parse_matrix(args.matrix)
    return {"point": isometry.fixed_point(m)}


def cmd_iso_check_orthogonal(args):
    m = _parse_matrix(args.matrix)
    return {"orthogonal": isometry.is_orthogonal(m), "det": m.det()}


def cmd_iso_sample_edges(args):
    m = _parse_matrix(args.matrix)
    cos_l = elliptic.as_dist_cos(expr.parse(args.cos_l))
    rng = random.Random(args.seed)
    pairs = []
    for _ in range(args.count):
        p = elliptic.random_rational_point(rng)
        pairs.append((p, elliptic.random_point_at_distance(rng, p, cos_l)))
    return {"pairs": args.count,
            "preserves": isometry.preserves_edges_on_sample(m, cos_l, pairs)}


# -- graph --------------------------------------------------------------------

def cmd_graph_edge(args):
    spec = graph.GraphSpec(expr.parse(args.cos_l))
    return {"edge": graph.is_edge(spec, _parse_point(args.p), _parse_point(args.q))}


def cmd_graph_distance(args):
    spec = graph.GraphSpec(expr.parse(args.cos_l))
    k, cert = graph.graph_distance(spec, _parse_point(args.p), _parse_point(args.q))
    return {"distance": k, "certificate": cert}


def cmd_graph_path(args):
    spec = graph.GraphSpec(expr.parse(args.cos_l))
    p, q = _parse_point(args.p), _parse_point(args.q)
    path = graph.witness_path(spec, p, q)
    return {"length": len(path), "path": list(path.points),
            "verified": graph.verify_path(spec, path, p, q)}


def cmd_graph_diameter(args):
    spec = graph.GraphSpec(expr.parse(args.cos_l))
    k, cert = graph.diameter(spec)
    return {"diameter": k, "certificate": cert}


def cmd_graph_validate(args):
    spec = graph.GraphSpec(expr.parse(args.cos_l))
    return graph.validate_spec(spec)


def cmd_graph_choose_ell(args):
    spec = graph.choose_ell_for_diameter(args.diameter)
    k, cert = graph.diameter(spec)
    return {"cos_l": spec.cos_l, "diameter": k, "certificate": cert}


# -- finite -------------------------------------------------------------------

def cmd_finite_cf(args):
    g = _parse_group(args.group, args.degree)
    avg = finite.cauchy_frobenius(g)
    return {"orbit_count": finite.orbit_count(g),
            "average_fixed_points": str(avg)}


def cmd_finite_rotary(args):
    fg = _parse_graph(args.graph)
    return {"rotarily_transitive":
            finite.is_rotarily_transitive_graph(fg, bound=args.bound)}


def cmd_finite_jordan(args):
    g = _parse_group(args.group, args.degree)
    return {"witness": finite.jordan_witness(g).cycle_string()}


def cmd_finite_subgroups(args):
    g = _parse_group(args.group, args.degree)
    subs = finite.all_subgroups(g, bound=args.bound)
    return {"count": len(subs),
            "subgroups": [{"order": h.order,
                           "generators": [p.cycle_string() for p in h.generators],
                           "transitive": h.is_transitive()}
                          for h in subs]}


def cmd_finite_automorphisms(args):
    fg = _parse_graph(args.graph)
    aut = finite.graph_automorphisms(fg)
    return {"order": aut.order,
            "elements": [p.cycle_string() for p in aut.elements()]}


def cmd_finite_bipartite(args):
    fg = _parse_graph(args.graph)
    coloring = finite.is_bipartite(fg)
    return {"bipartite": coloring is not None, "coloring": coloring}


def cmd_finite_conjgraph(args):
    grp = _parse_finite_group(args)
    g1 = _resolve_element(grp, args.g1)
    g3 = _resolve_element(grp, args.g3)
    fg, action, diag = finite.conjugation_graph(grp, g1, g3)
    return {"graph": fg.to_json(),
            "action_order": action.order,
            "diagnostics": diag}


def cmd_finite_census(args):
    return finite.census(args.n_max, subgroup_bound=args.bound,
                         allow_seven=args.allow_seven)


# -- wiring -------------------------------------------------------------------

def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true",
                        default=argparse.SUPPRESS, help="indent JSON output")
    common.add_argument("--approx", type=int, metavar="BITS",
                        default=argparse.SUPPRESS,
                        help="add decimal approximations at BITS precision")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for randomized subcommands")
    ap = argparse.ArgumentParser(prog="rotagraph", parents=[common],
                                 description="exact unit-distance graph toolkit")
    top = ap.add_subparsers(dest="module", required=True)

    def sub(subparsers, name, fn, **flags):
        p = subparsers.add_parser(name, parents=[common])
        for flag, kw in flags.items():
            p.add_argument("--" + flag.replace("_", "-"), **kw)
        p.set_defaults(fn=fn)
        return p

    req = {"required": True}
    field = ap_field = top.add_parser("field").add_subparsers(dest="cmd", required=True)
    sub(field, "eval", cmd_field_eval, expr={**req})
    sub(field, "compare", cmd_field_compare, a={**req}, b={**req})
    sub(field, "roots", cmd_field_roots,
        poly={**req, "help": "integer coefficients c0,c1,...,cn (ascending)"})
    sub(field, "angle-rational", cmd_field_angle_rational, cos={**req})

    plane = top.add_parser("plane").add_subparsers(dest="cmd", required=True)
    sub(plane, "dist", cmd_plane_dist, p={**req}, q={**req})
    sub(plane, "equidistant", cmd_plane_equidistant, p={**req}, q={**req},
        cos_l={**req})
    sub(plane, "step", cmd_plane_step, p={**req}, q={**req}, cos_l={**req})
    sub(plane, "ellncos", cmd_plane_ellncos, cos_l={**req},
        n={**req, "type": int})
    sub(plane, "witness", cmd_plane_witness, p={**req}, q={**req},
        cos_l={**req}, n={**req, "type": int})

    iso = top.add_parser("iso").add_subparsers(dest="cmd", required=True)
    sub(iso, "fixed-point", cmd_iso_fixed_point, matrix={**req})
    sub(iso, "check-orthogonal", cmd_iso_check_orthogonal, matrix={**req})
    sub(iso, "sample-edges", cmd_iso_sample_edges, matrix={**req},
        cos_l={**req}, count={"type": int, "default": 10})

    gr = top.add_parser("graph").add_subparsers(dest="cmd", required=True)
    sub(gr, "edge", cmd_graph_edge, p={**req}, q={**req}, cos_l={**req})
    sub(gr, "distance", cmd_graph_distance, p={**req}, q={**req}, cos_l={**req})
    sub(gr, "path", cmd_graph_path, p={**req}, q={**req}, cos_l={**req})
    sub(gr, "diameter", cmd_graph_diameter, cos_l={**req})
    sub(gr, "validate", cmd_graph_validate, cos_l={**req})
    sub(gr, "choose-ell", cmd_graph_choose_ell, diameter={**req, "type": int})

    fin = top.add_parser("finite").add_subparsers(dest="cmd", required=True)
    gen_flags = {"group": {**req, "help": "generators as cycle strings, ';'-separated"},
                 "degree": {"type": int, "default": None}}
    sub(fin, "cf", cmd_finite_cf, **gen_flags)
    sub(fin, "jordan", cmd_finite_jordan, **gen_flags)
    sub(fin, "subgroups", cmd_finite_subgroups, **gen_flags,
        bound={"type": int, "default": 200})
    sub(fin, "rotary", cmd_finite_rotary, graph={**req},
        bound={"type": int, "default": 200})
    sub(fin, "automorphisms", cmd_finite_automorphisms, graph={**req})
    sub(fin, "bipartite", cmd_finite_bipartite, graph={**req})
    sub(fin, "conjgraph", cmd_finite_conjgraph,
        table={"default": None, "help": "row-major multiplication table JSON"},
        group={"default": None}, degree={"type": int, "default": None},
        g1={**req}, g3={**req})
    sub(fin, "census", cmd_finite_census, n_max={**req, "type": int},
        bound={"type": int, "default": 200},
        allow_seven={"action": "store_true"})
    return ap


def main(argv=None):
    # restore interruptibility even when spawned with SIGINT ignored
    try:
        signal.signal(signal.SIGINT, signal.default_int_handler)
    except ValueError:
        pass  # not the main thread
    ap = _build_parser()
    args = ap.parse_args(argv)
    # the shared flags use SUPPRESS defaults so they work on either side of
    # the subcommand; fill in the real defaults here
    if not hasattr(args, "pretty"):
        args.pretty = False
    if not hasattr(args, "seed"):
        args.seed = 0
    if not hasattr(args, "approx"):
        bits = os.environ.get("ROTAGRAPH_APPROX_BITS")
        args.approx = int(bits) if bits else None
    try:
        result = args.fn(args)
    except KeyboardInterrupt:
        _emit({"error": "interrupted",
               "detail": "cancelled before completion"}, args)
        return 130
    except RotagraphError as e:
        _emit({"error": e.code, "detail": str(e)}, args)
        return 1
    except (ValueError, KeyError, json.JSONDecodeError) as e:
        _emit({"error": "parse", "detail": str(e)}, args)
        return 1
    _emit(result, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
