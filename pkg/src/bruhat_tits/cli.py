"""Command-line front end.

    bruhat-tits [--prime P] [--ram M] [--cap N] [--out FILE] [--approx] COMMAND [INPUT]

INPUT is a JSON file (or "-" / omitted for stdin).  Exit status: 0 on
success, 2 on malformed input, 3 on a mathematical domain error.
"""

from __future__ import annotations

import argparse
import json
import sys
from decimal import Decimal, localcontext
from fractions import Fraction

from . import building, compactification, tree
from .errors import DomainError, ParseError
from .linalg import matrix_to_json, snf_dvr
from .scalars import INF, FieldConfig, format_rational, parse_rational
from .serialize import (
    load_json,
    matrix_from_json,
    point_from_json,
    point_to_json,
    polynomial_from_json,
    scalar_from_json,
    snf_to_json,
    stratum_to_json,
    values_from_json,
    values_to_json,
    vertex_from_json,
    vertex_to_json,
)

COMMANDS = (
    "eval", "act", "relpos", "distance", "cartan", "snf", "stab-check", "fold",
    "ray-limit", "stratum", "eval-poly", "tree-ball", "tree-path", "tree-dot",
    "link-count", "galois-gap",
)

# commands whose operands are optional (read only when a file is named)
_OPTIONAL_INPUT = {"tree-ball", "tree-dot", "link-count", "galois-gap"}


def approx(x: Fraction, digits: int = 12) -> str:
    with localcontext() as ctx:
        ctx.prec = 60
        d = Decimal(x.numerator) / Decimal(x.denominator)
        return str(d.quantize(Decimal(1).scaleb(-digits)))


def approx_sqrt(x: Fraction, digits: int = 12) -> str:
    with localcontext() as ctx:
        ctx.prec = 60
        d = (Decimal(x.numerator) / Decimal(x.denominator)).sqrt()
        return str(d.quantize(Decimal(1).scaleb(-digits)))


def export_dot(vertices, edges) -> bytes:
    """Undirected DOT graph; nodes and edges in canonical order."""
    ids = {v: f"n{i}" for i, v in enumerate(sorted(vertices))}
    lines = ["graph tree {"]
    for v in sorted(vertices):
        lines.append(f'  {ids[v]} [label="{v.label}"];')
    for u, w in sorted(tuple(sorted(e)) for e in edges):
        lines.append(f"  {ids[u]} -- {ids[w]};")
    lines.append("}")
    return ("\n".join(lines) + "\n").encode()


def _field(doc, name):
    if not isinstance(doc, dict) or name not in doc:
        raise ParseError("missing operand", field=name)
    return doc[name]


class _Runner:
    def __init__(self, args):
        self.args = args
        self.p = args.prime
        self.m = args.ram

    def point(self, doc, name="point"):
        return point_from_json(_field(doc, name), self.p_explicit, self.m, name)

    @property
    def p_explicit(self):
        return self.p if self.args.prime_given else None

    def matrix(self, doc, name):
        return matrix_from_json(_field(doc, name), self._p_for(doc), self.m, name)

    def _p_for(self, doc):
        # a matrix next to a point takes the point's prime
        if not self.args.prime_given and isinstance(doc, dict):
            for v in doc.values():
                if isinstance(v, dict) and "p" in v and isinstance(v["p"], int):
                    return v["p"]
        return self.p

    def run(self, cmd, doc):
        return getattr(self, "cmd_" + cmd.replace("-", "_"))(doc)

    # -- building ------------------------------------------------------------

    def cmd_eval(self, doc):
        x = self.point(doc)
        vec = [scalar_from_json(v, f"vector[{i}]") for i, v in enumerate(_field(doc, "vector"))]
        return {"value": format_rational(building.eval_point(x, vec))}

    def cmd_act(self, doc):
        x = self.point(doc)
        g = self.matrix(doc, "g")
        return {"point": point_to_json(building.act(g, x))}

    def cmd_relpos(self, doc):
        x, y = self.point(doc, "x"), self.point(doc, "y")
        r = building.relpos(x, y, centered=bool(doc.get("centered", False)))
        return {"deltas": values_to_json(r.deltas), "centered": r.centered}

    def cmd_distance(self, doc):
        x, y = self.point(doc, "x"), self.point(doc, "y")
        d2 = building.distance2(x, y)
        out = {"distance2": format_rational(d2)}
        if self.args.approx:
            out["distance"] = approx_sqrt(d2)
        return out

    def cmd_cartan(self, doc):
        g = self.matrix(doc, "g")
        U, e, W = building.cartan(g)
        return {"U": matrix_to_json(U), "exponents": values_to_json(e.deltas), "W": matrix_to_json(W)}

    def cmd_snf(self, doc):
        return snf_to_json(snf_dvr(self.matrix(doc, "matrix")))

    def cmd_stab_check(self, doc):
        x = self.point(doc)
        g = self.matrix(doc, "g")
        mode = doc.get("mode", "norm")
        if mode not in ("norm", "class"):
            raise ParseError("mode must be norm or class", field="mode")
        if x.is_norm:
            ok = building.stabilizes(g, x, mode)
        else:
            ok = compactification.boundary_stab_check(g, building.normalize(x))
        return {"stabilizes": ok}

    def cmd_fold(self, doc):
        x = self.point(doc)
        i, j = _field(doc, "i"), _field(doc, "j")
        if not all(isinstance(t, int) and not isinstance(t, bool) for t in (i, j)):
            raise ParseError("indices must be integers", field="i/j")
        lam = scalar_from_json(_field(doc, "lam"), "lam")
        return {"fixed": building.fold_fixed(i, j, lam, x)}

    # -- compactification ----------------------------------------------------

    def cmd_ray_limit(self, doc):
        x = self.point(doc)
        d = values_from_json(_field(doc, "direction"), "direction")
        if any(t is INF for t in d):
            raise ParseError("direction must be finite", field="direction")
        return {"point": point_to_json(compactification.ray_limit(x, d))}

    def cmd_stratum(self, doc):
        x = building.normalize(self.point(doc))
        return {"stratum": stratum_to_json(compactification.stratum_of(x))}

    def cmd_eval_poly(self, doc):
        x = self.point(doc)
        F = polynomial_from_json(_field(doc, "poly"))
        coords = doc.get("coordinates", "point")
        if coords == "standard":
            v = compactification.eval_poly_std(x, F)
        elif coords == "point":
            v = compactification.eval_poly(x, F)
        else:
            raise ParseError("coordinates must be point or standard", field="coordinates")
        return {"value": format_rational(v)}

    # -- tree ----------------------------------------------------------------

    def _center(self, doc):
        if isinstance(doc, dict) and "vertex" in doc:
            return vertex_from_json(doc["vertex"], self.p, "vertex")
        return tree.standard_vertex(self.p)

    def cmd_tree_ball(self, doc):
        return [vertex_to_json(v) for v in tree.ball(self._center(doc), self.args.radius, self.args.cap)]

    def cmd_tree_path(self, doc):
        u = vertex_from_json(_field(doc, "u"), self.p, "u")
        v = vertex_from_json(_field(doc, "v"), self.p, "v")
        return [vertex_to_json(w) for w in tree.path(u, v)]

    def cmd_tree_dot(self, doc):
        verts, edges = tree.ball_edges(self._center(doc), self.args.radius, self.args.cap)
        return export_dot(verts, edges)

    def cmd_link_count(self, doc):
        size, tri = tree.link_counts_sl3(FieldConfig(self.p), self.args.cap)
        return {"link_size": size, "triangles_per_edge": tri}

    def cmd_galois_gap(self, doc):
        gap, a = tree.galois_gap(FieldConfig(self.p), self.args.degree)
        return {"gap_exists": gap, "alpha_val": format_rational(a)}


def _add_approx(out):
    if not isinstance(out, dict):
        return out
    extra = {}
    for k, v in out.items():
        if isinstance(v, str) and v != "inf" and k not in ("distance",):
            try:
                extra[k + "_approx"] = approx(parse_rational(v))
            except ParseError:
                pass
        elif isinstance(v, list) and v and all(isinstance(t, str) for t in v):
            try:
                extra[k + "_approx"] = [t if t == "inf" else approx(parse_rational(t)) for t in v]
            except ParseError:
                pass
    out.update(extra)
    return out


def _common_options(parser, suppress):
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--prime", type=int, default=default, help="the prime p (default 2)")
    parser.add_argument("--ram", type=int, default=default, help="ramification index m (default 1)")
    parser.add_argument("--cap", type=int, default=default, help="enumeration cap (default 100000)")
    parser.add_argument("--out", default=default, help="write the result to FILE")
    parser.add_argument("--approx", action="store_true", default=default,
                        help="add 12-digit decimal renderings")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bruhat-tits", description=__doc__.splitlines()[0])
    _common_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        _common_options(sp, suppress=True)
        sp.add_argument("input", nargs="?", default=None, help="JSON operands (default stdin)")
        if name in ("tree-ball", "tree-dot"):
            sp.add_argument("--radius", type=int, required=True)
        if name == "galois-gap":
            sp.add_argument("--degree", "-e", type=int, required=True)
    return parser


def _read(path):
    if path is None or path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def run(argv=None, stdout=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout.buffer
    parser = build_parser()
    args = parser.parse_args(argv)
    args.prime_given = args.prime is not None
    args.prime = 2 if args.prime is None else args.prime
    args.ram = 1 if args.ram is None else args.ram
    args.cap = 100_000 if args.cap is None else args.cap
    try:
        try:
            FieldConfig(args.prime, args.ram)
        except ValueError as exc:
            raise ParseError(str(exc), field="--prime/--ram") from None
        if args.cap < 1:
            raise ParseError("cap must be >= 1", field="--cap")
        if args.command in _OPTIONAL_INPUT and args.input is None:
            doc = None
        else:
            doc = load_json(_read(args.input))
        out = _Runner(args).run(args.command, doc)
    except ParseError as exc:
        _fail(stdout, "ParseError", str(exc))
        return 2
    except (DomainError, ValueError, ZeroDivisionError) as exc:
        _fail(stdout, type(exc).__name__, str(exc))
        return 3
    if isinstance(out, bytes):
        data = out
    else:
        if args.approx:
            out = _add_approx(out)
        data = (json.dumps(out, separators=(",", ":")) + "\n").encode()
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        stdout.write(data)
        stdout.flush()
    return 0


def _fail(stdout, name, message):
    sys.stderr.write(f"{name}: {message}\n")
    stdout.write((json.dumps({"error": name, "message": message}) + "\n").encode())
    stdout.flush()


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
