"""JSON codecs for every operand kind.

Rationals are strings "num/den" in lowest terms (integers bare), +inf is
"inf", extension scalars are {"coeffs": [...], "p": p, "m": m}.  Every
``*_to_json`` has a ``*_from_json`` inverse; :func:`parse_input` is the
strict front door used by the CLI.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .building import BuildingPoint, RelPos
from .compactification import Polynomial, Stratum
from .errors import DimensionMismatch, ParseError
from .linalg import ExactMatrix, SnfResult, matrix_to_json
from .scalars import (
    INF,
    ExtScalar,
    FieldConfig,
    ext_from_json,
    ext_to_json,
    format_rational,
    parse_rational,
    parse_value,
)
from .tree import TreeVertex, canonical_vertex


def _config(p, m=1, field=None) -> FieldConfig:
    try:
        return FieldConfig(p, m)
    except ValueError as exc:
        raise ParseError(str(exc), field=field) from None


# -- scalars --------------------------------------------------------------------

def scalar_to_json(x):
    if isinstance(x, ExtScalar):
        return format_rational(x.coeffs[0]) if x.m == 1 else ext_to_json(x)
    return format_rational(x)


def scalar_from_json(doc, field=None):
    if isinstance(doc, dict):
        return ext_from_json(doc, field=field)
    return parse_rational(doc, field=field)


def values_to_json(ws) -> list:
    return [format_rational(w) for w in ws]


def values_from_json(doc, field="weights") -> tuple:
    if not isinstance(doc, list):
        raise ParseError("expected a list", field=field)
    return tuple(parse_value(w, f"{field}[{i}]") for i, w in enumerate(doc))


def vector_from_json(doc, field="vector") -> list:
    if not isinstance(doc, list) or not doc:
        raise ParseError("expected a non-empty list", field=field)
    return [scalar_from_json(x, f"{field}[{i}]") for i, x in enumerate(doc)]


# -- matrices ---------------------------------------------------------------------

def matrix_from_json(doc, p: int, m: int = 1, field="matrix") -> ExactMatrix:
    if not isinstance(doc, list) or not doc or not all(isinstance(r, list) for r in doc):
        raise ParseError("matrix must be a non-empty list of rows", field=field)
    width = len(doc[0])
    for i, r in enumerate(doc):
        if len(r) != width:
            raise ParseError(f"row {i} has {len(r)} entries, expected {width}", field=f"{field}[{i}]")
    cfg = _config(p, m, field)
    rows = []
    for i, r in enumerate(doc):
        row = []
        for j, x in enumerate(r):
            v = scalar_from_json(x, f"{field}[{i}][{j}]")
            if isinstance(v, ExtScalar) and v.p != p:
                raise ParseError(f"entry over p={v.p} in a matrix over p={p}", field=f"{field}[{i}][{j}]")
            row.append(v)
        rows.append(row)
    if width == 0:
        return ExactMatrix(len(rows), 0, [], cfg)
    return ExactMatrix.from_rows(rows, cfg)


# -- points -----------------------------------------------------------------------

def point_to_json(x: BuildingPoint) -> dict:
    return {"basis": matrix_to_json(x.basis), "weights": values_to_json(x.weights), "p": x.p}


def point_from_json(doc, p=None, m: int = 1, field="point") -> BuildingPoint:
    if not isinstance(doc, dict):
        raise ParseError("point must be an object", field=field)
    extra = set(doc) - {"basis", "weights", "p", "m"}
    if extra or "basis" not in doc or "weights" not in doc:
        raise ParseError("point needs exactly basis, weights and p", field=field)
    dp = doc.get("p", p)
    if dp is None:
        raise ParseError("no prime given", field=f"{field}.p")
    if p is not None and dp != p:
        raise ParseError(f"point is over p={dp} but --prime is {p}", field=f"{field}.p")
    basis = matrix_from_json(doc["basis"], dp, doc.get("m", m), f"{field}.basis")
    weights = values_from_json(doc["weights"], f"{field}.weights")
    try:
        return BuildingPoint(basis, weights)
    except (ValueError, DimensionMismatch) as exc:
        raise ParseError(str(exc), field=field) from None


# -- other records ----------------------------------------------------------------

def relpos_to_json(r: RelPos) -> dict:
    return {"deltas": values_to_json(r.deltas), "centered": r.centered}


def relpos_from_json(doc, field="relpos") -> RelPos:
    if not isinstance(doc, dict) or "deltas" not in doc:
        raise ParseError("relpos needs deltas", field=field)
    ds = values_from_json(doc["deltas"], f"{field}.deltas")
    if any(d is INF for d in ds):
        raise ParseError("relative positions are finite", field=field)
    try:
        return RelPos(ds, bool(doc.get("centered", False)))
    except ValueError as exc:
        raise ParseError(str(exc), field=field) from None


def snf_to_json(r: SnfResult) -> dict:
    return {"U": matrix_to_json(r.U), "exponents": values_to_json(r.exponents), "W": matrix_to_json(r.W)}


def snf_from_json(doc, p: int, m: int = 1, field="snf") -> SnfResult:
    if not isinstance(doc, dict) or set(doc) != {"U", "exponents", "W"}:
        raise ParseError("SNF result needs U, exponents, W", field=field)
    U = matrix_from_json(doc["U"], p, m, f"{field}.U")
    W = matrix_from_json(doc["W"], p, m, f"{field}.W")
    exps = tuple(parse_rational(a, f"{field}.exponents[{i}]") for i, a in enumerate(doc["exponents"]))
    return SnfResult(U, exps, W)


def polynomial_to_json(F: Polynomial) -> dict:
    doc = {"terms": [{"exp": list(e), "coef": scalar_to_json(c)} for e, c in F.terms]}
    if not F.terms:
        doc["nvars"] = F.nvars
    return doc


def polynomial_from_json(doc, field="poly") -> Polynomial:
    if not isinstance(doc, dict) or "terms" not in doc or not isinstance(doc["terms"], list):
        raise ParseError("polynomial needs a terms list", field=field)
    terms = doc["terms"]
    nvars = doc.get("nvars")
    d = {}
    for i, t in enumerate(terms):
        f = f"{field}.terms[{i}]"
        if not isinstance(t, dict) or set(t) != {"exp", "coef"}:
            raise ParseError("term needs exp and coef", field=f)
        exp = t["exp"]
        if not isinstance(exp, list) or not all(isinstance(e, int) and not isinstance(e, bool) and e >= 0 for e in exp):
            raise ParseError("exp must be a list of non-negative integers", field=f"{f}.exp")
        if nvars is None:
            nvars = len(exp)
        if len(exp) != nvars:
            raise ParseError(f"exp has {len(exp)} entries, expected {nvars}", field=f"{f}.exp")
        if tuple(exp) in d:
            raise ParseError("repeated exponent", field=f"{f}.exp")
        d[tuple(exp)] = scalar_from_json(t["coef"], f"{f}.coef")
    if nvars is None:
        raise ParseError("empty polynomial needs nvars", field=field)
    return Polynomial.from_dict(nvars, d)


def stratum_to_json(s: Stratum) -> dict:
    return {
        "kernel": matrix_to_json(s.kernel_basis),
        "complement": matrix_to_json(s.complement),
        "quotient": point_to_json(s.quotient_point),
    }


def stratum_from_json(doc, p: int, m: int = 1, field="stratum") -> Stratum:
    if not isinstance(doc, dict) or set(doc) != {"kernel", "complement", "quotient"}:
        raise ParseError("stratum needs kernel, complement, quotient", field=field)
    try:
        return Stratum(
            matrix_from_json(doc["kernel"], p, m, f"{field}.kernel"),
            matrix_from_json(doc["complement"], p, m, f"{field}.complement"),
            point_from_json(doc["quotient"], p, m, f"{field}.quotient"),
        )
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc), field=field) from None


def vertex_to_json(v: TreeVertex) -> list:
    return matrix_to_json(v.key)


def vertex_from_json(doc, p: int, field="vertex") -> TreeVertex:
    return canonical_vertex(matrix_from_json(doc, p, 1, field))


# -- entry points -----------------------------------------------------------------

def load_json(raw) -> object:
    if isinstance(raw, bytes):
        try:
            raw = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from None
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None


def parse_input(raw, kind: str, p=None, m: int = 1):
    """Parse a UTF-8 JSON document holding one operand of the given kind."""
    doc = load_json(raw)
    return from_json(doc, kind, p, m)


def from_json(doc, kind: str, p=None, m: int = 1):
    if kind == "point":
        return point_from_json(doc, p, m)
    if kind == "scalar":
        return scalar_from_json(doc, "scalar")
    if kind == "value":
        return parse_value(doc, "value")
    if kind == "vector":
        return vector_from_json(doc)
    if kind == "polynomial":
        return polynomial_from_json(doc)
    if kind == "relpos":
        return relpos_from_json(doc)
    if p is None:
        raise ParseError(f"a prime is needed to parse a {kind}")
    if kind == "matrix":
        return matrix_from_json(doc, p, m)
    if kind == "snf":
        return snf_from_json(doc, p, m)
    if kind == "stratum":
        return stratum_from_json(doc, p, m)
    if kind == "vertex":
        return vertex_from_json(doc, p)
    raise ValueError(f"unknown operand kind {kind!r}")


def to_json(x):
    if isinstance(x, BuildingPoint):
        return point_to_json(x)
    if isinstance(x, ExactMatrix):
        return matrix_to_json(x)
    if isinstance(x, RelPos):
        return relpos_to_json(x)
    if isinstance(x, SnfResult):
        return snf_to_json(x)
    if isinstance(x, Polynomial):
        return polynomial_to_json(x)
    if isinstance(x, Stratum):
        return stratum_to_json(x)
    if isinstance(x, TreeVertex):
        return vertex_to_json(x)
    if isinstance(x, (ExtScalar, Fraction, int)) or x is INF:
        return scalar_to_json(x) if x is not INF else "inf"
    if isinstance(x, list):
        return [to_json(e) for e in x]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def emit(x) -> bytes:
    return (json.dumps(to_json(x), separators=(",", ":")) + "\n").encode()
