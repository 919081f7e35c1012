"""JSON file formats for spaces, molecules, functions, oracles and instances.

All rationals are written as ``"a/b"`` or integer strings. Files that need a
metric space hold it under ``"space"`` either inline or as a path relative to
the referring file.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .doh import DohInstance, DohTerm
from .errors import InputError, ParseError
from .freespace import Molecule, MoleculeDecomposition
from .lipschitz import LipschitzFunction
from .metric import FiniteMetricSpace
from .norms import (
    AbsoluteNorm,
    CubeOracle,
    FreeSpaceOracle,
    NormOracle,
    PolygonOracle,
    SumOracle,
    l1_norm,
    linf_norm,
)
from .piecewise import PiecewisePolynomial
from .rational import fmt, parse_rational


def _line_of(text: str | None, token) -> int | None:
    if not text:
        return None
    pos = text.find(f'"{token}"') if isinstance(token, str) else -1
    return None if pos < 0 else text.count("\n", 0, pos) + 1


class _Ctx:
    """Source text (for error line numbers) and base directory (for references)."""

    def __init__(self, text=None, base_dir=None):
        self.text = text
        self.base_dir = Path(base_dir) if base_dir else Path.cwd()

    def q(self, value, what="value") -> Fraction:
        try:
            return parse_rational(value)
        except (ValueError, TypeError) as exc:
            raise ParseError(_line_of(self.text, value), f"bad rational for {what}: {exc}") from None

    def need(self, obj, key, kind=None):
        if not isinstance(obj, dict) or key not in obj:
            raise ParseError(None, f"missing field {key!r}")
        val = obj[key]
        if kind is not None and not isinstance(val, kind):
            raise ParseError(_line_of(self.text, key), f"field {key!r} has the wrong type")
        return val


def loads(data) -> tuple[object, _Ctx]:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(None, f"not UTF-8: {exc}") from None
    try:
        return json.loads(data), _Ctx(data)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.msg) from None


def load_file(path) -> tuple[object, _Ctx]:
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    obj, ctx = loads(raw)
    ctx.base_dir = path.parent
    return obj, ctx


# --- metric spaces ------------------------------------------------------------

def space_from_obj(obj, ctx: _Ctx | None = None) -> FiniteMetricSpace:
    ctx = ctx or _Ctx()
    if isinstance(obj, str):
        sub, subctx = load_file(ctx.base_dir / obj)
        return space_from_obj(sub, subctx)
    points = ctx.need(obj, "points", list)
    base = ctx.need(obj, "base", str)
    dist = ctx.need(obj, "dist", list)
    if not all(isinstance(p, str) for p in points):
        raise ParseError(_line_of(ctx.text, "points"), "point identifiers must be strings")
    rows = []
    for row in dist:
        if not isinstance(row, list):
            raise ParseError(_line_of(ctx.text, "dist"), "dist must be a list of rows")
        rows.append([ctx.q(v, "distance") for v in row])
    return FiniteMetricSpace(points, base, rows)


def space_to_obj(space: FiniteMetricSpace) -> dict:
    return {"points": list(space.points), "base": space.base,
            "dist": [[fmt(v) for v in row] for row in space.dist]}


def codec_read(data) -> FiniteMetricSpace:
    obj, ctx = loads(data)
    return space_from_obj(obj, ctx)


def codec_write(space: FiniteMetricSpace) -> bytes:
    obj = space_to_obj(space)
    rows = ",\n    ".join(json.dumps(r) for r in obj["dist"])
    text = (f'{{\n  "points": {json.dumps(obj["points"])},\n  "base": {json.dumps(obj["base"])},'
            f'\n  "dist": [\n    {rows}\n  ]\n}}\n')
    return text.encode("utf-8")


# --- molecules and functions ---------------------------------------------------

def _space_for(obj, ctx, space):
    if space is not None:
        return space
    return space_from_obj(ctx.need(obj, "space"), ctx)


def molecule_from_obj(obj, ctx=None, space=None) -> Molecule:
    ctx = ctx or _Ctx()
    space = _space_for(obj, ctx, space)
    weights = ctx.need(obj, "weights", dict)
    return Molecule(space, {p: ctx.q(v, f"weight of {p}") for p, v in weights.items()})


def molecule_to_obj(mol: Molecule, inline_space=True) -> dict:
    out = {"space": space_to_obj(mol.space)} if inline_space else {}
    out["weights"] = {p: fmt(w) for p, w in mol.weights.items()}
    return out


def function_from_obj(obj, ctx=None, space=None) -> LipschitzFunction:
    ctx = ctx or _Ctx()
    space = _space_for(obj, ctx, space)
    values = ctx.need(obj, "values", dict)
    vals = {p: ctx.q(v, f"value at {p}") for p, v in values.items()}
    vals.setdefault(space.base, Fraction(0))
    return LipschitzFunction(space, vals)


def function_to_obj(f: LipschitzFunction, inline_space=True) -> dict:
    out = {"space": space_to_obj(f.space)} if inline_space else {}
    out["values"] = {p: fmt(v) for p, v in f.values.items()}
    return out


def decomposition_to_obj(dec: MoleculeDecomposition) -> list:
    return [[fmt(lam), p, q] for lam, p, q in dec.terms]


def decomposition_from_obj(obj, space, ctx=None) -> MoleculeDecomposition:
    ctx = ctx or _Ctx()
    terms = []
    for t in obj:
        if not isinstance(t, list) or len(t) != 3:
            raise ParseError(None, "decomposition terms are [lambda, p, q]")
        terms.append((ctx.q(t[0], "lambda"), str(t[1]), str(t[2])))
    return MoleculeDecomposition(space, tuple(terms))


# --- norms and oracles ---------------------------------------------------------

def absnorm_from_obj(obj, ctx=None) -> AbsoluteNorm:
    ctx = ctx or _Ctx()
    if obj == "l1":
        return l1_norm()
    if obj == "linf":
        return linf_norm()
    if isinstance(obj, str):
        sub, subctx = load_file(ctx.base_dir / obj)
        return absnorm_from_obj(sub, subctx)
    verts = ctx.need(obj, "vertices", list)
    pairs = []
    for v in verts:
        if not isinstance(v, list) or len(v) != 2:
            raise ParseError(_line_of(ctx.text, "vertices"), "vertices are [a, b] pairs")
        pairs.append((ctx.q(v[0], "vertex"), ctx.q(v[1], "vertex")))
    return AbsoluteNorm(pairs, obj.get("name", "polygon"))


def absnorm_to_obj(norm: AbsoluteNorm):
    if norm.name in ("l1", "linf"):
        return norm.name
    return {"name": norm.name, "vertices": [[fmt(a), fmt(b)] for a, b in norm.vertices]}


def oracle_from_obj(obj, ctx=None) -> NormOracle:
    ctx = ctx or _Ctx()
    kind = ctx.need(obj, "kind", str)
    if kind == "free":
        space = space_from_obj(ctx.need(obj, "space"), ctx)
        return FreeSpaceOracle(space)
    if kind == "polygon":
        return PolygonOracle(absnorm_from_obj(ctx.need(obj, "norm"), ctx))
    if kind == "cube":
        dim = ctx.need(obj, "dim", int)
        return CubeOracle(ctx.need(obj, "norm", str), dim)
    if kind == "sum":
        return SumOracle(oracle_from_obj(ctx.need(obj, "X"), ctx),
                         oracle_from_obj(ctx.need(obj, "Y"), ctx),
                         absnorm_from_obj(ctx.need(obj, "norm"), ctx))
    raise ParseError(_line_of(ctx.text, kind), f"unknown oracle kind {kind!r}")


def oracle_to_obj(o: NormOracle) -> dict:
    if isinstance(o, FreeSpaceOracle):
        return {"kind": "free", "space": space_to_obj(o.space)}
    if isinstance(o, PolygonOracle):
        return {"kind": "polygon", "norm": absnorm_to_obj(o.absnorm)}
    if isinstance(o, CubeOracle):
        return {"kind": "cube", "norm": o.kind, "dim": o.dim}
    if isinstance(o, SumOracle):
        return {"kind": "sum", "norm": absnorm_to_obj(o.absnorm),
                "X": oracle_to_obj(o.X), "Y": oracle_to_obj(o.Y)}
    raise InputError(f"oracle {o.tag} has no file form")


def vector_from_obj(oracle: NormOracle, obj, ctx=None):
    ctx = ctx or _Ctx()
    if isinstance(obj, dict):
        if not isinstance(oracle, FreeSpaceOracle):
            raise ParseError(None, "weight maps are only valid for free-space oracles")
        return oracle.coerce({p: ctx.q(v, f"weight of {p}") for p, v in obj.items()})
    if not isinstance(obj, list):
        raise ParseError(None, "a vector is a list of rationals")
    return oracle.coerce([ctx.q(v, "coordinate") for v in obj])


def vector_to_obj(v) -> list:
    return [fmt(c) for c in v]


def instance_from_obj(obj, ctx=None, oracle=None) -> DohInstance:
    ctx = ctx or _Ctx()
    if oracle is None:
        oracle = oracle_from_obj(ctx.need(obj, "oracle"), ctx)
    E = tuple(vector_from_obj(oracle, v, ctx) for v in ctx.need(obj, "E", list))
    y = vector_from_obj(oracle, ctx.need(obj, "y"), ctx)
    terms = []
    for t in ctx.need(obj, "terms", list):
        terms.append(DohTerm(vector_from_obj(oracle, ctx.need(t, "x"), ctx),
                             ctx.q(ctx.need(t, "a"), "a"), ctx.q(ctx.need(t, "b"), "b"),
                             vector_from_obj(oracle, ctx.need(t, "y"), ctx)))
    return DohInstance(oracle, E, ctx.q(ctx.need(obj, "eps"), "eps"), y, tuple(terms))


def instance_to_obj(inst: DohInstance) -> dict:
    return {"oracle": oracle_to_obj(inst.oracle),
            "E": [vector_to_obj(x) for x in inst.E],
            "eps": fmt(inst.eps),
            "y": vector_to_obj(inst.y),
            "terms": [{"x": vector_to_obj(t.x), "a": fmt(t.a), "b": fmt(t.b),
                       "y": vector_to_obj(t.y)} for t in inst.terms]}


# --- piecewise polynomials ------------------------------------------------------

def pp_from_obj(obj, ctx=None) -> PiecewisePolynomial:
    ctx = ctx or _Ctx()
    breaks = [ctx.q(b, "breakpoint") for b in ctx.need(obj, "breaks", list)]
    pieces = [[ctx.q(c, "coefficient") for c in p] for p in ctx.need(obj, "pieces", list)]
    return PiecewisePolynomial(breaks, pieces)


def pp_to_obj(f: PiecewisePolynomial) -> dict:
    return {"breaks": [fmt(b) for b in f.breaks],
            "pieces": [[fmt(c) for c in p] for p in f.pieces]}
