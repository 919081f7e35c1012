"""Polyhedral norm oracles.

A norm oracle evaluates a norm exactly and, when the norm is polyhedral,
emits an LP epigraph: linear constraints plus auxiliary variables such that
the minimum of the returned ``t`` equals the norm of the vector. Vectors of
the finite-dimensional oracles are tuples of Fractions; functionals on them
are tuples too, applied by the dot product.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .errors import DegeneratePolygon, InputError, NonPolyhedralOracle
from .freespace import Molecule, aenorm
from .lipschitz import LipschitzFunction, lip_norm
from .lp import LinExpr, LPModel
from .metric import FiniteMetricSpace

_ZERO = Fraction(0)

FREE_SPACE = "free-space"
POLYGON = "polygonal-plane-norm"
ABS_SUM = "absolute-sum"
CUBE = "cube"


class NormOracle:
    """Base class; subclasses set ``dim`` and ``tag`` and implement ``norm``."""

    dim: int
    tag: str
    polyhedral = True

    def coerce(self, v) -> tuple[Fraction, ...]:
        v = tuple(Fraction(c) for c in v)
        if len(v) != self.dim:
            raise InputError(f"expected a vector of length {self.dim}, got {len(v)}")
        return v

    def zero(self):
        return (_ZERO,) * self.dim

    def lincomb(self, pairs) -> tuple[Fraction, ...]:
        """``sum(c * v for c, v in pairs)``."""
        out = [_ZERO] * self.dim
        for c, v in pairs:
            c = Fraction(c)
            if c:
                for j, x in enumerate(v):
                    out[j] += c * x
        return tuple(out)

    def equal(self, u, v) -> bool:
        return tuple(u) == tuple(v)

    def norm(self, v) -> Fraction:
        raise NotImplementedError

    def epigraph(self, model: LPModel, coords: Sequence[LinExpr]) -> LinExpr:
        raise NonPolyhedralOracle(f"{self.tag} has no LP epigraph")

    def apply(self, f, v) -> Fraction:
        return sum((Fraction(a) * b for a, b in zip(f, v)), _ZERO)

    def dual_norm(self, f) -> Fraction:
        raise NotImplementedError

    def lp_norm(self, v) -> Fraction:
        """Norm of a constant vector through the epigraph LP."""
        v = self.coerce(v)
        model = LPModel()
        t = self.epigraph(model, [LinExpr(const=c) for c in v])
        res = model.minimize(t)
        if not res.ok:
            raise RuntimeError(f"epigraph LP ended {res.status}")
        return res.value


class FreeSpaceOracle(NormOracle):
    """The free space over a finite space, coordinates on the non-base points.

    The epigraph routes flow on the complete digraph over a ground set
    (default: every point). Vectors supported in the ground set get their
    exact norm; coordinates outside it are forced to zero.
    """

    tag = FREE_SPACE

    def __init__(self, space: FiniteMetricSpace, ground=None):
        self.space = space
        self.dim = len(space) - 1
        self.coords = space.non_base
        if ground is None:
            ground = space.points
        ground = set(ground) | {space.base}
        self.ground = tuple(p for p in space.points if p in ground)

    def with_ground(self, ground) -> "FreeSpaceOracle":
        return FreeSpaceOracle(self.space, ground)

    def coerce(self, v):
        if isinstance(v, Molecule):
            return v.vector()
        if isinstance(v, dict):
            if self.space.base in v:
                return Molecule(self.space, v).vector()
            return super().coerce([v.get(p, 0) for p in self.coords])
        return super().coerce(v)

    def molecule(self, v) -> Molecule:
        return Molecule.from_vector(self.space, self.coerce(v))

    def unit_elementary(self, p, q):
        """``(delta_p - delta_q) / d(p, q)`` as a vector."""
        return (Molecule.elementary(self.space, p, q) * (1 / self.space.d(p, q))).vector()

    def support(self, v) -> set:
        return set(self.molecule(v).weights)

    def norm(self, v):
        return aenorm(self.molecule(v))

    def epigraph(self, model, coords):
        G = self.ground
        ing = set(G)
        flows = {}
        for p, q in permutations(G, 2):
            flows[p, q] = model.add_var(f"flow[{p},{q}]")
        for p, e in zip(self.coords, coords):
            if p not in ing:
                model.add_eq(e, 0)
                continue
            net = LinExpr()
            for q in G:
                if q != p:
                    net = net + flows[p, q] - flows[q, p]
            model.add_eq(net - e, 0)
        t = LinExpr()
        for (p, q), f in flows.items():
            t = t + f * self.space.d(p, q)
        return t

    def function(self, f) -> LipschitzFunction:
        vals = dict(zip(self.coords, (Fraction(c) for c in f)))
        vals[self.space.base] = _ZERO
        return LipschitzFunction(self.space, vals)

    def dual_norm(self, f):
        return lip_norm(self.function(f))


class CubeOracle(NormOracle):
    """``l1^n`` or ``linf^n``."""

    tag = CUBE

    def __init__(self, kind: str, dim: int):
        if kind not in ("l1", "linf"):
            raise InputError(f"unknown cube norm {kind!r}")
        if dim < 1:
            raise InputError("dimension must be positive")
        self.kind, self.dim = kind, dim

    def norm(self, v):
        v = self.coerce(v)
        return sum(map(abs, v), _ZERO) if self.kind == "l1" else max(map(abs, v))

    def dual_norm(self, f):
        f = self.coerce(f)
        return max(map(abs, f)) if self.kind == "l1" else sum(map(abs, f), _ZERO)

    def epigraph(self, model, coords):
        if self.kind == "l1":
            t = LinExpr()
            for e in coords:
                s = model.add_var("abs")
                model.add_ge(s, e)
                model.add_ge(s, -e)
                t = t + s
            return t
        t = model.add_var("max")
        for e in coords:
            model.add_ge(t, e)
            model.add_ge(t, -e)
        return t


def _cross(p, q):
    return p[0] * q[1] - p[1] * q[0]


class AbsoluteNorm:
    """An absolute normalised plane norm given by its unit ball in the positive quadrant.

    ``vertices`` run from ``(1, 0)`` to ``(0, 1)`` counterclockwise; the full
    ball is their reflection in both axes.
    """

    def __init__(self, vertices, name: str = "polygon"):
        vs = [(Fraction(a), Fraction(b)) for a, b in vertices]
        if len(vs) < 2:
            raise DegeneratePolygon("need at least the vertices (1,0) and (0,1)")
        if vs[0] != (1, 0) or vs[-1] != (0, 1):
            raise DegeneratePolygon("quadrant vertices must start at (1,0) and end at (0,1)")
        if any(a < 0 or b < 0 for a, b in vs):
            raise DegeneratePolygon("quadrant vertices must be nonnegative")
        normals = []
        for P, Q in zip(vs, vs[1:]):
            det = _cross(P, Q)
            if det <= 0:
                raise DegeneratePolygon(f"vertices {P}, {Q} are not in counterclockwise order")
            n = ((Q[1] - P[1]) / det, (P[0] - Q[0]) / det)
            if n[0] < 0 or n[1] < 0:
                raise DegeneratePolygon(f"edge {P}-{Q} breaks absoluteness/convexity")
            normals.append(n)
        for n1, n2 in zip(normals, normals[1:]):
            if n1 == n2:
                raise DegeneratePolygon("collinear consecutive edges; drop the middle vertex")
        for P, Q, R in zip(vs, vs[1:], vs[2:]):
            if _cross((Q[0] - P[0], Q[1] - P[1]), (R[0] - Q[0], R[1] - Q[1])) <= 0:
                raise DegeneratePolygon(f"vertex {Q} is not a convex corner")
        self.vertices = tuple(vs)
        self.normals = tuple(normals)
        self.name = name

    def __call__(self, a, b) -> Fraction:
        a, b = abs(Fraction(a)), abs(Fraction(b))
        return max(n0 * a + n1 * b for n0, n1 in self.normals)

    def dual(self, a, b) -> Fraction:
        a, b = abs(Fraction(a)), abs(Fraction(b))
        return max(v0 * a + v1 * b for v0, v1 in self.vertices)

    def epigraph2(self, model, s1: LinExpr, s2: LinExpr) -> LinExpr:
        """``t >= N(s1, s2)`` for already nonnegative, monotone-minimised ``s1, s2``."""
        t = model.add_var("absnorm")
        for n0, n1 in self.normals:
            model.add_ge(t, s1 * n0 + s2 * n1)
        return t

    def __repr__(self):
        return f"AbsoluteNorm({self.name})"


def l1_norm() -> AbsoluteNorm:
    return AbsoluteNorm([(1, 0), (0, 1)], "l1")


def linf_norm() -> AbsoluteNorm:
    return AbsoluteNorm([(1, 0), (1, 1), (0, 1)], "linf")


def absolute_norm_eval(norm: AbsoluteNorm, a, b) -> Fraction:
    return norm(a, b)


class PolygonOracle(NormOracle):
    """The plane with an absolute polygonal norm."""

    tag = POLYGON
    dim = 2

    def __init__(self, norm: AbsoluteNorm):
        self.absnorm = norm

    def norm(self, v):
        a, b = self.coerce(v)
        return self.absnorm(a, b)

    def dual_norm(self, f):
        a, b = self.coerce(f)
        return self.absnorm.dual(a, b)

    def epigraph(self, model, coords):
        s = []
        for e in coords:
            si = model.add_var("abs")
            model.add_ge(si, e)
            model.add_ge(si, -e)
            s.append(si)
        return self.absnorm.epigraph2(model, s[0], s[1])


class SumOracle(NormOracle):
    """``X (+)_N Y``: vectors are the concatenation of an X part and a Y part."""

    tag = ABS_SUM

    def __init__(self, X: NormOracle, Y: NormOracle, norm: AbsoluteNorm):
        self.X, self.Y, self.absnorm = X, Y, norm
        self.dim = X.dim + Y.dim
        self.polyhedral = X.polyhedral and Y.polyhedral

    def split(self, v):
        v = self.coerce(v)
        return v[:self.X.dim], v[self.X.dim:]

    def join(self, x, y):
        return self.X.coerce(x) + self.Y.coerce(y)

    def norm(self, v):
        x, y = self.split(v)
        return self.absnorm(self.X.norm(x), self.Y.norm(y))

    def dual_norm(self, f):
        fx, fy = self.split(f)
        return self.absnorm.dual(self.X.dual_norm(fx), self.Y.dual_norm(fy))

    def epigraph(self, model, coords):
        tx = self.X.epigraph(model, coords[:self.X.dim])
        ty = self.Y.epigraph(model, coords[self.X.dim:])
        return self.absnorm.epigraph2(model, tx, ty)
