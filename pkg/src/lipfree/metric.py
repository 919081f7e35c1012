"""Finite pointed metric spaces with exact rational distances."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import (
    IdentityViolation,
    InvalidParams,
    ShapeError,
    SymmetryViolation,
    TriangleViolation,
    UnknownBase,
)
from .rational import common_scale


class FiniteMetricSpace:
    """A validated finite metric space with a distinguished base point.

    Instances are immutable. Use :func:`build_metric_space` (or the
    constructor, which validates) to create one.
    """

    __slots__ = ("points", "base", "dist", "_index")

    def __init__(self, points: Sequence[str], base: str, dist):
        points = tuple(str(p) for p in points)
        if len(set(points)) != len(points):
            raise ShapeError("point identifiers must be distinct")
        if len(points) < 1:
            raise ShapeError("a metric space needs at least one point")
        if base not in points:
            raise UnknownBase(f"base {base!r} is not one of the points")
        if len(dist) != len(points) or any(len(row) != len(points) for row in dist):
            raise ShapeError(f"distance matrix must be {len(points)}x{len(points)}")
        rows = tuple(tuple(Fraction(v) for v in row) for row in dist)
        _validate(points, rows)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "dist", rows)
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(points)})

    @classmethod
    def unchecked(cls, points, base, dist) -> "FiniteMetricSpace":
        """Build without validation. Fault-injection fixtures only."""
        obj = cls.__new__(cls)
        points = tuple(points)
        object.__setattr__(obj, "points", points)
        object.__setattr__(obj, "base", base)
        object.__setattr__(obj, "dist", tuple(tuple(Fraction(v) for v in row) for row in dist))
        object.__setattr__(obj, "_index", {p: i for i, p in enumerate(points)})
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("FiniteMetricSpace is immutable")

    def __eq__(self, other):
        if not isinstance(other, FiniteMetricSpace):
            return NotImplemented
        return (self.points, self.base, self.dist) == (other.points, other.base, other.dist)

    def __hash__(self):
        return hash((self.points, self.base, self.dist))

    def __repr__(self):
        return f"FiniteMetricSpace(points={list(self.points)!r}, base={self.base!r})"

    def __len__(self):
        return len(self.points)

    def index(self, p: str) -> int:
        try:
            return self._index[p]
        except KeyError:
            raise KeyError(f"unknown point {p!r}") from None

    def d(self, p: str, q: str) -> Fraction:
        return self.dist[self._index[p]][self._index[q]]

    def __contains__(self, p):
        return p in self._index

    @property
    def non_base(self) -> tuple[str, ...]:
        return tuple(p for p in self.points if p != self.base)

    def integer_matrix(self) -> tuple[int, list[list[int]]]:
        """Return ``(scale, D)`` with ``D[i][j] == scale * dist[i][j]`` integral."""
        scale = common_scale(v for row in self.dist for v in row)
        return scale, [[int(v * scale) for v in row] for row in self.dist]


def _validate(points, dist):
    n = len(points)
    for i in range(n):
        if dist[i][i] != 0:
            raise IdentityViolation(points[i], dist[i][i])
    for i in range(n):
        for j in range(i + 1, n):
            if dist[i][j] != dist[j][i]:
                raise SymmetryViolation(points[i], points[j], dist[i][j], dist[j][i])
            if dist[i][j] <= 0:
                raise IdentityViolation(points[i] if dist[i][j] == 0 else points[j], dist[i][j])
    for i, j, k in product(range(n), repeat=3):
        if dist[i][k] > dist[i][j] + dist[j][k]:
            raise TriangleViolation(points[i], points[j], points[k],
                                    dist[i][k], dist[i][j], dist[j][k])


def build_metric_space(points, base, dist) -> FiniteMetricSpace:
    return FiniteMetricSpace(points, base, dist)


def _names(n, base_name="0"):
    return [base_name] + [f"p{i}" for i in range(1, n)]


def standard_space(kind: str, params) -> FiniteMetricSpace:
    """Generate a test space.

    ``kind`` is one of ``uniform_discrete`` (params: n), ``line`` (params:
    coordinates), ``l1_points`` / ``linf_points`` (params: list of
    coordinate tuples). The first point is the base point; points are
    named ``"0", "p1", "p2", ...``.
    """
    if kind == "uniform_discrete":
        n = params
        if not isinstance(n, int) or isinstance(n, bool) or n < 2:
            raise InvalidParams("uniform_discrete needs an integer n >= 2")
        dist = [[Fraction(int(i != j)) for j in range(n)] for i in range(n)]
        return FiniteMetricSpace(_names(n), "0", dist)
    if kind == "line":
        coords = [Fraction(c) for c in params]
        if len(coords) < 2:
            raise InvalidParams("line needs at least 2 coordinates")
        if len(set(coords)) != len(coords):
            raise InvalidParams("line coordinates must be distinct")
        dist = [[abs(a - b) for b in coords] for a in coords]
        return FiniteMetricSpace(_names(len(coords)), "0", dist)
    if kind in ("l1_points", "linf_points"):
        pts = [tuple(Fraction(c) for c in p) for p in params]
        if len(pts) < 2:
            raise InvalidParams(f"{kind} needs at least 2 points")
        if len({len(p) for p in pts}) != 1 or len(pts[0]) == 0:
            raise InvalidParams(f"{kind} points must share a positive dimension")
        if len(set(pts)) != len(pts):
            raise InvalidParams(f"{kind} points must be distinct")
        agg = sum if kind == "l1_points" else max
        dist = [[agg(abs(x - y) for x, y in zip(p, q)) for q in pts] for p in pts]
        return FiniteMetricSpace(_names(len(pts)), "0", dist)
    raise InvalidParams(f"unknown standard space kind {kind!r}")
