"""Seeded random generators for property tests and the self-test."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from .errors import DegeneratePolygon
from .freespace import Molecule
from .lipschitz import LipschitzFunction
from .metric import FiniteMetricSpace
from .norms import AbsoluteNorm


def rand_rational(rng: random.Random, lo=-3, hi=3, max_den=4) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_space(rng: random.Random, n: int) -> FiniteMetricSpace:
    """Shortest-path metric of a complete graph with random rational weights."""
    w = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            den = rng.randint(1, 4)
            w[i][j] = w[j][i] = Fraction(rng.randint(den, 5 * den), den)
    for k, i, j in product(range(n), repeat=3):
        if w[i][k] + w[k][j] < w[i][j]:
            w[i][j] = w[i][k] + w[k][j]
    names = ["0"] + [f"p{i}" for i in range(1, n)]
    return FiniteMetricSpace(names, "0", w)


def random_molecule(rng: random.Random, space: FiniteMetricSpace,
                    max_pos: int | None = None, max_neg: int | None = None) -> Molecule:
    """A nonzero molecule; support sizes optionally capped."""
    pts = list(space.points)
    while True:
        rng.shuffle(pts)
        k_pos = rng.randint(1, min(max_pos or len(pts) - 1, len(pts) - 1))
        k_neg = rng.randint(1, min(max_neg or len(pts) - k_pos, len(pts) - k_pos))
        pos, neg = pts[:k_pos], pts[k_pos:k_pos + k_neg]
        wp = [abs(rand_rational(rng, 0, 3)) or Fraction(1) for _ in pos]
        wn = [abs(rand_rational(rng, 0, 3)) or Fraction(1) for _ in neg]
        scale = sum(wp) / sum(wn)
        weights = {p: v for p, v in zip(pos, wp)}
        weights.update({q: -v * scale for q, v in zip(neg, wn)})
        mol = Molecule(space, weights)
        if not mol.is_zero():
            return mol


def random_function(rng: random.Random, space: FiniteMetricSpace) -> LipschitzFunction:
    vals = {p: rand_rational(rng) for p in space.points}
    vals[space.base] = Fraction(0)
    return LipschitzFunction(space, vals)


def _hull(points):
    pts = sorted(set(points))

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]  # counterclockwise


def random_absolute_norm(rng: random.Random, extra: int = 3) -> AbsoluteNorm:
    """Convex hull of (0,0), (1,0), (0,1) and random points of the unit square."""
    one, zero = Fraction(1), Fraction(0)
    while True:
        pts = [(zero, zero), (one, zero), (zero, one)]
        for _ in range(extra):
            den = rng.randint(1, 6)
            pts.append((Fraction(rng.randint(0, den), den), Fraction(rng.randint(0, den), den)))
        hull = _hull(pts)
        start = hull.index((one, zero))
        chain = hull[start:] + hull[:start]
        chain = chain[:chain.index((zero, one)) + 1]
        try:
            return AbsoluteNorm(chain, "random")
        except DegeneratePolygon:
            continue
