"""Lipschitz functions vanishing at the base point, and duality with molecules."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Mapping

from .errors import (
    InputError,
    InvariantBreach,
    NotLipschitzOnSubset,
    SpaceMismatch,
    ZeroMolecule,
)
from .freespace import Molecule, aenorm
from .lp import LinExpr, LPModel
from .metric import FiniteMetricSpace

_ZERO = Fraction(0)


class LipschitzFunction:
    __slots__ = ("space", "values")

    def __init__(self, space: FiniteMetricSpace, values: Mapping[str, object]):
        missing = [p for p in space.points if p not in values]
        if missing:
            raise InputError(f"function undefined at {missing}")
        extra = [p for p in values if p not in space]
        if extra:
            raise InputError(f"unknown points {extra}")
        vals = {p: Fraction(values[p]) for p in space.points}
        if vals[space.base] != 0:
            raise InputError(f"f(base) = {vals[space.base]}, must be 0")
        self.space = space
        self.values = vals

    @classmethod
    def rebased(cls, space, values) -> "LipschitzFunction":
        """Subtract the value at the base point, then build."""
        shift = Fraction(values[space.base])
        return cls(space, {p: Fraction(v) - shift for p, v in values.items()})

    def __getitem__(self, p):
        return self.values[p]

    def __repr__(self):
        body = ", ".join(f"{p}: {v}" for p, v in self.values.items())
        return f"LipschitzFunction({{{body}}})"


def _lip_constant(space, values, points) -> Fraction:
    # track the best ratio as (num, den) and compare by cross-multiplication
    best_n, best_d = _ZERO, Fraction(1)
    pts = list(points)
    for i, x in enumerate(pts):
        for y in pts[i + 1:]:
            num = abs(values[x] - values[y])
            den = space.d(x, y)
            if num * best_d > best_n * den:
                best_n, best_d = num, den
    return best_n / best_d


def lip_norm(f: LipschitzFunction) -> Fraction:
    return _lip_constant(f.space, f.values, f.space.points)


def pairing(f: LipschitzFunction, mol: Molecule) -> Fraction:
    if f.space != mol.space:
        raise SpaceMismatch("function and molecule live on different spaces")
    return sum((f.values[p] * w for p, w in mol.weights.items()), _ZERO)


def mcshane_extend(space: FiniteMetricSpace, partial: Mapping[str, object], L) -> LipschitzFunction:
    """Extend an ``L``-Lipschitz map on a subset to the whole space.

    Uses ``min over p in S of partial(p) + L d(x, p)`` and then shifts so
    that the base point maps to 0.
    """
    L = Fraction(L)
    if L < 0:
        raise InputError("Lipschitz constant must be nonnegative")
    if not partial:
        raise InputError("cannot extend from an empty subset")
    vals = {p: Fraction(v) for p, v in partial.items()}
    for p in vals:
        if p not in space:
            raise InputError(f"unknown point {p!r}")
    pts = list(vals)
    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            if abs(vals[p] - vals[q]) > L * space.d(p, q):
                raise NotLipschitzOnSubset(p, q, abs(vals[p] - vals[q]) / space.d(p, q), L)
    ext = {x: min(vals[p] + L * space.d(x, p) for p in pts) for x in space.points}
    return LipschitzFunction.rebased(space, ext)


def dual_witness(mol: Molecule) -> LipschitzFunction:
    """A 1-Lipschitz ``f`` with ``pairing(f, mol) == aenorm(mol)``.

    Solves the Lipschitz-constrained dual LP on ``supp(mol)`` plus the base
    point, McShane-extends with ``L = 1`` and verifies both conditions
    exactly before returning.
    """
    if mol.is_zero():
        raise ZeroMolecule("the zero molecule has no norming functional")
    space = mol.space
    support = [p for p in space.points if p in mol.weights or p == space.base]
    model = LPModel()
    var = {p: model.add_var(f"f[{p}]", free=True) for p in support}
    model.add_eq(var[space.base], 0)
    for x, y in permutations(support, 2):
        model.add_le(var[x] - var[y], space.d(x, y))
    objective = sum((var[p] * (-w) for p, w in mol.weights.items()), LinExpr())
    res = model.minimize(objective)
    if not res.ok:
        raise InvariantBreach(f"dual LP ended {res.status}")
    partial = {p: var[p].value(res.x) for p in support}
    f = mcshane_extend(space, partial, 1)
    norm = aenorm(mol)
    got = pairing(f, mol)
    if lip_norm(f) > 1 or got != norm:
        raise InvariantBreach(
            f"dual witness failed verification on {mol!r}: pairing {got}, norm {norm}, "
            f"lip {lip_norm(f)}")
    return f
