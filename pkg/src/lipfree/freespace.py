"""Molecules of the free space over a finite metric space.

The Arens-Eells norm of a molecule is the cheapest way to write it as a
positive combination of elementary molecules ``delta_p - delta_q``. By the
triangle inequality a relayed route is never cheaper than the direct one,
so the norm is the optimal value of the transportation problem from the
positive part of the weights to the negative part with costs ``d(p, q)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping

from .errors import InvalidMolecule, SupportTooLarge, TargetBelowNorm, ZeroMolecule
from .flow import transport
from .metric import FiniteMetricSpace

_ZERO = Fraction(0)


class Molecule:
    """Finitely supported zero-sum weights on the points of a space."""

    __slots__ = ("space", "weights")

    def __init__(self, space: FiniteMetricSpace, weights: Mapping[str, object]):
        clean = {}
        for p, w in weights.items():
            if p not in space:
                raise InvalidMolecule(f"point {p!r} is not in the space")
            w = Fraction(w)
            if w:
                clean[p] = clean.get(p, _ZERO) + w
        clean = {p: w for p, w in clean.items() if w}
        if sum(clean.values(), _ZERO) != 0:
            raise InvalidMolecule("molecule weights must sum to zero")
        # canonical order: the space's point order
        self.space = space
        self.weights = {p: clean[p] for p in space.points if p in clean}

    @classmethod
    def elementary(cls, space, p, q, scale=1) -> "Molecule":
        if p == q:
            return cls(space, {})
        return cls(space, {p: Fraction(scale), q: -Fraction(scale)})

    @classmethod
    def from_vector(cls, space, vec) -> "Molecule":
        """Inverse of :meth:`vector`: coordinates over non-base points."""
        pts = space.non_base
        weights = {p: Fraction(v) for p, v in zip(pts, vec)}
        weights[space.base] = -sum(weights.values(), _ZERO)
        return cls(space, weights)

    def vector(self) -> tuple[Fraction, ...]:
        return tuple(self.weights.get(p, _ZERO) for p in self.space.non_base)

    def __getitem__(self, p) -> Fraction:
        return self.weights.get(p, _ZERO)

    def is_zero(self) -> bool:
        return not self.weights

    def positive(self) -> dict:
        return {p: w for p, w in self.weights.items() if w > 0}

    def negative(self) -> dict:
        return {p: -w for p, w in self.weights.items() if w < 0}

    def _check(self, other):
        if other.space is not self.space and other.space != self.space:
            raise InvalidMolecule("molecules live on different spaces")

    def __add__(self, other: "Molecule") -> "Molecule":
        self._check(other)
        w = dict(self.weights)
        for p, v in other.weights.items():
            w[p] = w.get(p, _ZERO) + v
        return Molecule(self.space, w)

    def __neg__(self):
        return Molecule(self.space, {p: -v for p, v in self.weights.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = Fraction(c)
        return Molecule(self.space, {p: c * v for p, v in self.weights.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Molecule):
            return NotImplemented
        return self.space == other.space and self.weights == other.weights

    def __repr__(self):
        body = ", ".join(f"{p}: {w}" for p, w in self.weights.items())
        return f"Molecule({{{body}}})"


@dataclass(frozen=True)
class MoleculeDecomposition:
    """``sum(lam * (delta_p - delta_q))`` with all ``lam > 0``."""

    space: FiniteMetricSpace
    terms: tuple[tuple[Fraction, str, str], ...]

    @property
    def cost(self) -> Fraction:
        return sum((lam * self.space.d(p, q) for lam, p, q in self.terms), _ZERO)

    def molecule(self) -> Molecule:
        w: dict[str, Fraction] = {}
        for lam, p, q in self.terms:
            w[p] = w.get(p, _ZERO) + lam
            w[q] = w.get(q, _ZERO) - lam
        return Molecule(self.space, w)

    def is_valid(self) -> bool:
        return all(lam > 0 and p != q for lam, p, q in self.terms)


def _solve(mol: Molecule):
    pos = mol.positive()
    neg = mol.negative()
    sp, sq = list(pos), list(neg)
    cost = [[mol.space.d(p, q) for q in sq] for p in sp]
    total, flow = transport([pos[p] for p in sp], [neg[q] for q in sq], cost)
    return total, sp, sq, flow


def aenorm(mol: Molecule) -> Fraction:
    if mol.is_zero():
        return _ZERO
    return _solve(mol)[0]


def optimal_decomposition(mol: Molecule, target_cost=None) -> MoleculeDecomposition:
    """Optimal expression of ``mol``; optionally padded to ``target_cost``.

    Padding appends a canceling pair ``t(delta_p - delta_q) + t(delta_q -
    delta_p)`` on the cheapest edge of the space, which leaves the molecule
    unchanged and raises the cost by ``2 t d(p, q)``.
    """
    if mol.is_zero():
        raise ZeroMolecule("cannot decompose the zero molecule")
    total, sp, sq, flow = _solve(mol)
    terms = [(flow[i][j], p, q)
             for i, p in enumerate(sp) for j, q in enumerate(sq) if flow[i][j] > 0]
    if target_cost is not None:
        target_cost = Fraction(target_cost)
        if target_cost < total:
            raise TargetBelowNorm(f"target cost {target_cost} is below the norm {total}")
        extra = target_cost - total
        if extra:
            space = mol.space
            p, q = min(combinations(space.points, 2), key=lambda pq: space.d(*pq))
            t = extra / (2 * space.d(p, q))
            terms += [(t, p, q), (t, q, p)]
    return MoleculeDecomposition(mol.space, tuple(terms))


def _tree_flow(edges, supply, demand):
    """Unique flow on a spanning tree of the bipartite graph, or None."""
    m, n = len(supply), len(demand)
    left = {("s", i): supply[i] for i in range(m)}
    left.update({("t", j): demand[j] for j in range(n)})
    incident = {k: set() for k in left}
    for i, j in edges:
        incident[("s", i)].add((i, j))
        incident[("t", j)].add((i, j))
    flow = {}
    remaining = set(edges)
    while remaining:
        leaf = next((k for k, es in incident.items() if len(es) == 1), None)
        if leaf is None:
            return None  # contains a cycle
        (e,) = incident[leaf]
        f = left[leaf]
        flow[e] = f
        i, j = e
        other = ("t", j) if leaf[0] == "s" else ("s", i)
        left[other] -= f
        left[leaf] = _ZERO
        incident[leaf].discard(e)
        incident[other].discard(e)
        remaining.discard(e)
    if any(v != 0 for v in left.values()):
        return None
    return flow


def aenorm_oracle(mol: Molecule) -> Fraction:
    """Brute-force norm: minimum cost over every vertex of the transportation polytope.

    Each vertex is supported on a spanning tree of the complete bipartite
    graph between the supports, so enumerating all edge sets of size
    ``m + n - 1`` and keeping the nonnegative tree solutions visits every
    vertex.
    """
    if mol.is_zero():
        return _ZERO
    pos, neg = mol.positive(), mol.negative()
    if len(pos) > 4 or len(neg) > 4:
        raise SupportTooLarge("oracle supports at most 4 positive and 4 negative points")
    sp, sq = list(pos), list(neg)
    supply = [pos[p] for p in sp]
    demand = [neg[q] for q in sq]
    all_edges = [(i, j) for i in range(len(sp)) for j in range(len(sq))]
    best = None
    for edges in combinations(all_edges, len(sp) + len(sq) - 1):
        flow = _tree_flow(edges, supply, demand)
        if flow is None or any(f < 0 for f in flow.values()):
            continue
        c = sum((f * mol.space.d(sp[i], sq[j]) for (i, j), f in flow.items()), _ZERO)
        if best is None or c < best:
            best = c
    assert best is not None
    return best
