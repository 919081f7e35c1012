"""Finite-resolution checks of the long trapezoid inequalities.

For a candidate pair ``(u, v)`` and a finite test set ``N``:

* pair inequality:   ``(1-eps)(d(x,y) + d(u,v)) <= d(x,u) + d(y,v)``
  for all ``x, y`` in ``N``;
* quad inequality:   ``(1-eps)(d(x,y) + d(z,w) + 2d(u,v))
  <= d(x,u) + d(y,u) + d(z,v) + d(w,v)`` for all ``x, y, z, w`` in ``N``.

LTP asks for a pool pair satisfying the pair inequality; SLTP asks for one
satisfying both. Distances are rescaled to integers internally; all the
inequalities are homogeneous so the verdicts and ratios are unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from typing import Sequence

from .errors import EmptyN, EmptyPool, InputError
from .metric import FiniteMetricSpace

PAIR = "pair"
QUAD = "quad"


@dataclass(frozen=True)
class TrapezoidInstance:
    space: FiniteMetricSpace
    N: tuple[str, ...]
    pool: tuple[tuple[str, str], ...] = ()
    eps: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "N", tuple(self.N))
        if not self.N:
            raise EmptyN("the test set N is empty")
        for x in self.N:
            if x not in self.space:
                raise InputError(f"N contains unknown point {x!r}")
        pool = tuple(tuple(pq) for pq in self.pool) or default_pool(self.space)
        for u, v in pool:
            if u not in self.space or v not in self.space:
                raise InputError(f"pool pair ({u},{v}) is not in the space")
            if u == v:
                raise InputError(f"pool pair ({u},{v}) has equal endpoints")
        if not pool:
            raise EmptyPool("the candidate pool is empty")
        object.__setattr__(self, "pool", pool)
        eps = Fraction(self.eps)
        if not 0 <= eps < 1:
            raise InputError(f"eps must lie in [0, 1), got {eps}")
        object.__setattr__(self, "eps", eps)


def default_pool(space: FiniteMetricSpace) -> tuple[tuple[str, str], ...]:
    return tuple(permutations(space.points, 2))


@dataclass(frozen=True)
class Violation:
    """A tuple at which one inequality fails: ``lhs > rhs``, both exact."""

    kind: str
    points: tuple[str, ...]
    lhs: Fraction
    rhs: Fraction


@dataclass(frozen=True)
class PairEvidence:
    pair: tuple[str, str]
    violation: Violation | None = None

    @property
    def works(self) -> bool:
        return self.violation is None


@dataclass(frozen=True)
class TrapezoidReport:
    property: str
    eps: Fraction
    witness: tuple[str, str] | None
    evidence: tuple[PairEvidence, ...] = field(default_factory=tuple)

    @property
    def verdict(self) -> str:
        return "Witness" if self.witness is not None else "Failure"


def pair_sides(space, u, v, x, y, eps) -> tuple[Fraction, Fraction]:
    d = space.d
    return (1 - eps) * (d(x, y) + d(u, v)), d(x, u) + d(y, v)


def quad_sides(space, u, v, x, y, z, w, eps) -> tuple[Fraction, Fraction]:
    d = space.d
    return ((1 - eps) * (d(x, y) + d(z, w) + 2 * d(u, v)),
            d(x, u) + d(y, u) + d(z, v) + d(w, v))


def reevaluate(space, pair, violation: Violation, eps) -> bool:
    """True iff the violation is a strict failure of its inequality at ``eps``."""
    u, v = pair
    if violation.kind == PAIR:
        lhs, rhs = pair_sides(space, u, v, *violation.points, eps)
    else:
        lhs, rhs = quad_sides(space, u, v, *violation.points, eps)
    return lhs > rhs and (lhs, rhs) == (violation.lhs, violation.rhs)


class _Scaled:
    """Integer distance table and index lookups shared by the scans."""

    def __init__(self, space, N):
        self.space = space
        self.scale, self.D = space.integer_matrix()
        self.idx = [space.index(x) for x in N]
        self.N = tuple(N)


def _worst_pair(sc: _Scaled, u, v, a, b):
    """Most violated pair-inequality tuple at eps = a/b, or None."""
    D, iu, iv = sc.D, sc.space.index(u), sc.space.index(v)
    duv = D[iu][iv]
    # ties on the gap go to the smaller right side, so (x, y) = (u, v) wins when present
    worst, arg = (0, 0), None
    for x, y in product(range(len(sc.idx)), repeat=2):
        ix, iy = sc.idx[x], sc.idx[y]
        rhs = D[ix][iu] + D[iy][iv]
        key = ((b - a) * (D[ix][iy] + duv) - b * rhs, -rhs)
        if key[0] > 0 and key > worst:
            worst, arg = key, (x, y)
    return arg


def _worst_quad(sc: _Scaled, u, v, a, b):
    D, iu, iv = sc.D, sc.space.index(u), sc.space.index(v)
    duv2 = 2 * D[iu][iv]
    k = len(sc.idx)
    # split into (x, y) and (z, w) halves: gap = L(x,y) + R(z,w) + const
    left = [((b - a) * D[sc.idx[x]][sc.idx[y]] - b * (D[sc.idx[x]][iu] + D[sc.idx[y]][iu]), (x, y))
            for x, y in product(range(k), repeat=2)]
    right = [((b - a) * D[sc.idx[z]][sc.idx[w]] - b * (D[sc.idx[z]][iv] + D[sc.idx[w]][iv]), (z, w))
             for z, w in product(range(k), repeat=2)]
    lbest = max(left, key=lambda t: t[0])
    rbest = max(right, key=lambda t: t[0])
    gap = lbest[0] + rbest[0] + (b - a) * duv2
    if gap > 0:
        return lbest[1] + rbest[1]
    return None


def _violation(sc, u, v, kind, idx_tuple, eps) -> Violation:
    pts = tuple(sc.N[i] for i in idx_tuple)
    if kind == PAIR:
        lhs, rhs = pair_sides(sc.space, u, v, *pts, eps)
    else:
        lhs, rhs = quad_sides(sc.space, u, v, *pts, eps)
    return Violation(kind, pts, lhs, rhs)


def _check(inst: TrapezoidInstance, strong: bool) -> TrapezoidReport:
    sc = _Scaled(inst.space, inst.N)
    a, b = inst.eps.numerator, inst.eps.denominator
    witness = None
    evidence = []
    for u, v in inst.pool:
        arg = _worst_pair(sc, u, v, a, b)
        viol = None
        if arg is not None:
            viol = _violation(sc, u, v, PAIR, arg, inst.eps)
        elif strong:
            arg = _worst_quad(sc, u, v, a, b)
            if arg is not None:
                viol = _violation(sc, u, v, QUAD, arg, inst.eps)
        evidence.append(PairEvidence((u, v), viol))
        if viol is None and witness is None:
            witness = (u, v)
    return TrapezoidReport("SLTP" if strong else "LTP", inst.eps, witness, tuple(evidence))


def check_ltp(inst: TrapezoidInstance) -> TrapezoidReport:
    return _check(inst, strong=False)


def check_sltp(inst: TrapezoidInstance) -> TrapezoidReport:
    return _check(inst, strong=True)


def pair_ratio(space: FiniteMetricSpace, N: Sequence[str], u: str, v: str) -> Fraction:
    """Smallest right-side / base ratio of both inequality families for ``(u, v)``."""
    sc = _Scaled(space, N)
    D, iu, iv = sc.D, space.index(u), space.index(v)
    duv = D[iu][iv]
    best_n, best_d = None, 1
    for ix, iy in product(sc.idx, repeat=2):
        num = D[ix][iu] + D[iy][iv]
        den = D[ix][iy] + duv
        if best_n is None or num * best_d < best_n * den:
            best_n, best_d = num, den
    for ix, iy, iz, iw in product(sc.idx, repeat=4):
        num = D[ix][iu] + D[iy][iu] + D[iz][iv] + D[iw][iv]
        den = D[ix][iy] + D[iz][iw] + 2 * duv
        if num * best_d < best_n * den:
            best_n, best_d = num, den
    return Fraction(best_n, best_d)


def sltp_modulus(space: FiniteMetricSpace, N: Sequence[str], pool=()) -> Fraction:
    """Smallest eps at which some pool pair passes both inequalities.

    ``max(0, 1 - max over pool of pair_ratio)``; ``check_sltp`` at ``eps``
    finds a witness exactly when ``eps >= sltp_modulus``.
    """
    inst = TrapezoidInstance(space, tuple(N), tuple(pool))
    best = max(pair_ratio(space, inst.N, u, v) for u, v in inst.pool)
    return max(Fraction(0), 1 - best)
