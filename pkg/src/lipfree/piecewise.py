"""Continuous piecewise polynomials of degree <= 2 on [0, 1], exact."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import DegreeTooHigh, InputError

_ZERO = Fraction(0)
MAX_DEGREE = 2


def _trim(c):
    c = [Fraction(v) for v in c]
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)


def _peval(c, x):
    acc = _ZERO
    for v in reversed(c):
        acc = acc * x + v
    return acc


class PiecewisePolynomial:
    """Pieces are coefficient tuples ``(c0, c1, c2)`` in the global variable x."""

    __slots__ = ("breaks", "pieces")

    def __init__(self, breaks: Sequence, pieces: Sequence[Sequence]):
        breaks = tuple(Fraction(b) for b in breaks)
        pieces = tuple(_trim(p) for p in pieces)
        if len(breaks) < 2 or breaks[0] != 0 or breaks[-1] != 1:
            raise InputError("breakpoints must run from 0 to 1")
        if any(b >= c for b, c in zip(breaks, breaks[1:])):
            raise InputError("breakpoints must be strictly increasing")
        if len(pieces) != len(breaks) - 1:
            raise InputError("need one polynomial per interval")
        for p in pieces:
            if len(p) - 1 > MAX_DEGREE:
                raise DegreeTooHigh(f"degree {len(p) - 1} exceeds {MAX_DEGREE}")
        for k in range(1, len(pieces)):
            t = breaks[k]
            if _peval(pieces[k - 1], t) != _peval(pieces[k], t):
                raise InputError(f"discontinuity at x = {t}")
        self.breaks = breaks
        self.pieces = pieces

    @classmethod
    def interpolate(cls, knots) -> "PiecewisePolynomial":
        """Piecewise linear through ``(t, value)`` knots from t=0 to t=1."""
        knots = [(Fraction(t), Fraction(v)) for t, v in knots]
        pieces = []
        for (t0, v0), (t1, v1) in zip(knots, knots[1:]):
            slope = (v1 - v0) / (t1 - t0)
            pieces.append((v0 - slope * t0, slope))
        return cls([t for t, _ in knots], pieces)

    @classmethod
    def constant(cls, c) -> "PiecewisePolynomial":
        return cls([0, 1], [(c,)])

    @property
    def degree(self) -> int:
        return max(len(p) - 1 for p in self.pieces)

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        for k in range(len(self.pieces)):
            if x <= self.breaks[k + 1]:
                return _peval(self.pieces[k], x)
        raise ValueError(f"{x} is outside [0, 1]")

    def refine(self, breaks) -> "PiecewisePolynomial":
        merged = sorted(set(self.breaks) | {Fraction(b) for b in breaks})
        pieces = [self._piece_at((a + b) / 2) for a, b in zip(merged, merged[1:])]
        return PiecewisePolynomial(merged, pieces)

    def _piece_at(self, x):
        for k in range(len(self.pieces)):
            if self.breaks[k] <= x <= self.breaks[k + 1]:
                return self.pieces[k]
        raise ValueError(x)

    def _binary(self, other, op):
        if not isinstance(other, PiecewisePolynomial):
            other = PiecewisePolynomial.constant(other)
        a = self.refine(other.breaks)
        b = other.refine(self.breaks)
        return PiecewisePolynomial(a.breaks, [op(p, q) for p, q in zip(a.pieces, b.pieces)])

    def __add__(self, other):
        return self._binary(other, _padd)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, PiecewisePolynomial) else -Fraction(other))

    def __neg__(self):
        return self * -1

    def __mul__(self, other):
        if isinstance(other, PiecewisePolynomial):
            return self._binary(other, _pmul)
        k = Fraction(other)
        return PiecewisePolynomial(self.breaks, [tuple(k * v for v in p) for p in self.pieces])

    __rmul__ = __mul__

    def simplify(self) -> "PiecewisePolynomial":
        """Merge adjacent pieces carrying the same polynomial."""
        breaks, pieces = [self.breaks[0]], []
        for k, p in enumerate(self.pieces):
            if pieces and pieces[-1] == p:
                breaks[-1] = self.breaks[k + 1]
            else:
                pieces.append(p)
                breaks.append(self.breaks[k + 1])
        return PiecewisePolynomial(breaks, pieces)

    def __eq__(self, other):
        if not isinstance(other, PiecewisePolynomial):
            return NotImplemented
        a, b = self.simplify(), other.simplify()
        return a.breaks == b.breaks and a.pieces == b.pieces

    def __hash__(self):
        s = self.simplify()
        return hash((s.breaks, s.pieces))

    def vanishes_on(self, lo, hi) -> bool:
        """True iff the function is identically zero on ``[lo, hi]``."""
        r = self.refine([lo, hi])
        lo, hi = Fraction(lo), Fraction(hi)
        return all(p == (0,) for k, p in enumerate(r.pieces)
                   if r.breaks[k] >= lo and r.breaks[k + 1] <= hi)

    def __repr__(self):
        return f"PiecewisePolynomial(breaks={[str(b) for b in self.breaks]}, pieces=" \
               f"{[[str(c) for c in p] for p in self.pieces]})"


def _padd(p, q):
    n = max(len(p), len(q))
    return tuple((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def _pmul(p, q):
    out = [_ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return tuple(out)


def pp_sup_norm(f: PiecewisePolynomial) -> Fraction:
    """Exact max of ``|f|`` on [0, 1] from endpoint values and quadratic vertices."""
    best = _ZERO
    for k, p in enumerate(f.pieces):
        lo, hi = f.breaks[k], f.breaks[k + 1]
        cands = [lo, hi]
        if len(p) == 3 and p[2] != 0:
            vertex = -p[1] / (2 * p[2])
            if lo < vertex < hi:
                cands.append(vertex)
        best = max(best, max(abs(_peval(p, t)) for t in cands))
    return best
