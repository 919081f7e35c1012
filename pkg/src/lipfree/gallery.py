"""Absolute sums of normed spaces and the C[0, 1] counterexample, exactly.

* :func:`prop31b_witness` builds the two-term decomposition that defeats
  the DOH inequality in ``X (+)_N Y`` whenever ``N(1, 1) < 2``.
* :func:`l1_lift_check` checks, on data, how a decomposition in ``X`` lifts
  to the l1-sum ``X (+)_1 Y`` without losing the bound.
* :func:`c01_gallery` evaluates the four sup norms that show C[0, 1] fails
  the DOH inequality for every ``g`` in the admissible class.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .doh import DohInstance, DohTerm, DohViolation, doh_objective
from .errors import (
    EpsOutOfRange,
    EpsTooLarge,
    GNotInBall,
    InputError,
    InvariantBreach,
    LiftMismatch,
    NoStrictViolation,
    NotUnit,
)
from .norms import (  # noqa: F401  (re-exported)
    AbsoluteNorm,
    NormOracle,
    SumOracle,
    absolute_norm_eval,
    l1_norm,
    linf_norm,
)
from .piecewise import PiecewisePolynomial, pp_sup_norm

_ZERO = Fraction(0)
QUARTER = Fraction(1, 4)
THREE_QUARTERS = Fraction(3, 4)


# --- absolute sums with N(1, 1) < 2 ------------------------------------------

@dataclass(frozen=True)
class Prop31bResult:
    violation: DohViolation
    norms: tuple[Fraction, Fraction, Fraction, Fraction]
    total: Fraction
    threshold: Fraction
    chain_value: Fraction
    chain_bound: Fraction


def prop31b_chain_line(norm: AbsoluteNorm, ny1, ny2, eps) -> tuple[Fraction, Fraction]:
    """``2 + (|y1| + |y2|) N(1,1)`` and ``(1 - eps)(2|y1| + 2|y2| + 2)``.

    This is the textual step of the argument; it assumes
    ``N(|y1|,|y2|) + N(|y2|,|y1|) = 2``. :func:`prop31b_witness` does not rely
    on it and evaluates all four norms directly.
    """
    ny1, ny2, eps = Fraction(ny1), Fraction(ny2), Fraction(eps)
    return 2 + (ny1 + ny2) * norm(1, 1), (1 - eps) * (2 * ny1 + 2 * ny2 + 2)


def prop31b_witness(X: NormOracle, Y: NormOracle, norm: AbsoluteNorm, eps,
                    x, w, y1, y2) -> Prop31bResult:
    eps = Fraction(eps)
    if eps <= 0:
        raise EpsOutOfRange("eps must be positive")
    if norm(1, 1) > 2 * (1 - 2 * eps):
        raise EpsTooLarge(f"N(1,1) = {norm(1, 1)} exceeds 2(1 - 2 eps) = {2 * (1 - 2 * eps)}")
    S = SumOracle(X, Y, norm)
    x, w = X.coerce(x), Y.coerce(w)
    y1, y2 = X.coerce(y1), Y.coerce(y2)
    if X.norm(x) != 1 or Y.norm(w) != 1:
        raise NotUnit("x and w must be unit vectors")
    y = S.join(y1, y2)
    if S.norm(y) != 1:
        raise NotUnit(f"(y1, y2) has norm {S.norm(y)} in the sum")
    n1, n2 = X.norm(y1), Y.norm(y2)
    ex = S.join(x, Y.zero())
    ew = S.join(X.zero(), w)
    terms = (DohTerm(ex, n1, n2, S.join(X.zero(), y2)),
             DohTerm(ew, n1, n2, S.join(y1, Y.zero())))
    inst = DohInstance(S, (ex, ew), eps, y, terms)
    value = doh_objective(inst)
    norms = []
    for t in terms:
        norms.append(S.norm(S.lincomb([(t.a, t.x), (1, t.y)])))
        norms.append(S.norm(S.lincomb([(t.b, t.x), (-1, t.y)])))
    total = sum(norms, _ZERO)
    threshold = (1 - eps) * (2 * n1 + 2 * n2 + 2)
    if total - threshold != value:
        raise InvariantBreach("objective bookkeeping mismatch")
    if value >= 0:
        raise NoStrictViolation(f"sum of norms {total} is not below {threshold}")
    chain_value, chain_bound = prop31b_chain_line(norm, n1, n2, eps)
    return Prop31bResult(DohViolation(inst, value), tuple(norms), total, threshold,
                         chain_value, chain_bound)


# --- lifting to the l1-sum -------------------------------------------------

@dataclass(frozen=True)
class LiftVerdict:
    lifted: Fraction
    x_part: Fraction
    y_part: Fraction
    y_lower: Fraction
    split_exact: bool
    y_bound: bool
    equality: bool
    x_threshold: Fraction | None = None
    final_bound: Fraction | None = None

    @property
    def holds(self) -> bool:
        return self.split_exact and self.y_bound


def l1_lift_check(X: NormOracle, Y: NormOracle, terms, lift, eps=None) -> LiftVerdict:
    """Verify the l1-sum lower-bound chain on explicit data.

    ``terms[i] = (x_i, y_i, a_i, b_i, z_i)``: ``(x_i, y_i)`` is a unit vector
    of ``X (+)_1 Y`` and ``z_i`` is the X-part of the decomposition; ``lift``
    holds the Y-parts ``w_i`` and must sum to zero, so the lifted parts
    ``(z_i, w_i)`` sum to ``(sum z_i, 0)``.
    """
    S = SumOracle(X, Y, l1_norm())
    if len(lift) != len(terms):
        raise InputError("need one lift component per term")
    lift = [Y.coerce(w) for w in lift]
    if Y.lincomb([(1, w) for w in lift]) != Y.zero():
        raise LiftMismatch("lift components do not sum to zero")
    lifted = x_part = y_part = y_lower = s_ab = s_abx = _ZERO
    for (xi, yi, a, b, zi), wi in zip(terms, lift):
        xi, yi, zi = X.coerce(xi), Y.coerce(yi), X.coerce(zi)
        a, b = Fraction(a), Fraction(b)
        if a < 0 or b < 0:
            raise InputError("coefficients must be nonnegative")
        nx, ny = X.norm(xi), Y.norm(yi)
        if nx + ny != 1:
            raise NotUnit(f"(x_i, y_i) has norm {nx + ny} in the l1-sum")
        e = S.join(xi, yi)
        part = S.join(zi, wi)
        lifted += S.norm(S.lincomb([(a, e), (1, part)])) + S.norm(S.lincomb([(b, e), (-1, part)]))
        x_part += X.norm(X.lincomb([(a, xi), (1, zi)])) + X.norm(X.lincomb([(b, xi), (-1, zi)]))
        y_part += Y.norm(Y.lincomb([(a, yi), (1, wi)])) + Y.norm(Y.lincomb([(b, yi), (-1, wi)]))
        y_lower += (a + b) * ny
        s_ab += a + b
        s_abx += (a + b) * nx
    x_threshold = final = None
    if eps is not None:
        eps = Fraction(eps)
        x_threshold = (1 - eps) * (s_abx + 2)
        final = (1 - eps) * (s_ab + 2)
    return LiftVerdict(lifted, x_part, y_part, y_lower,
                       lifted == x_part + y_part, y_part >= y_lower, y_part == y_lower,
                       x_threshold, final)


# --- C[0, 1] ------------------------------------------------------------------

F1 = PiecewisePolynomial.interpolate([(0, 1), (QUARTER, 0), (1, 0)])
F2 = PiecewisePolynomial.interpolate([(0, 0), (THREE_QUARTERS, 0), (1, 1)])
CUTOFF = PiecewisePolynomial.interpolate([(0, 0), (QUARTER, 0), (THREE_QUARTERS, 1), (1, 1)])


class SupNormOracle(NormOracle):
    """The piecewise-polynomial fragment of C[0, 1]; not polyhedral."""

    tag = "sup-norm"
    polyhedral = False
    dim = -1

    def coerce(self, v):
        if not isinstance(v, PiecewisePolynomial):
            raise InputError("C[0,1] vectors are piecewise polynomials")
        return v

    def zero(self):
        return PiecewisePolynomial.constant(0)

    def lincomb(self, pairs):
        out = self.zero()
        for c, v in pairs:
            out = out + v * Fraction(c)
        return out

    def equal(self, u, v):
        return u == v

    def norm(self, v):
        return pp_sup_norm(v)


@dataclass(frozen=True)
class C01Report:
    eps: Fraction
    g: PiecewisePolynomial
    g1: PiecewisePolynomial
    g2: PiecewisePolynomial
    norms: tuple[Fraction, Fraction, Fraction, Fraction]
    total: Fraction
    threshold: Fraction

    @property
    def margin(self) -> Fraction:
        return self.threshold - self.total

    @property
    def strict(self) -> bool:
        return self.total < self.threshold

    @property
    def verdict(self) -> str:
        if self.strict:
            return "violation"
        if self.total == self.threshold:
            return "no strict violation at the boundary"
        return "no violation"

    def instance(self) -> DohInstance:
        o = SupNormOracle()
        return DohInstance(o, (F1, F2), self.eps, self.g,
                           (DohTerm(F1, 1, 1, self.g1), DohTerm(F2, 1, 1, self.g2)))


def split_g(g: PiecewisePolynomial):
    """``g1 = cutoff * g`` vanishes on [0, 1/4]; ``g2 = g - g1`` on [3/4, 1]."""
    g1 = CUTOFF * g
    return g1, g - g1


def c01_gallery(eps, g: PiecewisePolynomial) -> C01Report:
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise EpsOutOfRange(f"eps must lie in (0, 1), got {eps}")
    if g.degree > 1:
        raise InputError("g must be piecewise linear so that cutoff * g stays quadratic")
    if pp_sup_norm(g) > 1:
        raise GNotInBall(f"|g| = {pp_sup_norm(g)} exceeds 1")
    g1, g2 = split_g(g)
    if not g1.vanishes_on(0, QUARTER) or not g2.vanishes_on(THREE_QUARTERS, 1):
        raise InvariantBreach("cutoff split does not vanish where required")
    if pp_sup_norm(g1) > 1 or pp_sup_norm(g2) > 1:
        raise InvariantBreach("cutoff split left the unit ball")
    norms = (pp_sup_norm(F1 + g1), pp_sup_norm(F1 - g1),
             pp_sup_norm(F2 + g2), pp_sup_norm(F2 - g2))
    total = sum(norms, _ZERO)
    return C01Report(eps, g, g1, g2, norms, total, 6 * (1 - eps))
