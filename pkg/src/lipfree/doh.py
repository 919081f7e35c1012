"""Decomposable octahedrality on explicit data.

For unit vectors ``E``, a resolution ``eps`` and a unit ``y``, a
decomposition ``y = sum(y_i)`` with ``x_i`` in ``E`` and ``a_i, b_i >= 0``
defeats the inequality when

    sum(|a_i x_i + y_i| + |b_i x_i - y_i|) - (1 - eps)(sum(a_i + b_i) + 2) < 0.

This module evaluates that objective, minimises it by exact LP for a fixed
choice of ``x_i``, searches small multisets of ``E``, turns SLTP failures of
a metric space into such decompositions in its free space, and checks the
inequality chain that derives the bound from norming functionals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Sequence

from .errors import (
    CertificateNotViolating,
    CostNotOne,
    DecompositionMismatch,
    DeltaTooLarge,
    InputError,
    InvariantBreach,
    NotUnit,
    PremiseViolated,
    TelescopeMismatch,
    UnboundedModel,
)
from .freespace import Molecule, MoleculeDecomposition
from .lp import INFEASIBLE, UNBOUNDED, LinExpr, LPModel
from .metric import FiniteMetricSpace
from .norms import FreeSpaceOracle, NormOracle
from .trapezoid import pair_sides, quad_sides

_ZERO = Fraction(0)


@dataclass(frozen=True)
class DohTerm:
    x: tuple
    a: Fraction
    b: Fraction
    y: tuple


@dataclass(frozen=True)
class DohInstance:
    oracle: NormOracle
    E: tuple
    eps: Fraction
    y: tuple
    terms: tuple[DohTerm, ...]


def make_instance(oracle, E, eps, y, terms) -> DohInstance:
    """Coerce raw data into a :class:`DohInstance`.

    ``terms`` holds ``(x, a, b, y_i)`` tuples or :class:`DohTerm` objects.
    """
    E = tuple(oracle.coerce(x) for x in E)
    out = []
    for t in terms:
        if isinstance(t, DohTerm):
            t = (t.x, t.a, t.b, t.y)
        x, a, b, yi = t
        out.append(DohTerm(oracle.coerce(x), Fraction(a), Fraction(b), oracle.coerce(yi)))
    return DohInstance(oracle, E, Fraction(eps), oracle.coerce(y), tuple(out))


def term_norms(inst: DohInstance) -> list[tuple[Fraction, Fraction]]:
    o = inst.oracle
    return [(o.norm(o.lincomb([(t.a, t.x), (1, t.y)])),
             o.norm(o.lincomb([(t.b, t.x), (-1, t.y)]))) for t in inst.terms]


def doh_threshold(inst: DohInstance) -> Fraction:
    return (1 - inst.eps) * (sum((t.a + t.b for t in inst.terms), _ZERO) + 2)


def check_instance(inst: DohInstance, require_unit_y: bool = True):
    o = inst.oracle
    if not inst.terms:
        raise InputError("a decomposition needs at least one term")
    for k, t in enumerate(inst.terms):
        if t.a < 0 or t.b < 0:
            raise InputError(f"term {k}: coefficients must be nonnegative")
        if not any(o.equal(t.x, x) for x in inst.E):
            raise InputError(f"term {k}: x is not a member of E")
    for x in inst.E:
        nx = o.norm(x)
        if nx != 1:
            raise NotUnit(f"E member has norm {nx}")
    if require_unit_y:
        ny = o.norm(inst.y)
        if ny != 1:
            raise NotUnit(f"target y has norm {ny}")
    if not o.equal(o.lincomb([(1, t.y) for t in inst.terms]), inst.y):
        raise DecompositionMismatch("the parts y_i do not sum to y")


def doh_objective(inst: DohInstance, require_unit_y: bool = True) -> Fraction:
    check_instance(inst, require_unit_y)
    total = sum((p + m for p, m in term_norms(inst)), _ZERO)
    return total - doh_threshold(inst)


@dataclass(frozen=True)
class DohViolation:
    instance: DohInstance
    objective: Fraction

    def verify(self) -> bool:
        """Recompute from raw data; never trusts the stored value alone."""
        value = doh_objective(self.instance)
        return value == self.objective and value < 0


@dataclass(frozen=True)
class DohOk:
    """No violation found within the searched range; not a proof of DOH."""

    min_value: Fraction
    n_max: int
    assignments: int
    ground: tuple | None
    disclaimer: str = ("searched only multisets of E of size <= n_max"
                       " and parts supported in the ground set")


def _default_ground(oracle: FreeSpaceOracle, E, y):
    pts = {oracle.space.base}
    for v in list(E) + [y]:
        pts |= oracle.support(v)
    return pts


def _prepare(oracle, E, y, ground):
    if not oracle.polyhedral:
        oracle.epigraph(LPModel(), [])  # raises NonPolyhedralOracle
    if isinstance(oracle, FreeSpaceOracle):
        if ground is None:
            ground = _default_ground(oracle, E, y)
        oracle = oracle.with_ground(ground)
        return oracle, oracle.ground
    return oracle, None


def min_violation_lp(oracle: NormOracle, E, eps, y, assignment, ground=None):
    """Exact minimum of the objective for fixed ``x_1..x_n``.

    Returns ``(value, instance)``; the instance realises the minimum and is
    re-evaluated with the direct norm evaluator before returning.
    """
    eps = Fraction(eps)
    E = [oracle.coerce(x) for x in E]
    y = oracle.coerce(y)
    assignment = [oracle.coerce(x) for x in assignment]
    if not assignment:
        raise InputError("assignment must contain at least one element")
    if oracle.norm(y) != 1:
        raise NotUnit(f"target y has norm {oracle.norm(y)}")
    lp_oracle, _ = _prepare(oracle, E, y, ground)
    model = LPModel()
    dim = oracle.dim
    parts = []
    coefs = []
    objective = LinExpr(const=-2 * (1 - eps))
    for i, x in enumerate(assignment):
        a = model.add_var(f"a{i}")
        b = model.add_var(f"b{i}")
        yi = [model.add_var(f"y{i}[{j}]", free=True) for j in range(dim)]
        plus = [a * x[j] + yi[j] for j in range(dim)]
        minus = [b * x[j] - yi[j] for j in range(dim)]
        objective = objective + lp_oracle.epigraph(model, plus) + lp_oracle.epigraph(model, minus)
        objective = objective - (a + b) * (1 - eps)
        parts.append(yi)
        coefs.append((a, b))
    for j in range(dim):
        model.add_eq(sum((yi[j] for yi in parts), LinExpr()), y[j])
    res = model.minimize(objective)
    if res.status == UNBOUNDED:
        raise UnboundedModel("DOH objective LP is unbounded")
    if res.status == INFEASIBLE:
        raise InvariantBreach("DOH objective LP is infeasible")
    terms = [DohTerm(x, a.value(res.x), b.value(res.x), tuple(v.value(res.x) for v in yi))
             for x, (a, b), yi in zip(assignment, coefs, parts)]
    inst = DohInstance(oracle, tuple(E), eps, y, tuple(terms))
    direct = doh_objective(inst)
    if direct != res.value:
        raise InvariantBreach(f"LP value {res.value} != direct objective {direct}")
    return res.value, inst


def doh_candidate_check(oracle: NormOracle, E, eps, y, n_max: int, ground=None):
    """Search multisets of ``E`` of size ``1..n_max``; return the first violation.

    Returns a :class:`DohViolation` or a :class:`DohOk` carrying the smallest
    objective seen and the searched range.
    """
    if n_max < 1:
        raise InputError("n_max must be at least 1")
    E = [oracle.coerce(x) for x in E]
    if not E:
        raise InputError("E is empty")
    _, used_ground = _prepare(oracle, E, oracle.coerce(y), ground)
    best = None
    count = 0
    for n in range(1, n_max + 1):
        for combo in combinations_with_replacement(range(len(E)), n):
            value, inst = min_violation_lp(oracle, E, eps, y, [E[k] for k in combo], ground)
            count += 1
            if best is None or value < best:
                best = value
            if value < 0:
                return DohViolation(inst, value)
    return DohOk(best, n_max, count, used_ground)


# --- SLTP failure -> DOH violation -------------------------------------------

@dataclass(frozen=True)
class SltpToDohResult:
    instance: DohInstance
    objective: Fraction
    delta: Fraction
    r_over_R: Fraction
    target_norm: Fraction

    @property
    def violated(self) -> bool:
        return self.objective < 0


def _cert_points(certs):
    pts = []
    for kind, tup in certs:
        for p in tup:
            if p not in pts:
                pts.append(p)
    return pts


def sltp_failure_to_doh(space: FiniteMetricSpace, nu: MoleculeDecomposition, certs,
                        eps, delta, N: Sequence[str] | None = None) -> SltpToDohResult:
    """Build the free-space decomposition that a family of SLTP failures forces.

    ``nu`` is ``sum(lam_i (delta_u_i - delta_v_i))`` with total cost exactly 1.
    ``certs[i]`` is ``("I", (x, y))`` when the pair inequality fails for
    ``(u_i, v_i)`` or ``("J", (x, y, z, w))`` when the quad inequality does.
    Each I-index contributes one term, each J-index three, routed
    ``u -> y -> z -> v``; the parts telescope to ``-nu``. The objective is
    evaluated at resolution ``delta``.
    """
    eps, delta = Fraction(eps), Fraction(delta)
    if not 0 < eps < 1:
        raise InputError(f"eps must lie in (0, 1), got {eps}")
    if len(certs) != len(nu.terms):
        raise InputError("need exactly one certificate per term of nu")
    if nu.cost != 1:
        raise CostNotOne(f"decomposition cost is {nu.cost}, must be exactly 1")
    if not nu.is_valid():
        raise InputError("decomposition terms need lam > 0 and distinct endpoints")
    d = space.d
    for i, ((lam, u, v), (kind, tup)) in enumerate(zip(nu.terms, certs)):
        if kind == "I" and len(tup) == 2:
            lhs, rhs = pair_sides(space, u, v, *tup, eps)
        elif kind == "J" and len(tup) == 4:
            lhs, rhs = quad_sides(space, u, v, *tup, eps)
        else:
            raise InputError(f"certificate {i} is malformed: {kind} {tup}")
        if not lhs > rhs:
            raise CertificateNotViolating(i, f"({lhs} <= {rhs})")

    pts = list(N) if N is not None else _cert_points(certs)
    if len(pts) < 2:
        raise InputError("the test set needs at least two points")
    dists = [d(p, q) for p, q in combinations(pts, 2)]
    r_over_R = min(dists) / max(dists)
    if not 0 < delta < r_over_R * eps / 2:
        raise DeltaTooLarge(f"delta={delta} must satisfy 0 < delta < r*eps/(2R) = "
                            f"{r_over_R * eps / 2} (sup over admissible r, R)")

    oracle = FreeSpaceOracle(space)
    E = [oracle.unit_elementary(p, q) for p, q in combinations(pts, 2)]
    E += [oracle.unit_elementary(q, p) for p, q in combinations(pts, 2)]

    def elem(p, q, scale=1):
        return (Molecule.elementary(space, p, q) * scale).vector()

    terms = []

    def add(p, q, lam, part):
        # a = lam d(p, q) along the unit direction (delta_p - delta_q)/d(p, q)
        if p == q:
            terms.append(DohTerm(E[0], _ZERO, _ZERO, part))
        else:
            terms.append(DohTerm(oracle.unit_elementary(p, q), lam * d(p, q), _ZERO, part))

    for (lam, u, v), (kind, tup) in zip(nu.terms, certs):
        if kind == "I":
            x, y = tup
            add(x, y, lam, elem(u, v, -lam))
        else:
            x, y, z, w = tup
            add(x, y, lam, elem(u, y, -lam))
            add(y, z, lam, elem(y, z, -lam))
            add(z, w, lam, elem(z, v, -lam))

    target = (-nu.molecule()).vector()
    if oracle.lincomb([(1, t.y) for t in terms]) != target:
        raise TelescopeMismatch("constructed parts do not sum to -nu")
    inst = DohInstance(oracle, tuple(E), delta, target, tuple(terms))
    value = doh_objective(inst, require_unit_y=False)
    return SltpToDohResult(inst, value, delta, r_over_R, oracle.norm(target))


# --- functional chain -------------------------------------------------------

@dataclass(frozen=True)
class ChainLine:
    label: str
    value: Fraction


@dataclass
class ChainVerdict:
    holds: bool
    lines: list[ChainLine] = field(default_factory=list)
    per_term: list[dict] = field(default_factory=list)
    premises: dict = field(default_factory=dict)
    objective: Fraction | None = None


def ssd2p_chain_verify(oracle: NormOracle, E, eps, f_map, g, inst: DohInstance,
                       dual_norm=None) -> ChainVerdict:
    """Check the norming-functional premises and re-derive the DOH bound.

    ``f_map[k]`` is the functional attached to ``E[k]``. Premises:
    ``f_x(x) >= 1 - eps/2`` and ``|f_x +- g| <= 1`` for every ``x`` in ``E``,
    and ``g(y) >= 1 - eps``. When they hold, the chain

        sum norms >= sum((f+g)(a x + y_i) + (f-g)(b x - y_i))
                   = sum((a+b) f(x) + (a-b) g(x) + 2 g(y_i))
                  >= (1-eps) sum(a+b) + 2 sum g(y_i)
                   = (1-eps) sum(a+b) + 2 g(y)
                  >= (1-eps)(sum(a+b) + 2)

    is evaluated line by line with exact values.
    """
    eps = Fraction(eps)
    dual_norm = dual_norm or oracle.dual_norm
    E = [oracle.coerce(x) for x in E]
    f_map = [oracle.coerce(f) for f in f_map]
    g = oracle.coerce(g)
    if len(f_map) != len(E):
        raise InputError("need one functional per element of E")
    if Fraction(inst.eps) != eps:
        raise InputError("instance eps differs from the chain eps")
    check_instance(inst)
    premises = {}
    for k, (x, f) in enumerate(zip(E, f_map)):
        fx = oracle.apply(f, x)
        if fx < 1 - eps / 2:
            raise PremiseViolated("f_x(x) >= 1 - eps/2", {"index": k, "f_x(x)": fx})
        for sign in (1, -1):
            nrm = dual_norm(oracle.lincomb([(1, f), (sign, g)]))
            if nrm > 1:
                raise PremiseViolated("|f_x +- g| <= 1",
                                      {"index": k, "sign": sign, "norm": nrm})
        gx = oracle.apply(g, x)
        if abs(gx) > eps / 2:
            raise InvariantBreach(f"|g(x)| = {abs(gx)} > eps/2 despite the premises")
        premises[k] = {"f_x(x)": fx, "g(x)": gx}
    gy = oracle.apply(g, inst.y)
    if gy < 1 - eps:
        raise PremiseViolated("g(y) >= 1 - eps", {"g(y)": gy})
    premises["g(y)"] = gy

    index = {tuple(x): k for k, x in enumerate(E)}
    norms = term_norms(inst)
    s_ab = sum((t.a + t.b for t in inst.terms), _ZERO)
    l1 = sum((p + m for p, m in norms), _ZERO)
    l2 = _ZERO
    l3 = _ZERO
    per_term = []
    for t, (np_, nm) in zip(inst.terms, norms):
        f = f_map[index[tuple(t.x)]]
        plus = oracle.lincomb([(t.a, t.x), (1, t.y)])
        minus = oracle.lincomb([(t.b, t.x), (-1, t.y)])
        fpg = oracle.lincomb([(1, f), (1, g)])
        fmg = oracle.lincomb([(1, f), (-1, g)])
        v2 = oracle.apply(fpg, plus) + oracle.apply(fmg, minus)
        v3 = ((t.a + t.b) * oracle.apply(f, t.x) + (t.a - t.b) * oracle.apply(g, t.x)
              + 2 * oracle.apply(g, t.y))
        l2 += v2
        l3 += v3
        per_term.append({"norms": np_ + nm, "functional": v2, "expanded": v3})
    sum_gyi = sum((oracle.apply(g, t.y) for t in inst.terms), _ZERO)
    l4 = (1 - eps) * s_ab + 2 * sum_gyi
    l5 = (1 - eps) * s_ab + 2 * gy
    l6 = (1 - eps) * (s_ab + 2)
    lines = [ChainLine("sum of norms", l1),
             ChainLine("functional lower bound", l2),
             ChainLine("expanded", l3),
             ChainLine("after f_x(x) and |g(x)| bounds", l4),
             ChainLine("after sum y_i = y", l5),
             ChainLine("DOH threshold", l6)]
    holds = l1 >= l2 and l2 == l3 and l3 >= l4 and l4 == l5 and l5 >= l6
    return ChainVerdict(holds, lines, per_term, premises, l1 - l6)
