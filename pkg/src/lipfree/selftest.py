"""Embedded acceptance suite.

Each criterion is a function of a seeded ``random.Random`` returning
``(passed, detail)``; ``detail`` holds exact values (as rational strings) or
the first counterexample. ``run_selftest`` is deterministic for a given seed.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations

from .doh import doh_candidate_check, min_violation_lp, sltp_failure_to_doh, DohViolation
from .errors import LipfreeError
from .freespace import (
    Molecule,
    MoleculeDecomposition,
    aenorm,
    aenorm_oracle,
    optimal_decomposition,
)
from .gallery import F1, F2, PiecewisePolynomial, c01_gallery, l1_lift_check, prop31b_witness
from .lipschitz import dual_witness, lip_norm, pairing
from .metric import FiniteMetricSpace, standard_space
from .norms import CubeOracle, FreeSpaceOracle, PolygonOracle, SumOracle, linf_norm, l1_norm
from .rational import fmt
from .sampling import rand_rational, random_absolute_norm, random_molecule, random_space
from .trapezoid import (
    PAIR,
    TrapezoidInstance,
    check_sltp,
    default_pool,
    reevaluate,
    sltp_modulus,
)

DEFAULT_SEED = 20240601
FAULT_CORRUPT_DISTANCE = "corrupt-distance"


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.name}"


def _mol_str(mol: Molecule) -> dict:
    return {p: fmt(w) for p, w in mol.weights.items()}


def _corrupt(space: FiniteMetricSpace) -> FiniteMetricSpace:
    # shrink every distance to the base point, breaking the triangle inequality
    b = space.index(space.base)
    dist = [list(row) for row in space.dist]
    for i in range(len(space)):
        if i != b:
            dist[i][b] = dist[b][i] = dist[i][b] / 100
    return FiniteMetricSpace.unchecked(space.points, space.base, dist)


def _space(rng, lo, hi, fault=None):
    space = random_space(rng, rng.randint(lo, hi))
    return _corrupt(space) if fault == FAULT_CORRUPT_DISTANCE else space


def criterion_elementary(rng, fault=None):
    checked = 0
    for _ in range(50):
        space = random_space(rng, rng.randint(3, 7))
        for p, q in combinations(space.points, 2):
            got = aenorm(Molecule.elementary(space, p, q))
            checked += 1
            if got != space.d(p, q):
                return False, {"pair": [p, q], "aenorm": fmt(got), "d": fmt(space.d(p, q))}
    return True, {"pairs_checked": checked}


def _duality_instances(rng, fault=None):
    for _ in range(100):
        space = _space(rng, 3, 7, fault)
        yield random_molecule(rng, space)


def criterion_duality(rng, fault=None):
    for mol in _duality_instances(rng, fault):
        try:
            f = dual_witness(mol)
        except LipfreeError as exc:
            return False, {"molecule": _mol_str(mol), "error": str(exc)}
        norm, pv, ln = aenorm(mol), pairing(f, mol), lip_norm(f)
        if pv != norm or ln > 1:
            return False, {"molecule": _mol_str(mol), "aenorm": fmt(norm),
                           "pairing": fmt(pv), "lip": fmt(ln)}
    return True, {"instances": 100}


def criterion_oracle(rng, fault=None):
    for _ in range(100):
        space = random_space(rng, rng.randint(4, 7))
        mol = random_molecule(rng, space, max_pos=3, max_neg=3)
        a, b = aenorm(mol), aenorm_oracle(mol)
        if a != b:
            return False, {"molecule": _mol_str(mol), "aenorm": fmt(a), "oracle": fmt(b)}
    return True, {"instances": 100}


def criterion_decomposition(rng, fault=None):
    for mol in _duality_instances(rng, fault):
        norm = aenorm(mol)
        dec = optimal_decomposition(mol)
        if dec.molecule() != mol or dec.cost != norm or not dec.is_valid():
            return False, {"molecule": _mol_str(mol), "cost": fmt(dec.cost), "aenorm": fmt(norm)}
        target = norm + abs(rand_rational(rng, 0, 2)) + Fraction(1, 7)
        padded = optimal_decomposition(mol, target_cost=target)
        if padded.molecule() != mol or padded.cost != target or not padded.is_valid():
            return False, {"molecule": _mol_str(mol), "target": fmt(target),
                           "cost": fmt(padded.cost)}
    return True, {"instances": 100}


def criterion_trapezoid(rng, fault=None):
    for k in range(50):
        space = random_space(rng, rng.randint(4, 6))
        pts = list(space.points)
        N = rng.sample(pts, rng.randint(2, min(4, len(pts))))
        pool = default_pool(space)
        if rng.random() < 0.5:
            pool = tuple(rng.sample(pool, rng.randint(1, len(pool))))
        mod = sltp_modulus(space, N, pool)
        for eps in {mod if mod < 1 else Fraction(0), Fraction(rng.randint(0, 9), 10),
                    max(Fraction(0), mod - Fraction(1, 1000))}:
            rep = check_sltp(TrapezoidInstance(space, N, pool, eps))
            if (rep.witness is not None) != (eps >= mod):
                return False, {"instance": k, "eps": fmt(eps), "modulus": fmt(mod),
                               "verdict": rep.verdict}
            for ev in rep.evidence:
                if ev.violation is not None and not reevaluate(space, ev.pair, ev.violation, eps):
                    return False, {"instance": k, "bad_certificate": ev.pair}
    # N = M always fails, certificate (x, y) = (u, v)
    for _ in range(10):
        space = random_space(rng, rng.randint(3, 5))
        eps = Fraction(rng.randint(0, 9), 10)
        rep = check_sltp(TrapezoidInstance(space, space.points, (), eps))
        if rep.witness is not None:
            return False, {"full_N_witness": rep.witness}
        for ev in rep.evidence:
            v = ev.violation
            if v.kind != PAIR or v.points != ev.pair:
                return False, {"full_N_certificate": [ev.pair, v.points]}
    # uniform discrete with a fresh pair outside N has modulus 0
    for n in (5, 6, 7, 8):
        space = standard_space("uniform_discrete", n)
        N = space.points[:3]
        fresh = [p for p in space.points if p not in N]
        pool = tuple(permutations(fresh, 2))
        mod = sltp_modulus(space, N, pool)
        if mod != 0:
            return False, {"uniform": n, "modulus": fmt(mod)}
    return True, {"instances": 50}


def _random_cost_one(rng, space):
    pairs = list(permutations(space.points, 2))
    k = rng.randint(1, 4)
    chosen = rng.sample(pairs, k)
    raw = [Fraction(rng.randint(1, 9)) for _ in chosen]
    total = sum(raw)
    return MoleculeDecomposition(space, tuple((w / total, u, v) for w, (u, v) in zip(raw, chosen)))


def criterion_sltp_to_doh(rng, fault=None):
    eps = Fraction(3, 5)
    values = []
    for n in (4, 5, 6):
        space = standard_space("uniform_discrete", n)
        for _ in range(3):
            nu = _random_cost_one(rng, space)
            certs = [("I", (u, v)) for _, u, v in nu.terms]
            for delta in (Fraction(1, 10), Fraction(1, 4)):
                res = sltp_failure_to_doh(space, nu, certs, eps, delta, N=space.points)
                values.append(fmt(res.objective))
                if res.objective != 3 * delta - 2 or not res.violated:
                    return False, {"n": n, "delta": fmt(delta), "objective": fmt(res.objective)}
    return True, {"objectives": sorted(set(values))}


def _scalar():
    return CubeOracle("l1", 1)


def criterion_prop31b(rng, fault=None):
    X = _scalar()
    eps = Fraction(1, 4)
    res = prop31b_witness(X, X, linf_norm(), eps, (1,), (1,), (1,), (1,))
    S = res.violation.instance.oracle
    lp_value, _ = min_violation_lp(S, res.violation.instance.E, eps, res.violation.instance.y,
                                   [t.x for t in res.violation.instance.terms])
    ok = (res.violation.objective == Fraction(-1, 2) and res.violation.verify()
          and lp_value <= Fraction(-1, 2))
    return ok, {"objective": fmt(res.violation.objective), "lp_min": fmt(lp_value)}


def _admissible_gs():
    half = Fraction(1, 2)
    return {"f2-f1": F2 - F1,
            "hat": PiecewisePolynomial.interpolate([(0, 0), (half, 1), (1, 0)]),
            "2x-1": PiecewisePolynomial.interpolate([(0, -1), (1, 1)])}


def criterion_c01(rng, fault=None):
    detail = {}
    for name, g in _admissible_gs().items():
        r = c01_gallery(Fraction(1, 4), g)
        detail[name] = [fmt(v) for v in r.norms] + [fmt(r.total), fmt(r.threshold), fmt(r.margin)]
        if (r.norms != (1, 1, 1, 1) or r.total != 4 or r.threshold != Fraction(9, 2)
                or r.margin != Fraction(1, 2)):
            return False, detail
        b = c01_gallery(Fraction(1, 3), g)
        if not (b.total == 4 and b.threshold == 4 and not b.strict):
            detail[name + "@1/3"] = [fmt(b.total), fmt(b.threshold)]
            return False, detail
    return True, detail


def _random_lift_instance(rng, X, Y, zero_lift=False):
    terms, lift = [], []
    n = rng.randint(1, 3)
    for i in range(n):
        mx = random_molecule(rng, X.space)
        my = random_molecule(rng, Y.space)
        s = aenorm(mx) + aenorm(my)
        xi, yi = (mx * (1 / s)).vector(), (my * (1 / s)).vector()
        zi = random_molecule(rng, X.space).vector()
        terms.append((xi, yi, abs(rand_rational(rng, 0, 3)), abs(rand_rational(rng, 0, 3)), zi))
        lift.append(Y.zero() if zero_lift else random_molecule(rng, Y.space).vector())
    if not zero_lift:
        lift[-1] = Y.lincomb([(-1, w) for w in lift[:-1]])
    return terms, lift


def criterion_l1_lift(rng, fault=None):
    eq_cases = 0
    for k in range(100):
        X = FreeSpaceOracle(random_space(rng, rng.randint(2, 5)))
        Y = FreeSpaceOracle(random_space(rng, rng.randint(2, 5)))
        zero = k % 5 == 0
        terms, lift = _random_lift_instance(rng, X, Y, zero_lift=zero)
        v = l1_lift_check(X, Y, terms, lift)
        if not v.holds or (zero and not v.equality):
            return False, {"instance": k, "lifted": fmt(v.lifted), "x_part": fmt(v.x_part),
                           "y_part": fmt(v.y_part), "y_lower": fmt(v.y_lower)}
        eq_cases += zero
    return True, {"instances": 100, "equality_cases": eq_cases}


def criterion_one_dim(rng, fault=None):
    space = FiniteMetricSpace(["0", "p"], "0", [[0, 1], [1, 0]])
    o = FreeSpaceOracle(space)
    E, y = [(1,)], (1,)
    v = doh_candidate_check(o, E, Fraction(1, 2), y, 2)
    ok_v = doh_candidate_check(o, E, Fraction(2, 3), y, 2)
    passed = (isinstance(v, DohViolation) and v.objective == Fraction(-1, 2) and v.verify()
              and not isinstance(ok_v, DohViolation) and ok_v.min_value == 0)
    return passed, {"eps=1/2": fmt(getattr(v, "objective", getattr(v, "min_value", 0))),
                    "eps=2/3": fmt(getattr(ok_v, "min_value", getattr(ok_v, "objective", 0)))}


def _random_vector(rng, dim):
    return tuple(rand_rational(rng) for _ in range(dim))


def criterion_epigraph(rng, fault=None):
    kinds = {
        "free-space": lambda: FreeSpaceOracle(random_space(rng, rng.randint(2, 5))),
        "l1-polygon": lambda: PolygonOracle(l1_norm()),
        "linf-polygon": lambda: PolygonOracle(linf_norm()),
        "random-polygon": lambda: PolygonOracle(random_absolute_norm(rng)),
        "absolute-sum": lambda: SumOracle(FreeSpaceOracle(random_space(rng, rng.randint(2, 4))),
                                          CubeOracle(rng.choice(["l1", "linf"]), 2),
                                          random_absolute_norm(rng)),
    }
    for name, make in kinds.items():
        for _ in range(100):
            o = make()
            v = _random_vector(rng, o.dim)
            direct, lp = o.norm(v), o.lp_norm(v)
            if direct != lp:
                return False, {"kind": name, "vector": [fmt(c) for c in v],
                               "direct": fmt(direct), "lp": fmt(lp)}
    return True, {"kinds": list(kinds), "per_kind": 100}


CRITERIA = [
    (1, "elementary-norm identity", criterion_elementary),
    (2, "strong duality", criterion_duality),
    (3, "oracle equivalence", criterion_oracle),
    (4, "decomposition optimality and padding", criterion_decomposition),
    (5, "trapezoid consistency", criterion_trapezoid),
    (6, "SLTP failure to DOH construction", criterion_sltp_to_doh),
    (7, "absolute sum with N(1,1) < 2", criterion_prop31b),
    (8, "C[0,1] reproduction", criterion_c01),
    (9, "l1-sum lift chain", criterion_l1_lift),
    (10, "one-dimensional DOH probe", criterion_one_dim),
    (11, "LP epigraph soundness", criterion_epigraph),
]


def run_criterion(number: int, seed: int = DEFAULT_SEED, fault=None) -> CriterionResult:
    for num, name, fn in CRITERIA:
        if num == number:
            rng = random.Random(seed * 100 + num)
            try:
                passed, detail = fn(rng, fault)
            except LipfreeError as exc:
                passed, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
            return CriterionResult(num, name, passed, detail)
    raise KeyError(number)


def run_selftest(seed: int = DEFAULT_SEED, fault=None, timings: bool = False) -> list[CriterionResult]:
    results = []
    for num, _, _ in CRITERIA:
        t0 = time.perf_counter()
        res = run_criterion(num, seed, fault)
        if timings:
            res.detail["seconds"] = round(time.perf_counter() - t0, 2)
        results.append(res)
    return results
