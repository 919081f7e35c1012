import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lipfree.doh import doh_objective, min_violation_lp
from lipfree.errors import EpsOutOfRange, EpsTooLarge, GNotInBall, LiftMismatch, NoStrictViolation, NotUnit
from lipfree.freespace import aenorm
from lipfree.gallery import (
    CUTOFF,
    F1,
    F2,
    c01_gallery,
    l1_lift_check,
    prop31b_chain_line,
    prop31b_witness,
    split_g,
)
from lipfree.norms import AbsoluteNorm, CubeOracle, FreeSpaceOracle, l1_norm, linf_norm
from lipfree.piecewise import PiecewisePolynomial, pp_sup_norm
from lipfree.sampling import random_absolute_norm, random_molecule, random_space

from strategies import seeds

SCALAR = CubeOracle("l1", 1)
OCTAGON = AbsoluteNorm([(1, 0), (F(2, 3), F(2, 3)), (0, 1)])
HAT = PiecewisePolynomial.interpolate([(0, 0), (F(1, 2), 1), (1, 0)])


def test_prop31b_linf_scalar():
    res = prop31b_witness(SCALAR, SCALAR, linf_norm(), F(1, 4), (1,), (1,), (1,), (1,))
    assert res.norms == (1, 1, 1, 1)
    assert res.violation.objective == F(-1, 2) and res.violation.verify()
    assert doh_objective(res.violation.instance) == F(-1, 2)
    inst = res.violation.instance
    value, _ = min_violation_lp(inst.oracle, inst.E, F(1, 4), inst.y, [t.x for t in inst.terms])
    assert value <= F(-1, 2)


def test_prop31b_octagon():
    assert prop31b_chain_line(OCTAGON, 1, 1, F(1, 10)) == (5, F(27, 5))
    third = F(2, 3)
    res = prop31b_witness(SCALAR, SCALAR, OCTAGON, F(1, 10), (1,), (1,), (third,), (third,))
    assert res.violation.objective == F(-1, 5) and res.violation.verify()


def test_prop31b_l1_always_too_large():
    for eps in (F(1, 100), F(1, 4)):
        with pytest.raises(EpsTooLarge):
            prop31b_witness(SCALAR, SCALAR, l1_norm(), eps, (1,), (1,), (F(1, 2),), (F(1, 2),))


def test_prop31b_input_errors():
    with pytest.raises(NotUnit):
        prop31b_witness(SCALAR, SCALAR, linf_norm(), F(1, 4), (2,), (1,), (1,), (1,))
    with pytest.raises(NotUnit):
        prop31b_witness(SCALAR, SCALAR, linf_norm(), F(1, 4), (1,), (1,), (F(1, 2),), (F(1, 2),))
    with pytest.raises(EpsOutOfRange):
        prop31b_witness(SCALAR, SCALAR, linf_norm(), 0, (1,), (1,), (1,), (1,))
    with pytest.raises(NoStrictViolation):
        prop31b_witness(SCALAR, SCALAR, linf_norm(), F(1, 4), (1,), (1,), (1,), (0,))


@given(seeds)
def test_prop31b_reverifies_for_random_polygons(seed):
    rng = random.Random(seed)
    N = random_absolute_norm(rng)
    if N(1, 1) >= 2:
        return
    eps = min(F(1, 4), (1 - N(1, 1) / 2) / 2)
    s = 1 / N(1, 1)
    try:
        res = prop31b_witness(SCALAR, SCALAR, N, eps, (1,), (1,), (s,), (s,))
    except NoStrictViolation:
        return
    assert res.violation.verify()


@pytest.mark.parametrize("g", [F2 - F1, HAT, PiecewisePolynomial.interpolate([(0, -1), (1, 1)])])
def test_c01_admissible_gs(g):
    r = c01_gallery(F(1, 4), g)
    assert r.norms == (1, 1, 1, 1) and r.total == 4
    assert r.threshold == F(9, 2) and r.margin == F(1, 2) and r.verdict == "violation"
    b = c01_gallery(F(1, 3), g)
    assert b.total == b.threshold == 4
    assert b.verdict == "no strict violation at the boundary"
    assert doh_objective(r.instance()) == -r.margin


def test_c01_split_and_errors():
    g1, g2 = split_g(HAT)
    assert g1 + g2 == HAT
    assert g1.vanishes_on(0, F(1, 4)) and g2.vanishes_on(F(3, 4), 1)
    assert pp_sup_norm(CUTOFF) == 1
    with pytest.raises(GNotInBall):
        c01_gallery(F(1, 4), HAT * 2)
    with pytest.raises(EpsOutOfRange):
        c01_gallery(F(1), HAT)
    assert c01_gallery(F(1, 2), HAT).verdict == "no violation"


def _lift_instance(rng, zero):
    X = FreeSpaceOracle(random_space(rng, rng.randint(2, 5)))
    Y = FreeSpaceOracle(random_space(rng, rng.randint(2, 5)))
    terms, lift = [], []
    for _ in range(rng.randint(1, 3)):
        mx, my = random_molecule(rng, X.space), random_molecule(rng, Y.space)
        s = aenorm(mx) + aenorm(my)
        zi = random_molecule(rng, X.space).vector()
        terms.append(((mx * (1 / s)).vector(), (my * (1 / s)).vector(),
                      F(rng.randint(0, 6), 2), F(rng.randint(0, 6), 2), zi))
        lift.append(Y.zero() if zero else random_molecule(rng, Y.space).vector())
    if not zero:
        lift[-1] = Y.lincomb([(-1, w) for w in lift[:-1]])
    return X, Y, terms, lift


@given(seeds, st.booleans())
def test_l1_lift_chain(seed, zero):
    X, Y, terms, lift = _lift_instance(random.Random(seed), zero)
    v = l1_lift_check(X, Y, terms, lift, eps=F(1, 3))
    assert v.holds
    if zero:
        assert v.equality
    assert v.final_bound == F(2, 3) * (sum(a + b for _, _, a, b, _ in terms) + 2)


def test_l1_lift_mismatch():
    X, Y, terms, lift = _lift_instance(random.Random(7), False)
    lift = [w for w in lift]
    lift[0] = Y.lincomb([(1, lift[0]), (1, random_molecule(random.Random(1), Y.space).vector())])
    with pytest.raises(LiftMismatch):
        l1_lift_check(X, Y, terms, lift)
