from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lipfree.errors import DegreeTooHigh, InputError
from lipfree.gallery import F1, F2
from lipfree.piecewise import PiecewisePolynomial, pp_sup_norm

coef = st.fractions(min_value=-3, max_value=3, max_denominator=5)


def test_sup_norm_examples():
    assert pp_sup_norm(F1) == 1
    assert pp_sup_norm(PiecewisePolynomial.constant(0)) == 0
    assert pp_sup_norm(PiecewisePolynomial([0, 1], [(0, 1, -1)])) == F(1, 4)


def test_construction_errors():
    with pytest.raises(InputError):
        PiecewisePolynomial([0, F(1, 2)], [(1,)])
    with pytest.raises(InputError):
        PiecewisePolynomial([0, F(1, 2), 1], [(0,), (1,)])
    with pytest.raises(DegreeTooHigh):
        PiecewisePolynomial([0, 1], [(0, 0, 0, 1)])


def test_arithmetic_and_evaluation():
    g = F2 - F1
    assert g(0) == -1 and g(1) == 1 and g(F(1, 2)) == 0
    assert (F1 * F2) == PiecewisePolynomial.constant(0)
    assert (F1 + F1)(0) == 2
    assert F1.vanishes_on(F(1, 4), 1) and not F1.vanishes_on(0, F(1, 4))


@given(coef, coef, coef, st.fractions(min_value=F(1, 10), max_value=F(9, 10), max_denominator=10))
def test_sup_norm_dominates_samples(c0, c1, c2, mid):
    f = PiecewisePolynomial([0, mid, 1], [(c0, c1, c2), (c0, c1, c2)])
    s = pp_sup_norm(f)
    grid = [F(k, 40) for k in range(41)]
    assert all(abs(f(x)) <= s for x in grid)
    # the maximum is attained at an endpoint or the vertex
    cands = [F(0), F(1)]
    if c2 != 0 and 0 <= -c1 / (2 * c2) <= 1:
        cands.append(-c1 / (2 * c2))
    assert s == max(abs(f(x)) for x in cands)


@given(st.lists(coef, min_size=3, max_size=3))
def test_linear_interpolation_sup(vals):
    f = PiecewisePolynomial.interpolate(list(zip([0, F(1, 2), 1], vals)))
    assert pp_sup_norm(f) == max(abs(v) for v in vals)
