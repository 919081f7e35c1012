from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from lipfree.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, LinExpr, LPModel, linprog


def test_textbook_max():
    # max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6)
    res = linprog([-3, -5], A_ub=[[1, 0], [0, 2], [3, 2]], b_ub=[4, 12, 18])
    assert res.status == OPTIMAL
    assert res.value == -36
    assert list(res.x) == [2, 6]


def test_equality_and_free_variables():
    res = linprog([1, 0], A_eq=[[1, -1]], b_eq=[Fraction(-5, 2)], A_ub=[[0, 1]], b_ub=[1], free=[0])
    assert res.status == OPTIMAL
    assert res.x[0] == Fraction(-5, 2) and res.value == Fraction(-5, 2)


def test_infeasible_and_unbounded():
    assert linprog([1], A_ub=[[1]], b_ub=[-1]).status == INFEASIBLE
    assert linprog([-1], A_ub=[[-1]], b_ub=[0]).status == UNBOUNDED


def test_degenerate_problem_terminates():
    # a classic cycling example for the largest-coefficient rule
    c = [Fraction(-3, 4), 150, Fraction(-1, 50), 6]
    A = [[Fraction(1, 4), -60, Fraction(-1, 25), 9], [Fraction(1, 2), -90, Fraction(-1, 50), 3], [0, 0, 1, 0]]
    res = linprog(c, A_ub=A, b_ub=[0, 0, 1])
    assert res.status == OPTIMAL
    assert res.value == Fraction(-1, 20)


def test_model_builder_abs_epigraph():
    m = LPModel()
    x = m.add_var("x", free=True)
    t = m.add_var("t")
    m.add_eq(x, Fraction(-7, 3))
    m.add_ge(t - x, 0)
    m.add_ge(t + x, 0)
    res = m.minimize(LinExpr() + t)
    assert res.status == OPTIMAL and res.value == Fraction(7, 3)


small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@given(st.lists(st.tuples(small, small, small), min_size=1, max_size=4), small, small)
def test_box_lp_matches_vertex_enumeration(rows, c0, c1):
    """min c.x over {0 <= x <= 3, a.x <= b}: compare with the best feasible grid vertex."""
    A = [[a, b] for a, b, _ in rows] + [[1, 0], [0, 1]]
    b = [r for _, _, r in rows] + [3, 3]
    res = linprog([c0, c1], A_ub=A, b_ub=b)
    # feasible vertices: intersections of pairs of constraint lines (with x>=0, y>=0)
    lines = [(r[0], r[1], rhs) for r, rhs in zip(A, b)] + [(-1, 0, 0), (0, -1, 0)]
    best = None
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            a1, b1, r1 = lines[i]
            a2, b2, r2 = lines[j]
            det = a1 * b2 - a2 * b1
            if det == 0:
                continue
            x = (r1 * b2 - r2 * b1) / det
            y = (a1 * r2 - a2 * r1) / det
            if x >= 0 and y >= 0 and all(p * x + q * y <= s for p, q, s in lines[:-2]):
                v = c0 * x + c1 * y
                best = v if best is None else min(best, v)
    if best is None:
        assert res.status == INFEASIBLE
    else:
        assert res.status == OPTIMAL and res.value == best
