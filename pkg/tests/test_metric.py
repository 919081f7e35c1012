import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lipfree.codec import codec_read, codec_write
from lipfree.errors import (
    IdentityViolation,
    InvalidParams,
    ParseError,
    ShapeError,
    SymmetryViolation,
    TriangleViolation,
    UnknownBase,
)
from lipfree.metric import FiniteMetricSpace, build_metric_space, standard_space

from strategies import seeds, spaces


def test_uniform_three_points_valid():
    sp = build_metric_space(["0", "a", "b"], "0", [[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    assert sp.d("a", "b") == 1
    assert sp.non_base == ("a", "b")


def test_triangle_violation_names_the_route():
    with pytest.raises(TriangleViolation) as exc:
        build_metric_space(["a", "b", "c"], "a", [[0, 5, 1], [5, 0, 1], [1, 1, 0]])
    assert (exc.value.p, exc.value.q, exc.value.r) == ("a", "c", "b")


def test_symmetry_violation():
    with pytest.raises(SymmetryViolation) as exc:
        build_metric_space(["a", "b"], "a", [[0, 1], [2, 0]])
    assert (exc.value.p, exc.value.q) == ("a", "b")


def test_identity_violations():
    with pytest.raises(IdentityViolation):
        build_metric_space(["a", "b"], "a", [[1, 1], [1, 0]])
    with pytest.raises(IdentityViolation):
        build_metric_space(["a", "b"], "a", [[0, 0], [0, 0]])
    with pytest.raises(IdentityViolation):
        build_metric_space(["a", "b"], "a", [[0, -1], [-1, 0]])


def test_shape_and_base_errors():
    with pytest.raises(UnknownBase):
        build_metric_space(["a", "b"], "z", [[0, 1], [1, 0]])
    with pytest.raises(ShapeError):
        build_metric_space(["a", "b"], "a", [[0, 1]])
    with pytest.raises(ShapeError):
        build_metric_space(["a", "a"], "a", [[0, 1], [1, 0]])


def test_immutable(ud4):
    with pytest.raises(AttributeError):
        ud4.base = "p1"


def test_standard_spaces():
    ud = standard_space("uniform_discrete", 4)
    assert all(ud.d(p, q) == 1 for p in ud.points for q in ud.points if p != q)
    line = standard_space("line", [0, 1, 3])
    assert line.d("0", "p2") == 3
    linf = standard_space("linf_points", [(0, 0), (1, 2), (3, 1)])
    assert linf.d("p1", "p2") == 2
    l1 = standard_space("l1_points", [(0, 0), (1, 2), (3, 1)])
    assert l1.d("p1", "p2") == 3


@pytest.mark.parametrize("kind,params", [("uniform_discrete", 1), ("line", [0, 0]), ("line", [1]),
                                         ("l1_points", [(0,), (0, 1)]), ("nope", 3)])
def test_standard_space_bad_params(kind, params):
    with pytest.raises(InvalidParams):
        standard_space(kind, params)


def test_codec_round_trip_and_rationals():
    sp = standard_space("uniform_discrete", 3)
    assert codec_read(codec_write(sp)) == sp
    sp2 = codec_read(b'{"points": ["0", "a"], "base": "0", "dist": [["0", "3/2"], ["3/2", "0"]]}')
    assert sp2.d("0", "a") == Fraction(3, 2)
    with pytest.raises(ParseError):
        codec_read(b'{"points": ["0", "a"], "base": "0", "dist": [["0", "1/0"], ["1/0", "0"]]}')


def test_integer_matrix_scales_exactly():
    sp = standard_space("line", [0, Fraction(1, 2), Fraction(4, 3)])
    scale, D = sp.integer_matrix()
    assert scale == 6
    assert all(Fraction(D[i][j], scale) == sp.dist[i][j] for i in range(3) for j in range(3))


@given(st.sampled_from(["uniform_discrete", "line", "l1_points", "linf_points"]), seeds)
def test_standard_space_outputs_validate(kind, seed):
    rng = random.Random(seed)
    n = rng.randint(2, 6)
    if kind == "uniform_discrete":
        params = n
    elif kind == "line":
        params = rng.sample(range(-20, 20), n)
    else:
        pts = set()
        while len(pts) < n:
            pts.add((rng.randint(-3, 3), rng.randint(-3, 3)))
        params = sorted(pts)
    sp = standard_space(kind, params)
    assert build_metric_space(sp.points, sp.base, sp.dist) == sp


@given(spaces(3, 6), seeds, st.sampled_from(["up", "down", "asym"]))
def test_single_entry_corruption_caught(space, seed, how):
    """Push one off-diagonal entry past its triangle bound, below zero, or out of symmetry."""
    rng = random.Random(seed)
    n = len(space.points)
    i, j = rng.sample(range(n), 2)
    rows = [list(r) for r in space.dist]
    if how == "up":
        bound = min(rows[i][k] + rows[k][j] for k in range(n) if k not in (i, j))
        rows[i][j] = rows[j][i] = bound + Fraction(1, 7)
    elif how == "down":
        rows[i][j] = rows[j][i] = -Fraction(rng.randint(0, 3))
    else:
        rows[i][j] += Fraction(1, 5)
    with pytest.raises((TriangleViolation, IdentityViolation, SymmetryViolation)):
        FiniteMetricSpace(space.points, space.base, rows)
