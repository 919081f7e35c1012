import random
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from lipfree.errors import InvalidMolecule, SupportTooLarge, TargetBelowNorm, ZeroMolecule
from lipfree.freespace import Molecule, MoleculeDecomposition, aenorm, aenorm_oracle, optimal_decomposition
from lipfree.metric import standard_space
from lipfree.norms import FreeSpaceOracle
from lipfree.sampling import random_molecule

from strategies import seeds, space_and_molecule, spaces


@pytest.fixture
def ud3():
    return standard_space("uniform_discrete", 3)


def test_molecule_must_sum_to_zero(ud3):
    with pytest.raises(InvalidMolecule):
        Molecule(ud3, {"p1": 1})
    with pytest.raises(InvalidMolecule):
        Molecule(ud3, {"zz": 1, "0": -1})


def test_vector_round_trip(ud3):
    mol = Molecule(ud3, {"p1": 2, "p2": -1, "0": -1})
    assert mol.vector() == (2, -1)
    assert Molecule.from_vector(ud3, mol.vector()) == mol


def test_uniform_discrete_example(ud3):
    mol = Molecule(ud3, {"p1": 2, "p2": -1, "0": -1})
    assert aenorm(mol) == 2
    assert aenorm_oracle(mol) == 2
    dec = optimal_decomposition(mol)
    assert sorted(dec.terms) == [(1, "p1", "0"), (1, "p1", "p2")]
    assert dec.cost == 2 and dec.molecule() == mol


def test_zero_molecule(ud3):
    zero = Molecule(ud3, {})
    assert aenorm(zero) == 0 and aenorm_oracle(zero) == 0
    with pytest.raises(ZeroMolecule):
        optimal_decomposition(zero)


def test_elementary_decomposition():
    line = standard_space("line", [0, 1, 3])
    dec = optimal_decomposition(Molecule.elementary(line, "p2", "0"))
    assert dec.terms == ((1, "p2", "0"),) and dec.cost == 3


def test_padding_hits_target_cost():
    line = standard_space("line", [0, 1, 2])
    mol = Molecule.elementary(line, "p2", "0")
    dec = optimal_decomposition(mol, target_cost=3)
    assert dec.cost == 3 and dec.molecule() == mol and dec.is_valid()
    with pytest.raises(TargetBelowNorm):
        optimal_decomposition(mol, target_cost=1)


def test_oracle_support_limit():
    sp = standard_space("uniform_discrete", 6)
    mol = Molecule(sp, {"0": 5, "p1": -1, "p2": -1, "p3": -1, "p4": -1, "p5": -1})
    with pytest.raises(SupportTooLarge):
        aenorm_oracle(mol)


def test_decomposition_validity_flags_bad_terms(ud3):
    assert not MoleculeDecomposition(ud3, ((Fraction(-1), "p1", "0"),)).is_valid()


@given(spaces(2, 7))
def test_elementary_norm_is_distance(space):
    for p in space.points:
        for q in space.points:
            if p != q:
                assert aenorm(Molecule.elementary(space, p, q)) == space.d(p, q)


@given(space_and_molecule(), st.fractions(min_value=-4, max_value=4, max_denominator=5))
def test_homogeneity(sm, c):
    _, mol = sm
    assert aenorm(mol * c) == abs(c) * aenorm(mol)


@given(seeds)
def test_triangle_inequality_and_definiteness(seed):
    rng = random.Random(seed)
    from lipfree.sampling import random_space
    space = random_space(rng, rng.randint(2, 6))
    mu, nu = random_molecule(rng, space), random_molecule(rng, space)
    assert aenorm(mu + nu) <= aenorm(mu) + aenorm(nu)
    assert aenorm(mu) > 0
    assert aenorm(mu - mu) == 0


@given(space_and_molecule(max_pos=4, max_neg=4))
def test_oracle_agrees(sm):
    _, mol = sm
    assert aenorm(mol) == aenorm_oracle(mol)


@given(space_and_molecule(), st.fractions(min_value=0, max_value=3, max_denominator=6))
def test_decomposition_reconstructs_at_norm_cost(sm, extra):
    _, mol = sm
    dec = optimal_decomposition(mol)
    assert dec.molecule() == mol and dec.cost == aenorm(mol)
    padded = optimal_decomposition(mol, aenorm(mol) + extra)
    assert padded.molecule() == mol and padded.cost == aenorm(mol) + extra


@given(space_and_molecule(3, 6))
def test_relay_points_never_help(sm):
    """Flows through every point of the space cost no less than the direct transport."""
    space, mol = sm
    assume(len(mol.weights) < len(space.points))
    assert FreeSpaceOracle(space).lp_norm(mol.vector()) == aenorm(mol)
