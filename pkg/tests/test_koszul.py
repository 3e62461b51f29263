"""Chain complex construction, exactness and homology oracles.

The degree-2 boundary of the solvable 2x2 pair is small enough to check
entry by entry against the hand-derived block form.
"""

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from liespectra.errors import InputError
from liespectra.fixtures import fixture_rep
from liespectra.koszul import (
    boundary_matrix,
    chain_dim,
    complex_scale,
    homology_dims,
    sigma_p_membership,
    verify_complex,
)
from liespectra.lierep import Character, character_space

COMPLEX_EPS = 1e-10


def test_chain_dims_are_binomial():
    rep = fixture_rep("heisenberg-3")
    assert [chain_dim(rep, p) for p in range(4)] == [3, 9, 9, 3]
    pair = fixture_rep("boasso-2x2")
    assert [chain_dim(pair, p) for p in range(3)] == [2, 4, 2]


def test_boundary_shapes():
    rep = fixture_rep("heisenberg-3")
    for p in (1, 2, 3):
        d = boundary_matrix(rep, Character((0.0, 0.0, 0.0)), p)
        assert d.matrix.shape == (chain_dim(rep, p - 1), chain_dim(rep, p))


def test_degree_two_boundary_blocks():
    # d2(e . y^x) = (Y e) . x - ((X - lam) e) . y + e . y, lam = f(x) = 1/2;
    # rows are grouped by wedge slot (y first), columns by the module basis
    rep = fixture_rep("boasso-2x2")
    d2 = boundary_matrix(rep, Character((0.0, 0.5)), 2).matrix
    assert np.allclose(d2[:2], [[1.5, -0.5], [-0.5, 1.5]], atol=1e-12)
    assert np.allclose(d2[2:], [[1.0, 1.0], [-1.0, -1.0]], atol=1e-12)


def test_composite_vanishes_on_fixtures():
    for name, f in [
        ("boasso-2x2", Character((0.0, -1.5))),
        ("heisenberg-3", Character((0.0, 0.0, 0.0))),
        ("strict-upper-5-3-4", Character((0.0, 0.0, 0.0))),
    ]:
        rep = fixture_rep(name)
        assert verify_complex(rep, f) <= COMPLEX_EPS * complex_scale(rep, f)


def test_homology_oracles():
    pair = fixture_rep("boasso-2x2")
    assert homology_dims(pair, Character((0.0, 0.5))) == (1, 1, 0)
    assert homology_dims(pair, Character((0.0, -1.5))) == (0, 1, 1)
    assert homology_dims(pair, Character((0.0, -0.5))) == (0, 0, 0)
    assert homology_dims(fixture_rep("heisenberg-3"), Character((0.0, 0.0, 0.0))) == (
        1,
        2,
        2,
        1,
    )
    single = fixture_rep("diag-2")
    assert homology_dims(single, Character((1.0,))) == (1, 1)
    assert homology_dims(single, Character((3.0,))) == (0, 0)


def test_membership_matches_dims():
    rep = fixture_rep("boasso-2x2")
    f = Character((0.0, 0.5))
    assert sigma_p_membership(rep, f, 0)
    assert sigma_p_membership(rep, f, 1)
    assert not sigma_p_membership(rep, f, 2)


def test_degree_bounds():
    rep = fixture_rep("diag-2")
    # outside 1..n the boundary is the zero map, not an error
    assert boundary_matrix(rep, Character((1.0,)), 0).matrix.shape == (0, 2)
    assert boundary_matrix(rep, Character((1.0,)), 2).matrix.shape == (2, 0)
    with pytest.raises(InputError):
        sigma_p_membership(rep, Character((1.0,)), 5)


def test_non_character_is_rejected():
    # (1, 0) does not vanish on the derived subalgebra, so no complex exists
    rep = fixture_rep("boasso-2x2")
    with pytest.raises(InputError):
        homology_dims(rep, Character((1.0, 0.0)))


def test_scale_reflects_input_size():
    rep = fixture_rep("boasso-2x2")
    small = complex_scale(rep, Character((0.0, 0.0)))
    large = complex_scale(rep, Character((0.0, 100.0)))
    assert 0 < small < large


@seed(5)
@settings(deadline=None, max_examples=30)
@given(
    st.complex_numbers(max_magnitude=10.0, allow_nan=False, allow_infinity=False)
)
def test_euler_characteristic_vanishes(t):
    # chi = sum (-1)^p dim H_p is 0 for every admissible character
    rep = fixture_rep("boasso-2x2")
    basis = character_space(rep)
    f = Character(tuple(basis @ np.array([t])))
    dims = homology_dims(rep, f)
    assert sum((-1) ** p * h for p, h in enumerate(dims)) == 0
    assert verify_complex(rep, f) <= COMPLEX_EPS * complex_scale(rep, f)
