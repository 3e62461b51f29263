"""Dual and tensor constructions and their spectral identities.

The dual uses plain transposes (no conjugation): the transpose is an
anti-homomorphism for our bracket, and the transposed generator set is
closed again. A complex-entry oracle below would catch an accidental
conjugation immediately.
"""

import numpy as np
import pytest

from liespectra.errors import InputError
from liespectra.fixtures import fixture_rep
from liespectra.lierep import Character, bracket, build_rep
from liespectra.modops import (
    ProductCharacter,
    character_product,
    dual_rep,
    tensor_rep,
    verify_dual_spectra,
    verify_ideal_restrictions,
    verify_module_ops,
    verify_tensor_product,
)
from liespectra.spectra import character_set_equal, joint_spectrum
from liespectra.weights import weight_table

MATCH_EPS = 1e-9


def sp_set(rep):
    return joint_spectrum(rep).sp


def assert_all_pass(checks):
    assert checks
    assert all(c.status in ("pass", "not applicable") for c in checks), [
        (c.name, c.status, c.detail) for c in checks if c.status == "fail"
    ]


def test_transpose_is_anti_homomorphism():
    rep = fixture_rep("heisenberg-3")
    for a in rep.generators:
        for b in rep.generators:
            assert np.allclose(bracket(a.T, b.T), -bracket(a, b).T, atol=1e-12)


def test_dual_is_an_involution():
    for name in ("heisenberg-3", "boasso-2x2", "strict-upper-5-3-2"):
        rep = fixture_rep(name)
        back = dual_rep(dual_rep(rep))
        for a, b in zip(rep.generators, back.generators):
            assert np.array_equal(a, b)


def test_dual_of_complex_entries_is_not_conjugated():
    # abelian, hence nilpotent: the dual spectrum must EQUAL sp; an
    # accidental conjugate-transpose would flip it to {-i, -2i}
    rep = build_rep([np.array([[1j, 1.0], [0.0, 2j]])])
    expected = [Character((1j,)), Character((2j,))]
    assert character_set_equal(sp_set(rep), expected, MATCH_EPS)
    assert character_set_equal(sp_set(dual_rep(rep)), expected, MATCH_EPS)


def test_dual_spectra_match_on_nilpotent():
    for name in ("heisenberg-3", "diag-2", "strict-upper-4-3-8"):
        rep = fixture_rep(name)
        assert character_set_equal(sp_set(dual_rep(rep)), sp_set(rep), MATCH_EPS)
        assert_all_pass(verify_dual_spectra(rep))


def test_dual_of_solvable_pair_mirrors():
    # outside the nilpotent class the identity genuinely fails: the dual
    # spectrum of the solvable pair is the reflection of the original
    rep = fixture_rep("boasso-2x2")
    original = [Character((0.0, 0.5)), Character((0.0, -1.5))]
    mirrored = [Character((0.0, -0.5)), Character((0.0, 1.5))]
    assert character_set_equal(sp_set(rep), original, MATCH_EPS)
    assert character_set_equal(sp_set(dual_rep(rep)), mirrored, MATCH_EPS)
    assert not character_set_equal(sp_set(dual_rep(rep)), original, MATCH_EPS)


def test_tensor_generators_kronecker_layout():
    rep = fixture_rep("diag-2")
    product = tensor_rep(rep, rep)
    assert product.n == 2
    assert product.dim_e == 4
    # left factor major: (a1, a2) -> a1 * m2 + a2
    assert np.allclose(product.generators[0], np.diag([1.0, 1.0, 2.0, 2.0]))
    assert np.allclose(product.generators[1], np.diag([1.0, 2.0, 1.0, 2.0]))


def test_tensor_factors_commute():
    left = fixture_rep("heisenberg-3")
    right = fixture_rep("diag-2")
    product = tensor_rep(left, right)
    for i in range(left.n):
        for j in range(left.n, left.n + right.n):
            assert np.allclose(
                bracket(product.generators[i], product.generators[j]), 0, atol=1e-12
            )


def test_tensor_spectrum_is_cartesian_product():
    rep = fixture_rep("diag-2")
    product = tensor_rep(rep, rep)
    expected = [
        Character((1.0, 1.0)),
        Character((1.0, 2.0)),
        Character((2.0, 1.0)),
        Character((2.0, 2.0)),
    ]
    assert character_set_equal(sp_set(product), expected, MATCH_EPS)


def test_tensor_weight_multiplicities_multiply():
    product = tensor_rep(fixture_rep("heisenberg-3"), fixture_rep("diag-2"))
    table = weight_table(product)
    assert len(table) == 2  # {0} x {1, 2}
    assert sorted(e.multiplicity for e in table.entries) == [3, 3]
    values = {tuple(np.round(np.asarray(e.weight.values).real, 9)) for e in table.entries}
    assert values == {(0.0, 0.0, 0.0, 1.0), (0.0, 0.0, 0.0, 2.0)}


def test_character_product_order_and_joint():
    left = [Character((1.0,)), Character((2.0,))]
    right = [Character((10.0,)), Character((20.0,))]
    pairs = character_product(left, right)
    assert [p.joint.values for p in pairs] == [
        (1.0, 10.0),
        (1.0, 20.0),
        (2.0, 10.0),
        (2.0, 20.0),
    ]
    one = ProductCharacter(Character((1.0, 2.0)), Character((3.0,)))
    assert one.joint.values == (1.0, 2.0, 3.0)


def test_ideal_restriction_suite_heisenberg():
    checks = verify_ideal_restrictions(fixture_rep("heisenberg-3"))
    assert_all_pass(checks)
    names = {c.name for c in checks}
    assert "ideal-weight-restriction" in names
    assert "ideal-spectrum-projection" in names
    # the center sits inside the derived subalgebra, so its only weight is 0
    zero_checks = [c for c in checks if c.name == "derived-ideal-zero-weight"]
    assert zero_checks and zero_checks[0].status == "pass"


def test_tensor_product_suite():
    rep = fixture_rep("diag-2")
    checks = verify_tensor_product(rep, rep)
    assert_all_pass(checks)
    names = {c.name for c in checks}
    assert "tensor-spectrum-product" in names
    assert "tensor-weight-multiplicity" in names


def test_module_ops_bundle_on_mixed_pair():
    checks = verify_module_ops(fixture_rep("heisenberg-3"), fixture_rep("diag-2"))
    assert_all_pass(checks)


def test_module_ops_need_nilpotent_input():
    rep = fixture_rep("boasso-2x2")
    with pytest.raises(InputError):
        verify_module_ops(rep)
    with pytest.raises(InputError):
        verify_ideal_restrictions(rep)
    with pytest.raises(InputError):
        verify_dual_spectra(rep)


def test_tensor_construction_works_beyond_nilpotent():
    # the construction itself is generic; only the verification suite
    # insists on nilpotency
    product = tensor_rep(fixture_rep("boasso-2x2"), fixture_rep("diag-2"))
    assert product.n == 3
    assert product.dim_e == 4
    with pytest.raises(InputError):
        verify_tensor_product(fixture_rep("boasso-2x2"), fixture_rep("diag-2"))
