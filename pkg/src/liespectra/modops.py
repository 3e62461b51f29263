"""Module operations: the dual (contragredient) module, the tensor product,
and restriction to flag ideals, each with a verification suite.

The dual module acts on linear functionals by composition, f -> f . x, whose
matrix in the dual basis is the plain transpose. No conjugation: over the
complex field composition is transpose, and conjugating would conjugate the
spectrum. Transposition reverses matrix products, so the transposed
generators are closed under the opposite-product commutator with negated
structure constants; as a set of matrices they form a valid algebra and go
straight through build_rep.

The tensor product of two modules carries the direct product of the two
algebras: generators x (x) 1 for the left factor followed by 1 (x) y for the
right one. Kronecker index convention is left-factor-major, (a1, a2) ->
a1 * m2 + a2, which is exactly what np.kron produces.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, LieSpectraError
from .lierep import (
    Character,
    LieRep,
    bracket,
    build_rep,
    canonical_flag,
    derived_subalgebra,
    is_nilpotent,
    restrict_to_ideal,
    show_characters,
)
from .numeric import Subspace
from .spectra import SpectrumReport, character_set_equal, joint_spectrum
from .weights import CheckResult, weight_table

__all__ = [
    "ProductCharacter",
    "character_product",
    "dual_rep",
    "tensor_rep",
    "verify_ideal_restrictions",
    "verify_dual_spectra",
    "verify_tensor_product",
    "verify_module_ops",
]


@dataclass(frozen=True)
class ProductCharacter:
    """A character of a direct product, kept as its two factor characters."""

    left: Character
    right: Character

    @property
    def joint(self) -> Character:
        """Concatenation, a character of the product algebra (left coordinates
        first, matching tensor_rep's generator order)."""
        return Character(self.left.values + self.right.values)


def character_product(left_chars, right_chars) -> list[ProductCharacter]:
    """Cartesian product of two character sets, left-major sorted."""
    key = lambda c: c.sort_key()
    return [
        ProductCharacter(a, b)
        for a in sorted(left_chars, key=key)
        for b in sorted(right_chars, key=key)
    ]


def dual_rep(rep: LieRep) -> LieRep:
    """Contragredient module: the algebra of transposed generators on E*.

    Generator order is preserved, so characters of the dual live in the same
    coordinates. Applying this twice gives back the original matrices.
    """
    try:
        return build_rep([g.T.copy() for g in rep.generators], rep.tol)
    except InputError as exc:
        # transposes of a closed family are always closed; getting here means
        # the bracket convention itself is broken, not the input
        raise LieSpectraError(f"transposed generators failed closure: {exc}") from exc


def tensor_rep(left: LieRep, right: LieRep) -> LieRep:
    """Direct product of the algebras acting on the tensor product module.

    n = n1 + n2 generators on a space of dimension m1 * m2; the left
    operand's tolerance profile wins.
    """
    eye_l = np.eye(left.dim_e, dtype=np.complex128)
    eye_r = np.eye(right.dim_e, dtype=np.complex128)
    gens = [np.kron(a, eye_r) for a in left.generators]
    gens += [np.kron(eye_l, b) for b in right.generators]

    # the two factors must commute; a nonzero residual here is a wiring bug
    # in the Kronecker layout, not a property of the input
    worst = 0.0
    for a in gens[: left.n]:
        for b in gens[left.n :]:
            worst = max(worst, float(np.max(np.abs(bracket(a, b)), initial=0.0)))
    scale = max(
        1.0,
        max(float(np.abs(a).max()) for a in left.generators)
        * max(float(np.abs(b).max()) for b in right.generators),
    )
    if worst > left.tol.eps_residual * scale:
        raise LieSpectraError(f"tensor factors do not commute (residual {worst:.3e})")
    return build_rep(gens, left.tol)


def _project(chars, projection: np.ndarray) -> list[Character]:
    return [Character(tuple(projection @ c.as_array())) for c in chars]


def _set_gap(left, right) -> float | None:
    """Largest sup-norm distance from a member of either set to the other."""
    if not left or not right:
        return None
    out = max(min(a.distance(b) for b in right) for a in left)
    back = max(min(b.distance(a) for a in left) for b in right)
    return max(out, back)


def verify_ideal_restrictions(rep: LieRep, *, report: SpectrumReport | None = None) -> list[CheckResult]:
    """Verdicts for restriction to every flag-prefix ideal.

    Checks that the weights of each prefix ideal are exactly the coordinate
    restrictions of the parent's weights, that every spectral family of the
    prefix is the coordinate projection of the parent's, and that prefixes
    inside the derived subalgebra carry only the zero weight.
    """
    if not is_nilpotent(rep):
        raise InputError("ideal-restriction verification requires a nilpotent representation")
    eps = rep.tol.eps_cluster
    if report is None:
        report = joint_spectrum(rep)
    flag = canonical_flag(rep)
    parent_weights = weight_table(rep).weights
    der = derived_subalgebra(rep)

    weight_bad: list[int] = []
    spectrum_bad: list[int] = []
    zero_bad: list[int] = []
    zero_seen = 0
    for k in range(1, rep.n + 1):
        sub, projection = restrict_to_ideal(rep, k, flag)
        sub_weights = weight_table(sub).weights
        if not character_set_equal(_project(parent_weights, projection), sub_weights, eps):
            weight_bad.append(k)

        sub_report = joint_spectrum(sub)
        ok = character_set_equal(_project(report.sp, projection), sub_report.sp, eps)
        for j in range(k + 1):
            ok = ok and character_set_equal(
                _project(report.delta[j], projection), sub_report.delta[j], eps
            )
            ok = ok and character_set_equal(
                _project(report.pi[j], projection), sub_report.pi[j], eps
            )
        if not ok:
            spectrum_bad.append(k)

        prefix_span = Subspace.spanned_by(flag.basis_change[:, :k], rep.tol)
        if der.dim > 0 and der.contains_subspace(prefix_span, rep.tol):
            zero_seen += 1
            zero = Character((0.0,) * k)
            if len(sub_weights) != 1 or sub_weights[0].distance(zero) > eps:
                zero_bad.append(k)

    checks = [
        CheckResult(
            "ideal-weight-restriction",
            "fail" if weight_bad else "pass",
            f"prefixes {weight_bad} disagree" if weight_bad else f"all {rep.n} flag prefixes agree",
        ),
        CheckResult(
            "ideal-spectrum-projection",
            "fail" if spectrum_bad else "pass",
            f"prefixes {spectrum_bad} disagree"
            if spectrum_bad
            else f"sp and both Slodkowski families project along all {rep.n} prefixes",
        ),
    ]
    if zero_seen == 0:
        checks.append(
            CheckResult(
                "derived-ideal-zero-weight",
                "not applicable",
                "no flag prefix lies inside the derived subalgebra",
            )
        )
    else:
        checks.append(
            CheckResult(
                "derived-ideal-zero-weight",
                "fail" if zero_bad else "pass",
                f"prefixes {zero_bad} disagree"
                if zero_bad
                else f"{zero_seen} prefix(es) inside the derived subalgebra carry only the zero weight",
            )
        )
    return checks


def verify_dual_spectra(rep: LieRep, *, report: SpectrumReport | None = None) -> list[CheckResult]:
    """One verdict: the dual module has the same sp and the same Slodkowski
    sets of both families at every level."""
    if not is_nilpotent(rep):
        raise InputError("dual-spectra verification requires a nilpotent representation")
    eps = rep.tol.eps_cluster
    if report is None:
        report = joint_spectrum(rep)
    dual_report = joint_spectrum(dual_rep(rep))

    ok = character_set_equal(report.sp, dual_report.sp, eps)
    for j in range(rep.n + 1):
        ok = ok and character_set_equal(report.delta[j], dual_report.delta[j], eps)
        ok = ok and character_set_equal(report.pi[j], dual_report.pi[j], eps)
    return [
        CheckResult(
            "dual-spectra-match",
            "pass" if ok else "fail",
            f"sp = {show_characters(report.sp)}, dual sp = {show_characters(dual_report.sp)}",
            residual=_set_gap(report.sp, dual_report.sp),
        )
    ]


def verify_tensor_product(
    left: LieRep,
    right: LieRep,
    *,
    left_report: SpectrumReport | None = None,
    right_report: SpectrumReport | None = None,
) -> list[CheckResult]:
    """Verdicts for the tensor-product module.

    All three spectral families of the product algebra must equal the
    Cartesian product of the factor spectra, and each product weight space
    must have the product of the factor multiplicities.
    """
    if not (is_nilpotent(left) and is_nilpotent(right)):
        raise InputError("tensor verification requires nilpotent representations")
    eps = left.tol.eps_cluster
    if left_report is None:
        left_report = joint_spectrum(left)
    if right_report is None:
        right_report = joint_spectrum(right)

    product = tensor_rep(left, right)
    product_report = joint_spectrum(product)
    expected = [p.joint for p in character_product(left_report.sp, right_report.sp)]

    ok = character_set_equal(product_report.sp, expected, eps)
    for j in range(product.n + 1):
        ok = ok and character_set_equal(product_report.delta[j], expected, eps)
        ok = ok and character_set_equal(product_report.pi[j], expected, eps)
    checks = [
        CheckResult(
            "tensor-spectrum-product",
            "pass" if ok else "fail",
            f"sp = {show_characters(product_report.sp)}, factor product = {show_characters(expected)}",
            residual=_set_gap(product_report.sp, expected),
        )
    ]

    left_table = weight_table(left)
    right_table = weight_table(right)
    product_table = weight_table(product)
    mult_ok = len(product_table) == len(left_table) * len(right_table)
    for a in left_table.entries:
        for b in right_table.entries:
            joint = Character(a.weight.values + b.weight.values)
            match = [e for e in product_table.entries if e.weight.distance(joint) <= eps]
            if len(match) != 1 or match[0].multiplicity != a.multiplicity * b.multiplicity:
                mult_ok = False
    checks.append(
        CheckResult(
            "tensor-weight-multiplicity",
            "pass" if mult_ok else "fail",
            f"{len(product_table)} product weights from {len(left_table)} x {len(right_table)} factors",
        )
    )
    return checks


def verify_module_ops(rep: LieRep, other: LieRep | None = None) -> list[CheckResult]:
    """The full module-operation suite against `rep` (tensored with `other`,
    defaulting to itself): flag-ideal restrictions, dual spectra, tensor
    spectra and multiplicities."""
    report = joint_spectrum(rep)
    checks = verify_ideal_restrictions(rep, report=report)
    checks += verify_dual_spectra(rep, report=report)
    if other is None or other is rep:
        checks += verify_tensor_product(rep, rep, left_report=report, right_report=report)
    else:
        checks += verify_tensor_product(rep, other, left_report=report)
    return checks
