"""Weight tables: the simultaneous generalized eigenstructure of a family.

A weight of the generators x_1..x_n on E is a linear functional alpha with
nonzero weight space

    E_alpha = intersection_i ker (x_i - alpha(x_i))^m,       m = dim E,

the uniform exponent m being enough by Cayley-Hamilton. For nilpotent
algebras E decomposes as the direct sum of the weight spaces and each
E_alpha is invariant; for merely solvable ones neither holds (the invariance
failure is real, see the boasso-2x2 fixture), so the table only asserts
per-space correctness there.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .lierep import Character, LieRep, character_residual, is_nilpotent
from .numeric import (
    Subspace,
    cluster_values,
    eigenvalues,
    generalized_kernel,
    intersect,
    kernel_basis,
    rank,
    subspace_sum,
)

__all__ = [
    "WeightEntry",
    "WeightTable",
    "CheckResult",
    "weight_table",
    "verify_weight_properties",
    "triangularizing_basis",
]


@dataclass(frozen=True)
class WeightEntry:
    weight: Character
    space: Subspace

    @property
    def multiplicity(self) -> int:
        return self.space.dim


@dataclass(frozen=True)
class WeightTable:
    entries: tuple

    @property
    def weights(self) -> list[Character]:
        return [e.weight for e in self.entries]

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class CheckResult:
    """One verification verdict: status is pass, fail or not applicable."""

    name: str
    status: str
    detail: str = ""
    residual: float | None = None

    @property
    def passed(self) -> bool:
        return self.status != "fail"


def weight_table(rep: LieRep) -> WeightTable:
    """All weights with their weight spaces, by sequential refinement.

    Branch over the clustered eigenvalues of each generator in turn,
    intersecting the running subspace with the ambient generalized kernel;
    leaves with nonzero space are the weights. Ambient kernels keep the
    refinement correct even when the running space is not invariant.

    The empty table is a legal result only for non-nilpotent input.
    """
    m = rep.dim_e
    branches: list[tuple[tuple, Subspace]] = [((), Subspace.full(m))]
    for x in rep.generators:
        eigs = eigenvalues(x, rep.tol)
        values = cluster_values(eigs, rep.tol.eps_cluster)
        # per-cluster spread; the kernel must absorb members this far from
        # the mean or it would contradict the clustering decision
        radii = [
            max((abs(v - lam) for v in eigs if _nearest(v, values) == j), default=0.0)
            for j, lam in enumerate(values)
        ]
        refined = []
        for partial, space in branches:
            for lam, radius in zip(values, radii):
                ker = generalized_kernel(x, lam, m, rep.tol, zero_radius=2.0 * radius)
                grown = intersect(space, ker, rep.tol)
                if grown.dim > 0:
                    refined.append((partial + (lam,), grown))
        branches = refined
        if not branches:
            break

    entries = [WeightEntry(Character(vals), _canonical_space(space)) for vals, space in branches]
    entries = _merge_close_weights(entries, rep)
    entries.sort(key=lambda e: e.weight.sort_key())
    return WeightTable(tuple(entries))


def _nearest(value: complex, means) -> int:
    return min(range(len(means)), key=lambda j: abs(value - means[j]))


def _canonical_space(space: Subspace) -> Subspace:
    # the full space gets the identity basis; downstream restrictions of
    # triangular generators then stay exactly triangular
    if space.dim == space.ambient_dim:
        return Subspace.full(space.ambient_dim)
    return space


def _merge_close_weights(entries, rep: LieRep):
    """Distinct refinement branches normally differ by more than eps_cluster
    in some coordinate; if running means drifted them together, merge."""
    merged: list[WeightEntry] = []
    for entry in entries:
        for i, kept in enumerate(merged):
            if entry.weight.distance(kept.weight) <= rep.tol.eps_cluster:
                merged[i] = WeightEntry(
                    kept.weight, subspace_sum(kept.space, entry.space, rep.tol)
                )
                break
        else:
            merged.append(entry)
    return merged


def verify_weight_properties(rep: LieRep, table: WeightTable) -> list[CheckResult]:
    """The four classical weight properties, each as a pass/fail verdict.

    (i) weights vanish on the derived subalgebra; (ii) the weight spaces
    decompose E; (iii) each generator has the single characteristic root
    alpha(x_i) on E_alpha; (iv) a simultaneous triangularizing basis exists.
    (ii)-(iv) hold for nilpotent algebras only and are marked not applicable
    otherwise.
    """
    checks = []
    nilpotent = is_nilpotent(rep)
    na = "not applicable: non-nilpotent input"

    worst = 0.0
    for entry in table.entries:
        worst = max(worst, character_residual(rep, entry.weight))
    bound = rep.tol.eps_residual * max(
        1.0, max((abs(v) for e in table.entries for v in e.weight.values), default=0.0)
    )
    checks.append(
        CheckResult(
            "weights-vanish-on-derived",
            "pass" if worst <= bound else "fail",
            f"max |alpha(derived basis)| = {worst:.3e}",
            worst,
        )
    )

    if not nilpotent:
        for name in (
            "spaces-decompose",
            "single-characteristic-root",
            "simultaneous-triangular-form",
        ):
            checks.append(CheckResult(name, "not applicable", na))
        return checks

    total = sum(e.multiplicity for e in table.entries)
    stacked = (
        np.hstack([e.space.basis for e in table.entries])
        if table.entries
        else np.zeros((rep.dim_e, 0))
    )
    independent = rank(stacked, rep.tol) == total
    ok = total == rep.dim_e and independent
    checks.append(
        CheckResult(
            "spaces-decompose",
            "pass" if ok else "fail",
            f"multiplicities sum to {total} of {rep.dim_e}; "
            f"joint basis rank {'full' if independent else 'deficient'}",
        )
    )

    # defective eigenvalues of the dense restricted matrices scatter by about
    # norm * machine_eps^(1/d), so the radius must scale with the generators
    worst = 0.0
    for entry in table.entries:
        basis = entry.space.basis
        for i, x in enumerate(rep.generators):
            restricted = basis.conj().T @ x @ basis
            values = eigenvalues(restricted, rep.tol)
            worst = max(worst, float(np.max(np.abs(values - entry.weight.values[i]), initial=0.0)))
    radius = rep.tol.eps_cluster * _gen_scale(rep)
    checks.append(
        CheckResult(
            "single-characteristic-root",
            "pass" if worst <= radius else "fail",
            f"max eigenvalue spread over weight spaces = {worst:.3e}",
            worst,
        )
    )

    worst = 0.0
    failure = ""
    for entry in table.entries:
        try:
            worst = max(worst, _triangular_residual(rep, entry))
        except InputError as exc:
            failure = str(exc)
            break
    status = "fail" if failure or worst > rep.tol.eps_residual * _gen_scale(rep) else "pass"
    checks.append(
        CheckResult(
            "simultaneous-triangular-form",
            status,
            failure or f"max on/below-diagonal entry = {worst:.3e}",
            None if failure else worst,
        )
    )
    return checks


def _gen_scale(rep: LieRep) -> float:
    return max(1.0, max(float(np.linalg.norm(g, 2)) for g in rep.generators))


def _triangular_residual(rep: LieRep, entry: WeightEntry) -> float:
    basis = triangularizing_basis(rep, entry)
    worst = 0.0
    for i, x in enumerate(rep.generators):
        shifted = x - entry.weight.values[i] * np.eye(rep.dim_e)
        t = basis.conj().T @ shifted @ basis
        worst = max(worst, float(np.abs(np.tril(t)).max()))
    return worst


def triangularizing_basis(rep: LieRep, entry: WeightEntry) -> np.ndarray:
    """Orthonormal basis of E_alpha making every x_i - alpha(x_i) strictly
    upper triangular, as columns. Engel-style: the joint kernel is the
    leading block, then the joint kernel modulo it, and so on."""
    m = rep.dim_e
    alpha = entry.weight.values
    shifted = [x - alpha[i] * np.eye(m) for i, x in enumerate(rep.generators)]
    target = entry.space

    stages: list[Subspace] = []
    current = Subspace.zero(m)
    while current.dim < target.dim:
        grown = _joint_preimage(rep, shifted, target, current)
        if grown.dim <= current.dim:
            raise InputError("input not nilpotent on weight space")
        stages.append(grown)
        current = grown

    cols: list[np.ndarray] = []
    for stage in stages:
        for vec in stage.basis.T:
            v = vec.copy()
            for c in cols:
                v -= c * (c.conj() @ v)
            norm = float(np.linalg.norm(v))
            if norm > rep.tol.eps_rank * max(1.0, float(np.linalg.norm(vec))):
                cols.append(v / norm)
    if len(cols) != target.dim:
        raise InputError("input not nilpotent on weight space")
    return np.column_stack(cols)


def _joint_preimage(rep, shifted, target: Subspace, current: Subspace) -> Subspace:
    """{v in target : (x_i - alpha_i) v in current for all i}."""
    basis = target.basis
    rows = []
    for s in shifted:
        mapped = s @ basis
        rows.append(mapped - current.project(mapped) if current.dim else mapped)
    # anchor the rank decision at the scale of the shifted generators; the
    # stacked residuals are pure rounding noise at the last Engel stage
    floor = max(float(np.linalg.norm(s, 2)) for s in shifted) if shifted else 0.0
    coeff = kernel_basis(np.vstack(rows), rep.tol, floor=floor)
    if coeff.dim == 0:
        return Subspace.zero(target.ambient_dim)
    return Subspace.spanned_by(basis @ coeff.basis, rep.tol)
