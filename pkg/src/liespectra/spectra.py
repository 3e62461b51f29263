"""Joint spectra Sp, sigma_{delta,k}, sigma_{pi,k} via candidate recursion.

The joint spectrum of generators x_1..x_n acting on E is the set of
characters f with nonvanishing homology for the boundary complex of koszul;
Sigma_p collects the characters with H_p != 0 and the Slodkowski sets are
the partial unions

    sigma_{delta,k} = Sigma_0 | ... | Sigma_k,
    sigma_{pi,k}    = Sigma_k | ... | Sigma_n.

Everything reduces to a finite search: along an ideal flag with last basis
vector x_j, the boundary complex at a character beta splits through
operators L_p(beta) = T_p - beta(x_j) I on E (x) /\\^p L'; if every L_p(beta)
is invertible a homotopy operator exists and beta is off the spectrum, and
the restriction of beta to the ideal L' must itself be spectral there. So
candidate values for beta(x_j) are the eigenvalues of the finitely many T_p,
and the recursion over flag prefixes terminates in a finite superset of Sp
which honest homology evaluation then filters. For nilpotent algebras this
is backed by the classical theory (the spectrum equals the weight set); for
the solvable chain fixtures it reproduces the known counterexample and is
otherwise validated by random off-candidate vanishing checks.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import InputError, VerificationError
from .koszul import homology_dims, wedge_basis
from .lierep import (
    Character,
    IdealFlag,
    LieRep,
    canonical_flag,
    character_residual,
    character_space,
    is_nilpotent,
    rep_in_basis,
    show_characters,
)
from .numeric import cluster_values, eigenvalues
from .weights import CheckResult, weight_table

__all__ = [
    "SpectrumReport",
    "extension_operators",
    "spectrum_candidates",
    "joint_spectrum",
    "slodkowski",
    "verify_main_theorems",
    "cluster_characters",
    "character_set_leq",
    "character_set_equal",
]


@dataclass(frozen=True)
class SpectrumReport:
    """Joint spectrum and everything it was derived from.

    candidates pairs each enumerated character with its homology dimensions;
    sigma_p[p] is the character tuple of Sigma_p; delta[k] and pi[k] are the
    two Slodkowski families; sp is the union of all Sigma_p.
    """

    candidates: tuple
    sigma_p: tuple
    sp: tuple
    delta: tuple
    pi: tuple

    @property
    def n(self) -> int:
        return len(self.sigma_p) - 1


def _sorted_characters(chars) -> tuple:
    return tuple(sorted(chars, key=lambda c: c.sort_key()))


def cluster_characters(chars, eps: float) -> list[Character]:
    """Deduplicate characters at sup-norm radius eps (means as reps)."""
    reps: list[np.ndarray] = []
    members: list[int] = []
    for c in sorted(chars, key=lambda c: c.sort_key()):
        v = c.as_array()
        for i, r in enumerate(reps):
            if float(np.max(np.abs(v - r), initial=0.0)) <= eps:
                reps[i] = (r * members[i] + v) / (members[i] + 1)
                members[i] += 1
                break
        else:
            reps.append(v)
            members.append(1)
    return [Character(tuple(r)) for r in reps]


def character_set_leq(left, right, eps: float) -> bool:
    """Every left character within eps (sup-norm) of some right character."""
    return all(any(a.distance(b) <= eps for b in right) for a in left)


def character_set_equal(left, right, eps: float) -> bool:
    return character_set_leq(left, right, eps) and character_set_leq(right, left, eps)


def _extension_operator(rep: LieRep, p: int) -> np.ndarray:
    """T_p on E (x) /\\^p L' for the split of rep's own basis at the last
    generator; rep must already be in flag coordinates."""
    n, m = rep.n, rep.dim_e
    j = n - 1
    sc = rep.structure_constants
    scale = max(1.0, float(np.abs(sc).max()))
    leak = float(np.abs(sc[j, :j, j]).max()) if j else 0.0
    if leak > rep.tol.eps_residual * scale:
        raise InputError(
            f"the first {j} basis vectors do not span an ideal "
            f"(bracket leaks {leak:.3e} onto the last one)"
        )
    basis = wedge_basis(n - 1, p) if p <= n - 1 else None
    if basis is None or basis.size == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    size = m * basis.size
    matrix = np.zeros((size, size), dtype=np.complex128)
    xj = rep.generators[j]
    for ci, subset in enumerate(basis.subsets):
        col = ci * m
        matrix[col : col + m, col : col + m] += xj
        for a, y in enumerate(subset):
            # (-1)^l for the 1-based slot position l of y in the wedge
            slot_sign = -1.0 if (a + 1) % 2 else 1.0
            rest = subset[:a] + subset[a + 1 :]
            for h in range(n - 1):
                c = sc[j, y, h]
                if c == 0 or h in rest:
                    continue
                t = sum(1 for r in rest if r < h)
                wedge_sign = -1.0 if t % 2 else 1.0
                target = tuple(sorted(rest + (h,)))
                row = basis.index_of(target) * m
                matrix[row : row + m, col : col + m] += (
                    slot_sign * wedge_sign * c * np.eye(m)
                )
    return matrix


def extension_operators(rep: LieRep, flag: IdealFlag, p: int) -> np.ndarray:
    """T_p for the codimension-one split along the flag's last basis vector,
    so that the complex splits through L_p(beta) = T_p - beta(x_j) I."""
    if flag.n != rep.n:
        raise InputError("flag does not match the representation")
    if not 0 <= p <= rep.n - 1:
        raise InputError(f"degree {p} out of range", field="p")
    return _extension_operator(rep_in_basis(rep, flag.basis_change), p)


def _candidate_values(rep: LieRep) -> list[complex]:
    """Clustered eigenvalues of all T_p for rep in flag coordinates."""
    values: list[complex] = []
    for p in range(rep.n):
        t = _extension_operator(rep, p)
        if t.size:
            values.extend(eigenvalues(t, rep.tol))
    return cluster_values(values, rep.tol.eps_cluster)


def spectrum_candidates(rep: LieRep) -> list[Character]:
    """Finite superset of the joint spectrum, in the original basis.

    Recursion along the canonical ideal flag: the single-generator base case
    contributes its eigenvalues; every later level extends each candidate of
    the prefix algebra by the eigenvalues of its extension operators, keeping
    only extensions that still vanish on the derived subalgebra.
    """
    flag = canonical_flag(rep)
    w = flag.basis_change
    tol = rep.tol

    partial: list[tuple] = [()]
    for level in range(1, rep.n + 1):
        sub = rep_in_basis(rep, w[:, :level])
        if level == 1:
            values = cluster_values(eigenvalues(sub.generators[0], tol), tol.eps_cluster)
        else:
            values = _candidate_values(sub)
        grown = [g + (lam,) for g in partial for lam in values]
        kept = []
        for vals in grown:
            f = Character(vals)
            bound = tol.eps_cluster * max(1.0, float(np.max(np.abs(f.as_array()))))
            if character_residual(sub, f) <= bound:
                kept.append(f)
        deduped = cluster_characters(kept, tol.eps_cluster)
        partial = [c.values for c in deduped]
        if not partial:
            return []

    # flag values f(u_a) determine the original coordinates via W^T f = v
    out = []
    for vals in partial:
        coords = np.linalg.solve(w.T, np.array(vals, dtype=np.complex128))
        out.append(Character(tuple(coords)))
    return _list_sorted(out)


def _list_sorted(chars) -> list[Character]:
    return sorted(chars, key=lambda c: c.sort_key())


def joint_spectrum(rep: LieRep, workers: int | None = None) -> SpectrumReport:
    """Homology-filtered spectrum with the full Sigma_p/Slodkowski breakdown.

    For nilpotent input the result is cross-checked against the weight table;
    a mismatch raises instead of silently returning either side.
    """
    candidates = spectrum_candidates(rep)
    if workers and workers > 1 and len(candidates) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            all_dims = list(pool.map(lambda f: homology_dims(rep, f), candidates))
    else:
        all_dims = [homology_dims(rep, f) for f in candidates]

    n = rep.n
    sigma = [[] for _ in range(n + 1)]
    sp = []
    for f, dims in zip(candidates, all_dims):
        if any(dims):
            sp.append(f)
        for p in range(n + 1):
            if dims[p] > 0:
                sigma[p].append(f)

    nilpotent = is_nilpotent(rep)
    if nilpotent:
        if not sp:
            raise VerificationError(
                "empty joint spectrum for nilpotent input contradicts "
                "non-emptiness; tolerances are inconsistent"
            )
        weights = weight_table(rep).weights
        if not character_set_equal(sp, weights, rep.tol.eps_cluster):
            raise VerificationError(
                "joint spectrum disagrees with the weight set on nilpotent "
                f"input: sp = {show_characters(sp)}, weights = {show_characters(weights)}"
            )

    delta = tuple(
        _sorted_characters(
            cluster_characters([f for p in range(0, k + 1) for f in sigma[p]], rep.tol.eps_cluster)
        )
        for k in range(n + 1)
    )
    pi = tuple(
        _sorted_characters(
            cluster_characters([f for p in range(k, n + 1) for f in sigma[p]], rep.tol.eps_cluster)
        )
        for k in range(n + 1)
    )
    return SpectrumReport(
        candidates=tuple(zip(candidates, (tuple(d) for d in all_dims))),
        sigma_p=tuple(_sorted_characters(s) for s in sigma),
        sp=_sorted_characters(sp),
        delta=delta,
        pi=pi,
    )


def slodkowski(rep: LieRep, k: int, report: SpectrumReport | None = None):
    """(sigma_{delta,k}, sigma_{pi,k}) as sorted character tuples."""
    if not 0 <= k <= rep.n:
        raise InputError(f"k = {k} out of range 0..{rep.n}", field="k")
    if report is None:
        report = joint_spectrum(rep)
    return report.delta[k], report.pi[k]


def sample_off_spectrum(rep: LieRep, avoid, count: int, min_distance: float, seed: int = 0):
    """Deterministic random characters at sup-norm distance >= min_distance
    from every character in avoid, sampled inside the character space."""
    basis = character_space(rep)
    if basis.shape[1] == 0:
        return []
    rng = np.random.default_rng(seed)
    scale = 1.0 + max(
        (float(np.max(np.abs(c.as_array()))) for c in avoid), default=0.0
    )
    out = []
    guard = 0
    while len(out) < count and guard < 100 * count:
        guard += 1
        coeff = rng.normal(size=basis.shape[1]) + 1j * rng.normal(size=basis.shape[1])
        f = Character(tuple(basis @ (scale * coeff)))
        if all(f.distance(a) >= min_distance for a in avoid):
            out.append(f)
    return out


def verify_main_theorems(rep: LieRep, workers: int | None = None) -> list[CheckResult]:
    """Verdicts for the nilpotent-case theorems.

    Checks, in order: the spectrum is finite and nonempty; it equals the
    weight set; Sigma_0 and Sigma_n already equal it; every Slodkowski set
    of either family equals it; and homology vanishes at 20 random
    characters pushed away from it.
    """
    if not is_nilpotent(rep):
        raise InputError("main-theorem verification requires a nilpotent representation")
    eps = rep.tol.eps_cluster
    checks = []
    try:
        report = joint_spectrum(rep, workers=workers)
    except VerificationError as exc:
        return [CheckResult("spectrum-computation", "fail", str(exc))]

    sp = report.sp
    checks.append(
        CheckResult(
            "finite-nonempty",
            "pass" if 0 < len(sp) <= rep.dim_e else "fail",
            f"|sp| = {len(sp)} with dim E = {rep.dim_e}",
        )
    )

    weights = weight_table(rep).weights
    checks.append(
        CheckResult(
            "spectrum-equals-weights",
            "pass" if character_set_equal(sp, weights, eps) else "fail",
            f"sp = {show_characters(sp)}, weights = {show_characters(weights)}",
        )
    )

    edge = character_set_equal(report.sigma_p[0], sp, eps) and character_set_equal(
        report.sigma_p[rep.n], sp, eps
    )
    checks.append(
        CheckResult(
            "edge-homology-carries-spectrum",
            "pass" if edge else "fail",
            f"Sigma_0 = {show_characters(report.sigma_p[0])}, Sigma_n = {show_characters(report.sigma_p[rep.n])}",
        )
    )

    bad = [
        k
        for k in range(rep.n + 1)
        if not (
            character_set_equal(report.delta[k], sp, eps)
            and character_set_equal(report.pi[k], sp, eps)
        )
    ]
    checks.append(
        CheckResult(
            "slodkowski-collapse",
            "pass" if not bad else "fail",
            "all k" if not bad else f"mismatch at k in {bad}",
        )
    )

    samples = sample_off_spectrum(rep, sp, 20, 10 * eps)
    worst = 0
    for f in samples:
        worst = max(worst, sum(homology_dims(rep, f)))
    checks.append(
        CheckResult(
            "off-spectrum-vanishing",
            "pass" if worst == 0 else "fail",
            f"{len(samples)} samples at distance >= {10 * eps:g}; "
            f"max total homology = {worst}",
        )
    )
    return checks
