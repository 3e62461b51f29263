"""Dense complex linear algebra with one explicit tolerance policy.

Everything downstream (homology ranks, weight spaces, spectra) reduces to the
operations in this module, so the numerical contract lives in exactly one
place:

* a singular value counts toward the rank iff
  ``sigma > eps_rank * sigma_max * max(rows, cols)``;
* eigenvalues / characters closer than ``eps_cluster`` are considered equal;
* a residual of an identity that should hold exactly is accepted up to
  ``eps_residual * scale``.

All functions are pure; matrices are plain ``numpy`` complex arrays and are
never mutated. Non-finite entries are rejected everywhere.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np

from .errors import InputError, ToleranceError

__all__ = [
    "ToleranceProfile",
    "DEFAULT_TOL",
    "Subspace",
    "as_matrix",
    "rank",
    "kernel_basis",
    "image_basis",
    "intersect",
    "subspace_sum",
    "eigenvalues",
    "cluster_values",
    "generalized_kernel",
    "RankDiagnostics",
    "collect_rank_diagnostics",
]


@dataclass(frozen=True)
class ToleranceProfile:
    """The package-wide numerical policy (see module docstring)."""

    eps_rank: float = 1e-9
    eps_cluster: float = 1e-6
    eps_residual: float = 1e-8

    def __post_init__(self):
        for name in ("eps_rank", "eps_cluster", "eps_residual"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and np.isfinite(value) and value > 0):
                raise InputError(f"{name} must be a finite positive number", field=name)
        if self.eps_rank > self.eps_cluster:
            raise InputError("eps_rank must not exceed eps_cluster", field="eps_rank")


DEFAULT_TOL = ToleranceProfile()


class RankDiagnostics:
    """Thread-safe collector of singular values near the rank threshold.

    While installed via `collect_rank_diagnostics`, every rank decision
    records the smallest accepted and largest rejected singular value, which
    is the information needed to judge how close a run came to a tolerance
    flip.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self.parent = None
        self.rank_calls = 0
        self.smallest_accepted = None
        self.largest_rejected = None

    def record(self, accepted_min, rejected_max):
        with self._lock:
            self.rank_calls += 1
            if accepted_min is not None:
                if self.smallest_accepted is None or accepted_min < self.smallest_accepted:
                    self.smallest_accepted = accepted_min
            if rejected_max is not None:
                if self.largest_rejected is None or rejected_max > self.largest_rejected:
                    self.largest_rejected = rejected_max
        # nested collectors (e.g. one per homology call inside a full run)
        # must not hide records from an enclosing run-wide collector
        if self.parent is not None:
            self.parent.record(accepted_min, rejected_max)

    def summary(self):
        return {
            "rank_calls": self.rank_calls,
            "smallest_accepted_sv": self.smallest_accepted,
            "largest_rejected_sv": self.largest_rejected,
        }


_active_diagnostics: RankDiagnostics | None = None


class collect_rank_diagnostics:
    """Context manager installing a RankDiagnostics collector (global, so
    worker threads spawned inside the block report into it as well)."""

    def __init__(self):
        self.diagnostics = RankDiagnostics()

    def __enter__(self):
        global _active_diagnostics
        self._previous = _active_diagnostics
        self.diagnostics.parent = self._previous
        _active_diagnostics = self.diagnostics
        return self.diagnostics

    def __exit__(self, *exc):
        global _active_diagnostics
        _active_diagnostics = self._previous
        return False


def as_matrix(m, *, square=False, name="matrix") -> np.ndarray:
    """Validate and convert to a complex 2-d array. Rejects NaN/Inf."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise InputError(f"{name} must be two-dimensional, got shape {a.shape}", field=name)
    if not (np.all(np.isfinite(a.real)) and np.all(np.isfinite(a.imag))):
        raise InputError(f"{name} contains non-finite entries", field=name)
    if square and a.shape[0] != a.shape[1]:
        raise InputError(f"{name} must be square, got shape {a.shape}", field=name)
    return a


def _svd(M):
    # LAPACK occasionally refuses to converge on the full SVD of very odd
    # matrices; at desk scale this does not happen, but keep the error honest.
    try:
        return np.linalg.svd(M)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise ToleranceError(f"SVD failed to converge: {exc}") from exc


def _rank_from_singulars(s, shape, tol, floor=0.0, hard_zero=0.0):
    if s.size == 0:
        return 0
    cutoff = max(tol.eps_rank * max(s[0], floor) * max(shape), hard_zero)
    r = int(np.sum(s > cutoff))
    if _active_diagnostics is not None:
        accepted_min = float(s[r - 1]) if r > 0 else None
        rejected_max = float(s[r]) if r < s.size else None
        _active_diagnostics.record(accepted_min, rejected_max)
    return r


def rank(M, tol: ToleranceProfile = DEFAULT_TOL, floor: float = 0.0) -> int:
    """Numerical rank under the relative singular-value cutoff.

    ``floor`` is a reference scale for matrices that may consist entirely of
    rounding noise: the cutoff uses max(sigma_max, floor), so a matrix whose
    largest singular value sits far below the scale of its source data gets
    rank 0 instead of full rank.
    """
    M = as_matrix(M)
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    return _rank_from_singulars(s, M.shape, tol, floor)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A linear subspace of C^ambient_dim given by an orthonormal column basis.

    ``basis`` has shape (ambient_dim, dim); the zero subspace has a
    (ambient_dim, 0) basis.
    """

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        b = as_matrix(self.basis, name="basis")
        if b.shape[0] != self.ambient_dim:
            raise InputError(
                f"basis rows {b.shape[0]} != ambient dimension {self.ambient_dim}",
                field="basis",
            )
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, np.zeros((ambient_dim, 0)))

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, np.eye(ambient_dim))

    @staticmethod
    def spanned_by(vectors, tol: ToleranceProfile = DEFAULT_TOL) -> "Subspace":
        """Orthonormalized span of the given columns."""
        return image_basis(as_matrix(vectors, name="vectors"), tol)

    def project(self, v: np.ndarray) -> np.ndarray:
        return self.basis @ (self.basis.conj().T @ v)

    def contains(self, v, tol: ToleranceProfile = DEFAULT_TOL) -> bool:
        v = np.asarray(v, dtype=np.complex128).reshape(self.ambient_dim)
        scale = max(1.0, float(np.linalg.norm(v)))
        return float(np.linalg.norm(v - self.project(v))) <= tol.eps_residual * scale

    def contains_subspace(self, other: "Subspace", tol: ToleranceProfile = DEFAULT_TOL) -> bool:
        if other.dim == 0:
            return True
        residual = other.basis - self.project(other.basis)
        return float(np.linalg.norm(residual)) <= tol.eps_residual * max(1.0, other.dim)


def kernel_basis(
    M,
    tol: ToleranceProfile = DEFAULT_TOL,
    floor: float = 0.0,
    hard_zero: float = 0.0,
) -> Subspace:
    """Orthonormal basis of ker M; dim = cols - rank.

    ``floor`` as in rank(): reference scale guarding against all-noise input.
    ``hard_zero`` is an absolute singular-value threshold: anything at or
    below it counts as zero regardless of the relative cutoff. Callers that
    have already decided two nearby values are equal (eigenvalue clustering)
    use it to keep the kernel consistent with that decision.
    """
    M = as_matrix(M)
    rows, cols = M.shape
    if cols == 0:
        return Subspace.zero(0)
    if rows == 0 or not np.any(M):
        return Subspace.full(cols)
    _, s, vh = _svd(M)
    r = _rank_from_singulars(s, M.shape, tol, floor, hard_zero)
    return Subspace(cols, vh[r:].conj().T)


def image_basis(M, tol: ToleranceProfile = DEFAULT_TOL, floor: float = 0.0) -> Subspace:
    """Orthonormal basis of the column space; dim = rank.

    ``floor`` as in rank(): reference scale guarding against all-noise input.
    """
    M = as_matrix(M)
    rows, cols = M.shape
    if rows == 0:
        return Subspace.zero(0)
    if cols == 0 or not np.any(M):
        return Subspace.zero(rows)
    u, s, _ = _svd(M)
    r = _rank_from_singulars(s, M.shape, tol, floor)
    return Subspace(rows, u[:, :r])


def subspace_sum(s1: Subspace, s2: Subspace, tol: ToleranceProfile = DEFAULT_TOL) -> Subspace:
    if s1.ambient_dim != s2.ambient_dim:
        raise InputError("subspace sum needs equal ambient dimensions")
    return image_basis(np.hstack([s1.basis, s2.basis]), tol)


def intersect(s1: Subspace, s2: Subspace, tol: ToleranceProfile = DEFAULT_TOL) -> Subspace:
    """Basis of s1 ∩ s2 via the kernel of the stacked basis [B1 | -B2]."""
    if s1.ambient_dim != s2.ambient_dim:
        raise InputError("intersect needs equal ambient dimensions")
    if s1.dim == 0 or s2.dim == 0:
        return Subspace.zero(s1.ambient_dim)
    stacked = np.hstack([s1.basis, -s2.basis])
    pairs = kernel_basis(stacked, tol)
    if pairs.dim == 0:
        return Subspace.zero(s1.ambient_dim)
    # A kernel vector (a; b) means B1 a = B2 b, i.e. B1 a lies in both spaces.
    vectors = s1.basis @ pairs.basis[: s1.dim]
    return image_basis(vectors, tol)


def eigenvalues(M, tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
    """Eigenvalue multiset (size = rows) sorted by (re, im).

    Backward stable via LAPACK's QR iteration: the returned values are exact
    eigenvalues of a matrix within eps_residual * ||M|| of M.
    """
    M = as_matrix(M, square=True)
    values = np.linalg.eigvals(M)
    order = np.lexsort((values.imag, values.real))
    return values[order]


def cluster_values(values, eps: float) -> list[complex]:
    """Cluster complex scalars at radius eps; returns sorted representatives.

    Each value joins the first existing cluster whose representative is
    within eps (representatives are running means, so clusters of nearly
    identical values stay put).
    """
    reps: list[complex] = []
    members: list[list[complex]] = []
    ordered = sorted((complex(v) for v in values), key=lambda z: (z.real, z.imag))
    for v in ordered:
        for idx, rep in enumerate(reps):
            if abs(v - rep) <= eps:
                members[idx].append(v)
                reps[idx] = sum(members[idx]) / len(members[idx])
                break
        else:
            reps.append(v)
            members.append([v])
    return sorted(reps, key=lambda z: (z.real, z.imag))


def generalized_kernel(
    M,
    lam: complex,
    exponent: int | None = None,
    tol: ToleranceProfile = DEFAULT_TOL,
    zero_radius: float = 0.0,
) -> Subspace:
    """ker (M - lam)^exponent by iterated kernel growth.

    Computes ker(M - lam), then repeatedly the preimage of the current space
    under (M - lam), stopping at stabilization. Never forms explicit matrix
    powers, whose conditioning degrades quickly. The default exponent is the
    ambient dimension, which always suffices.

    ``zero_radius``: singular values at or below this count as exact zeros.
    When lam is the mean of an eigenvalue cluster, the residual directions of
    the other cluster members have magnitude up to the cluster radius; without
    this the kernel would contradict the clustering that produced lam.
    """
    M = as_matrix(M, square=True)
    m = M.shape[0]
    if exponent is None:
        exponent = m
    if exponent < 1:
        raise InputError("exponent must be >= 1", field="exponent")
    shifted = M - complex(lam) * np.eye(m)
    # the scale of the shifted map anchors every rank decision below: the
    # residual maps in later iterations can consist entirely of rounding
    # noise, which must read as rank zero, not full rank
    scale = float(np.linalg.norm(shifted, 2))
    space = kernel_basis(shifted, tol, floor=scale, hard_zero=zero_radius)
    for _ in range(1, min(exponent, m)):
        if space.dim == m:
            break
        # Preimage of `space` under `shifted`: kernel of (I - P) (M - lam).
        residual_map = shifted - space.basis @ (space.basis.conj().T @ shifted)
        grown = kernel_basis(residual_map, tol, floor=scale, hard_zero=zero_radius)
        if grown.dim <= space.dim:
            break
        space = grown
    return space
