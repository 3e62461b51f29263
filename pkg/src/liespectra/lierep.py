"""Finite-dimensional complex Lie algebras of matrices and their flags.

Convention (the single most important one in this repository)
-------------------------------------------------------------
The algebra lives inside the *opposite* operator algebra, so the bracket of
two matrices is

    [a, b] = b @ a - a @ b

and a matrix acts on the module E = C^m by ordinary left multiplication of a
column vector. Both choices together make the boundary operators of the
module complex square to zero and reproduce the reference values of the
solvable 2x2 fixture; flipping either sign produces a complex that is no
longer a complex, or shifts spectra by conjugate amounts.

A representation is stored as a basis of generator matrices plus the solved
structure constants sc[i, j, :] of bracket(x_i, x_j) in that basis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, ToleranceError, UnsupportedError
from .numeric import (
    DEFAULT_TOL,
    Subspace,
    ToleranceProfile,
    as_matrix,
    image_basis,
    kernel_basis,
    rank,
    subspace_sum,
)

__all__ = [
    "Character",
    "LieRep",
    "IdealFlag",
    "bracket",
    "build_rep",
    "rep_scale",
    "derived_subalgebra",
    "lower_central_series",
    "is_nilpotent",
    "derived_series",
    "is_solvable",
    "jordan_holder_flag",
    "solvable_flag",
    "canonical_flag",
    "character_space",
    "character_residual",
    "show_characters",
    "rep_in_basis",
    "restrict_to_ideal",
]


@dataclass(frozen=True)
class Character:
    """A linear functional on the algebra, stored by its values on the
    generator basis. Characters of interest vanish on the derived algebra."""

    values: tuple

    def __post_init__(self):
        vals = tuple(complex(v) for v in self.values)
        if not all(np.isfinite(v.real) and np.isfinite(v.imag) for v in vals):
            raise InputError("character values must be finite", field="character")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=np.complex128)

    def evaluate(self, coefficients) -> complex:
        """Value on the element with the given generator coefficients."""
        coeffs = np.asarray(coefficients, dtype=np.complex128).reshape(self.n)
        return complex(np.dot(self.values, coeffs))

    def distance(self, other: "Character") -> float:
        """Sup-norm distance of coordinate vectors."""
        if other.n != self.n:
            raise InputError("characters live on algebras of different dimension")
        return float(np.max(np.abs(self.as_array() - other.as_array()), initial=0.0))

    def sort_key(self):
        return tuple((v.real, v.imag) for v in self.values)


def show_characters(chars) -> str:
    """Compact set notation for diagnostics: {(0, 0.5), (0, -1.5)}."""

    def num(v: complex) -> str:
        return f"{v.real:g}" if v.imag == 0 else f"{v.real:g}{v.imag:+g}i"

    parts = sorted(chars, key=lambda c: c.sort_key())
    return "{" + ", ".join("(" + ", ".join(num(v) for v in c.values) + ")" for c in parts) + "}"


def bracket(a, b) -> np.ndarray:
    """[a, b] = b a - a b, the commutator of the opposite product."""
    a = as_matrix(a, square=True, name="a")
    b = as_matrix(b, square=True, name="b")
    if a.shape != b.shape:
        raise InputError(f"bracket size mismatch: {a.shape} vs {b.shape}")
    return b @ a - a @ b


@dataclass(frozen=True, eq=False)
class LieRep:
    """A Lie algebra of linear transformations on E = C^dim_e.

    generators: the basis x_1..x_n as m x m matrices.
    structure_constants: sc with bracket(x_i, x_j) = sum_h sc[i, j, h] x_h.
    """

    dim_e: int
    generators: tuple
    structure_constants: np.ndarray
    tol: ToleranceProfile = DEFAULT_TOL

    @property
    def n(self) -> int:
        return len(self.generators)

    def generator_matrix(self, coefficients) -> np.ndarray:
        """The element sum_j c_j x_j as a matrix."""
        coeffs = np.asarray(coefficients, dtype=np.complex128).reshape(self.n)
        out = np.zeros((self.dim_e, self.dim_e), dtype=np.complex128)
        for c, g in zip(coeffs, self.generators):
            out += c * g
        return out

    def shifted_generator(self, i: int, f: Character) -> np.ndarray:
        """x_i - f(x_i) * I."""
        return self.generators[i] - f.values[i] * np.eye(self.dim_e)


def rep_scale(rep_or_matrices) -> float:
    """Norm scale used for closure / complex residual thresholds."""
    mats = rep_or_matrices.generators if isinstance(rep_or_matrices, LieRep) else rep_or_matrices
    smax = max((float(np.linalg.norm(g)) for g in mats), default=1.0)
    return 2.0 * max(1.0, smax) ** 2


def build_rep(matrices, tol: ToleranceProfile = DEFAULT_TOL) -> LieRep:
    """Validate a generator list and solve its structure constants.

    The constants are solved by least squares in the flattened-matrix space;
    the least-squares residual doubles as the closure check, so a generator
    set that does not span a Lie algebra is rejected here.
    """
    if len(matrices) == 0:
        raise InputError("at least one generator is required", field="generators")
    gens = [as_matrix(g, square=True, name=f"generator {i}") for i, g in enumerate(matrices)]
    m = gens[0].shape[0]
    if any(g.shape != (m, m) for g in gens):
        raise InputError("generators must all have the same size", field="generators")
    n = len(gens)
    basis = np.column_stack([g.reshape(-1) for g in gens])
    if rank(basis, tol) < n:
        raise InputError("generators are linearly dependent", field="generators")
    scale = rep_scale(gens)

    sc = np.zeros((n, n, n), dtype=np.complex128)
    worst = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            target = bracket(gens[i], gens[j]).reshape(-1)
            coeffs, *_ = np.linalg.lstsq(basis, target, rcond=None)
            residual = float(np.linalg.norm(basis @ coeffs - target))
            worst = max(worst, residual)
            sc[i, j] = coeffs
            sc[j, i] = -coeffs
    if worst > tol.eps_residual * scale:
        raise InputError(
            "not a Lie algebra under the declared basis: "
            f"closure residual {worst:.3e} exceeds {tol.eps_residual * scale:.3e}"
        )
    sc.setflags(write=False)
    return LieRep(dim_e=m, generators=tuple(gens), structure_constants=sc, tol=tol)


def element_coefficients(rep: LieRep, matrix) -> np.ndarray:
    """Coefficients of a matrix in the generator basis (errors if outside)."""
    target = as_matrix(matrix, square=True, name="element").reshape(-1)
    basis = np.column_stack([g.reshape(-1) for g in rep.generators])
    coeffs, *_ = np.linalg.lstsq(basis, target, rcond=None)
    residual = float(np.linalg.norm(basis @ coeffs - target))
    if residual > rep.tol.eps_residual * max(1.0, float(np.linalg.norm(target))):
        raise InputError(f"matrix is not in the algebra (residual {residual:.3e})")
    return coeffs


def _sc_scale(rep: LieRep) -> float:
    # reference scale for spans built from structure constants: least-squares
    # noise sits many orders below this, so all-noise spans collapse to zero
    return max(1.0, float(np.abs(rep.structure_constants).max()))


def derived_subalgebra(rep: LieRep) -> Subspace:
    """Span of all pairwise brackets, as a subspace of coefficient space C^n."""
    n = rep.n
    cols = [rep.structure_constants[i, j] for i in range(n) for j in range(i + 1, n)]
    if not cols:
        return Subspace.zero(n)
    return image_basis(np.column_stack(cols), rep.tol, floor=_sc_scale(rep))


def _ad_matrices(rep: LieRep) -> list[np.ndarray]:
    # ad_i acting on coefficient space: (ad_i)[h, j] = sc[i, j, h].
    return [rep.structure_constants[i].T for i in range(rep.n)]


def _bracket_span(rep: LieRep, left: Subspace, right: Subspace) -> Subspace:
    """Span of coefficient vectors of [left, right]."""
    cols = []
    sc = rep.structure_constants
    for a in range(left.dim):
        u = left.basis[:, a]
        # coefficient vector of bracket(sum u_i x_i, v) is bilinear in (u, v)
        partial = np.einsum("i,ijh->jh", u, sc)
        for b in range(right.dim):
            cols.append(partial.T @ right.basis[:, b])
    if not cols:
        return Subspace.zero(rep.n)
    return image_basis(np.column_stack(cols), rep.tol, floor=_sc_scale(rep))


def lower_central_series(rep: LieRep) -> list[Subspace]:
    """C^1 = L, C^{r+1} = [L, C^r], listed until stabilization (a final zero
    term is included when the series reaches zero)."""
    full = Subspace.full(rep.n)
    series = [full]
    while True:
        nxt = _bracket_span(rep, full, series[-1])
        if nxt.dim == series[-1].dim:
            break
        series.append(nxt)
        if nxt.dim == 0:
            break
    return series


def is_nilpotent(rep: LieRep) -> bool:
    return lower_central_series(rep)[-1].dim == 0


def derived_series(rep: LieRep) -> list[Subspace]:
    """D^1 = L, D^{r+1} = [D^r, D^r], until stabilization."""
    series = [Subspace.full(rep.n)]
    while True:
        nxt = _bracket_span(rep, series[-1], series[-1])
        if nxt.dim == series[-1].dim:
            break
        series.append(nxt)
        if nxt.dim == 0:
            break
    return series


def is_solvable(rep: LieRep) -> bool:
    return derived_series(rep)[-1].dim == 0


@dataclass(frozen=True, eq=False)
class IdealFlag:
    """A full flag of nested subalgebras given by a basis change.

    Column a of basis_change holds the generator coefficients of the a-th
    flag basis vector u_a; the i-th flag member is span(u_1..u_i). For
    Jordan-Hoelder flags of nilpotent algebras every prefix is an ideal of
    the whole algebra and brackets lower the flag index; for solvable chains
    each prefix is only guaranteed to be an ideal of the next one.

    k is the prefix length at which the flag passes through the derived
    subalgebra, or None when it does not.
    """

    kind: str
    basis_change: np.ndarray
    dims: tuple
    k: int | None
    max_residual: float

    @property
    def n(self) -> int:
        return self.basis_change.shape[0]


def _extend_basis(current: list[np.ndarray], candidates: np.ndarray, tol, limit=None):
    """Greedily append candidate columns that increase the span."""
    for col in candidates.T:
        if limit is not None and len(current) >= limit:
            break
        trial = np.column_stack(current + [col]) if current else col.reshape(-1, 1)
        if rank(trial, tol) == len(current) + 1:
            current.append(col)
    return current


def _flag_prefix_equal_to(rep, columns, space: Subspace):
    """Index i with span(columns[:i]) == space, or None."""
    d = space.dim
    if d > len(columns):
        return None
    if d == 0:
        return 0
    prefix = np.column_stack(columns[:d])
    joint = subspace_sum(space, image_basis(prefix, rep.tol), rep.tol)
    return d if joint.dim == d else None


def jordan_holder_flag(rep: LieRep) -> IdealFlag:
    """Full flag of ideals with the bracket-lowering property.

    Built by refining the lower central series, deepest members first: for
    x in C^r we have [L, x] in C^{r+1}, which sits entirely inside the
    preceding flag prefix, so [L_j, L_i] <= L_{i-1} holds by construction.
    The property is still verified by a direct residual check.
    """
    series = lower_central_series(rep)
    if series[-1].dim != 0:
        raise UnsupportedError(
            "Jordan-Hoelder flag requires a nilpotent algebra "
            f"(lower central series stabilizes at dimension {series[-1].dim})"
        )
    columns: list[np.ndarray] = []
    for space in reversed(series):
        _extend_basis(columns, space.basis, rep.tol)
    if len(columns) != rep.n:
        raise ToleranceError("flag completion failed to reach full dimension")
    basis_change = np.column_stack(columns)

    flag_rep = rep_in_basis(rep, basis_change)
    residual = _lowering_residual(flag_rep)
    scale = rep_scale(rep)
    if residual > rep.tol.eps_residual * scale:
        raise UnsupportedError(
            f"flag bracket-lowering residual {residual:.3e} exceeds tolerance"
        )
    der = derived_subalgebra(rep)
    k = _flag_prefix_equal_to(rep, columns, der)
    if k is None:
        raise UnsupportedError("flag does not pass through the derived subalgebra")
    return IdealFlag(
        kind="jordan-holder",
        basis_change=basis_change,
        dims=tuple(range(rep.n + 1)),
        k=k,
        max_residual=residual,
    )


def _lowering_residual(flag_rep: LieRep) -> float:
    # max coefficient of [u_j, u_i] outside span(u_1..u_{i-1}), for i < j,
    # measured on the matrix scale of the generators
    sc = flag_rep.structure_constants
    worst = 0.0
    norms = [float(np.linalg.norm(g)) for g in flag_rep.generators]
    for i in range(flag_rep.n):
        for j in range(i + 1, flag_rep.n):
            for h in range(i, flag_rep.n):
                worst = max(worst, abs(sc[i, j, h]) * max(norms[h], 1.0))
    return worst


def solvable_flag(rep: LieRep) -> IdealFlag:
    """A chain of subalgebras, each an ideal of codimension 1 in the next.

    Exists for every solvable algebra: any hyperplane containing the derived
    subalgebra is an ideal, and the construction recurses into it.
    """
    if not is_solvable(rep):
        raise UnsupportedError("algebra is not solvable; no ideal chain exists")
    columns = _solvable_chain(rep)
    basis_change = np.column_stack(columns)
    der = derived_subalgebra(rep)
    return IdealFlag(
        kind="solvable-chain",
        basis_change=basis_change,
        dims=tuple(range(rep.n + 1)),
        k=_flag_prefix_equal_to(rep, columns, der),
        max_residual=0.0,
    )


def _solvable_chain(rep: LieRep) -> list[np.ndarray]:
    n = rep.n
    if n == 1:
        return [np.ones(1, dtype=np.complex128)]
    der = derived_subalgebra(rep)
    if der.dim >= n:
        raise UnsupportedError("derived subalgebra is the whole algebra (not solvable)")
    # hyperplane V >= L^2, extended deterministically by coordinate vectors
    columns = list(der.basis.T)
    _extend_basis(columns, np.eye(n, dtype=np.complex128), rep.tol, limit=n - 1)
    hyperplane = np.column_stack(columns)
    sub = rep_in_basis(rep, hyperplane)
    inner = _solvable_chain(sub)
    lifted = [hyperplane @ v for v in inner]
    last = _extend_basis(list(lifted), np.eye(n, dtype=np.complex128), rep.tol, limit=n)
    return last


def canonical_flag(rep: LieRep) -> IdealFlag:
    """Jordan-Hoelder flag when nilpotent, solvable chain otherwise."""
    if is_nilpotent(rep):
        return jordan_holder_flag(rep)
    return solvable_flag(rep)


def rep_in_basis(rep: LieRep, columns: np.ndarray) -> LieRep:
    """The (sub)representation spanned by the given coefficient columns.

    Columns must span a subalgebra; closure is re-verified by build_rep.
    """
    columns = as_matrix(columns, name="basis columns")
    if columns.shape[0] != rep.n:
        raise InputError("basis columns must have one row per generator")
    matrices = [rep.generator_matrix(columns[:, a]) for a in range(columns.shape[1])]
    return build_rep(matrices, rep.tol)


def character_space(rep: LieRep) -> np.ndarray:
    """Basis (n x d columns) of the functionals vanishing on the derived
    subalgebra; d = n - dim L^2 exactly."""
    der = derived_subalgebra(rep)
    if der.dim == 0:
        return np.eye(rep.n, dtype=np.complex128)
    # f(z) = v . z (no conjugation), so v must lie in ker(Z^T)
    return kernel_basis(der.basis.T, rep.tol).basis


def character_residual(rep: LieRep, f: Character) -> float:
    """max |f(z)| over an orthonormal basis of L^2 (0 means: a character)."""
    if f.n != rep.n:
        raise InputError("character has wrong number of coordinates")
    der = derived_subalgebra(rep)
    if der.dim == 0:
        return 0.0
    return float(np.max(np.abs(f.as_array() @ der.basis), initial=0.0))


def restrict_to_ideal(rep: LieRep, prefix: int, flag: IdealFlag | None = None):
    """Sub-representation on the first `prefix` flag vectors.

    Verifies that the prefix is an ideal of the whole algebra and returns
    (sub_rep, projection) where projection is a prefix x n matrix carrying
    a character's generator coordinates to its restriction's coordinates.
    """
    if flag is None:
        flag = canonical_flag(rep)
    n = rep.n
    if not (1 <= prefix <= n):
        raise InputError(f"flag prefix must be in 1..{n}, got {prefix}", field="prefix")
    W = flag.basis_change
    flag_rep = rep_in_basis(rep, W)
    sc = flag_rep.structure_constants
    # ideal test: [anything, prefix member] stays inside the prefix
    leak = np.max(np.abs(sc[:, :prefix, prefix:]), initial=0.0)
    if leak > rep.tol.eps_residual * rep_scale(rep):
        raise InputError(
            f"first {prefix} flag vectors do not span an ideal "
            f"(coefficient leak {leak:.3e})"
        )
    sub = rep_in_basis(rep, W[:, :prefix])
    projection = W[:, :prefix].T.copy()
    return sub, projection
