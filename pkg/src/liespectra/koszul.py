"""Boundary operators d_p(f) of the chain complex (E (x) /\\L, d(f)).

For generators x_1..x_n acting on E = C^m and a character f (a linear
functional vanishing on all brackets), degree p of the complex is
E (x) /\\^p L with basis e_a (x) <x_S> over p-subsets S. The boundary is

    d_p(f) (e <x_{k_1} /\\ ... /\\ x_{k_p}>)
        = sum_a (-1)^{a+1} ((x_{k_a} - f(x_{k_a})) e) <... k_a deleted ...>
        + sum_{a<b} (-1)^{a+b} e <[x_{k_a}, x_{k_b}] /\\ ... both deleted ...>

with 1-based slot positions a, b, the module action on the left, and the
bracket convention of lierep. d_p is the zero operator for p <= 0 and for
p >= n+1. The bracket lands in the first wedge slot; it is normalized into
the sorted basis by moving each x_h rightward, one sign per transposition,
dropping terms whose index already occurs.

Basis order in E (x) /\\^p L: subsets in lexicographic order, E index
varying fastest inside each subset block.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .errors import InputError, ToleranceError
from .lierep import Character, LieRep, character_residual
from .numeric import collect_rank_diagnostics, rank

__all__ = [
    "WedgeBasis",
    "BoundaryOperator",
    "wedge_basis",
    "chain_dim",
    "boundary_matrix",
    "verify_complex",
    "complex_scale",
    "homology_dims",
    "sigma_p_membership",
]


@dataclass(frozen=True)
class WedgeBasis:
    """Lexicographically ordered p-subsets of {0..n-1} with position lookup."""

    n: int
    p: int
    subsets: tuple

    def index_of(self, subset) -> int:
        return self._lookup[tuple(subset)]

    @property
    def size(self) -> int:
        return len(self.subsets)

    def __post_init__(self):
        object.__setattr__(
            self, "_lookup", {s: i for i, s in enumerate(self.subsets)}
        )


def wedge_basis(n: int, p: int) -> WedgeBasis:
    if not 0 <= p <= n:
        raise InputError(f"wedge degree {p} out of range for n = {n}", field="p")
    return WedgeBasis(n, p, tuple(combinations(range(n), p)))


def _binom(n: int, p: int) -> int:
    return comb(n, p) if 0 <= p <= n else 0


def chain_dim(rep: LieRep, p: int) -> int:
    """dim of E (x) /\\^p L, zero outside 0 <= p <= n."""
    return rep.dim_e * _binom(rep.n, p)


@dataclass(frozen=True, eq=False)
class BoundaryOperator:
    degree: int
    matrix: np.ndarray

    @property
    def shape(self):
        return self.matrix.shape


def _require_character(rep: LieRep, f: Character):
    if f.n != rep.n:
        raise InputError(
            f"character has {f.n} values, representation has {rep.n} generators",
            field="character",
        )
    residual = character_residual(rep, f)
    bound = rep.tol.eps_residual * max(1.0, float(np.max(np.abs(f.as_array()), initial=0.0)))
    if residual > bound:
        raise InputError(
            f"not a character: value on the derived subalgebra is {residual:.3e}",
            field="character",
        )


def boundary_matrix(rep: LieRep, f: Character, p: int) -> BoundaryOperator:
    """Matrix of d_p(f) from degree p to degree p-1 (see module docstring)."""
    _require_character(rep, f)
    n, m = rep.n, rep.dim_e
    rows, cols = chain_dim(rep, p - 1), chain_dim(rep, p)
    matrix = np.zeros((rows, cols), dtype=np.complex128)
    if p <= 0 or p >= n + 1:
        return BoundaryOperator(p, matrix)

    upper = wedge_basis(n, p)
    lower = wedge_basis(n, p - 1)
    sc = rep.structure_constants
    shifted = [rep.shifted_generator(i, f) for i in range(n)]

    for ci, subset in enumerate(upper.subsets):
        col = ci * m
        for a, k in enumerate(subset):
            # (-1)^{a+1} with 1-based a is (-1)^a for 0-based
            sign = -1.0 if a % 2 else 1.0
            rest = subset[:a] + subset[a + 1 :]
            row = lower.index_of(rest) * m
            matrix[row : row + m, col : col + m] += sign * shifted[k]
        for a in range(len(subset)):
            for b in range(a + 1, len(subset)):
                ka, kb = subset[a], subset[b]
                pair_sign = -1.0 if (a + b) % 2 else 1.0  # (-1)^{(a+1)+(b+1)}
                rest = tuple(v for t, v in enumerate(subset) if t not in (a, b))
                for h in range(n):
                    c = sc[ka, kb, h]
                    if c == 0 or h in rest:
                        continue
                    t = sum(1 for r in rest if r < h)
                    wedge_sign = -1.0 if t % 2 else 1.0
                    target = tuple(sorted(rest + (h,)))
                    row = lower.index_of(target) * m
                    block = slice(row, row + m)
                    matrix[block, col : col + m] += (
                        pair_sign * wedge_sign * c * np.eye(m)
                    )
    return BoundaryOperator(p, matrix)


def complex_scale(rep: LieRep, f: Character) -> float:
    """Magnitude reference for d composition residuals: entries of d are
    bounded by the shifted generators and structure constants, so products
    of two boundaries are compared against this squared scale."""
    gmax = max(float(np.linalg.norm(g, 2)) for g in rep.generators)
    scmax = float(np.abs(rep.structure_constants).max()) if rep.n > 1 else 0.0
    fmax = float(np.max(np.abs(f.as_array()), initial=0.0))
    base = gmax + fmax + scmax
    return max(1.0, base * base * rep.n)


def verify_complex(rep: LieRep, f: Character) -> float:
    """max_p of the Frobenius norm of d_p(f) d_{p+1}(f)."""
    worst = 0.0
    previous = boundary_matrix(rep, f, 1)
    for p in range(1, rep.n + 1):
        nxt = boundary_matrix(rep, f, p + 1)
        if previous.matrix.size and nxt.matrix.size:
            worst = max(worst, float(np.linalg.norm(previous.matrix @ nxt.matrix)))
        previous = nxt
    return worst


def homology_dims(rep: LieRep, f: Character) -> tuple:
    """(dim H_0, ..., dim H_n) at the character f.

    dim H_p = (dim chain_p - rank d_p) - rank d_{p+1}; only ranks are ever
    computed, never quotient bases.
    """
    n = rep.n
    with collect_rank_diagnostics() as diag:
        ranks = [rank(boundary_matrix(rep, f, p).matrix, rep.tol) for p in range(n + 2)]
        dims = []
        for p in range(n + 1):
            d = (chain_dim(rep, p) - ranks[p]) - ranks[p + 1]
            if d < 0:
                raise ToleranceError(
                    f"negative homology dimension {d} in degree {p}; "
                    "rank decisions are unstable at the current eps_rank",
                    diagnostics=diag.summary(),
                )
            dims.append(d)
    return tuple(dims)


def sigma_p_membership(rep: LieRep, f: Character, p: int) -> bool:
    """Whether f lies in Sigma_p, i.e. H_p does not vanish at f."""
    if not 0 <= p <= rep.n:
        raise InputError(f"degree {p} out of range", field="p")
    return homology_dims(rep, f)[p] > 0
