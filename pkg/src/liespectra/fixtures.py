"""Built-in representations used by the CLI, the test suite and the service.

Named fixtures
--------------
``boasso-2x2``    solvable, non-nilpotent pair on C^2 with bracket(x, y) = y;
                  the standard example where the joint spectrum and the
                  weight set genuinely differ.
``heisenberg-3``  Heisenberg algebra {E12, E23, E13} on C^3 (nilpotent).
``diag-2``        the single diagonal operator diag(1, 2) on C^2 (abelian).
``strict-upper-M-N-SEED``
                  N pseudo-random strictly upper triangular M x M integer
                  matrices spanning a bracket-closed (hence nilpotent)
                  algebra of dimension exactly N. Scheme below; any
                  implementation of it reproduces the entries bit-for-bit.

Random fixture scheme (strict-upper-m-n-seed)
---------------------------------------------
Entry stream: a 64-bit linear congruential generator

    state' = (6364136223846793005 * state + 1442695040888963407) mod 2^64

seeded with SEED; each draw is the integer ((state' >> 33) mod 5) - 2
in {-2..2}.

Pattern algebra P_1..P_n (fixed, bracket-closed):

    n <= 2:  P_j = E[1, j+1]                      (abelian; needs m >= n+1)
    n >= 3:  P_1 = E[1,2], P_2 = E[2,3], P_3 = E[1,3],
             P_j = E[1, j] for j = 4..n           (Heisenberg corner plus a
                                                   central tail; needs m >= n)

with E[i, j] the matrix unit (1-based indices). Construction, in stream
order:

1. Draw an n x n integer matrix A row by row. If det(A) = 0 (exact integer
   arithmetic) discard A and draw a fresh one; 100 rejections abort.
2. Draw a strictly upper m x m integer matrix S, positions (i, j), i < j,
   row by row, and set U = I + S (unitriangular, so U^-1 is integral).
3. Generator i is U (sum_j A[i, j] P_j) U^{-1}.

Mixing by invertible A and conjugating by unitriangular U both preserve
strict upper triangularity, bracket closure and integrality, so the result
is a nilpotent algebra of dimension exactly n with small integer entries.
"""

from __future__ import annotations

import re

import numpy as np

from .errors import InputError
from .lierep import LieRep, build_rep
from .numeric import DEFAULT_TOL, ToleranceProfile

__all__ = [
    "FIXTURES",
    "fixture_names",
    "fixture_generators",
    "fixture_rep",
    "strict_upper_generators",
    "Lcg",
]

_LCG_MULT = 6364136223846793005
_LCG_INC = 1442695040888963407
_LCG_MASK = (1 << 64) - 1


class Lcg:
    """The 64-bit LCG behind the strict-upper random fixtures."""

    def __init__(self, seed: int):
        self.state = seed & _LCG_MASK

    def next_raw(self) -> int:
        self.state = (_LCG_MULT * self.state + _LCG_INC) & _LCG_MASK
        return self.state

    def next_entry(self) -> int:
        """Small integer in {-2..2}."""
        return (self.next_raw() >> 33) % 5 - 2


def _int_det(a: list[list[int]]) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    n = len(a)
    m = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division is the Bareiss invariant
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[-1][-1]


def _pattern_algebra(m: int, n: int) -> list[np.ndarray]:
    def unit(i, j):
        p = np.zeros((m, m), dtype=np.int64)
        p[i, j] = 1
        return p

    if m < 2 or n < 1:
        raise InputError("strict-upper fixtures need m >= 2 and n >= 1")
    if n <= 2:
        if m < n + 1:
            raise InputError(f"strict-upper with n = {n} needs m >= {n + 1}")
        return [unit(0, j) for j in range(1, n + 1)]
    if m < n:
        raise InputError(f"strict-upper with n = {n} needs m >= {n}")
    pats = [unit(0, 1), unit(1, 2), unit(0, 2)]
    pats += [unit(0, j) for j in range(3, n)]
    return pats


def strict_upper_generators(m: int, n: int, seed: int) -> list[np.ndarray]:
    """The n generators of fixture strict-upper-m-n-seed (see the module
    docstring for the exact scheme)."""
    pats = _pattern_algebra(m, n)
    lcg = Lcg(seed)

    for attempt in range(100):
        rows = [[lcg.next_entry() for _ in range(n)] for _ in range(n)]
        if _int_det(rows) != 0:
            mix = np.array(rows, dtype=np.int64)
            break
    else:
        raise InputError(
            f"strict-upper-{m}-{n}-{seed}: no invertible mixing matrix in 100 draws"
        )

    s = np.zeros((m, m), dtype=np.int64)
    for i in range(m):
        for j in range(i + 1, m):
            s[i, j] = lcg.next_entry()
    u = np.eye(m, dtype=np.int64) + s
    # finite Neumann series: S is nilpotent, so this inverse is exact integer
    u_inv = np.eye(m, dtype=np.int64)
    power = np.eye(m, dtype=np.int64)
    for _ in range(m - 1):
        power = -power @ s
        u_inv = u_inv + power

    gens = []
    for i in range(n):
        combo = sum(int(mix[i, j]) * pats[j] for j in range(n))
        gens.append((u @ combo @ u_inv).astype(np.complex128))
    return gens


def _boasso_2x2() -> list[np.ndarray]:
    y = np.array([[1.0, 1.0], [-1.0, -1.0]], dtype=np.complex128)
    x = np.array([[0.0, 0.5], [0.5, 0.0]], dtype=np.complex128)
    return [y, x]


def _heisenberg_3() -> list[np.ndarray]:
    def unit(a, b):
        g = np.zeros((3, 3), dtype=np.complex128)
        g[a, b] = 1.0
        return g

    return [unit(0, 1), unit(1, 2), unit(0, 2)]


def _diag_2() -> list[np.ndarray]:
    return [np.diag([1.0, 2.0]).astype(np.complex128)]


FIXTURES = {
    "boasso-2x2": {
        "generator_names": ["y", "x"],
        "build": _boasso_2x2,
        "description": "solvable non-nilpotent pair on C^2 (bracket(x, y) = y)",
    },
    "heisenberg-3": {
        "generator_names": ["e12", "e23", "e13"],
        "build": _heisenberg_3,
        "description": "Heisenberg algebra on C^3 (nilpotent)",
    },
    "diag-2": {
        "generator_names": ["d"],
        "build": _diag_2,
        "description": "single diagonal operator diag(1, 2)",
    },
}

_STRICT_UPPER_RE = re.compile(r"^strict-upper-(\d+)-(\d+)-(\d+)$")


def fixture_names() -> list[str]:
    """Named fixtures plus the pattern for the random family."""
    return sorted(FIXTURES) + ["strict-upper-<m>-<n>-<seed>"]


def fixture_generators(name: str):
    """(generator name list, matrix list) for a fixture name."""
    if name in FIXTURES:
        entry = FIXTURES[name]
        return list(entry["generator_names"]), entry["build"]()
    match = _STRICT_UPPER_RE.match(name)
    if match:
        m, n, seed = (int(g) for g in match.groups())
        gens = strict_upper_generators(m, n, seed)
        return [f"g{i + 1}" for i in range(n)], gens
    raise InputError(f"unknown fixture {name!r}", field="fixture")


def fixture_rep(name: str, tol: ToleranceProfile = DEFAULT_TOL) -> LieRep:
    _, gens = fixture_generators(name)
    return build_rep(gens, tol)
