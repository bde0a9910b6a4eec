"""Shared test helpers: independent dense oracles and random instance builders.

The reference Pauli matrices here are built straight from the defining sums
(literal loops, numpy matrix powers, kron) and never touch the package's own
dense_matrix, so they can serve as an independent oracle for the group
arithmetic.
"""

import math
from itertools import combinations, permutations

import numpy as np

from stabame.pauli import PauliProduct, make_pauli
from stabame.search import GraphState, graph_to_group
from stabame.stabgroup import StabilizerGroup


def ref_x_matrix(d: int) -> np.ndarray:
    """X = sum_j |j><j+1| with index addition mod d."""
    m = np.zeros((d, d), dtype=complex)
    for j in range(d):
        m[j, (j + 1) % d] = 1.0
    return m


def ref_z_matrix(d: int) -> np.ndarray:
    """Z = sum_j omega^j |j><j|."""
    return np.diag([np.exp(2j * np.pi * j / d) for j in range(d)])


def ref_pauli_matrix(p: PauliProduct) -> np.ndarray:
    """lambda^phase * kron_k X^x_k Z^z_k via explicit matrix powers."""
    d = p.dimension
    x_mat = ref_x_matrix(d)
    z_mat = ref_z_matrix(d)
    full = None
    for x, z in zip(p.x_exp, p.z_exp):
        site = np.linalg.matrix_power(x_mat, x) @ np.linalg.matrix_power(z_mat, z)
        full = site if full is None else np.kron(full, site)
    lam = np.exp(1j * np.pi / d)
    return lam**p.phase_exp * full


def random_pauli(rng: np.random.Generator, d: int, n: int) -> PauliProduct:
    return make_pauli(
        d, n, int(rng.integers(0, 2 * d)), rng.integers(0, d, n), rng.integers(0, d, n)
    )


def random_graph(rng: np.random.Generator, d: int, n: int) -> GraphState:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            a[i][j] = a[j][i] = int(rng.integers(0, d))
    return GraphState(d, n, tuple(tuple(row) for row in a))


def random_graph_group(rng: np.random.Generator, d: int, n: int) -> StabilizerGroup:
    return graph_to_group(random_graph(rng, d, n))


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Gaussian matrix."""
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def perm_det(matrix) -> int:
    """Leibniz-formula determinant; independent of the package's Bareiss code."""
    k = len(matrix)
    total = 0
    for perm in permutations(range(k)):
        sign = 1
        for i in range(k):
            for j in range(i + 1, k):
                if perm[i] > perm[j]:
                    sign = -sign
        term = sign
        for i in range(k):
            term *= matrix[i][perm[i]]
        total += term
    return total


def snf_diagonal_oracle(matrix) -> list:
    """SNF diagonal d_k = g_k / g_{k-1} where g_k = gcd of all k x k minors."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    r = min(rows, cols)
    minors = [1]
    for k in range(1, r + 1):
        g = 0
        for rsel in combinations(range(rows), k):
            for csel in combinations(range(cols), k):
                sub = [[matrix[i][j] for j in csel] for i in rsel]
                g = math.gcd(g, abs(perm_det(sub)))
        minors.append(g)
    diag = []
    for k in range(1, r + 1):
        diag.append(0 if minors[k] == 0 else minors[k] // minors[k - 1])
    return diag
