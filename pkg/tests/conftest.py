"""Shared helpers for the test suite."""

import numpy as np

from witnesslab import BellDiagonalParams, DensityMatrix, bell_diagonal


def random_density_matrix(rng, dim=4):
    """Ginibre-distributed full-rank density matrix."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ g.conj().T
    return DensityMatrix(rho / np.trace(rho).real)


def random_physical_c(rng):
    """Uniform sample from the tetrahedron of physical correlation triples."""
    while True:
        c = rng.uniform(-1.0, 1.0, 3)
        if bd_weights(c).min() >= 0.0:
            return c


def bd_weights(c):
    """Bell-basis weights (phi+, psi+, phi-, psi-) of a correlation triple."""
    signs = np.array([[1, -1, 1], [1, 1, -1], [-1, 1, 1], [-1, -1, -1]], dtype=float)
    return (1.0 + signs @ np.asarray(c, dtype=float)) / 4.0


def bd(c1, c2, c3):
    return bell_diagonal(BellDiagonalParams(c1, c2, c3))


def random_product_state(rng):
    """Pure product state |a><a| x |b><b|."""
    def pure(dim):
        v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        v /= np.linalg.norm(v)
        return np.outer(v, v.conj())

    return DensityMatrix(np.kron(pure(2), pure(2)))


def random_separable(rng, max_terms=4):
    """Random convex mixture of pure product states."""
    n = rng.integers(1, max_terms + 1)
    weights = rng.dirichlet(np.ones(n))
    rho = sum(w * random_product_state(rng).matrix for w in weights)
    return DensityMatrix(rho)
