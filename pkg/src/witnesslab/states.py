"""State families: Bell basis, Bell-diagonal geometry, thermal and pseudo-pure states."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError
from .qmat import (
    TWO_SPIN_LABELS,
    TWO_SPIN_PAULIS,
    DensityMatrix,
    HermitianOp,
    partial_trace,
)

# non-identity Pauli strings, the order used by pauli_vector and tomography
PAULI_LABELS = TWO_SPIN_LABELS[1:]


class BellKind(Enum):
    PHI_PLUS = "phi+"
    PSI_PLUS = "psi+"
    PHI_MINUS = "phi-"
    PSI_MINUS = "psi-"


# state vectors in the |00>,|01>,|10>,|11> basis
_BELL_VECTORS = {
    BellKind.PHI_PLUS: np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2),
    BellKind.PSI_PLUS: np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2),
    BellKind.PHI_MINUS: np.array([1, 0, 0, -1], dtype=complex) / np.sqrt(2),
    BellKind.PSI_MINUS: np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2),
}

# (<XX>, <YY>, <ZZ>) of each Bell state; each triple has product -1
BELL_CORRELATIONS = {
    BellKind.PHI_PLUS: (1.0, -1.0, 1.0),
    BellKind.PSI_PLUS: (1.0, 1.0, -1.0),
    BellKind.PHI_MINUS: (-1.0, 1.0, 1.0),
    BellKind.PSI_MINUS: (-1.0, -1.0, -1.0),
}

# order of the weights returned by bell_probabilities
BELL_ORDER = (BellKind.PHI_PLUS, BellKind.PSI_PLUS, BellKind.PHI_MINUS, BellKind.PSI_MINUS)


def _bd_weights(c1: float, c2: float, c3: float) -> tuple[float, float, float, float]:
    return tuple(
        (1.0 + c1 * s1 + c2 * s2 + c3 * s3) / 4.0
        for (s1, s2, s3) in (BELL_CORRELATIONS[k] for k in BELL_ORDER)
    )


@dataclass(frozen=True)
class BellDiagonalParams:
    """Correlation triple (c1, c2, c3) of a Bell-diagonal state.

    Physicality requires every Bell-basis weight (1 + c.s)/4 to be
    nonnegative, which confines (c1, c2, c3) to the tetrahedron spanned by
    the four Bell correlation triples.
    """

    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        for name in ("c1", "c2", "c3"):
            v = getattr(self, name)
            if not -1.0 <= v <= 1.0:
                raise DomainError(f"{name} = {v} outside [-1, 1]")
        weights = _bd_weights(self.c1, self.c2, self.c3)
        for kind, w in zip(BELL_ORDER, weights):
            if w < -1e-9:
                raise DomainError(
                    f"unphysical correlation triple: weight on {kind.value} is {w:.3e}"
                )


@dataclass(frozen=True)
class ThermalParams:
    """Per-spin polarizations of the thermal two-spin state."""

    eps_i: float
    eps_s: float

    def __post_init__(self):
        for name, v in (("eps_i", self.eps_i), ("eps_s", self.eps_s)):
            if not 0.0 <= v <= 1.0:
                raise DomainError(f"{name} = {v} outside [0, 1]")


def bell_state(kind: BellKind) -> DensityMatrix:
    """Rank-1 projector onto the named Bell state."""
    v = _BELL_VECTORS[kind]
    return DensityMatrix(np.outer(v, v.conj()))


def bell_diagonal(params: BellDiagonalParams) -> DensityMatrix:
    """rho = (1/4)(1 + c1 XX + c2 YY + c3 ZZ), so that <sigma_i sigma_i> = c_i."""
    rho = 0.25 * (
        TWO_SPIN_PAULIS[0]
        + params.c1 * TWO_SPIN_PAULIS[TWO_SPIN_LABELS.index("XX")]
        + params.c2 * TWO_SPIN_PAULIS[TWO_SPIN_LABELS.index("YY")]
        + params.c3 * TWO_SPIN_PAULIS[TWO_SPIN_LABELS.index("ZZ")]
    )
    return DensityMatrix(rho)


def bell_probabilities(params: BellDiagonalParams) -> tuple[float, float, float, float]:
    """Bell-basis weights (phi+, psi+, phi-, psi-) of the Bell-diagonal state."""
    return _bd_weights(params.c1, params.c2, params.c3)


def is_separable_bd(params: BellDiagonalParams) -> bool:
    """Octahedron test: a physical Bell-diagonal state is separable iff |c|_1 <= 1."""
    return abs(params.c1) + abs(params.c2) + abs(params.c3) <= 1.0 + 1e-12


def thermal_state(params: ThermalParams) -> DensityMatrix:
    """Product of single-spin equilibrium states diag((1+eps)/2, (1-eps)/2)."""
    spin_i = np.diag([(1 + params.eps_i) / 2, (1 - params.eps_i) / 2])
    spin_s = np.diag([(1 + params.eps_s) / 2, (1 - params.eps_s) / 2])
    return DensityMatrix(np.kron(spin_i, spin_s).astype(complex))


def pseudo_pure(eps: float, rho1: DensityMatrix) -> DensityMatrix:
    """Convex mixture ((1-eps)/4) * identity + eps * rho1."""
    if not 0.0 <= eps <= 1.0:
        raise DomainError(f"eps = {eps} outside [0, 1]")
    dim = rho1.dim
    return DensityMatrix((1.0 - eps) / dim * np.eye(dim) + eps * rho1.matrix)


def pauli_vector(rho: DensityMatrix) -> np.ndarray:
    """Expectations of the 15 non-identity Pauli strings, in PAULI_LABELS order."""
    if rho.dim != 4:
        raise DomainError("pauli_vector needs a two-spin state")
    return np.real(np.einsum("kab,ba->k", TWO_SPIN_PAULIS[1:], rho.matrix))


def from_pauli_vector(expectations) -> DensityMatrix:
    """Exact linear inverse of pauli_vector.

    Raises if the reconstructed matrix is not a valid state; use
    ``readout.pauli_tomography`` for noisy data that may need projection.
    """
    e = np.asarray(expectations, dtype=float)
    if e.shape != (15,):
        raise DomainError(f"expected 15 expectations, got shape {e.shape}")
    rho = (TWO_SPIN_PAULIS[0] + np.einsum("k,kab->ab", e, TWO_SPIN_PAULIS[1:])) / 4.0
    return DensityMatrix(rho)


def reduced_states(rho: DensityMatrix) -> tuple[HermitianOp, HermitianOp]:
    """Both single-spin marginals (spin I, spin S)."""
    return partial_trace(rho, keep="I"), partial_trace(rho, keep="S")
