"""Dense complex Hermitian matrix core for one- and two-spin operators.

Everything in the package runs through the two value types defined here:
``HermitianOp`` (observables, witnesses) and ``DensityMatrix`` (states).
Conventions fixed once and inherited everywhere:

* spin I is the left (slow) tensor factor, spin S the right one;
* the computational basis is ordered |00>, |01>, |10>, |11> (row-major);
* only dimensions 2 and 4 are supported.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import TOL
from .errors import NumericalConsistencyError, StructuralError

SIGMA_I = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

PAULI_BY_LETTER = {"I": SIGMA_I, "X": SIGMA_X, "Y": SIGMA_Y, "Z": SIGMA_Z}

# the 16 two-spin Pauli strings in lexicographic order (II, IX, ..., ZZ)
TWO_SPIN_LABELS = tuple(a + b for a in "IXYZ" for b in "IXYZ")
TWO_SPIN_PAULIS = np.stack(
    [np.kron(PAULI_BY_LETTER[lab[0]], PAULI_BY_LETTER[lab[1]]) for lab in TWO_SPIN_LABELS]
)
TWO_SPIN_PAULIS.setflags(write=False)


def _as_operator_array(matrix) -> np.ndarray:
    arr = np.array(matrix, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise StructuralError(f"expected a square matrix, got shape {arr.shape}")
    if arr.shape[0] not in (2, 4):
        raise StructuralError(f"only dimensions 2 and 4 are supported, got {arr.shape[0]}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class HermitianOp:
    """A 2x2 or 4x4 Hermitian matrix.

    Inputs that fail the hermiticity check are rejected outright; silently
    symmetrizing would mask bugs upstream.
    """

    matrix: np.ndarray

    def __post_init__(self):
        arr = _as_operator_array(self.matrix)
        object.__setattr__(self, "matrix", arr)
        if np.max(np.abs(arr - arr.conj().T)) > TOL.tol_eq:
            raise StructuralError("matrix is not Hermitian within tol_eq")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __eq__(self, other) -> bool:
        # equality means elementwise agreement within tol_eq, not bit identity
        if not isinstance(other, HermitianOp):
            return NotImplemented
        return self.matrix.shape == other.matrix.shape and bool(
            np.max(np.abs(self.matrix - other.matrix)) <= TOL.tol_eq
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class DensityMatrix(HermitianOp):
    """A Hermitian operator with unit trace and (numerically) no negative eigenvalues."""

    def __post_init__(self):
        super().__post_init__()
        tr = np.trace(self.matrix)
        if abs(tr - 1.0) > TOL.tol_eq:
            raise StructuralError(f"trace must be 1, got {tr}")
        lam_min = float(np.linalg.eigvalsh(self.matrix)[0])
        if lam_min < -TOL.psd_tol:
            raise StructuralError(f"not positive semidefinite: min eigenvalue {lam_min}")


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition with ascending real eigenvalues and orthonormal columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def tensor(a: HermitianOp, b: HermitianOp) -> HermitianOp:
    """Kronecker product with spin I as the left factor."""
    if a.dim != 2 or b.dim != 2:
        raise StructuralError("tensor expects two single-spin (dim 2) operators")
    return HermitianOp(np.kron(a.matrix, b.matrix))


def _pt_arr(arr: np.ndarray, subsystem: str) -> np.ndarray:
    four = arr.reshape(2, 2, 2, 2)
    if subsystem == "I":
        return four.transpose(2, 1, 0, 3).reshape(4, 4)
    if subsystem == "S":
        return four.transpose(0, 3, 2, 1).reshape(4, 4)
    raise StructuralError(f"subsystem must be 'I' or 'S', got {subsystem!r}")


def partial_transpose(rho: HermitianOp, subsystem: str = "I") -> HermitianOp:
    """Transpose one tensor factor.  Involutive and trace preserving."""
    if rho.dim != 4:
        raise StructuralError("partial_transpose needs a two-spin (dim 4) operator")
    return HermitianOp(_pt_arr(rho.matrix, subsystem))


def partial_trace(rho: HermitianOp, keep: str = "I") -> HermitianOp:
    """Trace out one spin, keeping the marginal of the other."""
    if rho.dim != 4:
        raise StructuralError("partial_trace needs a two-spin (dim 4) operator")
    four = rho.matrix.reshape(2, 2, 2, 2)
    if keep == "I":
        return HermitianOp(np.einsum("isjs->ij", four))
    if keep == "S":
        return HermitianOp(np.einsum("isit->st", four))
    raise StructuralError(f"keep must be 'I' or 'S', got {keep!r}")


def eig_hermitian(h: HermitianOp) -> Spectrum:
    """Full eigendecomposition, eigenvalues ascending.

    Backed by LAPACK's Hermitian solver, which is deterministic for identical
    input and comfortably exceeds the reconstruction tolerances required here.
    """
    vals, vecs = np.linalg.eigh(h.matrix)
    return Spectrum(eigenvalues=vals, eigenvectors=vecs)


def _expectation_raw(rho_arr: np.ndarray, obs_arr: np.ndarray) -> float:
    value = complex(np.einsum("ab,ba->", rho_arr, obs_arr))
    if abs(value.imag) > 1e-8:
        raise NumericalConsistencyError(
            f"expectation value has imaginary part {value.imag:.3e}"
        )
    return value.real


def expectation(rho: DensityMatrix, obs: HermitianOp) -> float:
    """Tr(rho * obs).  The imaginary residue is checked, then discarded."""
    if rho.dim != obs.dim:
        raise StructuralError("state and observable dimensions differ")
    return _expectation_raw(rho.matrix, obs.matrix)


def fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, in [0, 1]."""
    if rho.dim != sigma.dim:
        raise StructuralError("states have different dimensions")
    vals, vecs = np.linalg.eigh(rho.matrix)
    sqrt_rho = (vecs * np.sqrt(np.clip(vals, 0.0, None))) @ vecs.conj().T
    inner = np.linalg.eigvalsh(sqrt_rho @ sigma.matrix @ sqrt_rho)
    root = float(np.sum(np.sqrt(np.clip(inner, 0.0, None))))
    return min(1.0, root * root)
