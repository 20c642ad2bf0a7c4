"""Simulated spectrometer observables: preparatory pulses, doublet line
intensities, correlation extraction, linear tomography, and seeded noise.

The observable model keeps only what the correlation readout consumes: the
two integrated line intensities per nucleus.  Intensities are normalized so
a fully polarized spin read with its standard pulse gives unit total signal,
and each nucleus carries a fixed receiver phase standing in for the perfect
per-spectrum phase adjustment done against the equilibrium reference.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuits import Gate
from .config import TOL
from .errors import DomainError
from .qmat import (
    SIGMA_I,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    TWO_SPIN_PAULIS,
    DensityMatrix,
)
from .witness import CorrelationPair

# detected single-quantum operator on the observed nucleus
_LOWERING = SIGMA_X - 1j * SIGMA_Y

# Receiver phase per nucleus.  With the pulse convention below, the raw
# nucleus-I response to the (y, pi/2, S) reading pulse comes out sign-flipped
# relative to the target <XX>; a perfectly phased receiver absorbs that sign.
# The calibration that produces these values is exercised in the test suite.
_RECEIVER_PHASE = {"I": -1.0, "S": 1.0}


@dataclass(frozen=True)
class PulseSpec:
    """A hard pulse: rotation axis, angle, and the spins it hits."""

    axis: str
    angle: float
    targets: tuple[str, ...]

    def __post_init__(self):
        if self.axis not in ("x", "y"):
            raise DomainError(f"axis must be 'x' or 'y', got {self.axis!r}")
        if not 0.0 < self.angle < 2.0 * np.pi:
            raise DomainError(f"angle {self.angle} outside (0, 2*pi)")
        targets = tuple(self.targets)
        if not targets or any(s not in ("I", "S") for s in targets):
            raise DomainError(f"targets must be a nonempty subset of I, S, got {targets}")
        object.__setattr__(self, "targets", targets)


@dataclass(frozen=True)
class SpectrumPair:
    """The two lines of one nucleus's doublet, as complex intensities."""

    nucleus: str
    line_low: complex
    line_high: complex

    def __post_init__(self):
        if self.nucleus not in ("I", "S"):
            raise DomainError(f"nucleus must be 'I' or 'S', got {self.nucleus!r}")
        for name, v in (("line_low", self.line_low), ("line_high", self.line_high)):
            if abs(v) > 1.0 + TOL.psd_tol:
                raise DomainError(f"{name} magnitude {abs(v)} exceeds the unit reference")

    def difference(self) -> complex:
        return self.line_low - self.line_high


def prep_pulse_unitary(p: PulseSpec) -> Gate:
    """exp(-i * angle/2 * sigma_axis) on each target spin, identity elsewhere."""
    sigma = SIGMA_X if p.axis == "x" else SIGMA_Y
    rot = np.cos(p.angle / 2) * SIGMA_I - 1j * np.sin(p.angle / 2) * sigma
    u_i = rot if "I" in p.targets else SIGMA_I
    u_s = rot if "S" in p.targets else SIGMA_I
    label = f"({p.axis},{p.angle:.4g})_{''.join(p.targets)}"
    return Gate(np.kron(u_i, u_s), label)


def simulate_lines(rho: DensityMatrix, nucleus: str, prep: PulseSpec | None) -> SpectrumPair:
    """Line intensities of one nucleus after an optional preparatory pulse.

    The pulsed state is probed with the lowering operator alone (a) and with
    the partner spin's Z attached (b); inverting the 2x2 Hadamard transform
    that relates these projections to the doublet gives
    line_low = (a + b)/2 and line_high = (a - b)/2.
    """
    rho_p = prep_pulse_unitary(prep).apply(rho).matrix if prep is not None else rho.matrix
    if nucleus == "I":
        a = np.einsum("ab,ba->", rho_p, np.kron(_LOWERING, SIGMA_I))
        b = np.einsum("ab,ba->", rho_p, np.kron(_LOWERING, SIGMA_Z))
    elif nucleus == "S":
        a = np.einsum("ab,ba->", rho_p, np.kron(SIGMA_I, _LOWERING))
        b = np.einsum("ab,ba->", rho_p, np.kron(SIGMA_Z, _LOWERING))
    else:
        raise DomainError(f"nucleus must be 'I' or 'S', got {nucleus!r}")
    phase = _RECEIVER_PHASE[nucleus]
    a, b = phase * complex(a), phase * complex(b)
    return SpectrumPair(nucleus=nucleus, line_low=(a + b) / 2, line_high=(a - b) / 2)


READOUT_PULSE = PulseSpec(axis="y", angle=np.pi / 2, targets=("S",))


def read_correlations(spec_i: SpectrumPair, spec_s: SpectrumPair) -> CorrelationPair:
    """Extract (<XX>, <ZZ>) from the two spectra.

    Assumes both spectra were generated with the (y, pi/2, S) reading pulse:
    <XX> then sits in the real part of the nucleus-I line difference and
    <ZZ> in the real part of the nucleus-S one.
    """
    if spec_i.nucleus != "I" or spec_s.nucleus != "S":
        raise DomainError("pass the nucleus-I spectrum first and nucleus-S second")
    w1 = float(np.clip(spec_i.difference().real, -1.0, 1.0))
    w2 = float(np.clip(spec_s.difference().real, -1.0, 1.0))
    return CorrelationPair(w1=w1, w2=w2)


def measure_yy(rho: DensityMatrix) -> float:
    """<YY> via the spectra pathway with an (x, pi/2) pulse on spin S.

    Under that pulse the YY correlation lands in the dispersive (imaginary)
    quadrature of the nucleus-I line difference.
    """
    lines = simulate_lines(rho, "I", PulseSpec(axis="x", angle=np.pi / 2, targets=("S",)))
    return float(np.clip(lines.difference().imag, -1.0, 1.0))


@dataclass(frozen=True)
class TomographyResult:
    """Reconstructed state plus the Frobenius distance moved by the PSD projection."""

    state: DensityMatrix
    projection_distance: float


def pauli_tomography(expectations) -> TomographyResult:
    """Linear inversion of 15 Pauli expectations, projected back to a state.

    Noisy data can produce negative eigenvalues; those are clipped to zero
    and the spectrum renormalized, which is reported via the projection
    distance (zero when the raw inversion was already physical).
    """
    e = np.asarray(expectations, dtype=float)
    if e.shape != (15,):
        raise DomainError(f"expected 15 expectations, got shape {e.shape}")
    if np.any(np.abs(e) > 1.0):
        raise DomainError("expectations must lie in [-1, 1]")
    raw = (TWO_SPIN_PAULIS[0] + np.einsum("k,kab->ab", e, TWO_SPIN_PAULIS[1:])) / 4.0
    vals, vecs = np.linalg.eigh(raw)
    if vals[0] >= -TOL.psd_tol:
        return TomographyResult(state=DensityMatrix(raw), projection_distance=0.0)
    clipped = np.clip(vals, 0.0, None)
    clipped /= clipped.sum()
    projected = (vecs * clipped) @ vecs.conj().T
    distance = float(np.linalg.norm(projected - raw))
    return TomographyResult(state=DensityMatrix(projected), projection_distance=distance)


def add_noise(value: float, sigma: float, seed: int) -> float:
    """Add seeded Gaussian noise and clamp to the correlation range [-1, 1]."""
    if sigma < 0:
        raise DomainError("sigma must be nonnegative")
    rng = np.random.default_rng(seed)
    return float(np.clip(value + rng.normal(0.0, sigma), -1.0, 1.0))
