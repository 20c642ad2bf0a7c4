import itertools

import numpy as np
import pytest

from witnesslab import (
    BellKind,
    DomainError,
    Gate,
    Message,
    StructuralError,
    ThermalParams,
    bell_state,
    epr_gate,
    grape_target_pipeline,
    message_operator,
    pauli_vector,
    pseudo_epr,
    superdense_run,
)
from witnesslab.circuits import grape_unitary, gradient_dephase
from witnesslab.states import PAULI_LABELS, _BELL_VECTORS


def apply_to_ket(gate, ket):
    return gate.unitary @ np.asarray(ket, dtype=complex)


def same_ray(u, v):
    # equality of states up to a global phase
    return abs(abs(np.vdot(u, v)) - 1.0) < 1e-12


def test_gate_rejects_non_unitary():
    with pytest.raises(StructuralError):
        Gate(np.ones((4, 4)), "bad")


def test_message_bits_validated():
    with pytest.raises(DomainError):
        Message(2, 0)


def test_epr_gate_creates_cat_state():
    out = apply_to_ket(epr_gate(), [1, 0, 0, 0])
    assert same_ray(out, _BELL_VECTORS[BellKind.PHI_PLUS])


def test_epr_gate_on_one_zero():
    out = apply_to_ket(epr_gate(), [0, 0, 1, 0])
    assert same_ray(out, _BELL_VECTORS[BellKind.PHI_MINUS])


def test_epr_gate_unitarity():
    u = epr_gate().unitary
    assert np.max(np.abs(u.conj().T @ u - np.eye(4))) < 1e-12


def test_pseudo_epr_pinned_columns():
    gate = pseudo_epr()
    assert same_ray(apply_to_ket(gate, [1, 0, 0, 0]), _BELL_VECTORS[BellKind.PHI_MINUS])
    assert same_ray(apply_to_ket(gate, [0, 0, 0, 1]), _BELL_VECTORS[BellKind.PSI_PLUS])
    # documented completion on the free columns
    assert same_ray(apply_to_ket(gate, [0, 1, 0, 0]), _BELL_VECTORS[BellKind.PSI_MINUS])
    assert same_ray(apply_to_ket(gate, [0, 0, 1, 0]), _BELL_VECTORS[BellKind.PHI_PLUS])
    u = gate.unitary
    assert np.max(np.abs(u.conj().T @ u - np.eye(4))) < 1e-12


def test_message_operator_identity_case():
    assert np.allclose(message_operator(Message(0, 0)).unitary, np.eye(4), atol=1e-12)


def test_message_operator_bell_basis_action():
    phip = _BELL_VECTORS[BellKind.PHI_PLUS]
    out10 = apply_to_ket(message_operator(Message(1, 0)), phip)
    assert same_ray(out10, _BELL_VECTORS[BellKind.PSI_PLUS])
    out11 = apply_to_ket(message_operator(Message(1, 1)), phip)
    assert same_ray(out11, _BELL_VECTORS[BellKind.PSI_MINUS])


# ---------------------------------------------------------------------------
# superdense coding
# ---------------------------------------------------------------------------

def test_superdense_pure_reference_messages():
    full = ThermalParams(1.0, 1.0)
    r = superdense_run(full, Message(0, 0))
    assert abs(r.mz_i - 1.0) < 1e-12 and abs(r.mz_s - 1.0) < 1e-12
    r = superdense_run(full, Message(1, 1))
    assert abs(r.mz_i + 1.0) < 1e-12 and abs(r.mz_s + 1.0) < 1e-12


def test_superdense_mixed_polarizations():
    r = superdense_run(ThermalParams(0.3, 0.7), Message(1, 0))
    # z rides on spin I, x on spin S
    assert abs(r.mz_i - 0.3) < 1e-12
    assert abs(r.mz_s + 0.7) < 1e-12


def test_superdense_sign_structure_on_grid():
    grid = [0.0, 0.25, 0.5, 0.75, 1.0]
    for eps_i, eps_s in itertools.product(grid, grid):
        thermal = ThermalParams(eps_i, eps_s)
        for x, z in itertools.product((0, 1), (0, 1)):
            r = superdense_run(thermal, Message(x, z))
            assert abs(r.mz_i - (-1) ** z * eps_i) < 1e-10
            assert abs(r.mz_s - (-1) ** x * eps_s) < 1e-10


def test_superdense_pure_decoding_is_deterministic():
    for x, z in itertools.product((0, 1), (0, 1)):
        r = superdense_run(ThermalParams(1.0, 1.0), Message(x, z))
        diag = np.diag(r.rho_f.matrix).real
        k = int(np.argmax(diag))
        assert diag[k] > 1.0 - 1e-12
        # basis index |z x>: spin I carries z, spin S carries x
        assert (k >> 1, k & 1) == (z, x)


def test_decoded_magnetizations_equal_bell_basis_correlations():
    # measuring Z on the decoded state is the same as measuring XX / ZZ on
    # the entangled intermediate: the bridge that lets spectra stand in for
    # Bell-basis measurements
    rng = np.random.default_rng(51)
    for _ in range(10):
        eps = rng.uniform(0, 1, 2)
        r = superdense_run(ThermalParams(*eps), Message(0, 0))
        vec = pauli_vector(r.rho1)
        assert abs(r.mz_i - vec[PAULI_LABELS.index("XX")]) < 1e-12
        assert abs(r.mz_s - vec[PAULI_LABELS.index("ZZ")]) < 1e-12


def test_superdense_rho1_is_bell_diagonal():
    rng = np.random.default_rng(53)
    for _ in range(10):
        eps = rng.uniform(0, 1, 2)
        r = superdense_run(ThermalParams(*eps), Message(0, 0))
        vec = pauli_vector(r.rho1)
        support = {PAULI_LABELS[k] for k in np.nonzero(np.abs(vec) > 1e-12)[0]}
        assert support <= {"XX", "YY", "ZZ"}


# ---------------------------------------------------------------------------
# preparation pipeline
# ---------------------------------------------------------------------------

def test_grape_unitary_first_column():
    col = grape_unitary().unitary[:, 0]
    assert np.allclose(col, [np.sqrt(0.6), 0, 0, np.sqrt(0.4)], atol=1e-12)


def test_gradient_dephase_kills_coherences():
    zero = np.zeros((4, 4), dtype=complex)
    zero[0, 0] = 1.0
    from witnesslab import DensityMatrix

    pumped = grape_unitary().apply(DensityMatrix(zero))
    dephased = gradient_dephase(pumped)
    assert np.allclose(dephased.matrix, np.diag([0.6, 0, 0, 0.4]), atol=1e-12)


def test_grape_pipeline_hits_target_correlations():
    vec = pauli_vector(grape_target_pipeline())
    got = [vec[PAULI_LABELS.index(lab)] for lab in ("XX", "YY", "ZZ")]
    assert np.allclose(got, [-0.2, 1.0, 0.2], atol=1e-10)


def test_grape_pipeline_spectrum():
    eigs = np.linalg.eigvalsh(grape_target_pipeline().matrix)
    assert np.allclose(eigs, [0, 0, 0.4, 0.6], atol=1e-10)


def test_grape_pipeline_is_phi_minus_psi_plus_mixture():
    rho = grape_target_pipeline().matrix
    expected = 0.6 * bell_state(BellKind.PHI_MINUS).matrix + 0.4 * bell_state(BellKind.PSI_PLUS).matrix
    assert np.max(np.abs(rho - expected)) < 1e-10
