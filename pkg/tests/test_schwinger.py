import math

import numpy as np
import pytest

import oracles
from relphase import (
    PrimitiveConvention,
    SupportError,
    TwoModeState,
    apply_jminus,
    apply_jplus,
    apply_jz,
    commutator_residuals,
    j_squared_eigencheck,
    marginal_pdf,
    rotate_z,
    to_jm,
)

PHOTONIC = PrimitiveConvention.PHOTONIC
FERMIONIC = PrimitiveConvention.FERMIONIC


def test_jz_eigenvalues():
    one_r = TwoModeState({(1, 0): 1.0}, 1)
    assert apply_jz(one_r, PHOTONIC).amplitudes[(1, 0)] == 1.0
    assert apply_jz(one_r, FERMIONIC).amplitudes[(1, 0)] == 0.5
    balanced = TwoModeState({(1, 1): 1.0}, 2)
    assert (1, 1) not in apply_jz(balanced, PHOTONIC).amplitudes  # annihilated


def test_photonic_lowering_skips_m_zero():
    img = apply_jminus(TwoModeState({(1, 0): 1.0}, 1), PHOTONIC)
    assert dict(img.amplitudes) == {(0, 1): 2.0}


def test_fermionic_lowering_unit_coefficient():
    img = apply_jminus(TwoModeState({(1, 0): 1.0}, 1), FERMIONIC)
    assert dict(img.amplitudes) == {(0, 1): 1.0}


def test_raising_annihilates_vacuum():
    img = apply_jplus(TwoModeState({(0, 0): 1.0}, 0), PHOTONIC)
    assert not img.amplitudes


def test_ladder_matrix_elements_match_kron_oracle():
    rng = np.random.default_rng(0)
    n_max = 5
    for photonic, conv in ((True, PHOTONIC), (False, FERMIONIC)):
        jp, jm, jz, simplex = oracles.kron_j_ops(photonic, n_max)
        d = n_max + 2
        amp = oracles.random_two_amp(rng, n_max)
        state = TwoModeState(amp, n_max)
        vec = np.zeros(d * d, complex)
        for (ns, na), v in amp.items():
            vec[ns * d + na] = v
        for apply_fn, mat in ((apply_jplus, jp), (apply_jminus, jm), (apply_jz, jz)):
            img = apply_fn(state, conv)
            want = mat @ vec
            got = np.zeros(d * d, complex)
            for (ns, na), v in img.amplitudes.items():
                got[ns * d + na] = v
            assert np.abs(got - want).max() < 1e-12


def test_jsquared_photonic_one_photon():
    # Pauli algebra on the doubled operators: eigenvalue j(j+2) = 3
    val = j_squared_eigencheck(TwoModeState({(1, 0): 1.0}, 1), PHOTONIC)
    assert abs(val - 3.0) < 1e-12


def test_jsquared_photonic_two_photon_branch():
    amp = oracles.xnumber_amp(2)
    val = j_squared_eigencheck(TwoModeState(amp, 2), PHOTONIC)
    assert abs(val - 8.0) < 1e-12  # j(j+2) with j=2


def test_jsquared_fermionic():
    val = j_squared_eigencheck(TwoModeState({(1, 1): 1.0}, 2), FERMIONIC)
    assert abs(val - 2.0) < 1e-12  # j(j+1) with j=1
    val = j_squared_eigencheck(TwoModeState({(1, 0): 1.0}, 1), FERMIONIC)
    assert abs(val - 0.75) < 1e-12  # j=1/2


def test_jsquared_rejects_mixed_branches():
    state = TwoModeState({(1, 0): 1 / math.sqrt(2), (2, 0): 1 / math.sqrt(2)}, 2)
    with pytest.raises(SupportError):
        j_squared_eigencheck(state, PHOTONIC)


def test_rotation_full_turn_is_identity():
    rng = np.random.default_rng(1)
    state = TwoModeState(oracles.random_two_amp(rng, 4), 4)
    back = rotate_z(state, 2 * math.pi)
    for k, v in state.amplitudes.items():
        assert abs(back.amplitudes[k] - v) < 1e-12


def test_rotation_phases_single_photon():
    img = rotate_z(TwoModeState({(1, 0): 1.0}, 1), 0.37)
    assert abs(img.amplitudes[(1, 0)] - np.exp(-1j * 0.37)) < 1e-15


def test_rotation_equals_differential_phase_shift():
    rng = np.random.default_rng(2)
    state = TwoModeState(oracles.random_two_amp(rng, 5), 5)
    phi = 0.83
    rotated = rotate_z(state, phi)
    for (nr, nl), v in state.amplitudes.items():
        differential = v * np.exp(-1j * nr * phi) * np.exp(1j * nl * phi)
        assert abs(rotated.amplitudes[(nr, nl)] - differential) < 1e-15


def test_quarter_turn_maps_x_photon_to_y_photon():
    x_photon = TwoModeState({(1, 0): 1 / math.sqrt(2), (0, 1): 1 / math.sqrt(2)}, 1)
    y_photon = {(1, 0): -1j / math.sqrt(2), (0, 1): 1j / math.sqrt(2)}
    rotated = rotate_z(x_photon, math.pi / 2)
    overlap = sum(np.conj(y_photon[k]) * v for k, v in rotated.amplitudes.items())
    assert abs(abs(overlap) - 1.0) < 1e-12


def test_rotation_shifts_angle_distribution():
    rng = np.random.default_rng(3)
    state = TwoModeState(oracles.random_two_amp(rng, 4), 4)
    k = 128
    steps = 9
    theta = steps * 2 * np.pi / k
    base = marginal_pdf(to_jm(state, PHOTONIC), k).density
    moved = marginal_pdf(to_jm(rotate_z(state, theta), PHOTONIC), k).density
    assert np.abs(moved - np.roll(base, -steps)).max() < 1e-12


def test_photonic_m_parity():
    rng = np.random.default_rng(4)
    jm = to_jm(TwoModeState(oracles.random_two_amp(rng, 6), 6), PHOTONIC)
    for j, m in jm.amplitudes:
        assert (j - m) % 2 == 0
        assert (j % 2) == (abs(m) % 2)


@pytest.mark.parametrize("convention,constant", [(PHOTONIC, 2.0), (FERMIONIC, 1.0)])
def test_commutator_residuals(convention, constant):
    report = commutator_residuals(convention, 6)
    assert report.structure_constant == constant
    assert report.max_residual() < 1e-12


def test_z_ladder_raises_m_by_two_photonic():
    balanced = TwoModeState({(1, 1): 1.0}, 2)
    jp = apply_jplus(balanced, PHOTONIC)
    comm = {
        k: apply_jz(jp, PHOTONIC).amplitudes.get(k, 0j)
        - apply_jplus(apply_jz(balanced, PHOTONIC), PHOTONIC).amplitudes.get(k, 0j)
        for k in jp.amplitudes
    }
    for k, v in comm.items():
        assert abs(v - 2.0 * jp.amplitudes[k]) < 1e-12
