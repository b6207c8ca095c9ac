"""Angular-momentum operators built from two oscillators (hbar = 1).

Two conventions are supported. The fermionic primitives carry the textbook
normalization: J_z = (n_u - n_d)/2, J_+ = a_u† a_d, structure constant 1.
The photonic primitives absorb the missing m = 0 by doubling everything:
J_z = n_r - n_l, J_+ = 2 a_r† a_l, so m steps by 2 and the structure
constant is 2. The doubled algebra fixes the Casimir at j(j+2) (it is four
times the fermionic j/2 value); j(j+1) only holds for the fermionic form.

All ladder actions conserve n_s + n_a, so the truncated two-mode space is
closed under the algebra and the commutation relations hold on it exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SupportError
from .fock import PrimitiveConvention, TwoModeState, to_jm


def _scale(convention: PrimitiveConvention) -> float:
    return 2.0 if convention is PrimitiveConvention.PHOTONIC else 1.0


def _m_value(ns: int, na: int, convention: PrimitiveConvention) -> float:
    diff = ns - na
    return float(diff) if convention is PrimitiveConvention.PHOTONIC else diff / 2.0


def apply_jz(state: TwoModeState, convention: PrimitiveConvention) -> TwoModeState:
    """J_z image (unnormalized): amplitude times m."""
    amps = {
        key: v * _m_value(*key, convention) for key, v in state.amplitudes.items()
    }
    return TwoModeState(amps, state.n_max)


def apply_jplus(state: TwoModeState, convention: PrimitiveConvention) -> TwoModeState:
    """J_+ image (unnormalized): moves one quantum from the second mode to the first."""
    c = _scale(convention)
    amps: dict[tuple[int, int], complex] = {}
    for (ns, na), v in state.amplitudes.items():
        if na >= 1:
            key = (ns + 1, na - 1)
            amps[key] = amps.get(key, 0j) + c * math.sqrt((ns + 1) * na) * v
    return TwoModeState(amps, state.n_max)


def apply_jminus(state: TwoModeState, convention: PrimitiveConvention) -> TwoModeState:
    """J_- image (unnormalized): moves one quantum from the first mode to the second."""
    c = _scale(convention)
    amps: dict[tuple[int, int], complex] = {}
    for (ns, na), v in state.amplitudes.items():
        if ns >= 1:
            key = (ns - 1, na + 1)
            amps[key] = amps.get(key, 0j) + c * math.sqrt(ns * (na + 1)) * v
    return TwoModeState(amps, state.n_max)


def casimir_eigenvalue(j: float, convention: PrimitiveConvention) -> float:
    """Closed-form J^2 eigenvalue on a single-j branch."""
    if convention is PrimitiveConvention.PHOTONIC:
        return j * (j + 2.0)
    return j * (j + 1.0)


def _overlap(a: TwoModeState, b: TwoModeState) -> complex:
    keys = set(a.amplitudes) & set(b.amplitudes)
    return complex(sum(np.conj(a.amplitudes[k]) * b.amplitudes[k] for k in keys))


def j_squared_eigencheck(state: TwoModeState, convention: PrimitiveConvention) -> float:
    """J^2 eigenvalue of a single-branch state via the operator identity.

    Applies (J_+ J_- + J_- J_+)/2 + J_z^2 and checks the result against the
    closed form to 1e-12. Mixed-j support is a domain error.
    """
    jm = to_jm(state, convention)
    js = jm.j_values()
    if len(js) != 1:
        raise SupportError(f"state spans several branches j = {js}")
    norm = state.norm_squared()
    if norm == 0.0:
        raise ValueError("cannot check the null state")
    jm_img = apply_jminus(state, convention)
    jp_img = apply_jplus(state, convention)
    jz_img = apply_jz(state, convention)
    val = (
        0.5 * (_overlap(state, apply_jplus(jm_img, convention)).real
               + _overlap(state, apply_jminus(jp_img, convention)).real)
        + _overlap(jz_img, jz_img).real
    ) / norm
    expected = casimir_eigenvalue(js[0], convention)
    if abs(val - expected) > 1e-12 * max(1.0, expected):
        raise AssertionError(
            f"operator identity gives {val!r}, closed form {expected!r}"
        )
    return val


def rotate_z(state: TwoModeState, phi: float) -> TwoModeState:
    """Rotation about z in the circular (photonic) basis: phase e^{-i(n_r-n_l)phi}."""
    amps = {
        (nr, nl): v * np.exp(-1j * (nr - nl) * phi)
        for (nr, nl), v in state.amplitudes.items()
    }
    return TwoModeState(amps, state.n_max)


@dataclass(frozen=True)
class CommutatorReport:
    """Max-abs residuals of the algebra on the truncated two-mode space."""

    structure_constant: float
    cyclic_xyz: float      # [J_i, J_j] - i c eps_ijk J_k over the three pairs
    z_ladder: float        # [J_z, J_pm] -+ c J_pm
    ladder_pair: float     # [J_+, J_-] - 2 c J_z

    def max_residual(self) -> float:
        return max(self.cyclic_xyz, self.z_ladder, self.ladder_pair)


def _dense_operators(convention: PrimitiveConvention, n_max: int):
    basis = [(ns, na) for ns in range(n_max + 1) for na in range(n_max + 1 - ns)]
    index = {key: i for i, key in enumerate(basis)}
    dim = len(basis)

    def build(apply_fn):
        mat = np.zeros((dim, dim), dtype=complex)
        for col, key in enumerate(basis):
            img = apply_fn(TwoModeState({key: 1.0}, n_max), convention)
            for k, v in img.amplitudes.items():
                mat[index[k], col] = v
        return mat

    return build(apply_jplus), build(apply_jminus), build(apply_jz)


def commutator_residuals(convention: PrimitiveConvention, n_max: int) -> CommutatorReport:
    """Explicit-matrix residuals of the commutation relations."""
    jp, jm, jz = _dense_operators(convention, n_max)
    jx = (jp + jm) / 2.0
    jy = (jp - jm) / 2.0j
    c = _scale(convention)

    def comm(a, b):
        return a @ b - b @ a

    cyclic = max(
        np.abs(comm(jx, jy) - 1j * c * jz).max(),
        np.abs(comm(jy, jz) - 1j * c * jx).max(),
        np.abs(comm(jz, jx) - 1j * c * jy).max(),
    )
    z_ladder = max(
        np.abs(comm(jz, jp) - c * jp).max(),
        np.abs(comm(jz, jm) + c * jm).max(),
    )
    ladder_pair = np.abs(comm(jp, jm) - 2.0 * c * jz).max()
    return CommutatorReport(
        structure_constant=c,
        cyclic_xyz=float(cyclic),
        z_ladder=float(z_ladder),
        ladder_pair=float(ladder_pair),
    )
