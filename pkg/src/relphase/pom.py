"""Relative-phase measurement distributions on the full two-mode space.

Every (j, m) amplitude map defines per-branch angular wavefunctions
Psi_j(phi) = sum_m Psi_{j,m} e^{-i m phi}. Eliminating the unmeasurable
absolute time t gives two distributions:

* marginal (time average): P_M(phi) = (1/2pi) sum_j |Psi_j(phi)|^2 --
  probabilities add across branches;
* conditional (snapshot at time t): P_C(phi; t) =
  |sum_j e^{-i j t} Psi_j(phi)|^2 / (2 pi C(t)) -- amplitudes add, and
  C(t) = sum_m |sum_j Psi_{j,m} e^{-i j t}|^2 is 2pi times the probability
  density of the conditioning time itself.

The time average of C-weighted snapshots reproduces the marginal exactly
(the degeneracy-free part of C integrates the cross-branch terms away),
which the test suite uses as the master consistency check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import AliasingError, ConditioningError, SupportError
from .fock import JmState, PrimitiveConvention
from .phase import DEFAULT_GRID_SIZE, AngularPdf, angular_grid

C_MIN = 1e-12


@dataclass(frozen=True)
class BranchSet:
    """Per-branch angular wavefunctions on a shared grid."""

    convention: PrimitiveConvention
    phi: np.ndarray
    branches: Mapping[float, np.ndarray]

    def __post_init__(self):
        arr = np.asarray(self.phi)
        arr.setflags(write=False)
        object.__setattr__(self, "phi", arr)
        frozen = {}
        for j, vals in dict(self.branches).items():
            v = np.asarray(vals, dtype=complex)
            if v.shape != self.phi.shape:
                raise ValueError("branch samples must match the grid")
            v.setflags(write=False)
            frozen[j] = v
        object.__setattr__(self, "branches", frozen)
        total = math.fsum(float(np.mean(np.abs(v) ** 2)) for v in self.branches.values())
        if abs(total - 1.0) > 1e-10:
            raise ValueError(f"branch norms sum to {total!r}, not 1")

    def total_norm(self) -> float:
        return math.fsum(float(np.mean(np.abs(v) ** 2)) for v in self.branches.values())


def _check_grid(state: JmState, k: int) -> None:
    m_max = max((abs(m) for _, m in state.amplitudes), default=0.0)
    if k <= 2 * m_max:
        raise AliasingError(f"grid size {k} admits aliasing for |m| up to {m_max}")


def _branch_values(state: JmState, phi: np.ndarray, t: float = 0.0) -> dict[float, np.ndarray]:
    """Branch sums with the conditioning phase e^{-i j t} applied."""
    by_j: dict[float, dict[float, complex]] = {}
    for (j, m), v in state.amplitudes.items():
        by_j.setdefault(j, {})[m] = v
    out = {}
    for j, terms in sorted(by_j.items()):
        ms = np.array(sorted(terms))
        amps = np.array([terms[m] for m in ms]) * np.exp(-1j * j * t)
        out[j] = amps @ np.exp(-1j * np.outer(ms, phi))
    return out


def branch_wavefunctions(state: JmState, k: int = DEFAULT_GRID_SIZE) -> BranchSet:
    """Sample Psi_j(phi) = sum_m Psi_{j,m} e^{-i m phi} for every branch."""
    _check_grid(state, k)
    phi = angular_grid(k)
    return BranchSet(state.convention, phi, _branch_values(state, phi))


def marginal_pdf(state: JmState, k: int = DEFAULT_GRID_SIZE) -> AngularPdf:
    """Time-averaged distribution: branch probabilities added."""
    bs = branch_wavefunctions(state, k)
    density = sum(np.abs(v) ** 2 for v in bs.branches.values()) / (2.0 * np.pi)
    density /= float(np.mean(density)) * 2.0 * np.pi
    return AngularPdf(bs.phi, density)


def _check_m_lattice(state: JmState) -> None:
    """Snapshots add amplitudes across m; mixed integer/half-integer support
    makes that interference 4pi-periodic, outside the [-pi, pi) domain."""
    fracs = {m % 1 for _, m in state.amplitudes}
    if len(fracs) > 1:
        raise SupportError(
            "state mixes integer and half-integer m; its relative-phase "
            "interference is 4pi-periodic and has no density on [-pi, pi)"
        )


def _m_amplitudes(state: JmState, t: float) -> dict[float, complex]:
    """Branch-summed amplitudes per m after the conditioning phase."""
    out: dict[float, complex] = {}
    for (j, m), v in state.amplitudes.items():
        out[m] = out.get(m, 0j) + v * np.exp(-1j * j * t)
    return out


def conditioning_probability(state: JmState, t: float) -> float:
    """C(t) = sum_m |sum_j Psi_{j,m} e^{-i j t}|^2 (2pi times the time density)."""
    return math.fsum(abs(v) ** 2 for v in _m_amplitudes(state, t).values())


def snapshot_pdf(
    state: JmState, t: float, k: int = DEFAULT_GRID_SIZE, c_min: float = C_MIN
) -> AngularPdf:
    """Conditional distribution at time t: branch amplitudes added.

    Refuses times of numerically vanishing conditioning probability instead
    of renormalizing noise.
    """
    _check_grid(state, k)
    _check_m_lattice(state)
    terms = _m_amplitudes(state, t)
    c = math.fsum(abs(v) ** 2 for v in terms.values())
    if c <= c_min:
        raise ConditioningError(f"conditioning probability {c:.3e} at t={t} is below {c_min:g}")
    phi = angular_grid(k)
    ms = np.array(sorted(terms))
    amps = np.array([terms[m] for m in ms])
    values = amps @ np.exp(-1j * np.outer(ms, phi))
    return AngularPdf(phi, np.abs(values) ** 2 / (2.0 * np.pi * c))


def snapshot_pdf_branch_route(
    state: JmState, t: float, k: int = DEFAULT_GRID_SIZE, c_min: float = C_MIN
) -> AngularPdf:
    """Same distribution assembled by summing branch wavefunctions first."""
    _check_grid(state, k)
    _check_m_lattice(state)
    c = conditioning_probability(state, t)
    if c <= c_min:
        raise ConditioningError(f"conditioning probability {c:.3e} at t={t} is below {c_min:g}")
    phi = angular_grid(k)
    total = sum(_branch_values(state, phi, t).values())
    return AngularPdf(phi, np.abs(total) ** 2 / (2.0 * np.pi * c))


def snapshot_sweep(
    state: JmState, times, k: int = DEFAULT_GRID_SIZE, c_min: float = C_MIN
) -> list[AngularPdf | None]:
    """Snapshots along a time grid; refused times yield None (gaps)."""
    out: list[AngularPdf | None] = []
    for t in times:
        try:
            out.append(snapshot_pdf(state, float(t), k, c_min))
        except ConditioningError:
            out.append(None)
    return out


def time_grid_size(state: JmState) -> int:
    """Grid large enough to integrate every branch-difference exponential exactly."""
    return 4 * (int(math.ceil(state.j_max())) + 1)


def absolute_time_pdf(state: JmState, k_t: int | None = None) -> AngularPdf:
    """Density of the conditioning time, C(t)/2pi, on a uniform grid of [-pi, pi)."""
    if k_t is None:
        k_t = time_grid_size(state)
    if k_t < time_grid_size(state):
        raise AliasingError(
            f"time grid {k_t} is below the exact-quadrature size {time_grid_size(state)}"
        )
    ts = angular_grid(k_t)
    by_m: dict[float, dict[float, complex]] = {}
    for (j, m), v in state.amplitudes.items():
        by_m.setdefault(m, {})[j] = v
    density = np.zeros(k_t)
    for terms in by_m.values():
        js = np.array(sorted(terms))
        amps = np.array([terms[j] for j in js])
        density += np.abs(amps @ np.exp(-1j * np.outer(js, ts))) ** 2
    return AngularPdf(ts, density / (2.0 * np.pi))
