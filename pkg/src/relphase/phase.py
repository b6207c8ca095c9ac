"""Single-mode continuous phase representation.

The number amplitudes are the Fourier-series coefficients of the phase
wavefunction, psi(phi) = sum_n psi_n e^{-i n phi}, sampled on the uniform
grid phi_k = -pi + 2 pi k / K. All integrands are trigonometric polynomials,
so the plain periodic Riemann sum is an exact quadrature whenever K exceeds
the bandwidth; constructors enforce K > 2 n_max.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import AliasingError
from .fock import SingleModeState

DEFAULT_GRID_SIZE = 1024


def angular_grid(k: int) -> np.ndarray:
    """K uniformly spaced angles on [-pi, pi)."""
    if k < 1:
        raise ValueError("grid size must be positive")
    return -np.pi + 2.0 * np.pi * np.arange(k) / k


def eval_fourier_series(coeffs: dict[int, complex], k: int) -> np.ndarray:
    """Evaluate f(phi_j) = sum_m c_m e^{-i m phi_j} on the K-point grid.

    Integer frequencies only; the span of occupied m must be < K.
    """
    lo = min(coeffs)
    hi = max(coeffs)
    if hi - lo >= k:
        raise AliasingError(f"frequency span {hi - lo} does not fit a {k}-point grid")
    packed = np.zeros(k, dtype=complex)
    for m, c in coeffs.items():
        # e^{-i m phi_j} = (-1)^m e^{-2 pi i m j / K} on this grid
        packed[m % k] += c * (-1) ** (m % 2)
    return np.fft.fft(packed)


@dataclass(frozen=True)
class PhaseWavefunction:
    phi: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        for name in ("phi", "values"):
            arr = np.asarray(getattr(self, name))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.phi.shape != self.values.shape:
            raise ValueError("grid and values must have matching shapes")

    def norm_squared(self) -> float:
        """(1/2pi) integral |psi|^2 dphi as the periodic Riemann sum."""
        return float(np.mean(np.abs(self.values) ** 2))


@dataclass(frozen=True)
class AngularPdf:
    """Sampled probability density per radian on [-pi, pi)."""

    phi: np.ndarray
    density: np.ndarray

    def __post_init__(self):
        for name in ("phi", "density"):
            arr = np.asarray(getattr(self, name), dtype=float if name == "density" else None)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.phi.shape != self.density.shape:
            raise ValueError("grid and density must have matching shapes")
        if np.any(self.density < 0):
            raise ValueError("densities must be non-negative")
        total = self.integral()
        if abs(total - 1.0) > 1e-8:
            raise ValueError(f"density integrates to {total!r}, not 1")

    def integral(self) -> float:
        return float(np.mean(self.density)) * 2.0 * np.pi

    def value_at(self, phi: float) -> float:
        """Density at a grid-aligned angle (exact index lookup)."""
        k = self.phi.size
        idx = (phi + np.pi) * k / (2.0 * np.pi)
        j = int(round(idx))
        if abs(idx - j) > 1e-9:
            raise ValueError(f"phi={phi} is not on the {k}-point grid")
        return float(self.density[j % k])


def _check_grid(state: SingleModeState, k: int) -> None:
    if k <= 2 * state.n_max:
        raise AliasingError(
            f"grid size {k} admits aliasing for n_max={state.n_max}; need K > {2 * state.n_max}"
        )


def phase_wavefunction(state: SingleModeState, k: int = DEFAULT_GRID_SIZE) -> PhaseWavefunction:
    """psi(phi_k) = sum_n psi_n e^{-i n phi_k}, evaluated by FFT."""
    _check_grid(state, k)
    coeffs = {n: state.amplitudes[n] for n in range(state.n_max + 1)}
    return PhaseWavefunction(angular_grid(k), eval_fourier_series(coeffs, k))


def phase_pdf(state: SingleModeState, k: int = DEFAULT_GRID_SIZE) -> AngularPdf:
    """P(phi) = |psi(phi)|^2 / 2pi."""
    wf = phase_wavefunction(state, k)
    return AngularPdf(wf.phi, np.abs(wf.values) ** 2 / (2.0 * np.pi))


def ml_phase_pdf(state: SingleModeState, k: int = DEFAULT_GRID_SIZE) -> AngularPdf:
    """Phase density after stripping the number-amplitude phases (|psi_n|)."""
    stripped = SingleModeState(np.abs(state.amplitudes).astype(complex))
    return phase_pdf(stripped, k)


def number_moment_spectral(
    state: SingleModeState, order: int, k: int = DEFAULT_GRID_SIZE
) -> float:
    """k-th number moment evaluated on the phase grid by spectral differentiation.

    Samples psi(phi), differentiates in the Fourier domain, and integrates
    psi* against the result; agrees with sum_n n^order |psi_n|^2.
    """
    if order < 0 or order != int(order):
        raise ValueError("moment order must be a non-negative integer")
    wf = phase_wavefunction(state, k)
    coeffs = np.fft.ifft(wf.values)
    freqs = np.fft.fftfreq(k) * k
    deriv = np.fft.fft(coeffs * freqs ** order)
    return float(np.mean(np.conj(wf.values) * deriv).real)


@dataclass(frozen=True)
class PaleyWienerReport:
    """Discretized log-integrability diagnostics of a phase density.

    integral_log_abs is (1/2pi) integral |log |psi(phi)|| dphi with grid
    magnitudes floored at machine epsilon; ``floored`` flags whether the
    floor was hit anywhere.
    """

    integral_log_abs: float
    min_density: float
    floored: bool
    density: np.ndarray = field(repr=False)

    def fraction_below(self, eps: float) -> float:
        return float(np.count_nonzero(self.density < eps)) / self.density.size


def paley_wiener_diagnostics(pdf: AngularPdf) -> PaleyWienerReport:
    """Diagnose how close a density comes to vanishing on the grid."""
    mags = np.sqrt(2.0 * np.pi * pdf.density)
    floor = np.finfo(float).eps
    floored = bool(np.any(mags < floor))
    integral = float(np.mean(np.abs(np.log(np.maximum(mags, floor)))))
    return PaleyWienerReport(
        integral_log_abs=integral,
        min_density=float(pdf.density.min()),
        floored=floored,
        density=pdf.density,
    )
