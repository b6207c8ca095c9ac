"""Linear-polarization front end in the circular two-mode basis.

An x-polarized excitation with the y mode in vacuum maps onto the right/left
circular modes through a_x† = (a_R† + a_L†)/sqrt(2) (zero relative phase).
Snapshots of the angular distribution of the field direction come from the
conditional measurement; the time-averaged marginal traces out the quantum
polarization ellipse.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import TruncationError
from .fock import (
    PrimitiveConvention,
    TwoModeState,
    coherent_n_max,
    poisson_tail,
    to_jm,
)
from .phase import DEFAULT_GRID_SIZE, AngularPdf
from .pom import marginal_pdf, snapshot_sweep

DEFAULT_TAIL_TOL = 1e-12


@dataclass(frozen=True)
class XNumber:
    """n x-polarized photons, y mode in vacuum."""

    n: int


@dataclass(frozen=True)
class XCoherent:
    """x-polarized coherent excitation of mean photon number mean_n."""

    mean_n: float


@dataclass(frozen=True)
class XSuperposition:
    """Weighted superposition of x-polarized number states."""

    terms: tuple[tuple[int, complex], ...]


LinearPolSpec = Union[XNumber, XCoherent, XSuperposition]


def _xnumber_amplitudes(n: int) -> dict[tuple[int, int], float]:
    # (a_R† + a_L†)^n / sqrt(2^n n!) |0,0>
    return {(k, n - k): math.sqrt(math.comb(n, k) / 2.0**n) for k in range(n + 1)}


def to_circular(
    spec: LinearPolSpec,
    n_max: int | None = None,
    tail_tol: float = DEFAULT_TAIL_TOL,
) -> TwoModeState:
    """Expand a linear-polarization spec over the circular basis."""
    if isinstance(spec, XNumber):
        if spec.n < 0:
            raise ValueError("photon number must be >= 0")
        if n_max is None:
            n_max = spec.n
        if spec.n > n_max:
            raise TruncationError(
                f"{spec.n} photons exceed n_max={n_max}", required_n_max=spec.n
            )
        return TwoModeState.from_amplitudes(_xnumber_amplitudes(spec.n), n_max)

    if isinstance(spec, XCoherent):
        mean = float(spec.mean_n)
        if mean < 0:
            raise ValueError("mean photon number must be >= 0")
        needed = coherent_n_max(mean, tail_tol)
        if n_max is None:
            n_max = needed
        elif poisson_tail(mean, n_max) >= tail_tol:
            raise TruncationError(
                f"coherent tail mass at n_max={n_max} is not below {tail_tol:g}; "
                f"need n_max >= {needed}",
                required_n_max=needed,
            )
        if mean == 0.0:
            return TwoModeState.from_amplitudes({(0, 0): 1.0}, n_max)
        # product of R and L coherent amplitudes beta = sqrt(mean/2) each
        log_beta = 0.5 * math.log(mean / 2.0)
        amps: dict[tuple[int, int], float] = {}
        lgam = [math.lgamma(k + 1) for k in range(n_max + 1)]
        for nr in range(n_max + 1):
            for nl in range(n_max + 1 - nr):
                amps[(nr, nl)] = math.exp(
                    (nr + nl) * log_beta - 0.5 * (lgam[nr] + lgam[nl]) - mean / 2.0
                )
        return TwoModeState.from_amplitudes(amps, n_max)

    if isinstance(spec, XSuperposition):
        if not spec.terms:
            raise ValueError("superposition needs at least one term")
        top = max(n for n, _ in spec.terms)
        if n_max is None:
            n_max = top
        if top > n_max:
            raise TruncationError(f"{top} photons exceed n_max={n_max}", required_n_max=top)
        amps: dict[tuple[int, int], complex] = {}
        for n, w in spec.terms:
            if n < 0:
                raise ValueError("photon numbers must be >= 0")
            for key, v in _xnumber_amplitudes(n).items():
                amps[key] = amps.get(key, 0j) + complex(w) * v
        return TwoModeState.from_amplitudes(amps, n_max)

    raise TypeError(f"unknown polarization spec {spec!r}")


def polarization_ellipse(
    spec: LinearPolSpec,
    k: int = DEFAULT_GRID_SIZE,
    n_max: int | None = None,
    tail_tol: float = DEFAULT_TAIL_TOL,
) -> AngularPdf:
    """Quantum polarization ellipse: the marginal angular distribution."""
    state = to_circular(spec, n_max, tail_tol)
    return marginal_pdf(to_jm(state, PrimitiveConvention.PHOTONIC), k)


def db_view(pdf: AngularPdf, peak_db: float = 60.0) -> np.ndarray:
    """10 log10(p/p_peak) + peak_db, floored at 0 so polar radii stay positive."""
    peak = pdf.density.max()
    with np.errstate(divide="ignore"):
        db = 10.0 * np.log10(pdf.density / peak) + peak_db
    return np.maximum(db, 0.0)


@dataclass(frozen=True)
class SnapshotSweep:
    """Per-time snapshot slices; refused times carry None (gaps, not failures)."""

    times: np.ndarray
    slices: tuple[AngularPdf | None, ...]

    def __post_init__(self):
        arr = np.asarray(self.times, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "times", arr)
        if arr.size != len(self.slices):
            raise ValueError("one slice per time required")


def snapshot_sequence(
    spec: LinearPolSpec,
    t_grid: Sequence[float],
    k: int = DEFAULT_GRID_SIZE,
    n_max: int | None = None,
    tail_tol: float = DEFAULT_TAIL_TOL,
) -> SnapshotSweep:
    """Normalized snapshot distributions along a grid of absolute times."""
    jm = to_jm(to_circular(spec, n_max, tail_tol), PrimitiveConvention.PHOTONIC)
    slices = snapshot_sweep(jm, t_grid, k)
    return SnapshotSweep(np.asarray(t_grid, dtype=float), tuple(slices))


def local_maxima(density: np.ndarray, min_rise: float = 1e-9, floor: float = 0.0) -> list[int]:
    """Indices of grid points exceeding both periodic neighbors by min_rise."""
    d = np.asarray(density)
    up = d > np.roll(d, 1) + min_rise
    down = d > np.roll(d, -1) + min_rise
    return [int(i) for i in np.nonzero(up & down & (d >= floor))[0]]
