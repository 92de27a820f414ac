"""Time evolution of the internal ionic levels through the bi-spinor eigenbasis.

Times on the public grids are the dimensionless product ``p·t``; the physical
time fed to the propagator is ``(p·t) / |p|``. When ``|p| = 0`` the grid is
taken as plain time.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectrum import LABELS, EigenSystem

DEFAULT_T_MAX = 20.0
DEFAULT_STEPS = 2001
IMAG_RESIDUE_TOL = 1e-12


def label_index(label) -> int:
    if isinstance(label, (int, np.integer)) and 0 <= label < 4:
        return int(label)
    try:
        return LABELS.index(label)
    except ValueError:
        raise ValueError(f"ionic label must be one of {LABELS}, got {label!r}") from None


@dataclass(frozen=True)
class IonicState:
    amps: np.ndarray
    t: float

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2


@dataclass(frozen=True)
class TimeSeries:
    t_grid: np.ndarray
    values: list

    def __len__(self):
        return len(self.t_grid)


def time_grid(t_max: float = DEFAULT_T_MAX, steps: int = DEFAULT_STEPS) -> np.ndarray:
    if steps < 2:
        raise ValueError("a grid needs at least two points")
    if not (np.isfinite(t_max) and t_max > 0):
        raise ValueError("t_max must be positive and finite")
    return np.linspace(0.0, t_max, steps)


def momentum_scale(sys: EigenSystem) -> float:
    p = float(np.linalg.norm(sys.params.p))
    return p if p > 0 else 1.0


def _amplitudes(sys: EigenSystem, j: int, times: np.ndarray) -> np.ndarray:
    # |j(t)> = sum_k [ sum_{n,s} W[ns, j] M[k, ns] e^{-i lambda_ns t} ] |k>
    phases = np.exp(-1j * np.outer(times, sys.lambdas))  # (T, 4 modes)
    return (phases * sys.W[:, j]) @ sys.M.T  # (T, 4 levels)


def evolve_ionic(sys: EigenSystem, j, t: float) -> IonicState:
    amps = _amplitudes(sys, label_index(j), np.array([float(t)]))[0]
    return IonicState(amps, float(t))


def transition_probability(sys: EigenSystem, j, k, t: float) -> float:
    """``|<k|j(t)>|²``, clamped to [0, 1]."""
    amp = _amplitudes(sys, label_index(j), np.array([float(t)]))[0, label_index(k)]
    return float(min(max(abs(amp) ** 2, 0.0), 1.0))


def transition_probability_sum(sys: EigenSystem, j, k, t: float) -> float:
    """Same probability from the double sum over mode pairs of ``W`` products.

    Kept as an independent route to catch ``W``/``M`` convention slips.
    """
    j, k = label_index(j), label_index(k)
    wj = sys.W[:, j]
    wk = sys.W[:, k]
    a = wj * np.conj(wk)  # W^j_{ns} (W^k_{ns})*
    b = np.conj(wj) * wk  # (W^j_{ml})* W^k_{ml}
    osc = np.exp(-1j * (sys.lambdas[:, None] - sys.lambdas[None, :]) * t)
    total = np.sum(a[:, None] * b[None, :] * osc)
    if abs(total.imag) > IMAG_RESIDUE_TOL:
        raise ArithmeticError(f"imaginary residue {total.imag:.3e} in probability sum")
    return float(total.real)


def probability_matrix(sys: EigenSystem, j, pt_grid) -> np.ndarray:
    """``P[t, k] = P_{j->k}`` on a ``p·t`` grid."""
    times = np.asarray(pt_grid, dtype=float) / momentum_scale(sys)
    amps = _amplitudes(sys, label_index(j), times)
    return np.clip(np.abs(amps) ** 2, 0.0, 1.0)


def evolve_series(sys: EigenSystem, j, pt_grid) -> TimeSeries:
    grid = np.asarray(pt_grid, dtype=float)
    times = grid / momentum_scale(sys)
    amps = _amplitudes(sys, label_index(j), times)
    return TimeSeries(grid, [IonicState(a, t) for a, t in zip(amps, times)])


def survivor_series(sys: EigenSystem, j, pt_grid) -> TimeSeries:
    grid = np.asarray(pt_grid, dtype=float)
    probs = probability_matrix(sys, j, grid)[:, label_index(j)]
    return TimeSeries(grid, list(probs))
