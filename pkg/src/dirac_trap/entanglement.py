"""Spin-parity entanglement and chirality of two-qubit ionic states.

Qubit 1 is the first Kronecker factor (intrinsic parity, the F label) and
qubit 2 the second (spin, the M label). States can be passed as amplitude
4-vectors, :class:`~dirac_trap.dynamics.IonicState` objects or 4x4 density
matrices.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .dirac import GAMMA5, PlanarConfig, _params, invariants
from .dynamics import TimeSeries, _amplitudes, label_index, momentum_scale
from .errors import NotPure
from .linalg import PAULI, SIGMA_0, kron, partial_trace, projector
from .spectrum import EigenSystem, _planar_parts, eigenvalue, state_from_density

PURITY_TOL = 1e-10

_QUBIT1 = np.array([kron(s, SIGMA_0) for s in PAULI])
_QUBIT2 = np.array([kron(SIGMA_0, s) for s in PAULI])

# gamma5 = sigma_x ⊗ 1 couples a<->c and b<->d
CHIRAL_PAIRS = (("a", "c"), ("b", "d"))


class BlochPair(NamedTuple):
    a1: np.ndarray
    a2: np.ndarray


class CorrelationReport(NamedTuple):
    concurrence: float
    entropy: float
    chirality: float
    P_ac: float
    P_bd: float


def _density(state) -> np.ndarray:
    amps = getattr(state, "amps", state)
    arr = np.asarray(amps, dtype=complex)
    if arr.shape == (4,):
        return projector(arr)
    if arr.shape == (4, 4):
        return arr
    raise ValueError(f"expected a 4-vector or 4x4 density matrix, got shape {arr.shape}")


def _vector(state) -> np.ndarray:
    amps = getattr(state, "amps", state)
    arr = np.asarray(amps, dtype=complex)
    if arr.shape != (4,):
        raise ValueError("a state vector is required here")
    return arr


def _pure_density(state) -> np.ndarray:
    rho = _density(state)
    purity = np.real(np.trace(rho @ rho))
    if abs(purity - 1.0) > PURITY_TOL:
        raise NotPure(f"Tr rho^2 = {purity:.12f}")
    return rho


def bloch_vectors(state) -> BlochPair:
    rho = _pure_density(state)
    a1 = np.real(np.einsum("kij,ji->k", _QUBIT1, rho))
    a2 = np.real(np.einsum("kij,ji->k", _QUBIT2, rho))
    return BlochPair(a1, a2)


def concurrence(state) -> float:
    """Concurrence of a pure two-qubit state, ``sqrt(1 - |a2|²)``.

    Evaluated as ``2 |psi_a psi_d - psi_b psi_c|``, which is the same number
    without the cancellation that ``1 - |a2|²`` suffers near separability.
    """
    amps = np.asarray(getattr(state, "amps", state), dtype=complex)
    if amps.shape == (4, 4):
        amps = state_from_density(_pure_density(amps))
    psi = amps / np.linalg.norm(amps)
    return float(min(2.0 * abs(psi[0] * psi[3] - psi[1] * psi[2]), 1.0))


def entanglement_entropy(state) -> float:
    """Von Neumann entropy of the spin subsystem, in bits."""
    reduced = partial_trace(_pure_density(state), "first")
    w = np.linalg.eigvalsh(0.5 * (reduced + reduced.conj().T))
    w = w[w > 1e-300]
    return float(max(-np.sum(w * np.log2(w)), 0.0))


def chirality(state) -> float:
    """``Tr[gamma5 rho]``; any density matrix is accepted."""
    return float(np.real(np.trace(GAMMA5 @ _density(state))))


def pair_probability(state, i, j) -> float:
    """Probability of finding ``state`` in ``(|i> + |j>)/sqrt(2)``."""
    psi = _vector(state)
    amp = (psi[label_index(i)] + psi[label_index(j)]) / np.sqrt(2)
    return float(min(abs(amp) ** 2, 1.0))


def superposition_probabilities(state) -> tuple:
    """Probabilities of the two maximal superpositions coupled by gamma5.

    They satisfy ``<gamma5> = 2 (P_ac + P_bd) - 1`` for any normalized state.
    """
    return tuple(pair_probability(state, i, j) for i, j in CHIRAL_PAIRS)


def correlation_report(state) -> CorrelationReport:
    psi = _vector(state)
    p_ac, p_bd = superposition_probabilities(psi)
    return CorrelationReport(
        concurrence=concurrence(psi),
        entropy=entanglement_entropy(psi),
        chirality=chirality(psi),
        P_ac=p_ac,
        P_bd=p_bd,
    )


def _reports(amps: np.ndarray) -> list:
    # vectorized correlation_report over rows of amplitude vectors
    psi = amps / np.linalg.norm(amps, axis=1, keepdims=True)
    a, b, c, d = psi.T
    conc = np.minimum(2 * np.abs(a * d - b * c), 1.0)
    # reduced spectrum (1 ± sqrt(1 - C²))/2, small root via the product C²/4
    big = 0.5 * (1 + np.sqrt(1 - conc**2))
    small = conc**2 / (4 * big)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(small > 1e-300, -small * np.log2(small), 0.0) - big * np.log2(big)
    entropy = np.maximum(terms, 0.0)
    chir = 2 * np.real(np.conj(a) * c + np.conj(b) * d)
    p_ac = np.minimum(np.abs(a + c) ** 2 / 2, 1.0)
    p_bd = np.minimum(np.abs(b + d) ** 2 / 2, 1.0)
    return [CorrelationReport(*map(float, row)) for row in zip(conc, entropy, chir, p_ac, p_bd)]


def correlation_series(sys: EigenSystem, j, pt_grid) -> TimeSeries:
    grid = np.asarray(pt_grid, dtype=float)
    amps = _amplitudes(sys, label_index(j), grid / momentum_scale(sys))
    return TimeSeries(grid, _reports(amps))


def bloch_a2_closed(params, mode) -> np.ndarray:
    """Spin Bloch vector of ``rho_{n,s}``:
    ``(-1)^s m / sqrt(g2) [kappa E + (-1)^n mu (p x E) / |lambda|]``."""
    d = _params(params)
    n, s = mode
    g1, g2 = invariants(d)
    lam = abs(eigenvalue(d, mode))
    pxe = np.cross(d.p_vec, d.E_vec)
    return (-1) ** s * d.m / np.sqrt(g2) * (d.kappa * d.E_vec + (-1) ** n * d.mu * pxe / lam)


def concurrence_eigen_closed(cfg: PlanarConfig, mode) -> float:
    """``sqrt(1 - |a2|²)`` of ``rho_{n,s}`` in the planar configuration.

    ``1 - |a2|²`` is expanded so no two O(1) terms cancel:
    ``p² sin²θ (κ² λ² + μ² (λ² - m²)) / (λ² (m²κ² + (μ²+κ²) p² sin²θ))``.
    """
    n, s, lam, rg2 = _planar_parts(cfg, mode)
    m, p, e, th, k, mu = cfg.m, cfg.p, cfg.eps, cfg.theta, cfg.kappa, cfg.mu
    ps2 = (p * np.sin(th)) ** 2
    lam2 = lam * lam
    # lambda² - m² without subtracting m² from g1
    lam2_m2 = p * p + (k * k + mu * mu) * e * e + 2 * (-1) ** s * rg2
    num = ps2 * (k * k * lam2 + mu * mu * lam2_m2)
    den = lam2 * (m * m * k * k + (mu * mu + k * k) * ps2)
    return float(np.sqrt(min(max(num / den, 0.0), 1.0)))


def chirality_eigen_closed(cfg: PlanarConfig, mode) -> float:
    n, s, lam, _ = _planar_parts(cfg, mode)
    m, p, th, k, mu = cfg.m, cfg.p, cfg.theta, cfg.kappa, cfg.mu
    root = np.sqrt(m * m * k * k + (mu * mu + k * k) * (p * np.sin(th)) ** 2)
    return float((-1) ** (n + s) * m * p * k * np.cos(th) / (lam * root))
