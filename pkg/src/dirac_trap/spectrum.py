"""Eigen-density operators, eigenvalues and the ionic <-> bi-spinor basis change.

The four stationary pure states are built in closed form,

    rho_{n,s} = 1/4 (1 + (-1)^s O / sqrt(g2)) (1 + (-1)^n H / |lambda_{n,s}|),
    lambda_{n,s} = (-1)^n sqrt(g1 + 2 (-1)^s sqrt(g2)),

and the ionic-basis amplitudes ``M[i, (n,s)]`` are read off their columns.
Modes are always ordered (0,0), (0,1), (1,0), (1,1).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .dirac import DiracParams, PlanarConfig, hamiltonian, invariants, o_operator
from .errors import ComplexEigenvalue, DegenerateInvariant, VanishingComponent, ZeroEigenvalue
from .linalg import SIGMA_X, SIGMA_Y, SIGMA_Z, dagger, hermitian_eig, projector

G2_FLOOR = 1e-20
PHASE_FLOOR = 1e-12
# relative to sqrt(g1)
LAMBDA_FLOOR = 1e-12

LABELS = ("a", "b", "c", "d")


class ModeIndex(NamedTuple):
    n: int
    s: int


MODES = (ModeIndex(0, 0), ModeIndex(0, 1), ModeIndex(1, 0), ModeIndex(1, 1))


def as_mode(mode) -> ModeIndex:
    n, s = mode
    if n not in (0, 1) or s not in (0, 1):
        raise ValueError(f"mode indices must be 0 or 1, got {mode!r}")
    return ModeIndex(int(n), int(s))


def _params(params) -> DiracParams:
    if isinstance(params, PlanarConfig):
        return params.to_params()
    return params


def eigenvalue(params, mode) -> float:
    n, s = as_mode(mode)
    g1, g2 = invariants(_params(params))
    radicand = g1 + 2 * (-1) ** s * np.sqrt(g2)
    if radicand < 0:
        # g1^2 >= 4 g2 analytically; only rounding can push this below zero
        if radicand < -1e-14 * g1:
            raise ComplexEigenvalue(f"g1 + 2(-1)^s sqrt(g2) = {radicand:.3e} < 0")
        radicand = 0.0
    return float((-1) ** n * np.sqrt(radicand))


def _check_ansatz(g1: float, g2: float, lam: float):
    if g2 <= G2_FLOOR:
        raise DegenerateInvariant(f"degenerate g2 = {g2:.3e} <= {G2_FLOOR:g}; use the oracle fallback")
    if abs(lam) <= LAMBDA_FLOOR * np.sqrt(g1):
        raise ZeroEigenvalue(f"|lambda| = {abs(lam):.3e} is below the floor")


def eigen_density(params, mode) -> np.ndarray:
    """Pure stationary density matrix ``rho_{n,s}`` from the operator ansatz."""
    d = _params(params)
    n, s = as_mode(mode)
    g1, g2 = invariants(d)
    lam = eigenvalue(d, (n, s))
    _check_ansatz(g1, g2, lam)
    eye = np.eye(4)
    left = eye + (-1) ** s * o_operator(d) / np.sqrt(g2)
    right = eye + (-1) ** n * hamiltonian(d) / abs(lam)
    return 0.25 * left @ right


class Coefficients(NamedTuple):
    """Ionic-basis moduli ``|M^i|`` and relative phases.

    ``phases[i]`` is ``M^i / |M^i|`` with the anchor component made real and
    positive; entries whose modulus is below the phase floor are ``nan`` and
    flagged in ``defined``.
    """

    moduli: np.ndarray
    phases: np.ndarray
    defined: np.ndarray
    anchor: int


def _anchor(moduli: np.ndarray) -> int:
    above = np.nonzero(moduli > PHASE_FLOOR)[0]
    return int(above[0])


def coefficients_from_density(rho: np.ndarray, strict: bool = False) -> Coefficients:
    diag = np.clip(np.real(np.diag(rho)), 0.0, None)
    moduli = np.sqrt(diag)
    anchor = _anchor(moduli)
    defined = moduli > PHASE_FLOOR
    if strict and not defined.all():
        missing = [LABELS[i] for i in np.nonzero(~defined)[0]]
        raise VanishingComponent(f"components {missing} vanish; their phases are undefined")
    phases = np.full(4, np.nan, dtype=complex)
    for i in np.nonzero(defined)[0]:
        phases[i] = rho[i, anchor] / (moduli[i] * moduli[anchor])
    return Coefficients(moduli, phases, defined, anchor)


def coefficients(params, mode, strict: bool = False) -> Coefficients:
    return coefficients_from_density(eigen_density(params, mode), strict=strict)


def state_from_density(rho: np.ndarray) -> np.ndarray:
    """Unit vector ``psi`` with ``|psi><psi| = rho`` and the global phase fixed.

    The column through the largest diagonal entry is used for accuracy; the
    phase is then chosen so the first component above the phase floor (``a``
    whenever it is present) is real and positive.
    """
    diag = np.clip(np.real(np.diag(rho)), 0.0, None)
    pivot = int(np.argmax(diag))
    psi = rho[:, pivot] / np.sqrt(diag[pivot])
    psi = psi / np.linalg.norm(psi)
    anchor = _anchor(np.abs(psi))
    psi = psi * (np.conj(psi[anchor]) / abs(psi[anchor]))
    return psi


@dataclass(frozen=True)
class EigenSystem:
    """Closed-form spectral data of one parameter point.

    ``M[:, k]`` is the k-th eigenstate in the ionic basis (mode order
    ``MODES``) and ``W = M^{-1} = M†``, so ``W[k, j]`` is the amplitude of
    eigenstate k in ionic level j.
    """

    params: DiracParams
    lambdas: np.ndarray
    rhos: np.ndarray
    M: np.ndarray
    W: np.ndarray
    degenerate: bool = False

    @property
    def hamiltonian(self) -> np.ndarray:
        return hamiltonian(self.params)


def _oracle_system(d: DiracParams) -> EigenSystem:
    values, vectors = hermitian_eig(hamiltonian(d))
    # ascending e0 <= e1 <= e2 <= e3  ->  (0,0)=e3, (0,1)=e2, (1,0)=e0, (1,1)=e1
    order = [3, 2, 0, 1]
    lambdas = values[order]
    cols = []
    for k in order:
        v = vectors[:, k]
        anchor = _anchor(np.abs(v))
        cols.append(v * (np.conj(v[anchor]) / abs(v[anchor])))
    m = np.column_stack(cols)
    rhos = np.array([projector(m[:, k]) for k in range(4)])
    return EigenSystem(d, lambdas, rhos, m, dagger(m), degenerate=True)


def eigensystem(params, oracle: bool = False) -> EigenSystem:
    """Assemble the four modes. With ``oracle=True`` a degenerate point
    (g2 below the floor, or a vanishing eigenvalue) falls back to the Jacobi
    eigenvectors and the result is flagged ``degenerate``."""
    d = _params(params)
    try:
        rhos = np.array([eigen_density(d, mode) for mode in MODES])
    except (DegenerateInvariant, ZeroEigenvalue):
        if oracle:
            return _oracle_system(d)
        raise
    lambdas = np.array([eigenvalue(d, mode) for mode in MODES])
    m = np.column_stack([state_from_density(r) for r in rhos])
    return EigenSystem(d, lambdas, rhos, m, dagger(m))


def _planar_parts(cfg: PlanarConfig, mode):
    n, s = as_mode(mode)
    g1, g2 = invariants(cfg)
    lam = eigenvalue(cfg, (n, s))
    _check_ansatz(g1, g2, lam)
    return n, s, abs(lam), np.sqrt(g2)


def planar_moduli(cfg: PlanarConfig, mode) -> np.ndarray:
    """Closed-form ``|M^a..d|`` for the planar configuration."""
    n, s, lam, rg2 = _planar_parts(cfg, mode)
    m, p, e, th, k, mu = cfg.m, cfg.p, cfg.eps, cfg.theta, cfg.kappa, cfg.mu
    mass = (-1) ** n * m / lam
    spin = (-1) ** s * p * mu * e * np.sin(th) / rg2
    cross = (-1) ** (n + s) * m * e / (rg2 * lam)
    plus = cross * (k * k * e + p * mu * np.sin(th))
    minus = cross * (k * k * e - p * mu * np.sin(th))
    sq = np.array([
        1 + mass + spin + plus,
        1 + mass - spin + minus,
        1 - mass - spin - minus,
        1 - mass + spin - plus,
    ])
    return 0.5 * np.sqrt(np.clip(sq, 0.0, None))


def planar_phases(cfg: PlanarConfig, mode) -> np.ndarray:
    """Closed-form ``exp(-i dphi^{ab}), exp(-i dphi^{ac}), exp(-i dphi^{ad})``.

    Requires ``|M^a|`` and the partner modulus above the phase floor; pairs
    that do not satisfy this come back as ``nan``.
    """
    n, s, lam, rg2 = _planar_parts(cfg, mode)
    m, p, e, th, k, mu = cfg.m, cfg.p, cfg.eps, cfg.theta, cfg.kappa, cfg.mu
    mod = planar_moduli(cfg, mode)
    ei = np.exp(1j * th)
    sn = np.sin(th)
    sgn_n, sgn_s, sgn_ns = (-1) ** n, (-1) ** s, (-1) ** (n + s)
    rho_ba = k * e / 4 * (
        sgn_n * ei / lam
        + sgn_s * m * ei / rg2
        + sgn_ns * (m * m * ei + 1j * p * p * sn) / (rg2 * lam)
    )
    rho_ca = k * e / 4 * (
        1j * sgn_s * p * sn / rg2
        + sgn_ns * m * (p * np.cos(th) - 1j * mu * e) / (rg2 * lam)
    )
    rho_da = 0.25 * (
        sgn_n * (p + mu * e * sn - 1j * mu * e * np.cos(th)) / lam
        - 1j * sgn_ns * e * p * sn * ((k * k + mu * mu) * e * ei + 1j * mu * p) / (rg2 * lam)
    )
    out = np.full(3, np.nan, dtype=complex)
    for idx, (i, num) in enumerate(((1, rho_ba), (2, rho_ca), (3, rho_da))):
        if mod[0] > PHASE_FLOOR and mod[i] > PHASE_FLOOR:
            out[idx] = num / (mod[0] * mod[i])
    return out


@dataclass(frozen=True)
class FreeBispinor:
    s: int
    p: tuple
    spinor: np.ndarray
    state: np.ndarray
    Ep: float
    Ns: float

    def at_time(self, t: float) -> np.ndarray:
        return np.exp(1j * (-1) ** self.s * self.Ep * t) * self.state


def free_bispinor(m: float, p, s: int, spinor) -> FreeBispinor:
    """Free-particle bi-spinor ``N_s [|+>⊗|u> ± p/(E_p + (-1)^{s+1} m) |->⊗(p̂·σ)|u>]``.

    ``s = 1`` is the positive-energy solution and ``s = 0`` the one with energy
    ``-E_p``; the lower branch of the latter carries a minus sign, without which
    it would not be an eigenstate. The branch amplitudes are evaluated as
    ``sqrt((E+m)/2E)`` and ``p/sqrt(2E(E+m))`` so nothing divides by ``E - m``.
    """
    if s not in (0, 1):
        raise ValueError("s must be 0 or 1")
    pv = np.asarray(p, dtype=float).reshape(3)
    u = np.asarray(spinor, dtype=complex).reshape(2)
    if abs(np.linalg.norm(u) - 1.0) > 1e-12:
        raise ValueError("spinor must be normalized")
    pmag = float(np.linalg.norm(pv))
    ep = float(np.hypot(pmag, m))
    if ep <= 0:
        raise ValueError("E_p must be positive")
    ns = float(np.sqrt(0.5 * (1 + (-1) ** (s + 1) * m / ep)))
    big = np.sqrt((ep + m) / (2 * ep))
    small = pmag / np.sqrt(2 * ep * (ep + m))
    upper, lower = (big, small) if s == 1 else (small, -big)
    if pmag == 0.0:
        if s == 0 and m > 0:
            raise ValueError("momentum direction is undefined for s=0 at p=0")
        rotated = np.zeros(2, dtype=complex)
    else:
        phat = pv / pmag
        rotated = (phat[0] * SIGMA_X + phat[1] * SIGMA_Y + phat[2] * SIGMA_Z) @ u
    state = np.concatenate([upper * u, lower * rotated])
    return FreeBispinor(s, tuple(pv), u, state, ep, ns)
