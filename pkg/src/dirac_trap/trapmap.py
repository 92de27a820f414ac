"""Correspondence between trapped-ion controls and Dirac parameters.

The Dirac Hamiltonian is assembled from level-pair Pauli operators on the four
internal states. Mass comes from the detuning, momentum from red/blue sideband
pairs and the two field couplings from carrier drives:

    m c^2      = 2 hbar delta
    c          = 2 eta Delta OmegaTilde
    kappa E_j  = 2 hbar Omega1_j
    mu E_j / c = 2 hbar Omega2_j

Only the products ``kappa·E`` and ``mu·E`` are fixed by the trap, so splitting
them into ``kappa``, ``mu`` and ``E`` needs a gauge choice (``"unit_field"``
by default). Everything runs with hbar = 1, and the motional ladder map
``p_j -> (i hbar / 2 Delta)(a_j† - a_j)`` is not simulated: the momentum enters
as a c-number.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dirac import DiracParams
from .errors import InvalidPair, ZeroCoupling
from .spectrum import LABELS

HBAR = 1.0
# sideband phases that produce the p_x term
PHI_RED = -np.pi / 2
PHI_BLUE = np.pi / 2

GAUGES = ("unit_field", "kappa_eq_mu")


def qubit_index(label) -> tuple:
    """Two-qubit code (F bit, M bit) of an ionic level: a=00, b=01, c=10, d=11."""
    idx = LABELS.index(label)
    return (idx >> 1, idx & 1)


@dataclass(frozen=True)
class PauliPairOp:
    levels: tuple
    axis: str
    matrix: np.ndarray = field(repr=False, compare=False)


def sigma_pair(levels, axis: str) -> PauliPairOp:
    """Pauli matrix ``axis`` acting on the span of two levels, zero elsewhere.

    ``levels`` is ordered: the first level plays the role of |0> (the +1
    eigenstate of sigma_z), e.g. ``sigma_z^{ad} = |a><a| - |d><d|``.
    """
    i, j = (LABELS.index(x) for x in levels)
    if i == j:
        raise InvalidPair(f"levels must differ, got {levels!r}")
    mat = np.zeros((4, 4), dtype=complex)
    if axis == "x":
        mat[i, j] = mat[j, i] = 1
    elif axis == "y":
        mat[i, j] = -1j
        mat[j, i] = 1j
    elif axis == "z":
        mat[i, i] = 1
        mat[j, j] = -1
    else:
        raise ValueError(f"axis must be x, y or z, not {axis!r}")
    return PauliPairOp((levels[0], levels[1]), axis, mat)


def _sp(levels, axis) -> np.ndarray:
    return sigma_pair(levels, axis).matrix


def mass_generator() -> np.ndarray:
    """``sigma_z^{ad} + sigma_z^{bc}``, equal to beta."""
    return _sp("ad", "z") + _sp("bc", "z")


def momentum_generators() -> tuple:
    """Level-pair combinations reproducing alpha_x, alpha_y, alpha_z."""
    return (
        _sp("ad", "x") + _sp("bc", "x"),
        _sp("ad", "y") - _sp("bc", "y"),
        _sp("ac", "x") - _sp("bd", "x"),
    )


def tensor_generators() -> tuple:
    """Carrier pairs reproducing beta Sigma_j (the kappa coupling)."""
    return (
        _sp("ab", "x") - _sp("cd", "x"),
        _sp("ab", "y") - _sp("cd", "y"),
        _sp("ab", "z") - _sp("cd", "z"),
    )


def pseudotensor_generators() -> tuple:
    """Carrier pairs reproducing i beta alpha_j (the mu coupling).

    The y entry is ``sigma_x^{ad} - sigma_x^{bc}``; the opposite sign would
    give ``-i beta alpha_y``.
    """
    return (
        -_sp("ad", "y") - _sp("bc", "y"),
        _sp("ad", "x") - _sp("bc", "x"),
        _sp("bd", "y") - _sp("ac", "y"),
    )


@dataclass(frozen=True)
class TrapParams:
    """Ion-trap control parameters in a homogeneous trap (nu_x = nu_y = nu_z)."""

    eta: float
    Delta: float
    OmegaTilde: float
    delta_det: float = 0.0
    Omega1: tuple = (0.0, 0.0, 0.0)
    Omega2: tuple = (0.0, 0.0, 0.0)
    nu: float | None = None
    ion_mass: float | None = None
    k: float | None = None

    def __post_init__(self):
        for name in ("Omega1", "Omega2"):
            vec = tuple(float(x) for x in getattr(self, name))
            if len(vec) != 3:
                raise ValueError(f"{name} must have three components")
            object.__setattr__(self, name, vec)
        for name in ("eta", "Delta", "OmegaTilde"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    @classmethod
    def from_raw(cls, nu: float, ion_mass: float, k: float, OmegaTilde: float, **kw) -> "TrapParams":
        """Derive ``Delta = sqrt(hbar / 2 m nu)`` and ``eta = k Delta`` from trap data."""
        delta_x = np.sqrt(HBAR / (2 * ion_mass * nu))
        return cls(eta=k * delta_x, Delta=delta_x, OmegaTilde=OmegaTilde,
                   nu=nu, ion_mass=ion_mass, k=k, **kw)

    @property
    def light_speed(self) -> float:
        return 2 * self.eta * self.Delta * self.OmegaTilde


def _split(kappa_e: np.ndarray, mu_e: np.ndarray, gauge: str):
    nk, nm = np.linalg.norm(kappa_e), np.linalg.norm(mu_e)
    if nk == 0 and nm == 0:
        return 0.0, 0.0, np.zeros(3)
    ref = kappa_e if nk >= nm else mu_e
    unit = ref / np.linalg.norm(ref)
    kappa, mu = float(kappa_e @ unit), float(mu_e @ unit)
    if np.linalg.norm(kappa_e - kappa * unit) > 1e-12 * nk or np.linalg.norm(mu_e - mu * unit) > 1e-12 * nm:
        raise ValueError("carrier drives Omega1 and Omega2 must be parallel to describe one field E")
    if gauge == "unit_field":
        return kappa, mu, unit
    if gauge == "kappa_eq_mu":
        if abs(kappa - mu) > 1e-12 * max(abs(kappa), abs(mu)):
            raise ValueError("kappa_eq_mu gauge needs equal carrier drives, Omega1 == Omega2")
        return 1.0, 1.0, kappa * unit
    raise ValueError(f"gauge must be one of {GAUGES}, not {gauge!r}")


def dirac_from_trap(tp: TrapParams, p=(0.0, 0.0, 0.0), gauge: str = "unit_field") -> DiracParams:
    """Dirac parameters in units where the emergent light speed is 1.

    ``p`` is the mechanical momentum on the trap side; it is returned scaled
    by ``c = 2 eta Delta OmegaTilde``.
    """
    c = tp.light_speed
    if c == 0:
        raise ZeroCoupling("2 eta Delta OmegaTilde vanishes; there is no kinetic term")
    kappa_e = 2 * HBAR * np.array(tp.Omega1)
    mu_e = 2 * HBAR * np.array(tp.Omega2)
    kappa, mu, e = _split(kappa_e, mu_e, gauge)
    return DiracParams(
        m=2 * HBAR * tp.delta_det,
        p=tuple(c * np.asarray(p, dtype=float)),
        kappa=kappa,
        mu=mu,
        E=tuple(e),
    )


def trap_from_dirac(d: DiracParams, eta: float = 0.1, Delta: float = 1.0) -> TrapParams:
    """Trap controls reproducing ``d`` with the normalization ``2 eta Delta OmegaTilde = 1``.

    ``eta`` and ``Delta`` are free; ``OmegaTilde`` is fixed by them.
    """
    if eta <= 0 or Delta <= 0:
        raise ValueError("eta and Delta must be positive")
    e = d.E_vec
    return TrapParams(
        eta=eta,
        Delta=Delta,
        OmegaTilde=1.0 / (2 * eta * Delta),
        delta_det=d.m / (2 * HBAR),
        Omega1=tuple(d.kappa * e / (2 * HBAR)),
        Omega2=tuple(d.mu * e / (2 * HBAR)),
    )


def assemble_mapped_hamiltonian(tp: TrapParams, p) -> np.ndarray:
    """Sum of the mapped detuning, sideband and carrier generators at momentum ``p``."""
    p = np.asarray(p, dtype=float).reshape(3)
    h = 2 * HBAR * tp.delta_det * mass_generator()
    c = tp.light_speed
    for pj, gen in zip(p, momentum_generators()):
        h = h + c * pj * gen
    for w, gen in zip(tp.Omega1, tensor_generators()):
        h = h + 2 * HBAR * w * gen
    for w, gen in zip(tp.Omega2, pseudotensor_generators()):
        h = h + 2 * HBAR * w * gen
    return h
