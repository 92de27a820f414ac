"""Dirac matrices and the non-minimally coupled Dirac Hamiltonian.

Natural units (hbar = c = 1). The representation is the two-qubit one,
``alpha_i = sigma_x ⊗ sigma_i`` and ``beta = sigma_z ⊗ 1``, with basis order
(a, b, c, d) = (|00>, |01>, |10>, |11>).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .errors import MagneticFieldUnsupported
from .linalg import PAULI, SIGMA_0, SIGMA_X, SIGMA_Z, kron


class DiracMatrices(NamedTuple):
    alpha: tuple
    beta: np.ndarray
    Sigma: tuple
    gamma5: np.ndarray


def _freeze(v) -> tuple:
    t = tuple(float(x) for x in np.ravel(v))
    if len(t) != 3:
        raise ValueError(f"expected a 3-vector, got {len(t)} components")
    if not all(np.isfinite(t)):
        raise ValueError("vector has non-finite components")
    return t


def _cross(a, b) -> tuple:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


@dataclass(frozen=True)
class DiracParams:
    """Parameters of the Dirac-side Hamiltonian.

    ``p``, ``E`` and ``B`` are stored as tuples so instances stay hashable and
    immutable; the ``*_vec`` properties hand out fresh numpy arrays.
    """

    m: float
    p: tuple = (0.0, 0.0, 0.0)
    kappa: float = 0.0
    mu: float = 0.0
    E: tuple = (0.0, 0.0, 0.0)
    B: tuple = field(default=(0.0, 0.0, 0.0))

    def __post_init__(self):
        for name in ("m", "kappa", "mu"):
            val = float(getattr(self, name))
            if not np.isfinite(val):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, val)
        for name in ("p", "E", "B"):
            object.__setattr__(self, name, _freeze(getattr(self, name)))

    @property
    def p_vec(self) -> np.ndarray:
        return np.array(self.p)

    @property
    def E_vec(self) -> np.ndarray:
        return np.array(self.E)

    @property
    def B_vec(self) -> np.ndarray:
        return np.array(self.B)

    @property
    def has_magnetic_field(self) -> bool:
        return any(b != 0.0 for b in self.B)


@dataclass(frozen=True)
class PlanarConfig:
    """Propagation along x with the electric field in the x-y plane at angle ``theta``."""

    m: float
    p: float
    eps: float = 1.0
    theta: float = np.pi / 4
    kappa: float = 0.0
    mu: float = 0.0

    def __post_init__(self):
        for name in ("m", "p", "eps", "theta", "kappa", "mu"):
            val = float(getattr(self, name))
            if not np.isfinite(val):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, val)
        if self.p < 0 or self.eps < 0:
            raise ValueError("p and eps must be non-negative")

    def to_params(self) -> DiracParams:
        return self.params

    @cached_property
    def params(self) -> DiracParams:
        return DiracParams(
            m=self.m,
            p=(self.p, 0.0, 0.0),
            kappa=self.kappa,
            mu=self.mu,
            E=(self.eps * np.cos(self.theta), self.eps * np.sin(self.theta), 0.0),
        )


class Invariants(NamedTuple):
    g1: float
    g2: float


def _params(params) -> DiracParams:
    if isinstance(params, PlanarConfig):
        return params.params
    return params


def dirac_matrices() -> DiracMatrices:
    alpha = tuple(kron(SIGMA_X, s) for s in PAULI)
    beta = kron(SIGMA_Z, SIGMA_0)
    Sigma = tuple(kron(SIGMA_0, s) for s in PAULI)
    # -i alpha_x alpha_y alpha_z, which is sigma_x ⊗ 1 in this representation
    gamma5 = -1j * alpha[0] @ alpha[1] @ alpha[2]
    return DiracMatrices(alpha, beta, Sigma, gamma5)


_DM = dirac_matrices()
ALPHA = _DM.alpha
BETA = _DM.beta
SIGMA = _DM.Sigma
GAMMA5 = _DM.gamma5


_ALPHA_STACK = np.array(ALPHA)
_SIGMA_STACK = np.array(SIGMA)


def _dot(stack, v) -> np.ndarray:
    return np.tensordot(v, stack, axes=1)


def hamiltonian(params) -> np.ndarray:
    """``alpha·p + beta m + kappa beta (Sigma·E + i alpha·B) + mu beta (i alpha·E - Sigma·B)``."""
    d = _params(params)
    h = _dot(_ALPHA_STACK, d.p) + d.m * BETA
    h = h + d.kappa * BETA @ _dot(_SIGMA_STACK, d.E) + 1j * d.mu * BETA @ _dot(_ALPHA_STACK, d.E)
    if d.has_magnetic_field:
        h = h + 1j * d.kappa * BETA @ _dot(_ALPHA_STACK, d.B) - d.mu * BETA @ _dot(_SIGMA_STACK, d.B)
    return h


def _require_electrostatic(d: DiracParams):
    if d.has_magnetic_field:
        raise MagneticFieldUnsupported("the g1/g2 operator algebra requires B = 0")


def o_operator(params) -> np.ndarray:
    """Traceless operator with ``H² = g1·1 + 2·O`` and ``O² = g2·1``."""
    d = _params(params)
    _require_electrostatic(d)
    pxe = _cross(d.p, d.E)
    o = d.m * d.kappa * _dot(_SIGMA_STACK, d.E)
    o = o + d.mu * BETA @ _dot(_SIGMA_STACK, pxe)
    o = o - 1j * d.kappa * BETA @ _dot(_ALPHA_STACK, pxe)
    return o


def invariants(params) -> Invariants:
    d = _params(params)
    _require_electrostatic(d)
    p2 = sum(x * x for x in d.p)
    e2 = sum(x * x for x in d.E)
    pxe2 = sum(x * x for x in _cross(d.p, d.E))
    g1 = p2 + d.m**2 + (d.kappa**2 + d.mu**2) * e2
    g2 = d.m**2 * d.kappa**2 * e2 + (d.mu**2 + d.kappa**2) * pxe2
    return Invariants(g1, g2)
