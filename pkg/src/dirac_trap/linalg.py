"""Small dense complex linear algebra used throughout the package.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. The Hermitian
eigensolver is a cyclic complex Jacobi iteration written out by hand; it is the
brute-force reference the closed-form spectra are checked against, so it does
not call into LAPACK.
"""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import NotHermitian

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)

HERMITIAN_RTOL = 1e-12


class EigDecomp(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns


def as_matrix(a, dim: int | None = None) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if dim is not None and m.shape[0] != dim:
        raise ValueError(f"expected a {dim}x{dim} matrix, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(a).T


def frobenius(a: np.ndarray) -> float:
    return float(np.sqrt(np.sum(np.abs(a) ** 2)))


def is_hermitian(a: np.ndarray, rtol: float = HERMITIAN_RTOL) -> bool:
    return frobenius(a - dagger(a)) <= rtol * frobenius(a)


def kron(a, b) -> np.ndarray:
    """Kronecker product of two 2x2 matrices, ``(A⊗B)[2i+k, 2j+l] = A[i,j] B[k,l]``."""
    a = as_matrix(a, 2)
    b = as_matrix(b, 2)
    out = np.empty((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            out[2 * i:2 * i + 2, 2 * j:2 * j + 2] = a[i, j] * b
    return out


def _rotate(a: list, v: list, p: int, q: int):
    # Phase the pivot onto the real axis, then apply the real symmetric
    # Jacobi rotation that annihilates it: U = diag(1, e^{-i phi}) R(c, s).
    n = len(a)
    apq = a[p][q]
    g = abs(apq)
    cph = apq.conjugate() / g
    theta = (a[q][q].real - a[p][p].real) / (2.0 * g)
    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.hypot(theta, 1.0))
    c = 1.0 / math.hypot(t, 1.0)
    s = t * c
    u00, u01, u10, u11 = c, s, -s * cph, c * cph
    for row in a:
        x, y = row[p], row[q]
        row[p] = x * u00 + y * u10
        row[q] = x * u01 + y * u11
    rp, rq = a[p], a[q]
    c00, c01, c10, c11 = u00, u10.conjugate(), u01, u11.conjugate()
    for k in range(n):
        x, y = rp[k], rq[k]
        rp[k] = c00 * x + c01 * y
        rq[k] = c10 * x + c11 * y
    rp[q] = rq[p] = 0j
    rp[p] = complex(rp[p].real, 0.0)
    rq[q] = complex(rq[q].real, 0.0)
    for row in v:
        x, y = row[p], row[q]
        row[p] = x * u00 + y * u10
        row[q] = x * u01 + y * u11


def _orthonormalize_clusters(values: np.ndarray, vectors: np.ndarray, tol: float) -> np.ndarray:
    vectors = vectors.copy()
    n = len(values)
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and values[stop] - values[stop - 1] <= tol:
            stop += 1
        for k in range(start, stop):
            v = vectors[:, k]
            for j in range(start, k):
                v = v - np.vdot(vectors[:, j], v) * vectors[:, j]
            vectors[:, k] = v / np.linalg.norm(v)
        start = stop
    return vectors


def hermitian_eig(h, max_sweeps: int = 100) -> EigDecomp:
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Eigenvalues come back ascending; eigenvectors are the columns of the
    returned matrix. Vectors belonging to a degenerate cluster are
    re-orthonormalized by modified Gram-Schmidt in their input order, so only
    the spanned subspace (not the individual vectors) is meaningful there.

    Raises :class:`NotHermitian` when ``‖H - H†‖_F > 1e-12 ‖H‖_F``.
    """
    h = as_matrix(h)
    n = h.shape[0]
    scale = frobenius(h)
    if not is_hermitian(h):
        raise NotHermitian("matrix is not Hermitian within 1e-12 relative")
    a = (0.5 * (h + dagger(h))).tolist()
    v = np.eye(n, dtype=complex).tolist()
    if scale == 0.0:
        return EigDecomp(np.zeros(n), np.eye(n, dtype=complex))

    pairs = [(p, q) for p in range(n) for q in range(p + 1, n)]
    for _ in range(max_sweeps):
        off = math.sqrt(sum(abs(a[p][q]) ** 2 for p, q in pairs))
        if off <= 1e-17 * scale:
            break
        for p, q in pairs:
            if abs(a[p][q]) > 1e-300:
                _rotate(a, v, p, q)
    a = np.array(a)
    v = np.array(v)

    values = np.real(np.diag(a))
    order = np.argsort(values, kind="stable")
    values = values[order]
    vectors = _orthonormalize_clusters(values, v[:, order], 1e-10 * scale)
    return EigDecomp(values, vectors)


def partial_trace(rho, subsystem: str = "second") -> np.ndarray:
    """Reduced 2x2 density matrix of a two-qubit state.

    ``subsystem`` names the qubit that is traced *out*: ``"second"`` keeps the
    first Kronecker factor, ``"first"`` keeps the second.
    """
    rho = as_matrix(rho, 4).reshape(2, 2, 2, 2)  # (i, k, j, l)
    if subsystem == "second":
        return np.einsum("ikjk->ij", rho)
    if subsystem == "first":
        return np.einsum("ikil->kl", rho)
    raise ValueError(f"subsystem must be 'first' or 'second', not {subsystem!r}")


def commutator_norm(a, b) -> float:
    a = as_matrix(a)
    b = as_matrix(b)
    return frobenius(a @ b - b @ a)


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, np.conj(psi))
