"""Shared draws and independent oracles.

The oracles deliberately avoid the package's own kernels: LAPACK ``eigh`` for
spectra, ``scipy.linalg.expm`` for propagation and a reshape-based partial
trace for reduced states.
"""
import numpy as np
import pytest
import scipy.linalg

from dirac_trap.dirac import PlanarConfig, invariants


def draw_planar(rng, count, g2_min=1e-18, kappa_mu_hi=2.0):
    out = []
    while len(out) < count:
        m, p, eps = 10.0 ** rng.uniform(-2, 2, size=3)
        cfg = PlanarConfig(
            m=m, p=p, eps=eps,
            theta=rng.uniform(0, 2 * np.pi),
            kappa=rng.uniform(0, kappa_mu_hi),
            mu=rng.uniform(0, kappa_mu_hi),
        )
        if invariants(cfg).g2 >= g2_min:
            out.append(cfg)
    return out


def oracle_spectrum(h):
    return np.linalg.eigvalsh(h)


def oracle_evolve(h, psi0, t):
    return scipy.linalg.expm(-1j * h * t) @ psi0


def oracle_reduced_spin(psi):
    # keep the second Kronecker factor
    m = np.asarray(psi).reshape(2, 2)
    return m.T @ m.conj()


def oracle_concurrence(psi):
    psi = np.asarray(psi)
    return 2 * abs(psi[0] * psi[3] - psi[1] * psi[2])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
