import numpy as np
import pytest

from dirac_trap.dirac import ALPHA, BETA, SIGMA, DiracParams, hamiltonian
from dirac_trap.errors import InvalidPair, ZeroCoupling
from dirac_trap.linalg import frobenius
from dirac_trap.trapmap import (
    PHI_BLUE, PHI_RED, TrapParams, assemble_mapped_hamiltonian, dirac_from_trap, mass_generator,
    momentum_generators, pseudotensor_generators, qubit_index, sigma_pair, tensor_generators, trap_from_dirac,
)


def random_trap(rng):
    u = rng.normal(size=3)
    u /= np.linalg.norm(u)
    return TrapParams(
        eta=rng.uniform(0.01, 0.5),
        Delta=rng.uniform(0.1, 2.0),
        OmegaTilde=rng.uniform(0.1, 5.0),
        delta_det=rng.normal(),
        Omega1=tuple(rng.normal() * u),
        Omega2=tuple(rng.normal() * u),
    )


def test_qubit_index():
    assert [qubit_index(x) for x in "abcd"] == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_sigma_pair_examples():
    assert np.array_equal(sigma_pair("ad", "z").matrix, np.diag([1, 0, 0, -1]))
    bc = sigma_pair("bc", "x").matrix
    expected = np.zeros((4, 4))
    expected[1, 2] = expected[2, 1] = 1
    assert np.array_equal(bc, expected)
    with pytest.raises(InvalidPair):
        sigma_pair("aa", "x")
    with pytest.raises(ValueError):
        sigma_pair("ab", "w")


def test_exact_generator_identities():
    assert np.array_equal(mass_generator(), BETA)
    for g, a in zip(momentum_generators(), ALPHA):
        assert np.array_equal(g, a)
    for g, s in zip(tensor_generators(), SIGMA):
        assert np.array_equal(g, BETA @ s)
    for g, a in zip(pseudotensor_generators(), ALPHA):
        assert np.array_equal(g, 1j * BETA @ a)


def test_printed_pseudotensor_y_combination_has_opposite_sign():
    printed = sigma_pair("bc", "x").matrix - sigma_pair("ad", "x").matrix
    assert np.array_equal(printed, -1j * BETA @ ALPHA[1])


def test_sideband_phases():
    assert (PHI_RED, PHI_BLUE) == (-np.pi / 2, np.pi / 2)


def test_single_term_maps():
    tp = TrapParams(eta=0.1, Delta=1.0, OmegaTilde=5.0, delta_det=0.7)
    assert np.allclose(assemble_mapped_hamiltonian(tp, (0, 0, 0)), 1.4 * BETA)
    tp = TrapParams(eta=0.1, Delta=1.0, OmegaTilde=5.0, Omega1=(0.3, 0, 0))
    expected = 0.6 * (sigma_pair("ab", "x").matrix - sigma_pair("cd", "x").matrix)
    assert np.allclose(assemble_mapped_hamiltonian(tp, (0, 0, 0)), expected)
    d = dirac_from_trap(tp)
    assert np.allclose(expected, d.kappa * d.E[0] * BETA @ SIGMA[0])


def test_mapped_hamiltonian_equivalence(rng):
    for _ in range(1000):
        tp = random_trap(rng)
        p = rng.normal(size=3)
        h_trap = assemble_mapped_hamiltonian(tp, p)
        h_dirac = hamiltonian(dirac_from_trap(tp, p))
        assert frobenius(h_trap - h_dirac) <= 1e-12 * frobenius(h_dirac)


def test_detuning_sets_mass():
    assert dirac_from_trap(TrapParams(eta=0.1, Delta=1, OmegaTilde=1)).m == 0.0


def test_no_carriers_gives_free_particle():
    d = dirac_from_trap(TrapParams(eta=0.1, Delta=1, OmegaTilde=1, delta_det=0.5))
    assert d.kappa == d.mu == 0.0 and d.E == (0.0, 0.0, 0.0)


def test_zero_coupling():
    with pytest.raises(ZeroCoupling):
        dirac_from_trap(TrapParams(eta=0.0, Delta=1, OmegaTilde=1))


def test_round_trip(rng):
    for _ in range(200):
        e = rng.normal(size=3)
        d = DiracParams(m=rng.normal(), p=rng.normal(size=3), kappa=rng.normal(), mu=rng.normal(), E=e)
        tp = trap_from_dirac(d, eta=rng.uniform(0.01, 1), Delta=rng.uniform(0.1, 3))
        assert tp.light_speed == pytest.approx(1.0, rel=1e-14)
        back = dirac_from_trap(tp, d.p)
        assert back.m == pytest.approx(d.m, abs=1e-12)
        assert np.allclose(back.p, d.p, atol=1e-12)
        assert np.allclose(back.kappa * back.E_vec, d.kappa * d.E_vec, atol=1e-12)
        assert np.allclose(back.mu * back.E_vec, d.mu * d.E_vec, atol=1e-12)
        assert frobenius(hamiltonian(back) - hamiltonian(d)) <= 1e-12 * frobenius(hamiltonian(d))


def test_gauges():
    tp = TrapParams(eta=0.1, Delta=1, OmegaTilde=5, Omega1=(0.5, 0, 0), Omega2=(0.5, 0, 0))
    unit = dirac_from_trap(tp)
    assert np.linalg.norm(unit.E_vec) == pytest.approx(1)
    same = dirac_from_trap(tp, gauge="kappa_eq_mu")
    assert same.kappa == same.mu == 1.0 and same.E == (1.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        dirac_from_trap(TrapParams(eta=0.1, Delta=1, OmegaTilde=5, Omega1=(0.5, 0, 0), Omega2=(0.2, 0, 0)),
                        gauge="kappa_eq_mu")
    with pytest.raises(ValueError):
        dirac_from_trap(tp, gauge="nope")


def test_non_parallel_carriers_rejected():
    tp = TrapParams(eta=0.1, Delta=1, OmegaTilde=5, Omega1=(1, 0, 0), Omega2=(0, 1, 0))
    with pytest.raises(ValueError):
        dirac_from_trap(tp)


def test_from_raw():
    tp = TrapParams.from_raw(nu=2.0, ion_mass=0.25, k=0.3, OmegaTilde=1.0)
    assert tp.Delta == pytest.approx(1.0)
    assert tp.eta == pytest.approx(0.3)
