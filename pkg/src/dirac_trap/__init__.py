"""Dirac-like dynamics of a four-level trapped ion: spectra, transition
probabilities, spin-parity concurrence and chirality."""
from .dirac import ALPHA, BETA, GAMMA5, SIGMA, DiracParams, PlanarConfig, hamiltonian, invariants, o_operator
from .dynamics import IonicState, evolve_ionic, probability_matrix, time_grid, transition_probability
from .entanglement import chirality, concurrence, correlation_report, entanglement_entropy
from .errors import DiracTrapError
from .linalg import hermitian_eig, kron, partial_trace
from .spectrum import LABELS, MODES, EigenSystem, eigen_density, eigensystem, eigenvalue, free_bispinor
from .trapmap import TrapParams, assemble_mapped_hamiltonian, dirac_from_trap, trap_from_dirac

__version__ = "0.1.0"

__all__ = [
    "ALPHA", "BETA", "GAMMA5", "SIGMA", "LABELS", "MODES",
    "DiracParams", "PlanarConfig", "EigenSystem", "IonicState", "TrapParams", "DiracTrapError",
    "hamiltonian", "invariants", "o_operator", "eigenvalue", "eigen_density", "eigensystem",
    "free_bispinor", "evolve_ionic", "transition_probability", "probability_matrix", "time_grid",
    "concurrence", "chirality", "entanglement_entropy", "correlation_report",
    "hermitian_eig", "kron", "partial_trace",
    "dirac_from_trap", "trap_from_dirac", "assemble_mapped_hamiltonian",
]
