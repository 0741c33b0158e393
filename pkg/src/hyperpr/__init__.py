"""Hypercomplex phase retrieval: Cayley-Dickson arithmetic, quaternion and
octonion linear algebra, structured transforms and Wirtinger-flow solvers."""
from .algebra import AlgebraError, HyperNum, find_zero_divisor, structure_tensor
from .linalg import HMatrix, HVector, aleph, aleph_inv, gimel, matvec, power_method
from .models import MeasurementEnsemble, Measurements, add_noise, distance, forward, make_ensemble, relative_distance
from .solvers import SolverConfig, SolverDiverged, SolverRun, solve, spectral_init

__version__ = "0.1.0"

CONVENTIONS = "cd-hamilton4-gimel8;qdft-unitary;odft-e1e2e4-left"

__all__ = [
    "CONVENTIONS",
    "AlgebraError",
    "HMatrix",
    "HVector",
    "HyperNum",
    "MeasurementEnsemble",
    "Measurements",
    "SolverConfig",
    "SolverDiverged",
    "SolverRun",
    "add_noise",
    "aleph",
    "aleph_inv",
    "distance",
    "find_zero_divisor",
    "forward",
    "gimel",
    "make_ensemble",
    "matvec",
    "power_method",
    "relative_distance",
    "solve",
    "spectral_init",
    "structure_tensor",
]
