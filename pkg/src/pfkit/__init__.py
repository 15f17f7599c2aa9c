"""pfkit: pseudo-fermion pairs on C^2 and everything they generate.

Verification and construction of pseudo-fermion pairs, biorthonormal
ladder bases, positive metric and intertwining operators, similarity to
standard fermions, Grassmann-valued bi-coherent states, and an existence
solver for positive metrics of 2x2 non-self-adjoint Hamiltonians.
"""

from .algebra import (
    PFPair,
    PFSystem,
    RelationReport,
    build_system,
    check_relations,
    deformed_inner,
    fermionize,
    hamiltonian_from_pf,
    pf_residuals,
    pseudofermionize,
    random_pf_pair,
    similar_selfadjoint,
    standard_lowering,
    verify_pf,
)
from .exceptions import PseudoFermionError
from .grassmann import (
    GElem,
    Payload,
    berezin,
    bicoherent,
    coherent_fermion,
    conj,
    eigen_relation_residuals,
    gmul,
    resolution_check,
)
from .linalg import (
    DEFAULT_TOL,
    Eigenpair,
    eig2,
    herm_distance,
    inv2,
    nullspace2,
    nullspace4,
    posdef_check,
    sqrt_posdef2,
)
from .metric import (
    MetricProblem,
    MetricSolution,
    MetricStatus,
    build_x,
    make_traceless,
    necessary_condition,
    solve_metric,
    verify_intertwining,
)
from .models import (
    MODEL_NAMES,
    ModelOutput,
    alpha_model,
    biortho_hamiltonian,
    build_model,
    car_extension,
    crossvalidate,
    two_level_atom,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "Eigenpair",
    "GElem",
    "MODEL_NAMES",
    "MetricProblem",
    "MetricSolution",
    "MetricStatus",
    "ModelOutput",
    "PFPair",
    "PFSystem",
    "Payload",
    "PseudoFermionError",
    "RelationReport",
    "alpha_model",
    "berezin",
    "bicoherent",
    "biortho_hamiltonian",
    "build_model",
    "build_system",
    "build_x",
    "car_extension",
    "check_relations",
    "coherent_fermion",
    "conj",
    "crossvalidate",
    "deformed_inner",
    "eig2",
    "eigen_relation_residuals",
    "fermionize",
    "gmul",
    "hamiltonian_from_pf",
    "herm_distance",
    "inv2",
    "make_traceless",
    "necessary_condition",
    "nullspace2",
    "nullspace4",
    "pf_residuals",
    "posdef_check",
    "pseudofermionize",
    "random_pf_pair",
    "resolution_check",
    "similar_selfadjoint",
    "solve_metric",
    "sqrt_posdef2",
    "standard_lowering",
    "two_level_atom",
    "verify_intertwining",
    "verify_pf",
]
