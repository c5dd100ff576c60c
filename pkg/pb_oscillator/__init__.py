from .errors import (
    CertificationFailure,
    ClosureNotReached,
    DimensionError,
    DomainError,
    HermiticityError,
    NormalizationError,
    NumericError,
    PBOscillatorError,
    TraceError,
)
from .lie_closure import (
    LieBasis,
    SuCertificate,
    StructureConstants,
    certify_su,
    close_algebra,
    close_family,
    gellmann_from_family,
    generalized_gellmann,
    group_element,
    structure_constants,
)
from .linalg import Tolerance, commutator, anticommutator, hermitian_eigensystem
from .pb_operators import OscillatorFamily, build_family, check_ladder_relations, derive_ladder
from .phase import PhaseBasis, build_phase_basis, number_phase_commutator, phase_distribution
from .relations import RelationReport, RelationSet
from .susy import (
    JcParams,
    QuasiAlgebraCell,
    SusyRep,
    build_susy_rep,
    jc_hamiltonian_direct,
    jc_hamiltonian_susy_form,
    nprime_eigen_check,
    quasialgebra_check,
    susy_pb_hamiltonian,
    verify_susy_algebra,
)

__version__ = "0.1.0"


__all__ = [
    "PBOscillatorError",
    "DimensionError",
    "DomainError",
    "HermiticityError",
    "TraceError",
    "NumericError",
    "NormalizationError",
    "ClosureNotReached",
    "CertificationFailure",
    "Tolerance",
    "commutator",
    "anticommutator",
    "hermitian_eigensystem",
    "RelationSet",
    "RelationReport",
    "OscillatorFamily",
    "build_family",
    "derive_ladder",
    "check_ladder_relations",
    "LieBasis",
    "SuCertificate",
    "StructureConstants",
    "close_algebra",
    "close_family",
    "certify_su",
    "structure_constants",
    "gellmann_from_family",
    "generalized_gellmann",
    "group_element",
    "PhaseBasis",
    "build_phase_basis",
    "number_phase_commutator",
    "phase_distribution",
    "SusyRep",
    "JcParams",
    "QuasiAlgebraCell",
    "build_susy_rep",
    "verify_susy_algebra",
    "jc_hamiltonian_direct",
    "jc_hamiltonian_susy_form",
    "nprime_eigen_check",
    "quasialgebra_check",
    "susy_pb_hamiltonian",
]
