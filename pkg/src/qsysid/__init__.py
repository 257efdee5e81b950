"""Identifiability analysis and reconstruction of passive linear quantum systems."""

from .analysis import (
    StructureReport,
    controllability_matrix,
    observability_matrix,
    structure_report,
)
from .errors import (
    DegenerateSpectrum,
    DimensionMismatch,
    EmptyGrid,
    IllConditioned,
    InsufficientData,
    InvalidNetwork,
    NegativeResidue,
    NonMonic,
    NonMonotoneGrid,
    NotHermitian,
    NotHurwitz,
    NotMinimal,
    NotPassiveTF,
    NotSISO,
    NotStable,
    NotUnitary,
    QsysidError,
    RankDeficientCoupling,
    SingularResolvent,
    SolverSingular,
    TooManyFields,
)
from .identifiability import (
    EquivalenceVerdict,
    MarkovSequence,
    drift_moment_sequence,
    find_gauge,
    gauge_transform,
    markov_distinguishable,
    markov_sequence,
)
from .model import (
    MeanTrajectory,
    PassiveSystem,
    drift_matrix,
    new_system,
    simulate_means,
    transfer_at,
    transfer_rational,
)
from .network import (
    InfectionTrace,
    InfectionVerdict,
    NetworkModel,
    infection_closure,
    infection_identifiability_verdict,
    new_network,
    omega_from_network,
)
from .probe import (
    FitResult,
    ProbeDataset,
    fit_rational,
    identify_pipeline,
    sample_response,
)
from .ratfunc import RationalTF, make_rational_tf
from .realization import (
    CanonicalParams,
    ClassicalRealization,
    GaugeFactorization,
    companion_realization,
    direct_reconstruction,
    eigenvalues_from_canonical,
    mimo_coupling_gram,
    reconstruct_passive,
    solve_lyapunov,
)

__version__ = "0.1.0"

__all__ = [
    "CanonicalParams",
    "ClassicalRealization",
    "DegenerateSpectrum",
    "DimensionMismatch",
    "EmptyGrid",
    "EquivalenceVerdict",
    "FitResult",
    "GaugeFactorization",
    "IllConditioned",
    "InfectionTrace",
    "InfectionVerdict",
    "InsufficientData",
    "InvalidNetwork",
    "MarkovSequence",
    "MeanTrajectory",
    "NegativeResidue",
    "NetworkModel",
    "NonMonic",
    "NonMonotoneGrid",
    "NotHermitian",
    "NotHurwitz",
    "NotMinimal",
    "NotPassiveTF",
    "NotSISO",
    "NotStable",
    "NotUnitary",
    "PassiveSystem",
    "ProbeDataset",
    "QsysidError",
    "RankDeficientCoupling",
    "RationalTF",
    "SingularResolvent",
    "SolverSingular",
    "StructureReport",
    "TooManyFields",
    "companion_realization",
    "controllability_matrix",
    "direct_reconstruction",
    "drift_matrix",
    "drift_moment_sequence",
    "eigenvalues_from_canonical",
    "find_gauge",
    "fit_rational",
    "gauge_transform",
    "identify_pipeline",
    "infection_closure",
    "infection_identifiability_verdict",
    "make_rational_tf",
    "markov_distinguishable",
    "markov_sequence",
    "mimo_coupling_gram",
    "new_network",
    "new_system",
    "observability_matrix",
    "omega_from_network",
    "reconstruct_passive",
    "sample_response",
    "simulate_means",
    "solve_lyapunov",
    "structure_report",
    "transfer_at",
    "transfer_rational",
]
