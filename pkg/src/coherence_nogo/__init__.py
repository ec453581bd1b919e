"""Limits on deterministic purification and probabilistic enhancement of coherence."""

from .enhancement import (
    EnhancementReport,
    StochasticSIO,
    apply_ssio,
    condition_residual,
    enhancement_ceiling,
    m_matrix,
    optimal_kraus,
    random_sio,
    random_ssio,
    enhancement_check,
)
from .errors import (
    CoherenceError,
    IncoherentInput,
    InvalidKraus,
    InvalidState,
    NoConvergence,
    NotConverged,
    NotFullRank,
    NotHermitian,
    NotPositive,
    NotUnitTrace,
    Unphysical,
    VerdictMismatch,
    WrongDimension,
    ZeroPopulation,
    ZeroProbability,
)
from .linalg import EigenDecomposition, diag_inv_sqrt, diag_part, entrywise_abs, hermitian_eig
from .measures import (
    CoherentWeightResult,
    c_b_upper_bound,
    c_l1,
    coherent_weight,
    trivial_measure_counterexample,
)
from .purification import DecompositionWitness, PurificationReport, full_rank_witness, purifiability_check
from .qubit import (
    BlochCell,
    BlochVector,
    bloch_region_grid,
    bloch_to_density,
    density_to_bloch,
    qubit_ceiling,
    qubit_enhanceable,
)
from .states import as_density_matrix, random_density_matrix

__version__ = "0.1.0"
