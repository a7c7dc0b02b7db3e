"""Kirkwood-Dirac quasiprobability toolkit.

Computes KD tables of pure states over a unitary basis pair, decides
classicality, analyzes the block structure a classical state imposes on
the transition matrix, certifies nonclassicality from zero counts, and
enumerates all KD classical states of the discrete Fourier pair, with a
brute-force support-pair oracle for small dimensions.
"""

from .blocks import (
    Block,
    BlockDecomposition,
    CanonicalForm,
    RankRelationReport,
    canonical_form,
    decompose,
    verify_rank_relations,
)
from .clusters import (
    ANTIPODAL,
    OBTUSE,
    SINGLETON,
    ClusterDecomposition,
    check_dimension_law,
    cluster,
    validate_family,
)
from .core import DEFAULT_TOL, Tolerances, check_unitary, entry_polar
from .dft import (
    DftClassicalParams,
    SupportLattice,
    check_b_expansion,
    dft_matrix,
    divisor_pairs,
    enumerate_classical,
    make_state,
    mub_m_ab,
    support_lattice_check,
)
from .errors import (
    DecomposableMatrixError,
    InconsistentSupportError,
    InternalConsistencyError,
)
from .feasibility import (
    AmplitudeSolution,
    FeasibilityResult,
    NoPositiveAmplitude,
    OffSupportLeak,
    PhaseAssignment,
    PhaseCycleViolation,
    construct_classical_state,
    decompose_classical_state,
    mub_uniform_amplitude_check,
    solve_amplitudes,
    solve_phases,
)
from .kd import (
    ClassicalityReport,
    KDTable,
    SupportPair,
    b_coefficients,
    classify,
    gauge_rotate,
    kd_table,
    supports,
)
from .oracle import (
    OracleCatalog,
    OracleEntry,
    SweepReport,
    brute_force_catalog,
    haar_random_state,
    witness_soundness_sweep,
)
from .witnesses import (
    WitnessReport,
    WitnessVerdict,
    count_zeros,
    nonclassicality_witness,
    two_line_zeros,
    zero_count_bound_holds,
    zero_count_floor,
)

__version__ = "0.1.0"

__all__ = [
    "ANTIPODAL",
    "AmplitudeSolution",
    "Block",
    "BlockDecomposition",
    "CanonicalForm",
    "ClassicalityReport",
    "ClusterDecomposition",
    "DEFAULT_TOL",
    "DecomposableMatrixError",
    "DftClassicalParams",
    "FeasibilityResult",
    "InconsistentSupportError",
    "InternalConsistencyError",
    "KDTable",
    "NoPositiveAmplitude",
    "OBTUSE",
    "OffSupportLeak",
    "OracleCatalog",
    "OracleEntry",
    "PhaseAssignment",
    "PhaseCycleViolation",
    "RankRelationReport",
    "SINGLETON",
    "SupportLattice",
    "SupportPair",
    "SweepReport",
    "Tolerances",
    "WitnessReport",
    "WitnessVerdict",
    "b_coefficients",
    "brute_force_catalog",
    "canonical_form",
    "check_b_expansion",
    "check_dimension_law",
    "check_unitary",
    "classify",
    "cluster",
    "construct_classical_state",
    "count_zeros",
    "decompose",
    "decompose_classical_state",
    "dft_matrix",
    "divisor_pairs",
    "entry_polar",
    "enumerate_classical",
    "gauge_rotate",
    "haar_random_state",
    "kd_table",
    "make_state",
    "mub_m_ab",
    "mub_uniform_amplitude_check",
    "nonclassicality_witness",
    "solve_amplitudes",
    "solve_phases",
    "support_lattice_check",
    "supports",
    "two_line_zeros",
    "validate_family",
    "verify_rank_relations",
    "witness_soundness_sweep",
    "zero_count_bound_holds",
    "zero_count_floor",
]
