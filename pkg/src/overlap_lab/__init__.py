"""overlap-lab: eigenvector-overlap statistics of triangular matrix ensembles.

The package simulates upper-triangular models whose density combines
eigenvalue repulsion |prod (t_jj - t_ii)|^2 with a confining trace
potential, computes eigenvector overlaps by back-substitution, and runs
the Monte Carlo experiments and exact structural validators built on
top of them.
"""

from .config import ExperimentConfig, load_config, potential_from_text
from .eigenvectors import (
    OverlapRecord,
    back_substitute,
    eigen_residual,
    eigenvector_matrix,
    magnitude_diagnostics,
    overlap,
    overlap_gram,
    pair_overlap,
    y_from_gram,
    y_statistic,
)
from .experiments import (
    Exp1Report,
    GaussianArrayReport,
    HistogramData,
    LocalLawReport,
    SurvivalCurve,
    exp1_experiment,
    gaussian_array_experiment,
    ginibre_ordered_frame,
    local_law_check,
    select_pair,
    sqrt_y_histogram,
    survival_curve,
    tail_experiment,
    y_for_pair,
)
from .model import ProbeSet, TriangularModel, packed_index, packed_size
from .potentials import (
    ConvexityReport,
    PotentialSpec,
    convexity_probe,
    ginibre_potential,
    potential_derivative,
    potential_value,
    quartic_quintic_potential,
    trace_potential,
    trace_potential_grad,
)
from .runner import RunResult, content_hash, run
from .samplers import (
    ChainConfig,
    ChainDiagnostics,
    DivergenceError,
    MalaChain,
    SampleBatch,
    collect_general,
    collect_ginibre,
    default_step_size,
    sample_general,
    sample_ginibre,
    sunflower_lattice,
)
from .stats import (
    exp1_cdf,
    ks_critical,
    ks_distance,
    ks_two_sample,
    ks_two_sample_critical,
    mean_z_score,
)
from .triangular import (
    admissible_order,
    apply_phases,
    grad_log_density,
    log_density,
    log_vandermonde,
    select_nearest,
)
from .validators import (
    JacobianReport,
    KostlanReport,
    OracleCompare2x2,
    jacobian_check,
    jacobian_matrix,
    kostlan_mixture_cdf,
    kostlan_radial_check,
    log_cn_constant,
    normalization_probe_1x1,
    oracle_compare_2x2,
    rejection_sample_2x2,
)

__version__ = "0.1.0"

__all__ = [
    "ChainConfig",
    "ChainDiagnostics",
    "ConvexityReport",
    "DivergenceError",
    "Exp1Report",
    "ExperimentConfig",
    "GaussianArrayReport",
    "HistogramData",
    "JacobianReport",
    "KostlanReport",
    "LocalLawReport",
    "MalaChain",
    "OracleCompare2x2",
    "OverlapRecord",
    "PotentialSpec",
    "ProbeSet",
    "RunResult",
    "SampleBatch",
    "SurvivalCurve",
    "TriangularModel",
    "admissible_order",
    "apply_phases",
    "back_substitute",
    "collect_general",
    "collect_ginibre",
    "content_hash",
    "convexity_probe",
    "default_step_size",
    "eigen_residual",
    "eigenvector_matrix",
    "exp1_cdf",
    "exp1_experiment",
    "gaussian_array_experiment",
    "ginibre_ordered_frame",
    "ginibre_potential",
    "grad_log_density",
    "jacobian_check",
    "jacobian_matrix",
    "kostlan_mixture_cdf",
    "kostlan_radial_check",
    "ks_critical",
    "ks_distance",
    "ks_two_sample",
    "ks_two_sample_critical",
    "load_config",
    "local_law_check",
    "log_cn_constant",
    "log_density",
    "log_vandermonde",
    "magnitude_diagnostics",
    "mean_z_score",
    "normalization_probe_1x1",
    "oracle_compare_2x2",
    "overlap",
    "overlap_gram",
    "packed_index",
    "packed_size",
    "pair_overlap",
    "potential_derivative",
    "potential_from_text",
    "potential_value",
    "quartic_quintic_potential",
    "rejection_sample_2x2",
    "run",
    "sample_general",
    "sample_ginibre",
    "select_nearest",
    "select_pair",
    "sqrt_y_histogram",
    "sunflower_lattice",
    "survival_curve",
    "tail_experiment",
    "trace_potential",
    "trace_potential_grad",
    "y_for_pair",
    "y_from_gram",
    "y_statistic",
]
