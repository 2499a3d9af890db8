"""Numerical checks of binned entropic uncertainty relations."""

__version__ = "0.1.0"

from .binning import (
    Compactified,
    HalfLines,
    ProbabilityVector,
    Uniform,
    bin_probabilities,
    compactify,
    decompactify,
)
from .bounds import (
    BoundCheck,
    check_norm_inequality,
    conjugate_order,
    eta,
    eta_compactified,
    renyi_bound,
    shannon_bound,
    violation_threshold,
    ww_bound,
    ww_offset,
)
from .entropy import EntropyOrderPair, norm_sum, renyi, shannon, tail_bound, tsallis
from .errors import (
    BudgetExhausted,
    DomainError,
    EntropicURError,
    GridTooSmall,
    InvalidScenario,
    NonconvergedQuadrature,
)
from .scenarios import (
    BoxScenarioParams,
    GaussianScenarioParams,
    ViolationReport,
    gaussian_two_bin_entropy_sum,
    run_box_counterexample,
    run_gaussian_counterexample,
    run_renyi_ur_check,
)
from .search import FamilySpec, Optimum, minimize_entropy_sum
from .states import (
    BoxState,
    GaussianState,
    PhysicalConstants,
    SampledState,
    discrete_fourier_partner,
    interval_probability,
    momentum_density,
    position_density,
)

__all__ = [
    "__version__",
    "Compactified",
    "HalfLines",
    "ProbabilityVector",
    "Uniform",
    "bin_probabilities",
    "compactify",
    "decompactify",
    "BoundCheck",
    "check_norm_inequality",
    "conjugate_order",
    "eta",
    "eta_compactified",
    "renyi_bound",
    "shannon_bound",
    "violation_threshold",
    "ww_bound",
    "ww_offset",
    "EntropyOrderPair",
    "norm_sum",
    "renyi",
    "shannon",
    "tail_bound",
    "tsallis",
    "BudgetExhausted",
    "DomainError",
    "EntropicURError",
    "GridTooSmall",
    "InvalidScenario",
    "NonconvergedQuadrature",
    "BoxScenarioParams",
    "GaussianScenarioParams",
    "ViolationReport",
    "gaussian_two_bin_entropy_sum",
    "run_box_counterexample",
    "run_gaussian_counterexample",
    "run_renyi_ur_check",
    "FamilySpec",
    "Optimum",
    "minimize_entropy_sum",
    "BoxState",
    "GaussianState",
    "PhysicalConstants",
    "SampledState",
    "discrete_fourier_partner",
    "interval_probability",
    "momentum_density",
    "position_density",
]
