"""End-to-end counterexamples and the positive check of the Renyi relation.

Each scenario evaluates the same quantity twice, once from a closed form and
once through states -> binning -> entropy, and reports both.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.special import erfc, xlogy

from .binning import Compactified, HalfLines, Uniform, bin_probabilities
from .bounds import (
    BoundCheck,
    check_norm_inequality,
    conjugate_order,
    eta_compactified,
    renyi_bound,
    violation_threshold,
)
from .entropy import EntropyOrderPair, renyi, shannon
from .errors import DomainError, InvalidScenario
from .states import BoxState, GaussianState, PhysicalConstants, QuantumState

WW_LIMIT = 1.0 - math.log(2.0)
AGREEMENT_TOL = 1e-8


@dataclass(frozen=True)
class GaussianScenarioParams:
    delta: float
    # Renyi order for an extension run; None means Shannon
    order: float | None = None

    def __post_init__(self):
        if not (self.delta >= 0 and math.isfinite(self.delta)):
            raise DomainError(f"delta must be a finite nonnegative number, got {self.delta!r}")

    def state(self, sigma=1.0, hbar=1.0) -> GaussianState:
        """Gaussian with ``x0 * p0 / hbar == delta**2`` and ``sigma == x0 / delta``."""
        return GaussianState(x0=self.delta * sigma, p0=self.delta * hbar / sigma, sigma=sigma, hbar=hbar)


@dataclass(frozen=True)
class BoxScenarioParams:
    s_x: float
    dt_x: float
    alpha: float
    s_p: float = 1.0

    def __post_init__(self):
        if not self.s_x > 0:
            raise DomainError(f"s_x must be positive, got {self.s_x!r}")
        if not 0 < self.dt_x <= 0.5:
            raise DomainError(f"dt_x must lie in (0, 1/2], got {self.dt_x!r}")
        if not self.alpha > 1:
            raise DomainError(f"alpha must exceed 1, got {self.alpha!r}")
        if not self.s_p > 0:
            raise DomainError(f"s_p must be positive, got {self.s_p!r}")

    @property
    def a(self) -> float:
        return self.s_x * self.dt_x / (1.0 - self.dt_x)


@dataclass(frozen=True)
class ViolationReport:
    closed_form_value: float
    pipeline_value: float
    reference_bound: float
    agreement_error: float
    violated: bool
    details: dict = field(default_factory=dict)

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        return cls(
            d["closed_form_value"],
            d["pipeline_value"],
            d["reference_bound"],
            d["agreement_error"],
            d["violated"],
            dict(d.get("details", {})),
        )


def gaussian_two_bin_entropy_sum(delta: float) -> float:
    """Closed-form ``H(x) + H(p)`` of the shifted Gaussian over two half-line bins.

    ``2 ln 2 - (1 - E) ln(1 - E) - (1 + E) ln(1 + E)`` with ``E = erf(delta)``.
    ``1 - E`` is taken as ``c = erfc(delta)`` and the ``2 ln 2`` is cancelled
    analytically, leaving ``c ln 2 - c ln c - (2 - c) ln(1 - c/2)``; this keeps
    full relative accuracy and reaches exactly 0 for large ``delta``.
    """
    if not delta >= 0:
        raise DomainError(f"delta must be nonnegative, got {delta!r}")
    c = float(erfc(delta))
    value = c * math.log(2.0) - float(xlogy(c, c)) - (2.0 - c) * math.log1p(-0.5 * c)
    return min(max(value, 0.0), 2.0 * math.log(2.0))


def _entropy(pv, order):
    return shannon(pv) if order is None else renyi(pv, order)


def run_gaussian_counterexample(params: GaussianScenarioParams, sigma=1.0, hbar=1.0) -> ViolationReport:
    """Half-line entropy sum of the shifted Gaussian against the large-bin WW limit.

    ``sigma`` and ``hbar`` choose another instantiation with the same ``delta``;
    the probabilities do not depend on them.
    """
    state = params.state(sigma=sigma, hbar=hbar)
    pv_x = bin_probabilities(state, "position", HalfLines(0.0))
    pv_p = bin_probabilities(state, "momentum", HalfLines(0.0))
    pipeline = _entropy(pv_x, params.order) + _entropy(pv_p, params.order)
    closed = gaussian_two_bin_entropy_sum(params.delta)
    details = {
        "delta": params.delta,
        "position_probs": pv_x.probs.tolist(),
        "momentum_probs": pv_p.probs.tolist(),
    }
    if params.order is not None:
        details["order"] = params.order
        details["note"] = "extension, not in paper"
    err = abs(closed - pipeline)
    if params.order is None and err >= AGREEMENT_TOL:
        raise InvalidScenario(f"pipeline {pipeline!r} disagrees with closed form {closed!r}")
    return ViolationReport(closed, pipeline, WW_LIMIT, err, bool(pipeline < WW_LIMIT), details)


def box_rhs_closed_form(alpha: float, dt_x: float) -> float:
    """Right side of the compactified inequality when every bin holds 1/2."""
    beta = conjugate_order(alpha)
    pair = EntropyOrderPair(alpha, beta)
    return -eta_compactified(pair, dt_x, 1.0) * (2.0 ** (1.0 - beta)) ** (1.0 / beta)


def box_lhs_closed_form(alpha: float) -> float:
    return -((2.0 ** (1.0 - alpha)) ** (1.0 / alpha))


def _two_halves(pv, label):
    nz = pv.probs[pv.probs > 1e-15]
    if nz.size != 2 or np.any(np.abs(nz - 0.5) > AGREEMENT_TOL):
        raise InvalidScenario(f"{label} probabilities {pv.probs.tolist()} are not two halves")


def run_box_counterexample(params: BoxScenarioParams) -> ViolationReport:
    """The box state against the compactified norm inequality with ``dt_p = 1``."""
    state = BoxState(params.a)
    pair = EntropyOrderPair.from_alpha(params.alpha)
    pv_x = bin_probabilities(state, "position", Compactified(params.s_x, params.dt_x))
    pv_p = bin_probabilities(state, "momentum", Compactified(params.s_p, 1.0))
    _two_halves(pv_x, "position")
    _two_halves(pv_p, "momentum")

    eta_value = eta_compactified(pair, params.dt_x, 1.0)
    check = check_norm_inequality(pv_p, pv_x, pair, eta_value)
    closed = box_rhs_closed_form(params.alpha, params.dt_x)
    threshold = violation_threshold(params.alpha)
    violated = not check.satisfied
    # a disagreement is only meaningful away from the threshold itself
    if abs(params.dt_x - threshold) > 1e-6 and violated != (params.dt_x < threshold):
        raise InvalidScenario(
            f"violation flag {violated} contradicts threshold {threshold!r} at dt_x={params.dt_x!r}"
        )
    details = {
        "s_x": params.s_x,
        "s_p": params.s_p,
        "dt_x": params.dt_x,
        "dt_p": 1.0,
        "alpha": pair.alpha,
        "beta": pair.beta,
        "a": params.a,
        "eta": eta_value,
        "lhs": check.lhs,
        "rhs": check.rhs,
        "margin": check.margin,
        "lhs_closed_form": box_lhs_closed_form(params.alpha),
        "threshold": threshold,
        "position_probs": pv_x.probs[pv_x.probs > 1e-15].tolist(),
        "momentum_probs": pv_p.probs.tolist(),
    }
    return ViolationReport(closed, check.rhs, check.lhs, abs(closed - check.rhs), violated, details)


def entropy_sum(state: QuantumState, dx, dp, pair: EntropyOrderPair, tail_eps=1e-12):
    """``H_alpha`` of momentum bins plus ``H_beta`` of position bins, with the binned vectors."""
    pv_p = bin_probabilities(state, "momentum", Uniform(dp), tail_eps)
    pv_x = bin_probabilities(state, "position", Uniform(dx), tail_eps)
    return renyi(pv_p, pair.alpha) + renyi(pv_x, pair.beta), pv_p, pv_x


def run_renyi_ur_check(
    state: QuantumState, dx, dp, alpha, consts: PhysicalConstants | None = None, tail_eps=1e-12
) -> BoundCheck:
    """Binned Renyi entropy sum of ``state`` against the proven lower bound."""
    if not alpha >= 1:
        raise DomainError(f"alpha must be at least 1, got {alpha!r}")
    consts = PhysicalConstants(state.hbar) if consts is None else consts
    if not math.isclose(consts.hbar, state.hbar, rel_tol=1e-15):
        raise DomainError("state and constants use different hbar")
    pair = EntropyOrderPair.from_alpha(alpha)
    lhs, pv_p, pv_x = entropy_sum(state, dx, dp, pair, tail_eps)
    rhs = renyi_bound(pair, dx, dp, consts)
    return BoundCheck.compare(
        lhs,
        rhs,
        inequality="renyi",
        alpha=pair.alpha,
        beta=pair.beta,
        dx=float(dx),
        dp=float(dp),
        hbar=consts.hbar,
        tail_mass_momentum=pv_p.tail_mass,
        tail_mass_position=pv_x.tail_mass,
    )

