"""Derivative-free search for the smallest binned entropy sum in a state family.

The objective is ``H_alpha(momentum) + H_beta(position)`` with uniform bins.
Its minimum over a family shows how far the family stays above the proven
lower bound.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.optimize import minimize

from .bounds import CHECK_TOL, renyi_bound
from .entropy import EntropyOrderPair
from .errors import BudgetExhausted, DomainError
from .scenarios import entropy_sum
from .states import GaussianState, PhysicalConstants

logger = logging.getLogger(__name__)

N_STARTS = 5
SIMPLEX_STEP = 0.1
CONVERGED_DIAMETER = 1e-6
_GAUSSIAN_PARAMS = ("x0", "sigma")


@dataclass(frozen=True)
class FamilySpec:
    """A parametric family with some parameters free inside closed intervals.

    ``sigma`` is searched on a log scale; every other parameter linearly.
    """

    family: str = "gaussian"
    parameter_ranges: dict = field(default_factory=dict)
    fixed: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family != "gaussian":
            raise DomainError(f"unsupported family {self.family!r}")
        for name, (lo, hi) in self.parameter_ranges.items():
            if name not in _GAUSSIAN_PARAMS:
                raise DomainError(f"{name!r} is not a free parameter of the Gaussian family")
            if not lo <= hi:
                raise DomainError(f"empty range for {name!r}: [{lo}, {hi}]")
        if "sigma" in self.parameter_ranges and self.parameter_ranges["sigma"][0] <= 0:
            raise DomainError("sigma range must be bounded away from zero")

    @classmethod
    def gaussian(cls, dx, dp, hbar=1.0, free=_GAUSSIAN_PARAMS):
        """Default search box: ``x0`` within one position bin, ``sigma`` over
        a factor of 20 either side of ``sqrt(hbar * dx / dp)``."""
        scale = math.sqrt(hbar * dx / dp)
        ranges = {"x0": (0.0, float(dx)), "sigma": (max(scale / 20, 1e-3 * dx), scale * 20)}
        fixed = {"x0": 0.0, "sigma": scale, "p0": 0.0}
        return cls(
            "gaussian",
            {k: ranges[k] for k in free},
            {k: v for k, v in fixed.items() if k not in free},
        )

    @property
    def free_parameters(self):
        return tuple(self.parameter_ranges)

    def _bounds(self, name):
        lo, hi = self.parameter_ranges[name]
        if name == "sigma":
            return math.log(lo), math.log(hi)
        return lo, hi

    def decode(self, y):
        """Map normalized coordinates in [0, 1] to parameter values."""
        out = {}
        for name, yi in zip(self.free_parameters, y):
            lo, hi = self._bounds(name)
            v = lo + (hi - lo) * float(yi)
            out[name] = math.exp(v) if name == "sigma" else v
        return out

    def build(self, params, hbar):
        values = {"x0": 0.0, "p0": 0.0, "sigma": 1.0, **self.fixed, **params}
        return GaussianState(values["x0"], values["p0"], values["sigma"], hbar)


@dataclass(frozen=True)
class Optimum:
    best_parameters: tuple
    parameter_names: tuple
    best_value: float
    bound_value: float
    gap: float
    evaluations: int
    converged: bool

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        return cls(
            tuple(d["best_parameters"]),
            tuple(d["parameter_names"]),
            d["best_value"],
            d["bound_value"],
            d["gap"],
            d["evaluations"],
            d["converged"],
        )


def _fold(y):
    # triangle wave: reflects any real coordinate back into [0, 1]
    y = np.mod(y, 2.0)
    return np.where(y > 1.0, 2.0 - y, y)


class _Stop(Exception):
    pass


def _run_start(objective, y0, cap):
    """One Nelder-Mead run from ``y0``; returns (best value, best point, evaluations, converged)."""
    n = y0.size
    state = {"count": 0, "best": math.inf, "best_y": _fold(y0)}

    def f(y):
        if state["count"] >= cap:
            raise _Stop
        state["count"] += 1
        yf = _fold(y)
        v = objective(yf)
        if v < state["best"]:
            state["best"], state["best_y"] = v, yf
        return v

    simplex = np.vstack([y0] + [y0 + SIMPLEX_STEP * e for e in np.eye(n)])
    converged = False
    try:
        res = minimize(
            f,
            y0,
            method="Nelder-Mead",
            options={"initial_simplex": simplex, "xatol": 1e-7, "fatol": 1e-14, "maxfev": cap},
        )
        verts = res.final_simplex[0]
        diam = max(np.linalg.norm(a - b) for a in verts for b in verts)
        converged = bool(res.success and diam < CONVERGED_DIAMETER)
    except _Stop:
        pass
    return state["best"], state["best_y"], state["count"], converged


def minimize_entropy_sum(
    family: FamilySpec,
    dx,
    dp,
    alpha,
    consts: PhysicalConstants | None = None,
    budget: int = 500,
    seed: int = 0,
    strict: bool = False,
) -> Optimum:
    """Multistart simplex search for the smallest binned entropy sum.

    Parameters
    ----------
    family : FamilySpec
    dx, dp : float
        Position and momentum bin widths.
    alpha : float
        Momentum order, at least 1; the position order is its conjugate.
    consts : PhysicalConstants, optional
    budget : int
        Total objective evaluations, split evenly over the starts. At least 50.
    seed : int
        Seeds the start points. The first start is the centre of the box.
    strict : bool
        Raise :class:`BudgetExhausted` instead of returning an unconverged result.

    Returns
    -------
    Optimum
        ``gap`` is the best value minus the proven bound.
    """
    consts = PhysicalConstants() if consts is None else consts
    if budget < 50:
        raise DomainError(f"budget must be at least 50, got {budget!r}")
    if not alpha >= 1:
        raise DomainError(f"alpha must be at least 1, got {alpha!r}")
    if "sigma" in family.parameter_ranges and family.parameter_ranges["sigma"][0] < 1e-3 * dx:
        raise DomainError("sigma range must stay above 1e-3 position bin widths")
    pair = EntropyOrderPair.from_alpha(alpha)
    bound = renyi_bound(pair, dx, dp, consts)

    def objective(y):
        state = family.build(family.decode(y), consts.hbar)
        return entropy_sum(state, dx, dp, pair)[0]

    names = family.free_parameters
    if not names:
        value = objective(np.empty(0))
        return Optimum((), (), value, bound, value - bound, 1, True)

    rng = np.random.default_rng(seed)
    starts = [np.full(len(names), 0.5)] + [rng.uniform(size=len(names)) for _ in range(N_STARTS - 1)]
    per_start = budget // N_STARTS

    best = (math.inf, None, False)
    total = 0
    for y0 in starts:
        value, y, count, converged = _run_start(objective, y0, per_start)
        total += count
        # strict comparison: the lowest start index wins ties
        if value < best[0]:
            best = (value, y, converged)

    value, y, converged = best
    params = family.decode(y)
    opt = Optimum(
        tuple(params[n] for n in names), names, value, bound, value - bound, total, converged
    )
    if opt.gap < -CHECK_TOL:
        logger.error("search found a value %.12g below the proven bound %.12g", value, bound)
    if not converged:
        if strict:
            raise BudgetExhausted(f"search did not converge within {budget} evaluations", opt)
        logger.warning("search did not converge within %d evaluations", budget)
    return opt
