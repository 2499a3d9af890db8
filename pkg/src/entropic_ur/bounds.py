"""Closed-form entropic bounds, norm-inequality prefactors and the checker."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

from .entropy import EntropyOrderPair, norm_sum
from .errors import DomainError
from .states import PhysicalConstants

# band inside which an inequality counts as satisfied
CHECK_TOL = 1e-9

_DEFAULT_CONSTS = PhysicalConstants()


@dataclass(frozen=True)
class BoundCheck:
    """Outcome of checking ``lhs >= rhs``."""

    lhs: float
    rhs: float
    margin: float
    satisfied: bool
    context: dict = field(default_factory=dict)

    @classmethod
    def compare(cls, lhs, rhs, **context):
        margin = lhs - rhs
        return cls(float(lhs), float(rhs), float(margin), bool(margin >= -CHECK_TOL), context)

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        return cls(d["lhs"], d["rhs"], d["margin"], d["satisfied"], dict(d.get("context", {})))


def conjugate_order(alpha: float) -> float:
    """The ``beta`` with ``1/alpha + 1/beta = 2``."""
    if not alpha > 0.5:
        raise DomainError(f"alpha must exceed 1/2 for a positive conjugate, got {alpha!r}")
    if alpha == math.inf:
        return 0.5
    return alpha / (2.0 * alpha - 1.0)


def _log_ratio(order):
    """``ln(order) / (1 - order)``, equal to -1 at ``order == 1``."""
    d = order - 1.0
    if d == 0:
        return -1.0
    return -math.log1p(d) / d


def _product(dx, dp):
    if not (dx > 0 and dp > 0):
        raise DomainError(f"bin sizes must be positive, got dx={dx!r}, dp={dp!r}")
    return dx * dp


def _log_product(dx, dp):
    _product(dx, dp)
    return math.log(dx) + math.log(dp)


def renyi_bound(pair: EntropyOrderPair, dx, dp, consts: PhysicalConstants = _DEFAULT_CONSTS) -> float:
    """Lower bound on ``H_alpha(momentum) + H_beta(position)`` for bins ``dx``, ``dp``."""
    return -0.5 * (_log_ratio(pair.alpha) + _log_ratio(pair.beta)) - (
        _log_product(dx, dp) - math.log(math.pi * consts.hbar)
    )


def shannon_bound(dx, dp, consts: PhysicalConstants = _DEFAULT_CONSTS) -> float:
    """``-ln(2 dx dp / (e h))``."""
    return 1.0 - (math.log(2.0) + _log_product(dx, dp) - math.log(consts.h))


def ww_bound(dx, dp, consts: PhysicalConstants = _DEFAULT_CONSTS) -> float:
    """The always-positive bound ``-ln((2/e) dx dp / (h + dx dp))``.

    Tends to ``1 - ln 2`` rather than 0 as ``dx*dp`` grows without bound.
    """
    prod = _product(dx, dp)
    # rewritten as 1 - ln 2 + ln(1 + h/prod) to stay finite at prod = inf
    if prod >= consts.h:
        return 1.0 - math.log(2.0) + math.log1p(consts.h / prod)
    # separate logs survive underflow of dx*dp
    return 1.0 - math.log(2.0) + math.log(consts.h + prod) - math.log(dx) - math.log(dp)


def ww_offset(a: float) -> float:
    """Additive constant ``1 - ln 2 - 2 ln a`` fixed by the segment half-length ``a``."""
    if not a > 0:
        raise DomainError(f"a must be positive, got {a!r}")
    return 1.0 - math.log(2.0) - 2.0 * math.log(a)


def _check_eta_pair(pair):
    if pair.alpha < 1:
        raise DomainError(f"eta is only defined here for alpha >= 1, got {pair.alpha!r}")


def _eta(pair, scaled_area):
    a, b = pair.alpha, pair.beta
    return (b / a) ** (1.0 / (2.0 * a)) * (2.0 * b * scaled_area) ** (1.0 - 1.0 / a)


def eta(pair: EntropyOrderPair, dx, dp, consts: PhysicalConstants = _DEFAULT_CONSTS) -> float:
    """Prefactor of the binned norm inequality for Fourier-related densities."""
    _check_eta_pair(pair)
    return _eta(pair, _product(dx, dp) / consts.h)


def eta_compactified(pair: EntropyOrderPair, dt_x, dt_p) -> float:
    """The same prefactor with compactified bin widths and no ``h``."""
    _check_eta_pair(pair)
    if not (0 < dt_x <= 1 and 0 < dt_p <= 1):
        raise DomainError(f"compactified widths must lie in (0, 1], got {dt_x!r}, {dt_p!r}")
    return _eta(pair, dt_x * dt_p)


def check_norm_inequality(pv_p, pv_x, pair: EntropyOrderPair, eta_value: float) -> BoundCheck:
    """Check ``-||p||_alpha >= -eta * ||x||_beta``."""
    if not eta_value > 0:
        raise DomainError(f"eta must be positive, got {eta_value!r}")
    lhs = -norm_sum(pv_p, pair.alpha)
    rhs = -eta_value * norm_sum(pv_x, pair.beta)
    return BoundCheck.compare(
        lhs, rhs, inequality="norm", alpha=pair.alpha, beta=pair.beta, eta=float(eta_value)
    )


def violation_threshold(alpha: float) -> float:
    """Smallest ``dt_x`` for which the two-bin box case satisfies the compactified inequality.

    ``(2 alpha - 1) ** ((2 alpha - 1) / (2 alpha - 2)) / (8 alpha)``; equals
    ``e/8`` in the limit ``alpha -> 1`` and decreases to ``1/4``.
    """
    if alpha <= 1.0 - 1e-8:
        raise DomainError(f"threshold needs alpha > 1, got {alpha!r}")
    if abs(alpha - 1.0) < 1e-8:
        return math.e / 8.0
    if alpha == math.inf:
        return 0.25
    base = 2.0 * alpha - 1.0
    # exponent (2a-1)/(2a-2) = 1 + 1/(2a-2); log1p keeps accuracy near alpha = 1
    log_val = math.log1p(base - 1.0) * (1.0 + 1.0 / (2.0 * alpha - 2.0))
    return math.exp(log_val) / (8.0 * alpha)
