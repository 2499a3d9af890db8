"""Entropy functionals of discrete probability vectors, in nats."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from .binning import ProbabilityVector
from .errors import DomainError

# below this distance from 1 the Renyi/Tsallis formulas fall back to Shannon
SHANNON_WINDOW = 1e-6


@dataclass(frozen=True)
class EntropyOrderPair:
    """Orders ``(alpha, beta)`` tied by ``1/alpha + 1/beta = 2``."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > 0 and self.beta > 0):
            raise DomainError("entropy orders must be positive")
        if abs(1.0 / self.alpha + 1.0 / self.beta - 2.0) > 1e-12:
            raise DomainError(f"orders ({self.alpha}, {self.beta}) do not satisfy 1/a + 1/b = 2")

    @classmethod
    def from_alpha(cls, alpha: float) -> EntropyOrderPair:
        from .bounds import conjugate_order

        return cls(alpha, conjugate_order(alpha))


def _probs(pv):
    p = pv.probs if isinstance(pv, ProbabilityVector) else np.asarray(pv, dtype=float)
    return p[p > 0]


def _power_sum(p, order):
    return math.fsum(p**order)


def shannon(pv) -> float:
    """``-sum p ln p`` with ``0 ln 0 = 0``."""
    p = _probs(pv)
    return max(0.0, -math.fsum(xlogy(p, p)))


def renyi(pv, alpha: float) -> float:
    """Renyi entropy ``ln(sum p**alpha) / (1 - alpha)``."""
    if not alpha > 0:
        raise DomainError(f"Renyi order must be positive, got {alpha!r}")
    if abs(alpha - 1.0) < SHANNON_WINDOW:
        return shannon(pv)
    p = _probs(pv)
    if alpha == math.inf:
        return -math.log(p.max())
    return max(0.0, math.log(_power_sum(p, alpha)) / (1.0 - alpha))


def tsallis(pv, q: float) -> float:
    """Tsallis entropy ``(1 - sum p**q) / (q - 1)``; Shannon at ``q == 1``."""
    if not q > 0:
        raise DomainError(f"Tsallis index must be positive, got {q!r}")
    if abs(q - 1.0) < SHANNON_WINDOW:
        return shannon(pv)
    return (1.0 - _power_sum(_probs(pv), q)) / (q - 1.0)


def norm_sum(pv, order: float) -> float:
    """``(sum p**order) ** (1/order)``."""
    if not order > 0:
        raise DomainError(f"order must be positive, got {order!r}")
    return _power_sum(_probs(pv), order) ** (1.0 / order)


def tail_bound(pv: ProbabilityVector, measure: str = "renyi", order: float = 1.0) -> float:
    """Largest change in an entropy caused by the unaccounted tail mass.

    The tail is treated as one extra bin and the absolute difference with and
    without it is returned. Zero when the vector has no tail.
    """
    funcs = {
        "shannon": lambda p: shannon(p),
        "renyi": lambda p: renyi(p, order),
        "tsallis": lambda p: tsallis(p, order),
        "norm_sum": lambda p: norm_sum(p, order),
    }
    if measure not in funcs:
        raise DomainError(f"unknown measure {measure!r}")
    if pv.tail_mass == 0:
        return 0.0
    f = funcs[measure]
    return abs(f(np.append(pv.probs, pv.tail_mass)) - f(pv.probs))
