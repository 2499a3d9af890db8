"""Turning a continuous density into a vector of bin probabilities."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import DomainError
from .states import QuantumState, Space, _check_space

DEFAULT_TAIL_EPS = 1e-12
DEFAULT_MAX_BINS = 4096


@dataclass(frozen=True)
class Uniform:
    """Bins ``[anchor + k*width, anchor + (k+1)*width)`` for integer ``k``."""

    width: float
    anchor: float = 0.0

    def __post_init__(self):
        if not (self.width > 0 and math.isfinite(self.width)):
            raise DomainError(f"bin width must be positive and finite, got {self.width!r}")


@dataclass(frozen=True)
class HalfLines:
    """The two bins ``(-inf, split)`` and ``(split, inf)``."""

    split: float = 0.0


@dataclass(frozen=True)
class Compactified:
    """Uniform bins of width ``dt`` in ``t = u / (|u| + s)``, aligned at ``t = 0``.

    When ``dt`` does not divide 1 the outermost bins are cut at ``t = +-1``.
    """

    s: float
    dt: float

    def __post_init__(self):
        if not (self.s > 0 and math.isfinite(self.s)):
            raise DomainError(f"compactification scale must be positive, got {self.s!r}")
        if not 0 < self.dt <= 1:
            raise DomainError(f"dt must lie in (0, 1], got {self.dt!r}")


BinSpec = Union[Uniform, HalfLines, Compactified]


@dataclass(frozen=True, eq=False)
class ProbabilityVector:
    """Bin probabilities with their integer bin indices.

    ``tail_mass`` is probability that fell outside the enumerated bins; it is
    kept apart so entropy functionals can bound its effect.
    """

    probs: np.ndarray
    indices: np.ndarray = None
    tail_mass: float = 0.0
    atol: float = field(default=1e-8, repr=False)

    def __post_init__(self):
        probs = np.atleast_1d(np.asarray(self.probs, dtype=float))
        if probs.ndim != 1:
            raise DomainError("probabilities must form a 1-D vector")
        indices = np.arange(probs.size) if self.indices is None else np.asarray(self.indices, dtype=int)
        if indices.shape != probs.shape:
            raise DomainError("indices and probabilities differ in length")
        if np.any(probs < 0) or np.any(probs > 1):
            raise DomainError("bin probabilities must lie in [0, 1]")
        if self.tail_mass < 0:
            raise DomainError(f"tail mass must be nonnegative, got {self.tail_mass!r}")
        total = math.fsum(probs) + self.tail_mass
        if abs(total - 1.0) > self.atol:
            raise DomainError(f"probabilities plus tail sum to {total!r}, not 1")
        probs.setflags(write=False)
        indices.setflags(write=False)
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "indices", indices)
        object.__setattr__(self, "tail_mass", float(self.tail_mass))

    def __len__(self):
        return self.probs.size

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.probs, dtype=dtype)

    def as_dict(self):
        return {int(k): float(p) for k, p in zip(self.indices, self.probs)}


def compactify(u, s):
    """Map the real line onto ``(-1, 1)`` by ``u / (|u| + s)``."""
    if not s > 0:
        raise DomainError(f"s must be positive, got {s!r}")
    u = np.asarray(u, dtype=float)
    with np.errstate(invalid="ignore"):
        t = np.where(np.isinf(u), np.sign(u), u / (np.abs(u) + s))
    return float(t) if t.ndim == 0 else t


def decompactify(t, s):
    """Inverse of :func:`compactify`, ``s * t / (1 - |t|)``."""
    if not s > 0:
        raise DomainError(f"s must be positive, got {s!r}")
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) >= 1) or np.any(np.isnan(t)):
        raise DomainError("decompactify is defined only for |t| < 1")
    u = s * t / (1.0 - np.abs(t))
    return float(u) if u.ndim == 0 else u


def _edges_to_original(t_edges, s):
    inner = np.abs(t_edges) < 1
    out = np.where(t_edges > 0, np.inf, -np.inf)
    out[inner] = decompactify(t_edges[inner], s)
    return out


def compactified_edges(spec: Compactified):
    """Bin indices and ``t``-edges of the compactified lattice."""
    ratio = 1.0 / spec.dt
    # 1/0.1 evaluates to 10.000000000000002; snap near-integers
    n = round(ratio) if abs(ratio - round(ratio)) < 1e-9 else math.ceil(ratio)
    k = np.arange(-n, n)
    t_edges = np.clip(np.arange(-n, n + 1) * spec.dt, -1.0, 1.0)
    return k, t_edges


def _uniform_edges(state, space, spec, tail_eps, max_bins):
    lo, hi = state.support(space, tail_eps)
    w, c = spec.width, spec.anchor
    k_lo = math.floor((lo - c) / w)
    k_hi = math.ceil((hi - c) / w) - 1
    if k_hi - k_lo + 1 > max_bins:
        k_mid = math.floor((state.center(space) - c) / w)
        k_lo = max(k_lo, k_mid - max_bins // 2)
        k_hi = min(k_hi, k_lo + max_bins - 1)
    k = np.arange(k_lo, k_hi + 1)
    return k, c + np.arange(k_lo, k_hi + 2) * w


def bin_probabilities(
    state: QuantumState,
    space: Space,
    spec: BinSpec,
    tail_eps: float = DEFAULT_TAIL_EPS,
    max_bins: int = DEFAULT_MAX_BINS,
) -> ProbabilityVector:
    """Probabilities of ``state`` in the bins described by ``spec``.

    Parameters
    ----------
    state : QuantumState
    space : {"position", "momentum"}
    spec : Uniform, HalfLines or Compactified
    tail_eps : float
        For ``Uniform``, bins are enumerated until at least ``1 - tail_eps``
        of the mass is covered. Must lie in ``(0, 1e-6]``.
    max_bins : int
        Hard cap on the number of ``Uniform`` bins. Heavy-tailed densities
        (the box momentum density decays like ``1/p**2``) hit this cap; the
        uncovered mass is then reported as ``tail_mass``.

    Returns
    -------
    ProbabilityVector
        ``tail_mass`` is zero for ``HalfLines`` and ``Compactified``.
    """
    _check_space(space)
    if isinstance(spec, Uniform):
        if not 0 < tail_eps <= 1e-6:
            raise DomainError(f"tail_eps must lie in (0, 1e-6], got {tail_eps!r}")
        k, edges = _uniform_edges(state, space, spec, tail_eps, max_bins)
        probs = state.interval_masses(space, edges)
        tail = max(0.0, 1.0 - math.fsum(probs))
        return ProbabilityVector(probs, k, tail)
    if isinstance(spec, HalfLines):
        edges = np.array([-np.inf, spec.split, np.inf])
        return ProbabilityVector(state.interval_masses(space, edges), np.array([-1, 0]))
    if isinstance(spec, Compactified):
        k, t_edges = compactified_edges(spec)
        keep = np.diff(t_edges) > 0
        probs = state.interval_masses(space, _edges_to_original(t_edges, spec.s))
        return ProbabilityVector(probs[keep], k[keep])
    raise DomainError(f"unknown bin specification {spec!r}")
