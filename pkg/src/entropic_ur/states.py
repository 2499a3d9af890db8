"""Pure one-dimensional quantum states and their position/momentum densities.

Three state families are provided:

* :class:`GaussianState` -- minimum-uncertainty wave packet, closed-form
  interval probabilities through ``erf``/``erfc``.
* :class:`BoxState` -- constant amplitude on ``|x| <= a``; its momentum
  density is a squared sinc, integrated by adaptive quadrature split at the
  sinc zeros.
* :class:`SampledState` -- complex amplitudes on a uniform grid, with a
  unitary discrete Fourier partner on the reciprocal momentum grid.

All states are immutable. Densities only are used downstream; complex phases
exist only inside :class:`SampledState`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Literal

import numpy as np
from scipy import integrate, special

from .errors import DomainError, GridTooSmall, NonconvergedQuadrature

Space = Literal["position", "momentum"]
SPACES = ("position", "momentum")

# absolute tolerance for each sinc^2 lobe integral
_LOBE_EPSABS = 1e-12
# quadrature error above which a box-momentum integral is rejected
_MAX_QUAD_ERROR = 1e-10
# beyond this argument the sinc^2 tail goes through the Fourier-weighted rule
_TAIL_START = 40 * math.pi
# intervals spanning more lobes than this are done as a difference of tails
_MAX_DIRECT_LOBES = 256


@dataclass(frozen=True)
class PhysicalConstants:
    """Run-scoped physical constants.

    Only the reduced Planck constant is stored; ``h`` is always derived.
    """

    hbar: float = 1.0

    def __post_init__(self):
        if not (self.hbar > 0 and math.isfinite(self.hbar)):
            raise DomainError(f"hbar must be a positive finite number, got {self.hbar!r}")

    @property
    def h(self) -> float:
        return 2.0 * math.pi * self.hbar


def _check_space(space):
    if space not in SPACES:
        raise DomainError(f"space must be 'position' or 'momentum', got {space!r}")


def _check_hbar(hbar):
    if not (hbar > 0 and math.isfinite(hbar)):
        raise DomainError(f"hbar must be a positive finite number, got {hbar!r}")


def _scalar_or_array(values, like):
    if np.ndim(like) == 0:
        return float(values)
    return values


class QuantumState:
    """Interface shared by every state type.

    Subclasses provide ``position_density``, ``momentum_density`` and
    ``interval_masses``; the latter maps consecutive edges to the probability
    contained between them.
    """

    hbar: float

    def density(self, space: Space, u):
        _check_space(space)
        if space == "position":
            return self.position_density(u)
        return self.momentum_density(u)

    def interval_masses(self, space: Space, edges) -> np.ndarray:  # pragma: no cover - abstract
        raise NotImplementedError

    def interval_probability(self, space: Space, lo: float, hi: float) -> float:
        _check_space(space)
        if not lo < hi:
            raise DomainError(f"need lo < hi, got lo={lo!r}, hi={hi!r}")
        return float(self.interval_masses(space, np.array([lo, hi], dtype=float))[0])

    def support(self, space: Space, tail_eps: float) -> tuple[float, float]:  # pragma: no cover
        """Finite interval holding at least ``1 - tail_eps`` of the mass."""
        raise NotImplementedError

    def center(self, space: Space) -> float:
        return 0.0


# ---------------------------------------------------------------------------
# Gaussian


def _normal_masses(edges, mean, scale):
    """Mass of a normal law between consecutive edges.

    ``scale`` is ``sqrt(2) * std`` so that the erf argument is ``(u - mean) / scale``.
    Each difference is taken in the tail that avoids cancellation.
    """
    z = (np.asarray(edges, dtype=float) - mean) / scale
    zl, zh = z[:-1], z[1:]
    with np.errstate(invalid="ignore"):
        right = 0.5 * (special.erfc(zl) - special.erfc(zh))
        left = 0.5 * (special.erfc(-zh) - special.erfc(-zl))
        middle = 1.0 - 0.5 * special.erfc(zh) - 0.5 * special.erfc(-zl)
    out = np.where(zl >= 0, right, np.where(zh <= 0, left, middle))
    return np.clip(out, 0.0, 1.0)


@dataclass(frozen=True)
class GaussianState(QuantumState):
    """Gaussian wave packet centred at ``(x0, p0)`` with width ``sigma``.

    The position density is normal with mean ``x0`` and variance
    ``sigma**2 / 2``; the momentum density is normal with mean ``p0`` and
    variance ``hbar**2 / (2 sigma**2)``.
    """

    x0: float = 0.0
    p0: float = 0.0
    sigma: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise DomainError(f"sigma must be positive and finite, got {self.sigma!r}")
        _check_hbar(self.hbar)

    def _params(self, space):
        _check_space(space)
        if space == "position":
            return self.x0, self.sigma
        # erf scale sqrt(2)*std equals hbar/sigma in momentum space
        return self.p0, self.hbar / self.sigma

    def position_density(self, x):
        x = np.asarray(x, dtype=float)
        val = np.exp(-((x - self.x0) ** 2) / self.sigma**2) / (math.sqrt(math.pi) * self.sigma)
        return _scalar_or_array(val, x)

    def momentum_density(self, p):
        p = np.asarray(p, dtype=float)
        w = self.hbar / self.sigma
        val = np.exp(-((p - self.p0) ** 2) / w**2) / (math.sqrt(math.pi) * w)
        return _scalar_or_array(val, p)

    def interval_masses(self, space, edges):
        mean, scale = self._params(space)
        return _normal_masses(edges, mean, scale)

    def support(self, space, tail_eps):
        mean, scale = self._params(space)
        half = float(special.erfcinv(tail_eps)) * scale
        return mean - half, mean + half

    def center(self, space):
        return self._params(space)[0]


# ---------------------------------------------------------------------------
# Box


def _sinc2(u):
    # (sin u / u)**2 with the removable singularity filled in
    return np.sinc(u / math.pi) ** 2


def _quad(f, lo, hi, **kwargs):
    res = integrate.quad(f, lo, hi, full_output=1, **kwargs)
    value, abserr = res[0], res[1]
    if not math.isfinite(value) or abserr > _MAX_QUAD_ERROR:
        raise NonconvergedQuadrature(
            f"quadrature on [{lo}, {hi}] stopped at error estimate {abserr:.3g}"
        )
    return value


def _lobes(lo, hi):
    """Integrate sinc^2 over [lo, hi] (0 <= lo < hi < inf), split at multiples of pi."""
    k0 = math.floor(lo / math.pi) + 1
    k1 = math.ceil(hi / math.pi) - 1
    cuts = [lo] + [k * math.pi for k in range(k0, k1 + 1)] + [hi]
    parts = [
        _quad(_sinc2, a, b, epsabs=_LOBE_EPSABS, epsrel=1e-13)
        for a, b in zip(cuts[:-1], cuts[1:])
        if b > a
    ]
    return math.fsum(parts)


def _sinc2_tail(u):
    """Integral of sinc^2 from ``u >= 0`` to infinity."""
    if u == math.inf:
        return 0.0
    if u < _TAIL_START:
        return _lobes(u, _TAIL_START) + _sinc2_tail(_TAIL_START)
    # sin^2 = (1 - cos 2u) / 2; the oscillating part uses QUADPACK's Fourier rule
    osc = _quad(lambda t: 1.0 / (t * t), u, np.inf, weight="cos", wvar=2.0, epsabs=1e-14, limlst=100)
    return 0.5 / u - 0.5 * osc


def _sinc2_mass_nonneg(lo, hi):
    if hi == math.inf or (hi - lo) > _MAX_DIRECT_LOBES * math.pi:
        return _sinc2_tail(lo) - _sinc2_tail(hi)
    return _lobes(lo, hi)


def _sinc2_mass(lo, hi):
    """Integral of sinc^2 over [lo, hi], using evenness to fold onto u >= 0."""
    if lo >= 0:
        return _sinc2_mass_nonneg(lo, hi)
    if hi <= 0:
        return _sinc2_mass_nonneg(-hi, -lo)
    return _sinc2_mass_nonneg(0.0, -lo) + _sinc2_mass_nonneg(0.0, hi)


@dataclass(frozen=True)
class BoxState(QuantumState):
    """Constant amplitude ``1/sqrt(2a)`` on ``|x| <= a``.

    At ``|x| == a`` the density takes half its interior value.
    """

    half_width_a: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        a = self.half_width_a
        if not (a > 0 and math.isfinite(a)):
            raise DomainError(f"half_width_a must be positive and finite, got {a!r}")
        _check_hbar(self.hbar)

    @property
    def a(self) -> float:
        return self.half_width_a

    def position_density(self, x):
        x = np.asarray(x, dtype=float)
        inside = 1.0 / (2.0 * self.a)
        val = np.where(np.abs(x) < self.a, inside, np.where(np.abs(x) == self.a, 0.5 * inside, 0.0))
        return _scalar_or_array(val, x)

    def momentum_density(self, p):
        p = np.asarray(p, dtype=float)
        val = self.a / (math.pi * self.hbar) * _sinc2(self.a * p / self.hbar)
        return _scalar_or_array(val, p)

    def interval_masses(self, space, edges):
        _check_space(space)
        edges = np.asarray(edges, dtype=float)
        if space == "position":
            clipped = np.clip(edges, -self.a, self.a)
            return np.diff(clipped) / (2.0 * self.a)
        u = edges * (self.a / self.hbar)
        masses = np.array([_sinc2_mass(lo, hi) / math.pi for lo, hi in zip(u[:-1], u[1:])])
        return np.clip(masses, 0.0, 1.0)

    def support(self, space, tail_eps):
        _check_space(space)
        if space == "position":
            return -self.a, self.a
        # two-sided sinc^2 tail beyond |u| is below 1/(pi u)
        u = 1.0 / (math.pi * tail_eps)
        p = u * self.hbar / self.a
        return -p, p


# ---------------------------------------------------------------------------
# Sampled


@dataclass(frozen=True, eq=False)
class SampledState(QuantumState):
    """Complex amplitudes on a uniform grid.

    The density between grid points is the linear interpolant of
    ``|amplitude|**2`` and is zero outside the grid. Amplitudes must satisfy
    ``spacing * sum(|amplitude|**2) == 1``; use :meth:`from_samples` to
    normalize raw samples.
    """

    grid: np.ndarray
    amplitudes: np.ndarray
    hbar: float = 1.0
    spacing: float = field(init=False)

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        amps = np.asarray(self.amplitudes, dtype=complex)
        if grid.ndim != 1 or grid.shape != amps.shape:
            raise DomainError("grid and amplitudes must be 1-D arrays of equal length")
        if grid.size < 2:
            raise GridTooSmall("a sampled state needs at least two grid points")
        _check_hbar(self.hbar)
        steps = np.diff(grid)
        spacing = float(grid[-1] - grid[0]) / (grid.size - 1)
        if spacing <= 0 or not np.allclose(steps, spacing, rtol=1e-9, atol=0):
            raise DomainError("grid must be uniformly spaced and increasing")
        norm = spacing * float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > 1e-10:
            raise DomainError(f"amplitudes are not normalized (spacing * sum |psi|^2 = {norm!r})")
        grid.setflags(write=False)
        amps.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "spacing", spacing)

    @classmethod
    def from_samples(cls, grid, amplitudes, hbar=1.0):
        """Build a state from unnormalized samples."""
        grid = np.asarray(grid, dtype=float)
        amps = np.asarray(amplitudes, dtype=complex)
        spacing = float(grid[-1] - grid[0]) / (grid.size - 1)
        norm = math.sqrt(spacing * float(np.sum(np.abs(amps) ** 2)))
        if norm == 0:
            raise DomainError("amplitudes are identically zero")
        return cls(grid, amps / norm, hbar)

    @classmethod
    def from_function(cls, psi, lo, hi, n, hbar=1.0):
        """Sample ``psi`` at ``n`` equally spaced points of ``[lo, hi]`` and normalize."""
        grid = np.linspace(lo, hi, n)
        return cls.from_samples(grid, psi(grid), hbar)

    @cached_property
    def _weights(self):
        return np.abs(self.amplitudes) ** 2

    @cached_property
    def _cumulative(self):
        w = self._weights
        cells = 0.5 * self.spacing * (w[:-1] + w[1:])
        return np.concatenate([[0.0], np.cumsum(cells)])

    @cached_property
    def momentum_partner(self) -> SampledState:
        return discrete_fourier_partner(self, self.hbar)

    def _grid_density(self, u):
        u = np.asarray(u, dtype=float)
        return _scalar_or_array(np.interp(u, self.grid, self._weights, left=0.0, right=0.0), u)

    def _grid_cdf(self, u):
        """Exact integral of the linear interpolant from the first node up to ``u``."""
        u = np.clip(np.asarray(u, dtype=float), self.grid[0], self.grid[-1])
        h = self.spacing
        j = np.clip(((u - self.grid[0]) // h).astype(int), 0, self.grid.size - 2)
        d = u - self.grid[j]
        w = self._weights
        slope = (w[j + 1] - w[j]) / h
        return self._cumulative[j] + d * (w[j] + 0.5 * slope * d)

    def _grid_masses(self, edges):
        return np.clip(np.diff(self._grid_cdf(edges)), 0.0, None)

    def position_density(self, x):
        return self._grid_density(x)

    def momentum_density(self, p):
        return self.momentum_partner._grid_density(p)

    def interval_masses(self, space, edges):
        _check_space(space)
        if space == "position":
            return self._grid_masses(edges)
        return self.momentum_partner._grid_masses(edges)

    def support(self, space, tail_eps):
        _check_space(space)
        g = self.grid if space == "position" else self.momentum_partner.grid
        return float(g[0]), float(g[-1])

    def center(self, space):
        _check_space(space)
        s = self if space == "position" else self.momentum_partner
        return float(np.sum(s.grid * s._weights) / np.sum(s._weights))


def discrete_fourier_partner(state: SampledState, hbar=None, inverse=False, origin=None) -> SampledState:
    """Unitary discrete Fourier transform onto the reciprocal grid.

    Approximates ``(2 pi hbar)**-1/2 * integral exp(-+ i p x / hbar) psi(x) dx``
    on ``N`` points with output spacing ``2 pi hbar / (N * spacing)``.

    Parameters
    ----------
    state : SampledState
        Input samples (position amplitudes for the forward transform).
    hbar : float, optional
        Defaults to ``state.hbar``.
    inverse : bool
        Use the ``+i`` kernel, mapping momentum amplitudes back to position.
    origin : float, optional
        First point of the output grid. Defaults to ``-(N // 2) * spacing_out``
        so the output is centred on zero.

    Returns
    -------
    SampledState
        Amplitudes on the output grid; ``spacing_out * sum |out|**2`` equals
        the input norm to rounding.
    """
    hbar = state.hbar if hbar is None else hbar
    _check_hbar(hbar)
    n = state.grid.size
    if n < 8:
        raise GridTooSmall(f"discrete transform needs at least 8 points, got {n}")
    du = state.spacing
    dv = 2.0 * math.pi * hbar / (n * du)
    u0 = float(state.grid[0])
    v0 = -(n // 2) * dv if origin is None else float(origin)
    sign = 1.0 if inverse else -1.0

    j = np.arange(n)
    pre = state.amplitudes * np.exp(sign * 1j * v0 * j * du / hbar)
    if inverse:
        core = np.fft.ifft(pre) * n
    else:
        core = np.fft.fft(pre)
    post = np.exp(sign * 1j * (v0 * u0 + j * dv * u0) / hbar)
    out = du / math.sqrt(2.0 * math.pi * hbar) * post * core
    return SampledState(v0 + j * dv, out, hbar)


def position_density(state: QuantumState, x):
    """Probability density ``|psi(x)|**2``."""
    return state.position_density(x)


def momentum_density(state: QuantumState, p):
    """Probability density ``|psi~(p)|**2``."""
    return state.momentum_density(p)


def interval_probability(state: QuantumState, space: Space, lo: float, hi: float) -> float:
    """Probability of finding the particle in ``[lo, hi]``; endpoints may be infinite."""
    return state.interval_probability(space, lo, hi)
