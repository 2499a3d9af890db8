"""Independent reference computations used by the tests.

None of these go through the package's integration or closed-form paths.
"""

import math

import mpmath
import numpy as np
from scipy import integrate
from scipy.special import sici

from entropic_ur.binning import Compactified, compactified_edges, compactify
from entropic_ur.bounds import conjugate_order
from entropic_ur.states import BoxState


def box_momentum_oracle(a, hbar, lo, hi):
    """Closed form of the sinc^2 integral via the sine integral Si.

    The antiderivative of sin^2(u)/u^2 is Si(2u) - sin^2(u)/u.
    """

    def F(p):
        if p == math.inf:
            return math.pi / 2
        if p == -math.inf:
            return -math.pi / 2
        u = a * p / hbar
        if u == 0:
            return 0.0
        return sici(2 * u)[0] - math.sin(u) ** 2 / u

    return (F(hi) - F(lo)) / math.pi


def jacobian_bin_masses(state, space, s, dt):
    """Integrate the density in the compactified variable with the s/(1-|t|)^2 factor."""
    density = state.position_density if space == "position" else state.momentum_density
    k, t_edges = compactified_edges(Compactified(s, dt))

    def integrand(t):
        return density(s * t / (1 - abs(t))) * s / (1 - abs(t)) ** 2

    # the box density jumps at |x| = a
    jumps = [compactify(-state.a, s), compactify(state.a, s)] if isinstance(state, BoxState) else []
    out = []
    for lo, hi in zip(t_edges[:-1], t_edges[1:]):
        if hi <= lo:
            continue
        brk = [b for b in jumps if lo < b < hi] or None
        out.append(integrate.quad(integrand, lo, hi, points=brk, epsabs=1e-13, epsrel=1e-12, limit=200)[0])
    return np.array(out)


def two_bin_sum_oracle(delta):
    """The two-bin Gaussian entropy sum evaluated with 40-digit erf."""
    with mpmath.workdps(40):
        e = mpmath.erf(delta)
        return float(2 * mpmath.log(2) - (1 - e) * mpmath.log(1 - e) - (1 + e) * mpmath.log(1 + e))


def threshold_by_bisection(alpha):
    """Root in dt of lhs - rhs for the two-halves box case, found without the closed form."""
    beta = conjugate_order(alpha)

    def margin(dt):
        lhs = -((2.0 ** (1 - alpha)) ** (1 / alpha))
        rhs = -((beta / alpha) ** (1 / (2 * alpha))) * (2 * beta * dt) ** (1 - 1 / alpha) * (2.0 ** (1 - beta)) ** (1 / beta)
        return lhs - rhs

    lo, hi = 1e-9, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if margin(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
