import math

import numpy as np
import pytest
from scipy import integrate

from entropic_ur.errors import DomainError, GridTooSmall
from entropic_ur.states import (
    BoxState,
    GaussianState,
    PhysicalConstants,
    SampledState,
    discrete_fourier_partner,
    interval_probability,
    momentum_density,
    position_density,
)
from oracles import box_momentum_oracle


def sampled_gaussian(n=2048, lo=-12.0, hi=12.0, hbar=1.0, x0=0.0, p0=0.0):
    return SampledState.from_function(
        lambda x: np.exp(-((x - x0) ** 2) / 2 + 1j * p0 * x / hbar), lo, hi, n, hbar
    )


class TestPhysicalConstants:
    def test_h_is_derived(self):
        assert PhysicalConstants().h == 2 * math.pi
        c = PhysicalConstants(0.37)
        assert c.h / c.hbar == pytest.approx(2 * math.pi, rel=1e-15)

    @pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
    def test_rejects_bad_hbar(self, bad):
        with pytest.raises(DomainError):
            PhysicalConstants(bad)


class TestPositionDensity:
    def test_gaussian_peak(self):
        assert position_density(GaussianState(0, 0, 1), 0.0) == pytest.approx(1 / math.sqrt(math.pi), abs=1e-15)

    def test_gaussian_translated_peak(self):
        assert position_density(GaussianState(1, 0, 1), 1.0) == pytest.approx(1 / math.sqrt(math.pi), abs=1e-15)

    def test_box_inside_outside_edge(self):
        box = BoxState(2.0)
        assert position_density(box, 1.0) == 0.25
        assert position_density(box, 3.0) == 0.0
        assert position_density(box, 2.0) == 0.125

    def test_vectorized(self):
        out = position_density(BoxState(1.0), np.array([-2.0, 0.0, 2.0]))
        np.testing.assert_array_equal(out, [0.0, 0.5, 0.0])


class TestMomentumDensity:
    def test_gaussian_peak(self):
        assert momentum_density(GaussianState(0, 0, 1), 0.0) == pytest.approx(1 / math.sqrt(math.pi), abs=1e-15)

    def test_box_zero_of_sinc(self):
        assert momentum_density(BoxState(1.0), math.pi) == pytest.approx(0.0, abs=1e-30)

    def test_box_limit_at_origin(self):
        assert momentum_density(BoxState(1.0), 0.0) == pytest.approx(1 / math.pi, abs=1e-15)

    def test_box_matches_formula(self):
        a, hbar, p = 0.7, 1.3, 2.1
        expected = hbar / (a * math.pi) * math.sin(a * p / hbar) ** 2 / p**2
        assert momentum_density(BoxState(a, hbar), p) == pytest.approx(expected, rel=1e-13)


class TestIntervalProbability:
    def test_symmetric_gaussian_half_line(self):
        assert interval_probability(GaussianState(), "position", -math.inf, 0.0) == pytest.approx(0.5, abs=1e-15)

    def test_shifted_gaussian_half_line(self):
        # x0 = delta * sigma puts (1 - erf(delta))/2 of the mass left of 0
        g = GaussianState(x0=2.0, p0=0.0, sigma=1.0)
        assert interval_probability(g, "position", -math.inf, 0.0) == pytest.approx(
            0.00233886749052363291896537181638, rel=1e-13
        )

    def test_box_momentum_normalized(self):
        box = BoxState(1.0)
        assert interval_probability(box, "momentum", -math.inf, math.inf) == pytest.approx(1.0, abs=1e-8)

    @pytest.mark.parametrize(
        "lo,hi",
        [(-math.inf, 0.0), (0.0, 1.0), (-3.0, 7.5), (10.0, 400.0), (2.0, 5e4), (-1e3, math.inf), (123.0, 124.0)],
    )
    @pytest.mark.parametrize("a,hbar", [(1.0, 1.0), (0.3, 2.0)])
    def test_box_momentum_matches_sine_integral(self, lo, hi, a, hbar):
        got = interval_probability(BoxState(a, hbar), "momentum", lo, hi)
        assert got == pytest.approx(box_momentum_oracle(a, hbar, lo, hi), abs=1e-11)

    def test_box_position_is_piecewise_linear(self):
        box = BoxState(2.0)
        assert interval_probability(box, "position", -1.0, 5.0) == pytest.approx(0.75, abs=1e-15)

    def test_rejects_empty_interval(self):
        with pytest.raises(DomainError):
            interval_probability(GaussianState(), "position", 1.0, 1.0)

    def test_rejects_bad_space(self):
        with pytest.raises(DomainError):
            interval_probability(GaussianState(), "energy", 0.0, 1.0)

    def test_gaussian_erf_matches_quadrature(self):
        rng = np.random.default_rng(7)
        g = GaussianState(x0=0.4, p0=-1.1, sigma=0.8, hbar=1.3)
        for _ in range(50):
            space = "position" if rng.uniform() < 0.5 else "momentum"
            lo, hi = np.sort(rng.uniform(-4, 4, size=2))
            f = g.position_density if space == "position" else g.momentum_density
            oracle = integrate.quad(f, lo, hi, epsabs=1e-14, epsrel=1e-13)[0]
            assert interval_probability(g, space, lo, hi) == pytest.approx(oracle, abs=1e-10)

    def test_far_tail_keeps_relative_accuracy(self):
        g = GaussianState()
        # mass beyond 6 sigma; the erfc branch avoids 1 - (1 - tiny)
        got = interval_probability(g, "position", 6.0, math.inf)
        assert got == pytest.approx(0.5 * math.erfc(6.0), rel=1e-12)


class TestNormalization:
    @pytest.mark.parametrize("space", ["position", "momentum"])
    @pytest.mark.parametrize(
        "state",
        [GaussianState(0.3, -2.0, 0.5, 1.7), BoxState(0.4), BoxState(3.0, 0.5), sampled_gaussian(x0=1.0, p0=0.5)],
        ids=["gaussian", "box", "box-hbar", "sampled"],
    )
    def test_total_mass_is_one(self, state, space):
        assert interval_probability(state, space, -math.inf, math.inf) == pytest.approx(1.0, abs=1e-8)

    def test_box_momentum_is_even(self):
        box = BoxState(0.9)
        for c in [0.5, 3.0, 17.0, 250.0]:
            left = interval_probability(box, "momentum", -c, 0.0)
            right = interval_probability(box, "momentum", 0.0, c)
            assert left == pytest.approx(right, abs=1e-10)


class TestSampledState:
    def test_rejects_unnormalized(self):
        with pytest.raises(DomainError):
            SampledState(np.linspace(0, 1, 16), np.ones(16))

    def test_rejects_nonuniform_grid(self):
        grid = np.array([0.0, 1.0, 3.0, 4.0])
        with pytest.raises(DomainError):
            SampledState.from_samples(grid, np.ones(4))

    def test_discrete_normalization(self):
        s = sampled_gaussian()
        assert s.spacing * np.sum(np.abs(s.amplitudes) ** 2) == pytest.approx(1.0, abs=1e-10)

    def test_density_is_linear_interpolation(self):
        s = SampledState.from_samples(np.arange(8.0), np.array([0, 1, 2, 1, 0, 0, 0, 0], dtype=float))
        w = np.abs(s.amplitudes) ** 2
        assert s.position_density(1.5) == pytest.approx(0.5 * (w[1] + w[2]))
        assert s.position_density(-0.5) == 0.0
        assert s.position_density(9.0) == 0.0

    def test_trapezoid_mass_on_subinterval(self):
        s = SampledState.from_samples(np.arange(8.0), np.array([0, 1, 2, 1, 0, 0, 0, 0], dtype=float))
        oracle = integrate.quad(s.position_density, 0.25, 2.75, points=[1, 2])[0]
        assert s.interval_probability("position", 0.25, 2.75) == pytest.approx(oracle, abs=1e-12)


class TestDiscreteFourierPartner:
    def test_gaussian_momentum_peak(self):
        s = sampled_gaussian()
        assert s.momentum_density(0.0) == pytest.approx(1 / math.sqrt(math.pi), abs=1e-6)

    def test_matches_analytic_gaussian_on_grid(self):
        hbar = 0.8
        s = sampled_gaussian(hbar=hbar, x0=0.5, p0=1.0)
        g = GaussianState(0.5, 1.0, 1.0, hbar)
        m = s.momentum_partner
        nodes = (m.grid > -3) & (m.grid < 4)
        w = np.abs(m.amplitudes[nodes]) ** 2
        np.testing.assert_allclose(w, g.momentum_density(m.grid[nodes]), atol=1e-8)

    def test_plancherel(self):
        rng = np.random.default_rng(3)
        amps = rng.normal(size=256) + 1j * rng.normal(size=256)
        s = SampledState.from_samples(np.linspace(-5, 5, 256), amps, hbar=1.7)
        m = discrete_fourier_partner(s)
        assert m.spacing * np.sum(np.abs(m.amplitudes) ** 2) == pytest.approx(1.0, abs=1e-10)
        assert m.spacing == pytest.approx(2 * math.pi * 1.7 / (256 * s.spacing), rel=1e-12)

    def test_round_trip(self):
        s = sampled_gaussian(n=512, p0=0.7, x0=-1.0)
        m = discrete_fourier_partner(s)
        back = discrete_fourier_partner(m, inverse=True, origin=s.grid[0])
        np.testing.assert_allclose(back.grid, s.grid, atol=1e-10)
        np.testing.assert_allclose(back.amplitudes, s.amplitudes, atol=1e-8)

    def test_spike_has_flat_momentum_density(self):
        amps = np.zeros(64)
        amps[20] = 1.0
        s = SampledState.from_samples(np.linspace(-3, 3, 64), amps)
        w = np.abs(s.momentum_partner.amplitudes) ** 2
        np.testing.assert_allclose(w, w.mean(), rtol=1e-12)

    def test_too_small(self):
        s = SampledState.from_samples(np.arange(4.0), np.ones(4))
        with pytest.raises(GridTooSmall):
            discrete_fourier_partner(s)
