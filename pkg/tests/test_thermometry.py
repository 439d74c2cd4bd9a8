"""Coupling-temperature map, purity-rate maximizer, and the gain table."""
import math

import pytest
from numpy.testing import assert_allclose

import pmcorr as pc
from pmcorr.constants import (
    AIR_MOLECULE_MASS,
    AIR_NUMBER_DENSITY,
    FULLERENE_MOLECULE_SIZE,
)
from pmcorr.fisher import ConvergenceError

FULLERENE = pc.fullerene_probe()
ENV15 = pc.EnvironmentSpec(lam=1e15)
AIR = (AIR_MOLECULE_MASS, AIR_NUMBER_DENSITY, FULLERENE_MOLECULE_SIZE)


class TestConversions:
    def test_cold_bath_reference(self):
        lam = pc.lambda_from_temperature(0.442, *AIR)
        assert abs(lam - 1.0e15) <= 0.02 * 1.0e15

    def test_room_temperature_dilute(self):
        lam = pc.lambda_from_temperature(300.0, AIR_MOLECULE_MASS, 1.8e8, FULLERENE_MOLECULE_SIZE)
        assert abs(lam - 3.2e15) <= 0.03 * 3.2e15

    @pytest.mark.parametrize(
        "lam,kelvin", [(1e19, 205.0), (1e20, 952.0), (1e22, 20.5e3), (1e23, 95.2e3)]
    )
    def test_temperature_references(self, lam, kelvin):
        assert abs(pc.temperature_from_lambda(lam, *AIR) - kelvin) <= 0.02 * kelvin

    def test_zero_temperature(self):
        assert pc.lambda_from_temperature(0.0, *AIR) == 0.0
        assert pc.temperature_from_lambda(0.0, *AIR) == 0.0

    def test_round_trip(self):
        lam = pc.lambda_from_temperature(77.0, *AIR)
        assert_allclose(pc.temperature_from_lambda(lam, *AIR), 77.0, rtol=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError):
            pc.lambda_from_temperature(-1.0, *AIR)
        with pytest.raises(ValueError):
            pc.temperature_from_lambda(-1.0, *AIR)
        with pytest.raises(ValueError):
            pc.lambda_from_temperature(300.0, 0.0, 1e12, 7e-10)


class TestDecoherenceTime:
    def test_reference(self):
        assert_allclose(pc.decoherence_time(1e15, 1e-7), 0.1, rtol=1e-15)

    def test_distance_quadratic(self):
        assert_allclose(
            pc.decoherence_time(1e15, 2e-7), pc.decoherence_time(1e15, 1e-7) / 4.0, rtol=1e-15
        )

    def test_coupling_linear(self):
        assert_allclose(
            pc.decoherence_time(2e15, 1e-7), pc.decoherence_time(1e15, 1e-7) / 2.0, rtol=1e-15
        )

    def test_no_decoherence_signal(self):
        assert pc.decoherence_time(0.0, 1e-7) == math.inf

    def test_validation(self):
        with pytest.raises(ValueError):
            pc.decoherence_time(-1.0, 1e-7)
        with pytest.raises(ValueError):
            pc.decoherence_time(1e15, 0.0)


class TestRelativePurityRate:
    @pytest.mark.parametrize("gamma,t,rate", [(0.0, 2.284e-4, 4377.0), (-50.0, 1.71e-5, 58488.0)])
    def test_reference_rows(self, gamma, t, rate):
        value = pc.relative_purity_rate(FULLERENE.with_gamma(gamma), ENV15, t)
        assert abs(value - rate) <= 0.01 * rate

    def test_free_coherent_is_static(self):
        probe = pc.ProbeSpec(mass=FULLERENE.mass, sigma0=FULLERENE.sigma0, gamma=4.0)
        for t in (1e-7, 1e-4):
            assert pc.relative_purity_rate(probe, pc.EnvironmentSpec(lam=0.0), t) == 0.0


class TestTauMax:
    def test_uncorrelated_reference(self):
        assert abs(pc.tau_max_exact(FULLERENE, ENV15) - 228.4e-6) <= 0.01 * 228.4e-6

    def test_strongly_correlated_reference(self):
        t = pc.tau_max_exact(FULLERENE.with_gamma(150.0), ENV15)
        assert abs(t - 8.2e-6) <= 0.02 * 8.2e-6

    @pytest.mark.parametrize("gamma", [-50.0, -25.0, -1.0, 0.0, 35.0, 70.0, 150.0])
    def test_purity_at_maximizer_is_universal(self, gamma):
        probe = FULLERENE.with_gamma(gamma)
        t_max = pc.tau_max_exact(probe, ENV15)
        assert abs(pc.purity_exact(probe, ENV15, t_max) - 0.563) <= 0.005

    def test_approx_reference(self):
        assert_allclose(pc.tau_max_approx(FULLERENE, ENV15), 2.28e-4, rtol=5e-3)

    def test_approx_cube_root_scaling(self):
        # (1 + gamma^2) -> 8x halves the maximizer
        g8 = math.sqrt(8.0 * (1.0 + 3.0**2) - 1.0)
        t1 = pc.tau_max_approx(FULLERENE.with_gamma(3.0), ENV15)
        t2 = pc.tau_max_approx(FULLERENE.with_gamma(g8), ENV15)
        assert_allclose(t2, t1 / 2.0, rtol=1e-12)

    @pytest.mark.parametrize("gamma", [-50.0, -25.0, -1.0, 0.0, 35.0, 70.0, 150.0])
    def test_approx_tracks_exact(self, gamma):
        probe = FULLERENE.with_gamma(gamma)
        exact = pc.tau_max_exact(probe, ENV15)
        approx = pc.tau_max_approx(probe, ENV15)
        assert abs(approx - exact) <= 0.05 * exact

    def test_approx_exact_inverse_cube_root_in_coupling(self):
        t1 = pc.tau_max_approx(FULLERENE, pc.EnvironmentSpec(lam=1e15))
        t8 = pc.tau_max_approx(FULLERENE, pc.EnvironmentSpec(lam=8e15))
        assert_allclose(t8, t1 / 2.0, rtol=1e-12)

    def test_lambda_scaling_of_exact(self):
        # tau_max ~ lam^(-1/3) within 5% across four decades
        ref = pc.tau_max_exact(FULLERENE, pc.EnvironmentSpec(lam=1e15))
        for lam in (1e13, 1e14, 1e16, 1e17):
            expected = ref * (1e15 / lam) ** (1.0 / 3.0)
            actual = pc.tau_max_exact(FULLERENE, pc.EnvironmentSpec(lam=lam))
            assert abs(actual - expected) <= 0.05 * expected

    def test_requires_positive_coupling(self):
        with pytest.raises(ValueError):
            pc.tau_max_exact(FULLERENE, pc.EnvironmentSpec(lam=0.0))
        with pytest.raises(ValueError):
            pc.tau_max_approx(FULLERENE, pc.EnvironmentSpec(lam=0.0))

    def test_out_of_domain_maximum(self):
        # at lam = 1e33 the maximizer sits below the search domain
        with pytest.raises(ConvergenceError, match="no interior maximum"):
            pc.tau_max_exact(FULLERENE, pc.EnvironmentSpec(lam=1e33))


class TestTgi:
    def test_uncorrelated_is_zero(self):
        assert pc.tgi(FULLERENE.with_gamma(0.0), ENV15) == 0.0

    @pytest.mark.parametrize("gamma,expected", [(150.0, 14.45), (-25.0, 9.24)])
    def test_reference_values(self, gamma, expected):
        assert abs(pc.tgi(FULLERENE.with_gamma(gamma), ENV15) - expected) <= 0.1

    def test_approx_zero(self):
        assert pc.tgi_approx(0.0) == 0.0

    def test_approx_reference(self):
        assert_allclose(pc.tgi_approx(150.0), (10.0 / 3.0) * math.log10(22501.0), rtol=1e-12)
        assert abs(pc.tgi_approx(150.0) - 14.50) < 0.01

    def test_approx_even(self):
        assert pc.tgi_approx(50.0) == pc.tgi_approx(-50.0)

    @pytest.mark.parametrize("gamma", [-50.0, -25.0, -1.0, 0.0, 35.0, 70.0, 150.0])
    def test_exact_close_to_approx(self, gamma):
        assert abs(pc.tgi(FULLERENE.with_gamma(gamma), ENV15) - pc.tgi_approx(gamma)) <= 0.2


class TestBuildTable:
    def test_singleton_zero(self):
        rows = pc.build_table1(FULLERENE, 1e15, [0.0])
        assert len(rows) == 1
        assert rows[0].tgi_db == 0.0
        assert 0.0 < rows[0].purity_at_tau_max < 1.0

    def test_order_preserved(self):
        gammas = [35.0, -1.0, 150.0]
        rows = pc.build_table1(FULLERENE, 1e15, gammas)
        assert [r.gamma for r in rows] == gammas
        permuted = pc.build_table1(FULLERENE, 1e15, list(reversed(gammas)))
        assert {r.gamma: r.tau_max for r in rows} == {r.gamma: r.tau_max for r in permuted}

    def test_requires_positive_coupling(self):
        with pytest.raises(ValueError):
            pc.build_table1(FULLERENE, 0.0, [0.0])

    def test_row_errors_are_annotated(self):
        with pytest.raises(ValueError, match="gamma=inf"):
            pc.build_table1(FULLERENE, 1e15, [0.0, math.inf])

    def test_saturation_plateau(self):
        # lam^2 QFI has leveled off by ten maximizer times: within 5% of its
        # value at twenty (the maximizer itself sits at the knee, near half
        # the plateau)
        for gamma in (0.0, 50.0):
            probe = FULLERENE.with_gamma(gamma)
            t_max = pc.tau_max_exact(probe, ENV15)
            q10 = pc.qfi_analytic("lambda", probe, ENV15, 10 * t_max)
            q20 = pc.qfi_analytic("lambda", probe, ENV15, 20 * t_max)
            assert abs(q10 - q20) <= 0.05 * q20


class TestReferenceTable:
    def test_reference_rows_well_formed(self):
        assert [r.gamma for r in pc.TABLE1_REFERENCE] == [-50.0, -25.0, -1.0, 0.0, 35.0, 70.0, 150.0]
        zero = next(r for r in pc.TABLE1_REFERENCE if r.gamma == 0.0)
        assert zero.tgi_db == 0.0
