"""Quadrature oracles, spectrum solving, and scaling fits."""

import math

import numpy as np
import pytest

from snyder_coulomb import (
    DegenerateFit,
    NoRootInWindow,
    OutOfWindow,
    QuadratureSpec,
    QuantumNumbers,
    correction_order,
    energy_1d_closed,
    energy_3d_series,
    integrate_band,
    integrate_real_line,
    l_limit_study,
    phase_integral_1d_closed,
    phase_integral_numeric,
    radial_phase_integral_closed,
    solve_bs_energy,
    spectrum_table,
    turning_points,
    validate_params,
)

PI = math.pi
E_1D_BETA01_N1 = 0.4196010845019197


class TestIntegrateRealLine:
    def test_arctangent_integral(self):
        value, err = integrate_real_line(lambda p: 2.0 / (p * p + 1.0))
        assert value == pytest.approx(2 * PI, rel=1e-12)
        assert err < 1e-8

    def test_deformed_lorentzian_against_partial_fractions(self):
        # 2 m e2 / ((p^2 + 2mE)(1 + beta^2 p^2)) integrates to
        # 2 m e2 pi / (A (1 + beta A)) with A = sqrt(2mE)
        m = e2 = 1.0
        energy, beta = 0.5, 0.1
        a = math.sqrt(2 * m * energy)

        def integrand(p):
            return 2 * m * e2 / ((p * p + 2 * m * energy) * (1 + beta**2 * p * p))

        value, _ = integrate_real_line(integrand)
        assert value == pytest.approx(2 * m * e2 * PI / (a * (1 + beta * a)), rel=1e-12)
        assert value == pytest.approx(2 * PI / 1.1, rel=1e-12)

    def test_odd_integrand_vanishes(self):
        value, _ = integrate_real_line(lambda p: p / (1.0 + p**4))
        assert value == pytest.approx(0.0, abs=1e-12)

    def test_quadrature_spec_guards(self):
        with pytest.raises(ValueError):
            QuadratureSpec(abs_tol=0.0)
        with pytest.raises(ValueError):
            QuadratureSpec(max_subdivisions=0)

    def test_exhausted_subdivisions_raise(self):
        from snyder_coulomb import ToleranceNotReached

        nearly_singular = lambda p: 2.0 / (p * p + 1e-14)
        tight = QuadratureSpec(abs_tol=1e-14, rel_tol=1e-14, max_subdivisions=2)
        with pytest.raises(ToleranceNotReached):
            integrate_real_line(nearly_singular, tight)


class TestIntegrateBand:
    def test_semicircle(self):
        value, _ = integrate_band(lambda z: math.sqrt(max(z * (1 - z), 0.0)), 0.0, 1.0)
        assert value == pytest.approx(PI / 8, rel=1e-12)

    def test_newtonian_radial_integrand(self):
        params = validate_params(1, 1, 0)
        tp = turning_points(params, 0.125, 1)
        c = 0.25

        def integrand(z):
            return math.sqrt(max((z - tp.z_minus) * (tp.z_plus - z), 0.0)) / (
                z * (z + c)
            )

        value, _ = integrate_band(integrand, tp.z_minus, tp.z_plus)
        assert value == pytest.approx(2 * PI, abs=1e-10)

    def test_constant(self):
        value, _ = integrate_band(lambda z: 1.0, 2.0, 5.0)
        assert value == pytest.approx(3.0, rel=1e-12)

    def test_rejects_empty_interval(self):
        with pytest.raises(ValueError):
            integrate_band(lambda z: 1.0, 1.0, 1.0)


class TestPhaseIntegralNumeric:
    def test_newtonian_radial(self):
        res = phase_integral_numeric(validate_params(1, 1, 0), 0.125, 1)
        assert res.value == pytest.approx(2 * PI, abs=1e-10)
        assert res.kind == "numeric"
        assert res.err_estimate is not None and res.err_estimate < 1e-8

    def test_deformed_radial_matches_closed_form(self):
        params = validate_params(1, 1, 0.1)
        numeric = phase_integral_numeric(params, 0.125, 1).value
        closed = radial_phase_integral_closed(params, 0.125, 1).value
        assert numeric == pytest.approx(closed, rel=1e-8)
        assert numeric == pytest.approx(1.9901227376726 * PI, rel=1e-10)

    def test_deformed_s_channel_at_exact_root(self):
        params = validate_params(1, 1, 0.1)
        res = phase_integral_numeric(params, E_1D_BETA01_N1, 0)
        assert res.value == pytest.approx(2 * PI, abs=1e-10)

    def test_out_of_window(self):
        with pytest.raises(OutOfWindow):
            phase_integral_numeric(validate_params(1, 1, 0), 0.6, 1)

    def test_oracle_equivalence_grid(self):
        # matches the closed form over >= 100 tuples spanning l in 0..3 and
        # beta in {0, 0.01, 0.05, 0.1}
        worst = 0.0
        count = 0
        for beta in (0.0, 0.01, 0.05, 0.1):
            params = validate_params(1, 1, beta)
            for l in (0, 1, 2, 3):
                cap = 1.0 if l == 0 else 0.5 / l**2
                for frac in np.linspace(0.06, 0.94, 8):
                    energy = float(frac * cap)
                    numeric = phase_integral_numeric(params, energy, l).value
                    closed = (
                        phase_integral_1d_closed(params, energy).value
                        if l == 0
                        else radial_phase_integral_closed(params, energy, l).value
                    )
                    worst = max(worst, abs(numeric - closed) / abs(closed))
                    count += 1
        assert count >= 100
        assert worst <= 1e-8


class TestSolveBsEnergy:
    def test_newtonian_p_level(self):
        energy = solve_bs_energy(validate_params(1, 1, 0), QuantumNumbers(n=1, l=1))
        assert energy == pytest.approx(0.125, rel=1e-10)

    def test_deformed_p_level_against_series(self):
        energy = solve_bs_energy(validate_params(1, 1, 0.1), QuantumNumbers(n=1, l=1))
        assert energy == pytest.approx(0.1243834369668, rel=1e-10)
        # the first-order series 0.1243750 is off only at order beta^4
        assert energy == pytest.approx(0.1243750, abs=2e-5)

    def test_series_residual_scales_as_beta_fourth(self):
        qn = QuantumNumbers(n=1, l=1)
        betas = (0.02, 0.04, 0.08)
        residuals = []
        for beta in betas:
            params = validate_params(1, 1, beta)
            energy = solve_bs_energy(params, qn)
            residuals.append(abs(energy / energy_3d_series(params, qn) - 1.0))
        slope = np.polyfit(np.log(betas), np.log(residuals), 1)[0]
        assert slope == pytest.approx(4.0, abs=0.15)

    def test_deformed_s_channel_numeric_matches_exact(self):
        params = validate_params(1, 1, 0.1)
        energy = solve_bs_energy(params, QuantumNumbers(n=1, l=0), "numeric")
        assert energy == pytest.approx(energy_1d_closed(params, 1), rel=1e-8)
        assert energy == pytest.approx(0.4196011, abs=1e-6)

    def test_methods_agree(self):
        params = validate_params(1, 1, 0.05)
        for qn in (QuantumNumbers(2, 0), QuantumNumbers(1, 1), QuantumNumbers(2, 1)):
            closed = solve_bs_energy(params, qn, "closed_form")
            numeric = solve_bs_energy(params, qn, "numeric")
            assert numeric == pytest.approx(closed, rel=1e-8)

    def test_residual_of_quantization_condition(self):
        for beta in (0.0, 0.01, 0.1):
            params = validate_params(1, 1, beta)
            for qn in (QuantumNumbers(1, 0), QuantumNumbers(1, 1), QuantumNumbers(3, 2)):
                energy = solve_bs_energy(params, qn)
                phi = (
                    phase_integral_1d_closed(params, energy).value
                    if qn.l == 0
                    else radial_phase_integral_closed(params, energy, qn.l).value
                )
                assert abs(phi - 2 * PI * qn.n) <= 1e-10 * 2 * PI * qn.n

    def test_no_root_at_strong_deformation(self):
        # the 1D loop at the window top is pi*beta*m*e2 = 3 pi > 2 pi n
        with pytest.raises(NoRootInWindow):
            solve_bs_energy(validate_params(1, 1, 3.0), QuantumNumbers(n=1, l=0))

    def test_rejects_unknown_method(self):
        with pytest.raises(ValueError):
            solve_bs_energy(validate_params(1, 1, 0), QuantumNumbers(1, 0), "magic")


class TestSpectrumTable:
    def test_newtonian_degeneracy(self):
        entries = spectrum_table(validate_params(1, 1, 0), 3)
        assert len(entries) == 6
        assert [(e.qn.n_prime, e.qn.l) for e in entries] == [
            (1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2),
        ]
        for entry in entries:
            assert entry.error is None
            expected = 1.0 / (2.0 * entry.qn.n_prime**2)
            assert entry.e_closed == pytest.approx(expected, rel=1e-10)
            assert entry.e_numeric == pytest.approx(expected, rel=1e-8)
        # equal n' implies equal energy at beta = 0
        by_np = {}
        for entry in entries:
            by_np.setdefault(entry.qn.n_prime, []).append(entry.e_closed)
        for values in by_np.values():
            for v in values:
                assert v == pytest.approx(values[0], rel=1e-10)

    def test_deformed_table(self):
        entries = spectrum_table(validate_params(1, 1, 0.1), 2)
        index = {(e.qn.n_prime, e.qn.l): e for e in entries}
        assert index[(1, 0)].e_closed == pytest.approx(0.4196011, abs=1e-6)
        assert index[(2, 1)].e_closed < 0.125
        assert index[(2, 1)].e_series == pytest.approx(0.1243750, rel=1e-12)

    def test_single_entry(self):
        entries = spectrum_table(validate_params(1, 1, 0), 1)
        assert len(entries) == 1
        entry = entries[0]
        for value in (entry.e_newton, entry.e_closed, entry.e_numeric, entry.e_series):
            assert value == pytest.approx(0.5, rel=1e-8)

    def test_corrections_lower_energies(self):
        entries = spectrum_table(validate_params(1, 1, 0.1), 4)
        for entry in entries:
            assert entry.error is None
            assert entry.e_closed < entry.e_newton

    def test_solver_errors_recorded_per_entry(self):
        # beta m e2 = 3 makes every 1D level with 2n < 3 infeasible
        entries = spectrum_table(validate_params(1, 1, 3.0), 1)
        assert len(entries) == 1
        assert entries[0].error is not None
        assert "NoRootInWindow" in entries[0].error
        assert math.isnan(entries[0].e_closed)
        assert entries[0].e_newton == pytest.approx(0.5)


class TestCorrectionOrder:
    BETAS = tuple(np.logspace(-4, -2, 7))

    def test_s_channel_slope_one(self):
        fit = correction_order(
            validate_params(1, 1, 0), QuantumNumbers(n=1, l=0), self.BETAS
        )
        assert fit.slope == pytest.approx(1.0, abs=0.02)
        assert fit.n_used == 7

    def test_p_channel_slope_two(self):
        fit = correction_order(
            validate_params(1, 1, 0), QuantumNumbers(n=1, l=1), self.BETAS
        )
        assert fit.slope == pytest.approx(2.0, abs=0.02)

    def test_d_channel_slope_two(self):
        fit = correction_order(
            validate_params(1, 1, 0), QuantumNumbers(n=1, l=2), self.BETAS
        )
        assert fit.slope == pytest.approx(2.0, abs=0.02)

    def test_grid_guards(self):
        params = validate_params(1, 1, 0)
        qn = QuantumNumbers(n=1, l=0)
        with pytest.raises(ValueError):
            correction_order(params, qn, [1e-3])
        with pytest.raises(ValueError):
            correction_order(params, qn, [1e-3, 2e-3, 3e-3, 4e-3])  # < 1.5 decades
        with pytest.raises(ValueError):
            correction_order(params, qn, [0.0, 1e-3, 1e-2, 1e-1])

    def test_degenerate_fit_below_noise_floor(self):
        # corrections ~ beta^2 ~ 1e-16 vanish beneath the 1e-13 noise floor
        with pytest.raises(DegenerateFit):
            correction_order(
                validate_params(1, 1, 0),
                QuantumNumbers(n=1, l=1),
                [1e-8, 3e-8, 1e-7, 1e-6],
            )


class TestLLimitStudy:
    def test_newtonian_limit_recovers_1d(self):
        params = validate_params(1, 1, 0)
        rows = l_limit_study(params, 0.125, [1e-2, 1e-4, 1e-6])
        # gap is exactly -2 pi l at beta = 0
        for row in rows:
            assert row.gap == pytest.approx(-2 * PI * row.l, rel=1e-9)
        assert abs(rows[-1].gap) < 1e-4

    def test_deformed_limit_recovers_1d(self):
        # the l -> 0 limit of the radial closed form equals the 1D closed
        # form for every beta; at finite l the gap is dominated by -pi*l
        params = validate_params(1, 1, 0.1)
        rows = l_limit_study(params, 0.125, [1e-3, 1e-5, 1e-7, 1e-9])
        gaps = [abs(row.gap) for row in rows]
        assert all(a > b for a, b in zip(gaps, gaps[1:]))
        assert gaps[-1] < 1e-7
        phi_1d = phase_integral_1d_closed(params, 0.125).value
        assert rows[-1].phi_radial == pytest.approx(phi_1d, rel=1e-9)

    def test_gap_at_small_l_is_band_offset_dominated(self):
        # for g = 2 beta m e2 / W >> l the raw gap approaches
        # -pi*(l + l^2/(2 g))
        params = validate_params(1, 1, 0.1)
        (row,) = l_limit_study(params, 0.125, [1e-3])
        w = 1 - 2 * 0.1**2 * 0.125
        g = 2 * 0.1 / w
        expected = -PI * (1e-3 + 1e-6 / (2 * g))
        assert row.gap == pytest.approx(expected, rel=1e-3)

    def test_out_of_window_propagates(self):
        with pytest.raises(OutOfWindow):
            l_limit_study(validate_params(1, 1, 0), 0.6, [1.0])
