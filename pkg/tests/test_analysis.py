import numpy as np
import pytest

from _helpers import circular_diff
from sagnacsim import (
    DegenerateLoopError,
    ExperimentConfig,
    FitError,
    FringeScan,
    InvalidDimensionError,
    LowVisibilityError,
    PhaseSchedule,
    builtin_schedule,
    fit_fringe,
    fold_angle,
    generate_scan,
    kinematic_phase,
    make_antisymmetric_mes,
    phase_shift,
    predict_fractional,
    visibility_estimate,
)

THETAS = np.deg2rad(np.arange(0.0, 180.0 + 1e-9, 5.0))


def model_scan(amplitude, visibility, frequency, phase, thetas=THETAS):
    values = amplitude * (1.0 - visibility * np.cos(frequency * thetas + phase))
    return FringeScan(0.0, thetas, values, "exact")


class TestFitFringe:
    def test_exact_reference_fringe(self):
        # d=2, t=0, contrast 1: p = sin^2(2 theta) = (1 - cos(4 theta)) / 2,
        # which is the model with A = 1/2, v = 1, a = 4, b = 0
        cfg = ExperimentConfig(dim=2, schedule=builtin_schedule(2), contrast=1.0)
        fit = fit_fringe(generate_scan(cfg, 0.0, mode="exact"))
        assert fit.amplitude == pytest.approx(0.5, abs=1e-6)
        assert fit.visibility == pytest.approx(1.0, abs=1e-6)
        assert fit.frequency == pytest.approx(4.0, abs=1e-6)
        assert circular_diff(fit.phase, 0.0) < 1e-6

    def test_flat_scan_flagged(self):
        cfg = ExperimentConfig(dim=3, schedule=builtin_schedule(3))
        fit = fit_fringe(generate_scan(cfg, 0.5, mode="exact"))
        assert fit.visibility < 1e-6
        assert not fit.b_defined

    def test_poisson_regression_seed42(self):
        # frozen from a reference run: d=3, t=0, seed 42, defaults
        cfg = ExperimentConfig(dim=3, schedule=builtin_schedule(3), rng_seed=42)
        fit = fit_fringe(generate_scan(cfg, 0.0))
        assert fit.visibility == pytest.approx(0.342340635613, abs=1e-9)
        assert fit.phase == pytest.approx(6.252811678635, abs=1e-9)
        # statistical consistency with the injected parameters
        assert abs(fit.visibility - 0.35) < 3.0 * fit.sigmas[1]
        assert circular_diff(fit.phase, 0.0) < 3.0 * fit.phase_sigma

    def test_recovers_known_parameters(self):
        rng = np.random.default_rng(17)
        for _ in range(25):
            amplitude = rng.uniform(0.2, 0.45)
            visibility = rng.uniform(0.05, 1.0)
            frequency = rng.uniform(3.5, 4.5)
            phase = rng.uniform(0.0, 2.0 * np.pi)
            fit = fit_fringe(model_scan(amplitude, visibility, frequency, phase))
            assert fit.amplitude == pytest.approx(amplitude, abs=1e-6)
            assert fit.visibility == pytest.approx(visibility, abs=1e-6)
            assert fit.frequency == pytest.approx(frequency, abs=1e-6)
            assert circular_diff(fit.phase, phase) < 1e-6

    def test_too_few_points(self):
        with pytest.raises(FitError):
            fit_fringe(FringeScan(0.0, THETAS[:5], np.linspace(0.1, 0.5, 5), "exact"))

    def test_insufficient_span(self):
        thetas = np.deg2rad(np.linspace(0.0, 10.0, 12))
        values = 0.5 * (1.0 - np.cos(4.0 * thetas))
        with pytest.raises(FitError):
            fit_fringe(FringeScan(0.0, thetas, values, "exact"))

    def test_json_report_structure(self):
        fit = fit_fringe(model_scan(0.4, 0.5, 4.0, 1.0))
        report = fit.to_json_dict()
        assert report["degrees"]["phase_deg"] == pytest.approx(np.rad2deg(fit.phase))
        assert report["radians"]["phase"] == pytest.approx(fit.phase)
        assert len(report["radians"]["covariance"]) == 4
        assert report["b_defined"]


class TestVisibilityEstimate:
    def test_full_contrast(self):
        cfg = ExperimentConfig(dim=2, schedule=builtin_schedule(2), contrast=1.0)
        assert visibility_estimate(generate_scan(cfg, 0.0, mode="exact")) == pytest.approx(
            1.0, abs=1e-12
        )

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_flat_at_half(self, d):
        cfg = ExperimentConfig(dim=d, schedule=builtin_schedule(d), contrast=1.0)
        assert visibility_estimate(generate_scan(cfg, 0.5, mode="exact")) < 1e-12

    def test_linear_contrast(self):
        cfg = ExperimentConfig(dim=2, schedule=builtin_schedule(2), contrast=0.35)
        assert visibility_estimate(generate_scan(cfg, 0.0, mode="exact")) == pytest.approx(
            0.35, abs=1e-12
        )

    def test_all_zero(self):
        scan = FringeScan(0.0, THETAS[:9], np.zeros(9, dtype=int), "sampled")
        assert visibility_estimate(scan) == 0.0


class TestPhaseShift:
    @pytest.mark.parametrize("d,expected_deg", [(2, 180.0), (3, 120.0), (4, 90.0)])
    def test_exact_fraction(self, d, expected_deg):
        cfg = ExperimentConfig(dim=d, schedule=builtin_schedule(d))
        ref = fit_fringe(generate_scan(cfg, 0.0, mode="exact"))
        op = fit_fringe(generate_scan(cfg, 1.0, mode="exact"))
        shift, sigma = phase_shift(ref, op)
        assert np.rad2deg(shift) == pytest.approx(expected_deg, abs=1e-9)
        assert sigma < 1e-9

    def test_low_visibility_rejected(self):
        cfg = ExperimentConfig(dim=3, schedule=builtin_schedule(3))
        ref = fit_fringe(generate_scan(cfg, 0.0, mode="exact"))
        flat = fit_fringe(generate_scan(cfg, 0.5, mode="exact"))
        with pytest.raises(LowVisibilityError):
            phase_shift(ref, flat)
        with pytest.raises(LowVisibilityError):
            phase_shift(flat, ref)

    def test_invariant_under_count_scaling(self):
        cfg = ExperimentConfig(dim=3, schedule=builtin_schedule(3), rng_seed=9)
        ref = generate_scan(cfg, 0.0)
        op = generate_scan(cfg, 1.0)
        shift_a, _ = phase_shift(fit_fringe(ref), fit_fringe(op))
        ref10 = FringeScan(ref.t, ref.thetas, ref.values * 10, "sampled")
        op10 = FringeScan(op.t, op.thetas, op.values * 10, "sampled")
        shift_b, _ = phase_shift(fit_fringe(ref10), fit_fringe(op10))
        assert circular_diff(shift_a, shift_b) < 1e-9


class TestKinematicPhase:
    def test_qutrit_builtin(self):
        kin = kinematic_phase(make_antisymmetric_mes(3), builtin_schedule(3), 10_000)
        assert abs(kin.geometric - 2.0 * np.pi / 3.0) < 1e-8
        assert abs(kin.dynamical) < 1e-9

    def test_qubit_builtin(self):
        kin = kinematic_phase(make_antisymmetric_mes(2), builtin_schedule(2), 10_000)
        assert circular_diff(kin.geometric, np.pi) < 1e-8

    def test_null_schedule(self):
        sched = PhaseSchedule(2, "custom", times=[0.0, 1.0], values=np.zeros((2, 2)))
        kin = kinematic_phase(make_antisymmetric_mes(2), sched, 200)
        assert kin.total == pytest.approx(0.0, abs=1e-12)
        assert kin.dynamical == pytest.approx(0.0, abs=1e-12)
        assert kin.geometric == pytest.approx(0.0, abs=1e-12)

    def test_convergence_on_doubling(self):
        for d in (2, 3, 4):
            coarse = kinematic_phase(make_antisymmetric_mes(d), builtin_schedule(d), 10_000)
            fine = kinematic_phase(make_antisymmetric_mes(d), builtin_schedule(d), 20_000)
            assert circular_diff(fine.geometric, coarse.geometric) < 1e-8

    def test_reparameterization_invariance(self):
        class Squared:
            def __init__(self, inner):
                self.inner = inner
                self.dim = inner.dim

            def __call__(self, t):
                return self.inner(t * t)

        for d in (2, 3, 4):
            sched = builtin_schedule(d)
            direct = kinematic_phase(make_antisymmetric_mes(d), sched, 10_000)
            warped = kinematic_phase(make_antisymmetric_mes(d), Squared(sched), 10_000)
            assert circular_diff(direct.geometric, warped.geometric) < 1e-8

    def test_dynamical_vanishes_for_random_su_schedules(self):
        rng = np.random.default_rng(29)
        for _ in range(5):
            d = int(rng.integers(2, 5))
            rows = [np.zeros(d)]
            for _ in range(3):
                row = rng.uniform(-np.pi, np.pi, d)
                rows.append(row - row.mean())  # traceless
            sched = PhaseSchedule(
                d, "custom", times=[0.0, 0.3, 0.7, 1.0], values=np.array(rows)
            )
            kin = kinematic_phase(make_antisymmetric_mes(d), sched, 2000)
            assert abs(kin.dynamical) < 1e-9

    def test_degenerate_loop_flagged(self):
        amps = np.diag([1.0, 1.0]).astype(complex) / np.sqrt(2.0)
        state = make_antisymmetric_mes(2).__class__(2, amps)
        sched = PhaseSchedule(
            2, "custom", times=[0.0, 1.0],
            values=[[0.0, 0.0], [np.pi / 2.0, -np.pi / 2.0]],
        )
        with pytest.raises(DegenerateLoopError):
            kinematic_phase(state, sched, 200)

    def test_too_few_steps(self):
        with pytest.raises(FitError):
            kinematic_phase(make_antisymmetric_mes(2), builtin_schedule(2), 50)

    def test_json_report(self):
        kin = kinematic_phase(make_antisymmetric_mes(2), builtin_schedule(2), 200)
        report = kin.to_json_dict()
        assert report["degrees"]["geometric_deg"] == pytest.approx(180.0, abs=1e-4)
        assert report["steps"] == 200


class TestClosedLoopConsistency:
    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_interferometric_equals_kinematic(self, d):
        cfg = ExperimentConfig(dim=d, schedule=builtin_schedule(d))
        ref = fit_fringe(generate_scan(cfg, 0.0, mode="exact"))
        op = fit_fringe(generate_scan(cfg, 1.0, mode="exact"))
        shift, _ = phase_shift(ref, op)
        kin = kinematic_phase(make_antisymmetric_mes(d), builtin_schedule(d), 10_000)
        assert abs(shift - np.mod(kin.geometric, 2.0 * np.pi)) < 1e-6


class TestPredictFractional:
    def test_values(self):
        assert predict_fractional(2, 1) == pytest.approx(np.pi)
        assert predict_fractional(3, 1) == pytest.approx(2.0 * np.pi / 3.0)
        assert predict_fractional(4, 4) == pytest.approx(0.0, abs=1e-15)

    def test_invalid_dimension(self):
        with pytest.raises(InvalidDimensionError):
            predict_fractional(1, 1)


def test_fold_angle_representative_interval():
    assert fold_angle(np.pi) == pytest.approx(np.pi)
    assert fold_angle(-np.pi) == pytest.approx(np.pi)
    assert fold_angle(3.0 * np.pi / 2.0) == pytest.approx(-np.pi / 2.0)
    assert fold_angle(0.1) == pytest.approx(0.1)
