"""Randomized cross-checks between the independent computation routes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analysis import fit_fringe, fold_angle, kinematic_phase, phase_shift
from .jones import phase_shifter, relative_phase
from .qudit import BipartiteQuditState, make_antisymmetric_mes
from .sagnac import ExperimentConfig, circuit_oracle, coincidence_full, coincidence_mes, generate_scan
from .schedule import BUILTIN_DIMS, builtin_schedule, check_su

ORACLE_TOL = 1e-12
KINEMATIC_STEPS = 2000
KINEMATIC_TOL = 1e-6


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def random_state(rng: np.random.Generator, d: int) -> BipartiteQuditState:
    """Haar-like random pure state (normalized complex Gaussian matrix)."""
    amps = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    amps /= np.linalg.norm(amps)
    return BipartiteQuditState(d, amps)


def check_oracle_equivalence(
    trials: int, rng: np.random.Generator, state: BipartiteQuditState | None = None
) -> CheckResult:
    """Closed-form coincidence vs full circuit propagation on random inputs."""
    worst = 0.0
    for i in range(trials):
        d = state.dim if state is not None else int(rng.integers(2, 7))
        s = state if state is not None else random_state(rng, d)
        xi = rng.uniform(-2.0 * np.pi, 2.0 * np.pi, size=d)
        theta = rng.uniform(0.0, np.pi)
        phi = rng.uniform(0.0, np.pi)
        diff = abs(coincidence_full(s, xi, theta) - circuit_oracle(s, xi, theta, phi))
        if diff > ORACLE_TOL:
            return CheckResult(
                "oracle-equivalence", False,
                f"trial {i}: d={d} theta={theta:.6f} phi={phi:.6f} "
                f"xi={np.array2string(xi, precision=6)} |diff|={diff:.3e}",
            )
        worst = max(worst, diff)
    return CheckResult(
        "oracle-equivalence", True, f"{trials} trials, max |diff| = {worst:.3e}"
    )


def check_mes_reduction(trials: int, rng: np.random.Generator) -> CheckResult:
    """General formula must reduce to the closed MES form on MES inputs."""
    worst = 0.0
    for i in range(trials):
        d = int(rng.integers(2, 7))
        mes = make_antisymmetric_mes(d)
        xi = rng.uniform(-2.0 * np.pi, 2.0 * np.pi, size=d)
        theta = rng.uniform(0.0, np.pi)
        diff = abs(coincidence_full(mes, xi, theta) - coincidence_mes(d, xi, theta))
        if diff > ORACLE_TOL:
            return CheckResult(
                "mes-reduction", False,
                f"trial {i}: d={d} theta={theta:.6f} |diff|={diff:.3e}",
            )
        worst = max(worst, diff)
    return CheckResult("mes-reduction", True, f"{trials} trials, max |diff| = {worst:.3e}")


def check_su_schedules() -> CheckResult:
    """Built-in schedules stay traceless and end congruent to 2*pi/d."""
    for d in BUILTIN_DIMS:
        sched = builtin_schedule(d)
        if not check_su(sched, 1001):
            return CheckResult("su-schedules", False, f"d={d}: phase sum nonzero")
        final = sched(1.0)
        for k, xi_k in enumerate(final):
            err = abs(fold_angle(xi_k - 2.0 * np.pi / d))
            if err > 1e-12:
                return CheckResult(
                    "su-schedules", False,
                    f"d={d}: xi_{k+1}(1) not congruent to 2*pi/{d} (err {err:.3e})",
                )
    return CheckResult("su-schedules", True, f"dims {BUILTIN_DIMS}: traceless, cyclic at t=1")


def check_phase_shifter(rng: np.random.Generator, points: int = 100) -> CheckResult:
    """Plate stack must imprint exactly 4*theta between V and H."""
    worst = 0.0
    for i in range(points):
        phi = rng.uniform(0.0, np.pi)
        theta = rng.uniform(0.0, np.pi)
        err = abs(fold_angle(relative_phase(phase_shifter(phi, theta)) - 4.0 * theta))
        if err > 1e-12:
            return CheckResult(
                "phase-shifter", False,
                f"point {i}: phi={phi:.6f} theta={theta:.6f} err={err:.3e}",
            )
        worst = max(worst, err)
    return CheckResult("phase-shifter", True, f"{points} points, max err = {worst:.3e}")


def check_kinematic_agreement() -> CheckResult:
    """Interferometric shift and kinematic geometric phase must coincide."""
    for d in BUILTIN_DIMS:
        cfg = ExperimentConfig(dim=d, schedule=builtin_schedule(d), contrast=1.0)
        fit_ref = fit_fringe(generate_scan(cfg, 0.0, mode="exact"))
        fit_op = fit_fringe(generate_scan(cfg, 1.0, mode="exact"))
        shift, _ = phase_shift(fit_ref, fit_op)
        kin = kinematic_phase(make_antisymmetric_mes(d), cfg.schedule, KINEMATIC_STEPS)
        geo = float(np.mod(kin.geometric, 2.0 * np.pi))
        if abs(shift - geo) > KINEMATIC_TOL:
            return CheckResult(
                "kinematic-agreement", False,
                f"d={d}: shift={shift:.9f} geometric={geo:.9f}",
            )
        if abs(kin.dynamical) > 1e-9:
            return CheckResult(
                "kinematic-agreement", False, f"d={d}: dynamical={kin.dynamical:.3e}"
            )
    return CheckResult(
        "kinematic-agreement", True,
        f"dims {BUILTIN_DIMS}: |shift - geometric| <= {KINEMATIC_TOL:g}",
    )


def run_verification(
    trials: int, seed: int, state: BipartiteQuditState | None = None
) -> list[CheckResult]:
    """Run the whole randomized suite; returns one result per check."""
    rng = np.random.default_rng(seed)
    return [
        check_oracle_equivalence(trials, rng, state),
        check_mes_reduction(trials, rng),
        check_su_schedules(),
        check_phase_shifter(rng),
        check_kinematic_agreement(),
    ]
