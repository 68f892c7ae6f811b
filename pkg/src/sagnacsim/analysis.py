"""Fringe fitting, phase-shift extraction, and kinematic geometric phases.

The fringe model is ``A * (1 - v * cos(a*theta + b))`` with amplitude A in
the units of the scan (probability or counts), visibility v, frequency a
(per radian of the plate angle, nominally 4), and phase b.  A topological
phase shows up as the displacement of a fitted pattern relative to the
reference pattern taken without the phase schedule applied.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateLoopError, FitError, InvalidDimensionError, LowVisibilityError
from .qudit import BipartiteQuditState, DiagonalPhaseOp, apply_signal_phases, inner_product
from .sagnac import FringeScan
from .schedule import PhaseSchedule

TWO_PI = 2.0 * np.pi
MIN_VISIBILITY = 0.05
RSS_REL_TOL = 1e-10
MAX_ITERATIONS = 200
PHASE_GRID_POINTS = 36
MIN_POINTS = 8
MIN_SPAN = np.pi / 2.0  # one fringe period at the nominal frequency a = 4


def fold_angle(x: float) -> float:
    """Fold an angle into the representative interval (-pi, pi]."""
    y = float(np.mod(x, TWO_PI))
    return y - TWO_PI if y > np.pi else y


@dataclass(frozen=True)
class FitResult:
    """Fitted fringe parameters with their Gauss-Newton covariance."""

    amplitude: float
    visibility: float
    frequency: float
    phase: float
    covariance: np.ndarray = field(repr=False)
    rss: float
    n_points: int
    b_defined: bool = True

    @property
    def sigmas(self) -> np.ndarray:
        """1-sigma uncertainties of (amplitude, visibility, frequency, phase)."""
        return np.sqrt(np.clip(np.diag(self.covariance), 0.0, None))

    @property
    def phase_sigma(self) -> float:
        return float(self.sigmas[3])

    def to_json_dict(self) -> dict:
        deg = np.rad2deg
        sig = self.sigmas
        return {
            "degrees": {
                "amplitude": self.amplitude,
                "visibility": self.visibility,
                "frequency_per_degree": float(np.deg2rad(self.frequency)),
                "phase_deg": float(deg(self.phase)),
                "phase_sigma_deg": float(deg(sig[3])),
            },
            "radians": {
                "amplitude": self.amplitude,
                "visibility": self.visibility,
                "frequency": self.frequency,
                "phase": self.phase,
                "sigma": sig.tolist(),
                "covariance": self.covariance.tolist(),
                "rss": self.rss,
            },
            "n_points": self.n_points,
            "b_defined": self.b_defined,
        }


def _model(theta: np.ndarray, p: np.ndarray) -> np.ndarray:
    amp, vis, freq, phase = p
    return amp * (1.0 - vis * np.cos(freq * theta + phase))


def _jacobian(theta: np.ndarray, p: np.ndarray) -> np.ndarray:
    amp, vis, freq, phase = p
    c = np.cos(freq * theta + phase)
    s = np.sin(freq * theta + phase)
    return np.column_stack([
        1.0 - vis * c,
        -amp * c,
        amp * vis * theta * s,
        amp * vis * s,
    ])


def _canonicalize(p: np.ndarray) -> np.ndarray:
    amp, vis, freq, phase = p
    if vis < 0.0:
        vis, phase = -vis, phase + np.pi
    if freq < 0.0:
        freq, phase = -freq, -phase
    vis = min(max(vis, 0.0), 1.0)
    return np.array([amp, vis, freq, np.mod(phase, TWO_PI)])


def fit_fringe(scan: FringeScan) -> FitResult:
    """Damped least-squares fit of the four-parameter fringe model.

    Initial values: A = mean of the data, v from the raw (max-min)/(max+min)
    contrast, a = 4, and b from a 36-point grid search.  Iterates a
    Levenberg-Marquardt loop until the relative change of the residual sum
    of squares drops below 1e-10 (at most 200 iterations).  The covariance
    is the inverse Gauss-Newton normal matrix scaled by the residual
    variance; flat data short-circuits to v = 0 with the phase flagged
    undefined.
    """
    theta = scan.thetas
    y = scan.values.astype(float)
    n = y.size
    if n < MIN_POINTS:
        raise FitError(f"need at least {MIN_POINTS} points, got {n}")
    if float(theta[-1] - theta[0]) < MIN_SPAN:
        raise FitError(
            f"scan spans {theta[-1] - theta[0]:.3f} rad, need >= {MIN_SPAN:.3f} (one period)"
        )

    y_max, y_min = float(np.max(y)), float(np.min(y))
    if y_max - y_min <= 1e-12 * max(1.0, abs(y_max)):
        cov = np.zeros((4, 4))
        return FitResult(float(np.mean(y)), 0.0, 4.0, 0.0, cov, 0.0, n, b_defined=False)

    amp0 = float(np.mean(y))
    vis0 = (y_max - y_min) / (y_max + y_min) if (y_max + y_min) > 0.0 else 0.5
    vis0 = min(max(vis0, 1e-3), 1.0)
    freq0 = 4.0
    b_grid = np.linspace(0.0, TWO_PI, PHASE_GRID_POINTS, endpoint=False)
    trial = amp0 * (1.0 - vis0 * np.cos(freq0 * theta[:, None] + b_grid[None, :]))
    phase0 = float(b_grid[np.argmin(np.sum((y[:, None] - trial) ** 2, axis=0))])

    p = np.array([amp0, vis0, freq0, phase0])
    rss = float(np.sum((y - _model(theta, p)) ** 2))
    lam = 1e-3
    for _ in range(MAX_ITERATIONS):
        r = y - _model(theta, p)
        jac = _jacobian(theta, p)
        gn = jac.T @ jac
        grad = jac.T @ r
        damp = np.diag(gn).copy()
        damp[damp <= 0.0] = 1.0
        improved = False
        while lam <= 1e12:
            try:
                step = np.linalg.solve(gn + lam * np.diag(damp), grad)
            except np.linalg.LinAlgError:
                lam *= 10.0
                continue
            p_try = p + step
            rss_try = float(np.sum((y - _model(theta, p_try)) ** 2))
            if rss_try < rss:
                p, rss_prev, rss = p_try, rss, rss_try
                lam = max(lam / 10.0, 1e-15)
                improved = True
                break
            lam *= 10.0
        if not improved:
            break
        if rss == 0.0 or (rss_prev - rss) / max(rss_prev, 1e-300) < RSS_REL_TOL:
            break

    p = _canonicalize(p)
    jac = _jacobian(theta, p)
    dof = max(n - 4, 1)
    resid_var = float(np.sum((y - _model(theta, p)) ** 2)) / dof
    cov = np.linalg.pinv(jac.T @ jac) * resid_var
    return FitResult(float(p[0]), float(p[1]), float(p[2]), float(p[3]), cov, rss, n)


def visibility_estimate(scan: FringeScan) -> float:
    """Direct (max - min) / (max + min) contrast of a scan, 0 for all-zero data."""
    y = scan.values.astype(float)
    if y.size == 0:
        raise FitError("empty scan")
    y_max, y_min = float(np.max(y)), float(np.min(y))
    if y_max + y_min == 0.0:
        return 0.0
    return (y_max - y_min) / (y_max + y_min)


def phase_shift(fit_ref: FitResult, fit_op: FitResult) -> tuple[float, float]:
    """Fringe displacement of an operated pattern relative to the reference.

    Returns (shift, sigma) in radians with the shift in [0, 2*pi): the
    operated pattern C_ref(theta - shift/a) has fitted phase
    b_op = b_ref - shift, so the displacement is (b_ref - b_op) mod 2*pi.
    Both fits must have a defined phase and visibility above 0.05.
    """
    for name, fit in (("reference", fit_ref), ("operated", fit_op)):
        if not fit.b_defined or fit.visibility <= MIN_VISIBILITY:
            raise LowVisibilityError(
                f"{name} fit has visibility {fit.visibility:.3f} <= {MIN_VISIBILITY}"
            )
    shift = float(np.mod(fit_ref.phase - fit_op.phase, TWO_PI))
    sigma = float(np.hypot(fit_ref.phase_sigma, fit_op.phase_sigma))
    return shift, sigma


@dataclass(frozen=True)
class KinematicPhases:
    """Total, dynamical, and geometric phase of a discretized state loop."""

    total: float
    dynamical: float
    geometric: float
    steps: int

    def to_json_dict(self) -> dict:
        deg = np.rad2deg
        return {
            "degrees": {
                "total_deg": float(deg(self.total)),
                "dynamical_deg": float(deg(self.dynamical)),
                "geometric_deg": float(deg(self.geometric)),
            },
            "radians": {
                "total": self.total,
                "dynamical": self.dynamical,
                "geometric": self.geometric,
            },
            "steps": self.steps,
        }


def _chain_args(states: list[BipartiteQuditState], stride: int) -> float:
    total = 0.0
    for j in range(0, len(states) - stride, stride):
        total += float(np.angle(inner_product(states[j], states[j + stride])))
    return total


def kinematic_phase(
    state: BipartiteQuditState, schedule: PhaseSchedule, steps: int
) -> KinematicPhases:
    """Geometric phase of the state path traced by a schedule.

    Builds psi_j by applying the schedule phases at t_j = j/steps and chains
    overlaps: total = arg<psi_0|psi_N>, dynamical = sum_j arg<psi_j|psi_j+1>,
    geometric = total - dynamical folded into (-pi, pi].  For even step
    counts the dynamical sum is Richardson-extrapolated against the nested
    half-resolution chain, cancelling the O(steps^-2) discretization bias;
    the extrapolated value is what is reported.
    """
    if steps < 100:
        raise FitError(f"steps must be >= 100, got {steps}")
    if schedule.dim != state.dim:
        raise InvalidDimensionError(
            f"schedule dimension {schedule.dim} != state dimension {state.dim}"
        )
    states = [
        apply_signal_phases(state, DiagonalPhaseOp(state.dim, tuple(schedule(j / steps))))
        for j in range(steps + 1)
    ]
    closing = inner_product(states[0], states[-1])
    if abs(closing) < 1e-12:
        raise DegenerateLoopError("endpoints are orthogonal; total phase undefined")
    total = float(np.angle(closing))

    dyn_fine = _chain_args(states, 1)
    if steps % 2 == 0:
        dyn_coarse = _chain_args(states, 2)
        dynamical = (4.0 * dyn_fine - dyn_coarse) / 3.0
    else:
        dynamical = dyn_fine
    geometric = fold_angle(total - dynamical)
    return KinematicPhases(total, dynamical, geometric, steps)


def predict_fractional(d: int, n: int) -> float:
    """Fractional phase 2*pi*n/d expected for a cyclic loop, in [0, 2*pi)."""
    if d < 2:
        raise InvalidDimensionError(f"qudit dimension must be >= 2, got {d}")
    return float(np.mod(TWO_PI * n / d, TWO_PI))
