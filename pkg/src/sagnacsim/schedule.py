"""Parametric SU(d) diagonal phase schedules xi_k(t), t in [0, 1].

An SU(d) schedule satisfies sum_k xi_k(t) = 0 (unit determinant) and
xi_k(0) = 0; ``check_su`` tests the former and ``load_schedule`` rejects
files violating it.  Built-in schedules exist for d = 2, 3, 4 and
interpolate from the identity to a point where all phases coincide with
2*pi/d modulo 2*pi; custom schedules are piecewise-linear between
user-supplied breakpoints.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import InvalidDimensionError, ScheduleError

SU_TOL = 1e-12
BUILTIN_DIMS = (2, 3, 4)


def _heaviside(x: float) -> float:
    # right-continuous convention: H(0) = 1
    return 1.0 if x >= 0.0 else 0.0


def _builtin_phases(d: int, t: float) -> np.ndarray:
    if d == 2:
        return np.array([np.pi * t, -np.pi * t])
    if d == 3:
        h = _heaviside(t - 0.5)
        return np.array([
            2.0 * np.pi / 3.0 * (2.0 * t - (2.0 * t - 1.0) * h),
            -4.0 * np.pi / 3.0 * t,
            2.0 * np.pi / 3.0 * (2.0 * t - 1.0) * h,
        ])
    if d == 4:
        h = _heaviside(t - 0.5)
        return np.array([
            np.pi / 2.0 * t,
            -np.pi / 2.0 * t + np.pi * (1.0 - 2.0 * t) * h,
            3.0 * np.pi / 2.0 * t - np.pi * (1.0 - 2.0 * t) * h,
            -3.0 * np.pi / 2.0 * t,
        ])
    raise InvalidDimensionError(f"no builtin schedule for d={d}; supported: {BUILTIN_DIMS}")


class PhaseSchedule:
    """Map t -> (xi_1 ... xi_d); evaluate by calling the instance."""

    def __init__(self, dim: int, kind: str, times=None, values=None):
        if dim < 2:
            raise InvalidDimensionError(f"qudit dimension must be >= 2, got {dim}")
        self.dim = int(dim)
        self.kind = kind
        if kind == "builtin":
            if dim not in BUILTIN_DIMS:
                raise InvalidDimensionError(
                    f"no builtin schedule for d={dim}; supported: {BUILTIN_DIMS}"
                )
            self._times = None
            self._values = None
        elif kind == "custom":
            times = np.asarray(times, dtype=float)
            values = np.asarray(values, dtype=float)
            self._validate_breakpoints(times, values)
            self._times = times
            self._values = values
        else:
            raise ScheduleError(f"unknown schedule kind {kind!r}")

    def _validate_breakpoints(self, times: np.ndarray, values: np.ndarray) -> None:
        # structural checks only; the SU(d) phase-sum condition is enforced
        # at load time (see load_schedule) so check_su stays a real predicate
        if times.ndim != 1 or values.ndim != 2 or values.shape != (times.size, self.dim):
            raise ScheduleError(
                f"breakpoints must be (n,) times with (n, {self.dim}) phase rows"
            )
        if times.size < 2:
            raise ScheduleError("need at least two breakpoints")
        if np.any(np.diff(times) <= 0.0):
            raise ScheduleError("breakpoint times must be strictly increasing")
        if times[0] != 0.0 or times[-1] != 1.0:
            raise ScheduleError("breakpoints must start at t=0 and end at t=1")
        if np.any(np.abs(values[0]) > 0.0):
            raise ScheduleError("schedule must satisfy xi_k(0) = 0 for all k")

    def __call__(self, t: float) -> np.ndarray:
        t = float(t)
        if not 0.0 <= t <= 1.0:
            raise ScheduleError(f"t out of range: {t} not in [0, 1]")
        if self.kind == "builtin":
            return _builtin_phases(self.dim, t)
        return np.array([
            np.interp(t, self._times, self._values[:, k]) for k in range(self.dim)
        ])

    @property
    def breakpoints(self):
        """(times, values) arrays for custom schedules, None for built-ins."""
        if self.kind == "builtin":
            return None
        return self._times.copy(), self._values.copy()


def builtin_schedule(d: int) -> PhaseSchedule:
    """The built-in cyclic schedule for d in {2, 3, 4}."""
    return PhaseSchedule(d, "builtin")


def check_su(schedule: PhaseSchedule, grid: int) -> bool:
    """True iff sum_k xi_k(t) = 0 within 1e-12 on a uniform t grid."""
    if grid < 2:
        raise ScheduleError(f"grid must have at least 2 points, got {grid}")
    for t in np.linspace(0.0, 1.0, grid):
        if abs(float(np.sum(schedule(t)))) > SU_TOL:
            return False
    return True


def load_schedule(path) -> PhaseSchedule:
    """Load a custom schedule from JSON {dim, breakpoints: [[t, [deg...]]...]}.

    Phases are stored in degrees on disk and converted to radians here.  The
    loader rejects unsorted times and any SU(d) or xi(0)=0 violation.
    """
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ScheduleError(f"cannot read schedule file {path}: {exc}") from exc
    try:
        dim = int(data["dim"])
        raw = data["breakpoints"]
        times = np.array([row[0] for row in raw], dtype=float)
        values = np.deg2rad(np.array([row[1] for row in raw], dtype=float))
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise ScheduleError(f"malformed schedule file {path}: {exc}") from exc
    schedule = PhaseSchedule(dim, "custom", times=times, values=values)
    if not check_su(schedule, 1001):
        raise ScheduleError(f"schedule in {path} violates the SU(d) phase-sum condition")
    return schedule
