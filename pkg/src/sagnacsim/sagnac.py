"""Coincidence probabilities for the Sagnac loop and noisy fringe scans.

Two independent routes compute the coincidence probability:

* ``coincidence_full``: closed-form sum over amplitude pairs,
  C = 1/4 * sum_mn |alpha_mn e^{i xi_m} - e^{4 i theta} alpha_nm|^2.
* ``circuit_oracle``: explicit propagation of the polarization (x) path ket
  through the interferometer optics, kept as a separate code path so the two
  can cross-check each other.

``generate_scan`` turns a schedule setting into an exact or Poisson-sampled
fringe scan over a grid of phase-shifter angles.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigError, DimensionMismatchError, ScheduleError
from .jones import hwp, phase_shifter
from .qudit import BipartiteQuditState, make_antisymmetric_mes
from .schedule import PhaseSchedule

DEFAULT_THETA_GRID = np.deg2rad(np.arange(0.0, 180.0 + 1e-9, 5.0))
DEFAULT_CONTRAST = 0.35
SCHEMA_VERSION = 1


def coincidence_full(state: BipartiteQuditState, xi, theta: float) -> float:
    """Coincidence probability for an arbitrary two-qudit path state."""
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (state.dim,):
        raise DimensionMismatchError(
            f"expected {state.dim} phases, got shape {xi.shape}"
        )
    a = state.amplitudes
    diff = np.exp(1j * xi)[:, None] * a - np.exp(4j * theta) * a.T
    return 0.25 * float(np.sum(np.abs(diff) ** 2))


def coincidence_mes(d: int, xi, theta: float) -> float:
    """Closed form for the anti-diagonal maximally entangled state.

    C(theta) = (1/d) sum_m sin^2[(xi_m - 4*theta) / 2].
    """
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (d,):
        raise DimensionMismatchError(f"expected {d} phases, got shape {xi.shape}")
    return float(np.mean(np.sin((xi - 4.0 * theta) / 2.0) ** 2))


def circuit_oracle(state: BipartiteQuditState, xi, theta: float, phi: float = 0.0) -> float:
    """Propagate the full ket through the interferometer optics.

    Steps: polarizing splitter routes signal (H) and idler (V) into
    counter-propagating paths; each passes the 22.5deg half wave plate and
    the phase-shifter stack (V advanced by 4*theta for the signal, a global
    2*theta for the idler, which traverses the stack backwards); the
    programmable mirror adds xi_m to the signal's H component only.  At
    recombination H transmits and V reflects with factor i; coincidences
    keep the HH route (signal to D1, idler to D2) and the VV route with the
    photons swapped.  Polarization erasers at +/-45deg project both detectors
    on H, and slit-mode orthonormality reduces the detection integral to an
    incoherent sum over slit pairs.

    Agrees with ``coincidence_full`` to machine precision; ``phi`` is the
    fixed plate angle of the stack and must not affect the result.
    """
    xi = np.asarray(xi, dtype=float)
    d = state.dim
    if xi.shape != (d,):
        raise DimensionMismatchError(f"expected {d} phases, got shape {xi.shape}")

    psi = np.zeros((d, 2, d, 2), dtype=complex)  # [slit_s, pol_s, slit_i, pol_i]
    psi[:, 0, :, 1] = 1j * state.amplitudes      # signal H, idler V

    h8 = hwp(np.pi / 8.0)
    stack = phase_shifter(phi, theta)

    psi = np.einsum("ab,mbnv->manv", h8, psi)        # signal 45deg rotation
    psi = np.einsum("ab,mbnv->manv", stack, psi)     # signal phase shifter
    psi[:, 0, :, :] *= np.exp(1j * xi)[:, None, None]  # mirror phases on signal H
    psi = np.einsum("ab,msnb->msna", stack.T, psi)   # idler: reverse traversal
    psi = np.einsum("ab,msnb->msna", h8, psi)        # idler 45deg rotation

    eraser_1 = hwp(np.pi / 8.0)[0, :]    # <H| after +45deg rotation at D1
    eraser_2 = hwp(-np.pi / 8.0)[0, :]   # <H| after -45deg rotation at D2
    hh = psi[:, 0, :, 0] * (eraser_1[0] * eraser_2[0])
    vv = psi[:, 1, :, 1].T * ((1j * 1j) * eraser_1[1] * eraser_2[1])  # i per V reflection
    amplitude = hh + vv
    # factor 4 restores the closed form's normalization (unit span for a
    # maximally entangled input)
    return 4.0 * float(np.sum(np.abs(amplitude) ** 2))


@dataclass(frozen=True)
class ExperimentConfig:
    """Static description of one simulated experiment."""

    dim: int
    schedule: PhaseSchedule
    theta_grid: np.ndarray = field(default_factory=lambda: DEFAULT_THETA_GRID.copy())
    t_values: tuple[float, ...] = (0.0, 0.5, 1.0)
    counts_per_point: int = 1000
    contrast: float = DEFAULT_CONTRAST
    rng_seed: int = 0

    def __post_init__(self) -> None:
        grid = np.asarray(self.theta_grid, dtype=float)
        if grid.size == 0:
            raise ConfigError("theta grid must not be empty")
        if np.any(np.diff(grid) <= 0.0):
            raise ConfigError("theta grid must be strictly increasing")
        if not 0.0 <= self.contrast <= 1.0:
            raise ConfigError(f"contrast must be in [0, 1], got {self.contrast}")
        if self.counts_per_point < 1:
            raise ConfigError("counts_per_point must be >= 1")
        if self.schedule.dim != self.dim:
            raise DimensionMismatchError(
                f"schedule dimension {self.schedule.dim} != config dimension {self.dim}"
            )
        for t in self.t_values:
            if not 0.0 <= t <= 1.0:
                raise ConfigError(f"t value out of range: {t}")
        grid.setflags(write=False)
        object.__setattr__(self, "theta_grid", grid)
        object.__setattr__(self, "t_values", tuple(float(t) for t in self.t_values))


@dataclass(frozen=True)
class FringeScan:
    """One sweep of the phase-shifter angle at fixed schedule setting t."""

    t: float
    thetas: np.ndarray
    values: np.ndarray
    mode: str  # "exact" (probabilities) or "sampled" (counts)

    def __post_init__(self) -> None:
        thetas = np.asarray(self.thetas, dtype=float)
        if np.any(np.diff(thetas) <= 0.0):
            raise ConfigError("scan thetas must be strictly increasing")
        values = np.asarray(self.values)
        if values.shape != thetas.shape:
            raise ConfigError("thetas and values must have matching shapes")
        if self.mode == "exact":
            values = values.astype(float)
            if np.any(values < 0.0) or np.any(values > 1.0):
                raise ConfigError("exact-mode probabilities must lie in [0, 1]")
        elif self.mode == "sampled":
            values = values.astype(np.int64)
            if np.any(values < 0):
                raise ConfigError("sampled counts must be nonnegative")
        else:
            raise ConfigError(f"unknown scan mode {self.mode!r}")
        thetas.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "thetas", thetas)
        object.__setattr__(self, "values", values)


def _point_rng(seed: int, t: float, index: int) -> np.random.Generator:
    # one independent substream per (t, theta point); t keyed at micro
    # resolution so distinct scan settings never share a stream
    t_key = int(round(t * 1_000_000))
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(t_key, index)))


def generate_scan(cfg: ExperimentConfig, t: float, mode: str = "sampled") -> FringeScan:
    """Simulate one fringe scan of the configured experiment.

    The ideal fringe p(theta) is degraded by the mode-mismatch contrast as
    p' = 1/2 + contrast * (p - 1/2).  Exact mode returns p'; sampled mode
    draws Poisson(counts_per_point * p') per point, reproducibly from the
    configured seed.
    """
    if not 0.0 <= t <= 1.0:
        raise ScheduleError(f"t out of range: {t} not in [0, 1]")
    xi = cfg.schedule(t)
    mes = make_antisymmetric_mes(cfg.dim)
    p = np.array([coincidence_full(mes, xi, th) for th in cfg.theta_grid])
    # rounding can overshoot the closed interval by ~1 ulp
    p_eff = np.clip(0.5 + cfg.contrast * (p - 0.5), 0.0, 1.0)
    if mode == "exact":
        return FringeScan(t, cfg.theta_grid, p_eff, "exact")
    if mode == "sampled":
        counts = np.array([
            _point_rng(cfg.rng_seed, t, i).poisson(cfg.counts_per_point * p_eff[i])
            for i in range(p_eff.size)
        ])
        return FringeScan(t, cfg.theta_grid, counts, "sampled")
    raise ConfigError(f"unknown scan mode {mode!r}")


def scan_metadata(cfg: ExperimentConfig, scan: FringeScan) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "dim": cfg.dim,
        "t": scan.t,
        "seed": cfg.rng_seed,
        "contrast": cfg.contrast,
        "counts_per_point": cfg.counts_per_point,
        "mode": scan.mode,
    }


def write_scan(scan: FringeScan, path, metadata: dict | None = None) -> None:
    """Write a scan as CSV (theta in degrees) plus a JSON metadata sidecar."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        if scan.mode == "sampled":
            writer.writerow(["theta_deg", "counts"])
            for th, v in zip(scan.thetas, scan.values):
                writer.writerow([f"{np.rad2deg(th):.10g}", int(v)])
        else:
            writer.writerow(["theta_deg", "probability"])
            for th, v in zip(scan.thetas, scan.values):
                writer.writerow([f"{np.rad2deg(th):.10g}", f"{v:.17g}"])
    if metadata is not None:
        sidecar = path.with_suffix(".json")
        sidecar.write_text(json.dumps(metadata, indent=2, sort_keys=True) + "\n")


def read_scan(path) -> tuple[FringeScan, dict | None]:
    """Read a scan CSV written by ``write_scan``; returns (scan, metadata)."""
    path = Path(path)
    with path.open(newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or len(rows[0]) < 2 or rows[0][0] != "theta_deg" \
            or rows[0][1] not in ("counts", "probability"):
        raise ConfigError(f"{path} is not a fringe scan CSV")
    mode = "sampled" if rows[0][1] == "counts" else "exact"
    try:
        thetas = np.deg2rad(np.array([float(r[0]) for r in rows[1:]]))
        if mode == "sampled":
            values = np.array([int(r[1]) for r in rows[1:]])
        else:
            values = np.array([float(r[1]) for r in rows[1:]])
    except (IndexError, ValueError) as exc:
        raise ConfigError(f"corrupt scan data in {path}: {exc}") from exc
    metadata = None
    sidecar = path.with_suffix(".json")
    if sidecar.exists():
        metadata = json.loads(sidecar.read_text())
    t = float(metadata["t"]) if metadata and "t" in metadata else 0.0
    return FringeScan(t, thetas, values, mode), metadata
