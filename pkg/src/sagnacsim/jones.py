"""Jones calculus for the wave plates and the composite phase shifter.

Conventions (H/V basis, column vectors, matrices act from the left):

* ``hwp(a)``: half wave plate with fast axis at angle ``a``,
  [[cos 2a, sin 2a], [sin 2a, -cos 2a]].
* ``qwp(a)``: quarter wave plate, R(a) @ diag(1, i) @ R(-a); qwp(0) = diag(1, i).
* Global phases are ignored throughout; only relative phases are observable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonDiagonalError, NormalizationError

DIAG_OFFDIAG_TOL = 1e-9
NORM_TOL = 1e-12


@dataclass(frozen=True)
class JonesVector:
    """Unit-norm polarization state with H and V amplitudes."""

    h: complex
    v: complex

    def __post_init__(self) -> None:
        norm_sq = abs(self.h) ** 2 + abs(self.v) ** 2
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise NormalizationError(
                f"|h|^2 + |v|^2 deviates from 1 by {abs(norm_sq - 1.0):.3e}"
            )

    def as_array(self) -> np.ndarray:
        return np.array([self.h, self.v], dtype=complex)

    def transformed(self, matrix: np.ndarray) -> "JonesVector":
        out = np.asarray(matrix, dtype=complex) @ self.as_array()
        return JonesVector(complex(out[0]), complex(out[1]))


HORIZONTAL = JonesVector(1.0 + 0.0j, 0.0j)
VERTICAL = JonesVector(0.0j, 1.0 + 0.0j)


def _rotation(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]], dtype=complex)


def hwp(angle: float) -> np.ndarray:
    """Jones matrix of a half wave plate with fast axis at ``angle``."""
    c, s = np.cos(2.0 * angle), np.sin(2.0 * angle)
    return np.array([[c, s], [s, -c]], dtype=complex)


def qwp(angle: float) -> np.ndarray:
    """Jones matrix of a quarter wave plate with fast axis at ``angle``."""
    return _rotation(angle) @ np.diag([1.0, 1.0j]) @ _rotation(-angle)


def compose(matrices) -> np.ndarray:
    """Compose a sequence of Jones matrices; the first entry acts first."""
    mats = list(matrices)
    if not mats:
        raise ValueError("compose() needs at least one matrix")
    out = np.eye(2, dtype=complex)
    for m in mats:
        out = np.asarray(m, dtype=complex) @ out
    return out


def phase_shifter(phi: float, theta: float) -> np.ndarray:
    """Variable phase shifter built from a QWP / HWP / HWP / QWP stack.

    The two half wave plates sit at ``phi`` and ``phi + theta``; the quarter
    wave plates are crossed (-45deg first, +45deg last -- the second plate of
    the pair is traversed from its back face inside the ring, which mirrors
    its mounted angle).  The stack is diagonal in H/V for every (phi, theta)
    and advances V by 4*theta relative to H; phi only moves the global phase.
    """
    return compose([
        qwp(-np.pi / 4.0),
        hwp(phi),
        hwp(phi + theta),
        qwp(np.pi / 4.0),
    ])


def relative_phase(matrix: np.ndarray) -> float:
    """Phase of M_vv relative to M_hh, in [0, 2*pi).

    Requires the matrix to be diagonal up to a global phase (off-diagonal
    magnitudes below 1e-9); anything else raises ``NonDiagonalError``.
    """
    m = np.asarray(matrix, dtype=complex)
    off = max(abs(m[0, 1]), abs(m[1, 0]))
    if off > DIAG_OFFDIAG_TOL:
        raise NonDiagonalError(f"off-diagonal magnitude {off:.3e} exceeds {DIAG_OFFDIAG_TOL}")
    return float(np.mod(np.angle(m[1, 1]) - np.angle(m[0, 0]), 2.0 * np.pi))


def format_matrix(matrix: np.ndarray, digits: int = 6) -> str:
    """Plain-text rendering of a 2x2 complex matrix for debug output."""
    m = np.asarray(matrix, dtype=complex)
    rows = []
    for r in range(2):
        cells = [f"{m[r, c].real:+.{digits}f}{m[r, c].imag:+.{digits}f}j" for c in range(2)]
        rows.append("[ " + "  ".join(cells) + " ]")
    return "\n".join(rows)
