"""Beam-splitter measurements as 2x2 complex matrices.

Amplitudes combine as

    out_plus  = a11 * L * exp(i*phi) + a21 * S
    out_minus = a12 * L * exp(i*phi) + a22 * S

so the entry ``a_ij`` feeds input path i (1 = long, 2 = short) into output
port j (1 = +, 2 = -).  Summing the two output probabilities gives

    total = |L|^2 (|a11|^2 + |a12|^2) + |S|^2 (|a21|^2 + |a22|^2)
            + 2 Re(L S* (a11 a21* + a12 a22*) exp(i*phi))

Exactly one count per photon at every phase therefore requires the cross
term a11 a21* + a12 a22* to vanish and each input path's output amplitudes
to have unit norm -- i.e. the matrix must be unitary.  Non-unitary matrices
are representable on purpose and their outputs are never renormalized: the
point of this module is to let such violations surface.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class MeasurementMatrix:
    a11: complex
    a12: complex
    a21: complex
    a22: complex

    def as_array(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a21, self.a22]], dtype=complex)

    @classmethod
    def from_array(cls, m) -> "MeasurementMatrix":
        m = np.asarray(m, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
        return cls(a11=complex(m[0, 0]), a12=complex(m[0, 1]),
                   a21=complex(m[1, 0]), a22=complex(m[1, 1]))


@dataclass(frozen=True)
class PathAmplitudes:
    """Complex amplitudes of the long and short paths, normalized to 1."""

    L: complex
    S: complex

    def __post_init__(self):
        norm = abs(self.L) ** 2 + abs(self.S) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"|L|^2 + |S|^2 = {norm!r}, expected 1")

    @classmethod
    def balanced(cls) -> "PathAmplitudes":
        return cls(L=complex(_INV_SQRT2), S=complex(_INV_SQRT2))


@dataclass(frozen=True)
class SplitterOutcome:
    """Output-port probabilities; ``total`` is reported, never clamped."""

    p_plus: float
    p_minus: float

    @property
    def total(self) -> float:
        return self.p_plus + self.p_minus


@dataclass(frozen=True)
class MeasurementValidation:
    valid: bool
    residual: float
    # Output-amplitude norm per input path (long, short); both 1 for unitary.
    path_norms: tuple[float, float]


def unitarity_residual(m: MeasurementMatrix) -> float:
    """|a11 conj(a21) + a12 conj(a22)|; zero iff the cross term cancels."""
    return abs(m.a11 * m.a21.conjugate() + m.a12 * m.a22.conjugate())


def outcome_distribution(
    m: MeasurementMatrix, amps: PathAmplitudes, phi: float
) -> SplitterOutcome:
    """Port probabilities with the phase applied to the long-path amplitude."""
    long_amp = amps.L * cmath.exp(1j * phi)
    out_plus = m.a11 * long_amp + m.a21 * amps.S
    out_minus = m.a12 * long_amp + m.a22 * amps.S
    return SplitterOutcome(p_plus=abs(out_plus) ** 2, p_minus=abs(out_minus) ** 2)


def is_valid_quantum_measurement(
    m: MeasurementMatrix, tol: float = 1e-10
) -> MeasurementValidation:
    """Cross-term residual and per-path norms, each checked against tol.

    The residual alone is what the one-count condition derives; the unit
    norms complete full unitarity.  They are reported separately.
    """
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    residual = unitarity_residual(m)
    norm_long = math.sqrt(abs(m.a11) ** 2 + abs(m.a12) ** 2)
    norm_short = math.sqrt(abs(m.a21) ** 2 + abs(m.a22) ** 2)
    valid = (
        residual <= tol
        and abs(norm_long - 1.0) <= tol
        and abs(norm_short - 1.0) <= tol
    )
    return MeasurementValidation(valid=valid, residual=residual,
                                 path_norms=(norm_long, norm_short))


def symmetric_beam_splitter() -> MeasurementMatrix:
    """50/50 splitter with i reflection phase: (1/sqrt2) [[1, i], [i, 1]]."""
    return MeasurementMatrix(a11=_INV_SQRT2, a12=1j * _INV_SQRT2,
                             a21=1j * _INV_SQRT2, a22=_INV_SQRT2)


def hadamard_beam_splitter() -> MeasurementMatrix:
    """Real orthogonal 50/50 splitter: (1/sqrt2) [[1, 1], [1, -1]]."""
    return MeasurementMatrix(a11=_INV_SQRT2, a12=_INV_SQRT2,
                             a21=_INV_SQRT2, a22=-_INV_SQRT2)


def mach_zehnder_effective(reflection_phase: float) -> MeasurementMatrix:
    """Effective matrix of a balanced two-splitter interferometer whose
    mirrors/splitters imprint ``reflection_phase`` on each reflection.

    At the physical value pi/2 the matrix is unitary and reproduces the
    complementary fringes (1 +- cos(phi))/2.  Other values model hypothetical
    splitters; the output ports then read (1 + cos(phi))/2 and
    (1 + cos(phi - 2*reflection_phase))/2, whose sum oscillates around 1.
    """
    r = cmath.exp(1j * reflection_phase)
    return MeasurementMatrix(
        a11=r * _INV_SQRT2, a12=_INV_SQRT2,
        a21=r * _INV_SQRT2, a22=r * r * _INV_SQRT2,
    )


def pi_quarter_model() -> MeasurementMatrix:
    """The pi/4-reflection counterexample: ports read (1+cos)/2 and (1+sin)/2,
    so the total exceeds 1 at phi = pi/4 and the matrix fails the cross-term
    condition."""
    return mach_zehnder_effective(math.pi / 4.0)
