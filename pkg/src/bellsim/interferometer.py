"""Single-photon two-path interferometer: detection probabilities and sampling.

Covers the monochromatic fringe law, its wave-packet generalization by
integration over a source spectrum, classification of the interference
regime by the coherence-time/path-delay ratio, the alternative
independent-detectors model (which produces double counts and missed
counts), and seeded multinomial event sampling.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .spectra import Spectrum, coherence_time, integrate_over_spectrum

_SUM_TOL = 1e-12


class InterferenceRegime(str, enum.Enum):
    INTERFERING = "interfering"
    PARTICLE_LIKE = "particle_like"
    INTERMEDIATE = "intermediate"


@dataclass(frozen=True)
class InterferometerConfig:
    """Arm-delay difference (seconds) and source spectrum; outcomes are +-1."""

    path_delay_tau: float
    source: Spectrum

    def __post_init__(self):
        if self.path_delay_tau < 0.0:
            raise ValueError(f"path delay must be >= 0, got {self.path_delay_tau!r}")


@dataclass(frozen=True)
class DetectionDistribution:
    """Probabilities of the four per-run counting patterns.

    ``p_plus``/``p_minus`` are single counts in D(+)/D(-), ``p_double`` a
    count in both detectors, ``p_null`` no count at all.  A single photon
    conserving energy per run has ``p_double == p_null == 0``.
    """

    p_plus: float
    p_minus: float
    p_double: float
    p_null: float

    def __post_init__(self):
        entries = (self.p_plus, self.p_minus, self.p_double, self.p_null)
        for p in entries:
            if p < -1e-15 or p > 1.0 + 1e-15:
                raise ValueError(f"probability {p!r} outside [0, 1]")
        total = sum(entries)
        if abs(total - 1.0) > _SUM_TOL:
            raise ValueError(f"probabilities sum to {total!r}, not 1")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.p_plus, self.p_minus, self.p_double, self.p_null)


@dataclass(frozen=True)
class EventCounts:
    """Multinomial counts per detection category."""

    n_plus: int
    n_minus: int
    n_double: int
    n_null: int

    @property
    def total(self) -> int:
        return self.n_plus + self.n_minus + self.n_double + self.n_null


def probability_monochromatic(a: int, phi: float) -> float:
    """Fringe law (1 + a*cos(phi)) / 2 for outcome a in {+1, -1}."""
    if a not in (1, -1):
        raise ValueError(f"outcome must be +1 or -1, got {a!r}")
    return 0.5 * (1.0 + a * math.cos(phi))


def probability_wavepacket(a: int, cfg: InterferometerConfig, tol: float = 1e-10) -> float:
    """Fringe probability averaged over the source spectrum.

    Equals the monochromatic law when bandwidth*delay -> 0 and washes out to
    1/2 when a rectangular spectrum spans a full 2*pi of relative phase.
    """
    if a not in (1, -1):
        raise ValueError(f"outcome must be +1 or -1, got {a!r}")
    tau = cfg.path_delay_tau
    fringe = integrate_over_spectrum(cfg.source, lambda w: np.cos(w * tau), tol)
    p = 0.5 * (1.0 + a * fringe)
    return min(max(p, 0.0), 1.0)


def classify_interference(
    cfg: InterferometerConfig, ratio_threshold: float = 100.0
) -> InterferenceRegime:
    """Regime by tau_c / tau; zero path delay counts as interfering."""
    if not ratio_threshold > 1.0:
        raise ValueError(f"ratio_threshold must exceed 1, got {ratio_threshold!r}")
    if cfg.path_delay_tau == 0.0:
        return InterferenceRegime.INTERFERING
    ratio = coherence_time(cfg.source).tau_c / cfg.path_delay_tau
    if ratio >= ratio_threshold:
        return InterferenceRegime.INTERFERING
    if ratio <= 1.0:
        return InterferenceRegime.PARTICLE_LIKE
    return InterferenceRegime.INTERMEDIATE


def quantum_detection_distribution(phi: float) -> DetectionDistribution:
    """Exactly-one-count distribution at the monochromatic fringe probabilities."""
    p = probability_monochromatic(+1, phi)
    return DetectionDistribution(p_plus=p, p_minus=1.0 - p, p_double=0.0, p_null=0.0)


def local_detection_distribution(phi: float) -> DetectionDistribution:
    """Independent-detectors model: each detector clicks with its own marginal.

    D(+) fires with probability p = (1+cos(phi))/2 and D(-) independently
    with 1-p, so a quarter of the runs at phi = pi/2 give two counts and a
    quarter give none.
    """
    p = probability_monochromatic(+1, phi)
    q = 1.0 - p
    return DetectionDistribution(
        p_plus=p * p,           # D(+) fires, D(-) stays silent (prob 1-q = p)
        p_minus=q * q,
        p_double=p * q,
        p_null=q * p,
    )


def sample_events(
    dist: DetectionDistribution, n: int, seed: int, stream: int = 0
) -> EventCounts:
    """Multinomial sample of n runs; deterministic for fixed (seed, stream).

    Concurrent scans must pass distinct ``stream`` indices derived from task
    coordinates rather than share a generator; (seed, stream) keys a
    counter-based generator, so any assignment of streams to tasks yields
    reproducible, independent counts.
    """
    if n <= 0:
        raise ValueError(f"sample size must be positive, got {n!r}")
    for name, value in (("seed", seed), ("stream", stream)):
        if not isinstance(value, int) or not 0 <= value < 2 ** 64:
            raise ValueError(f"{name} must be a non-negative 64-bit integer, got {value!r}")
    probs = np.array(dist.as_tuple(), dtype=float)
    probs = probs / probs.sum()  # exact zeros stay zero
    rng = np.random.Generator(np.random.Philox(key=np.array([seed, stream], dtype=np.uint64)))
    counts = rng.multinomial(n, probs)
    return EventCounts(*(int(c) for c in counts))
