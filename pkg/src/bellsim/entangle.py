"""Two-photon interference with unbalanced interferometer pairs.

A pump line at angular frequency w down-converts into a photon pair at
w/2 + w_off and w/2 - w_off; each photon traverses its own long/short
interferometer.  Of the four two-photon path classes (ll, ss, ls, sl) only
ll and ss arrive coincident when the delays are matched, and their
interference carries the nonlocal fringe.  The module provides

* the idealized maximally-entangled joint distribution,
* the full four-path spectral model with per-pair coherence factors and
  coincidence-window post-selection,
* the coherence-ratio checks that the ideal limit requires,
* no-signaling diagnostics on arbitrary correlation rules, and
* the two-photon counterpart of the beam-splitter unitarity condition.

Everything is a pure function of its inputs.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

import numpy as np

from .measurement import MeasurementMatrix
from .spectra import Spectrum, integrate_over_spectrum

_SUM_TOL = 1e-12
_INV_SQRT2 = 1.0 / math.sqrt(2.0)

Rule = Callable[[float, float], "JointDistribution"]


class PathPair(str, enum.Enum):
    """Interfering combinations of two-photon path classes."""

    LL_SS = "ll_ss"
    LL_LS = "ll_ls"
    LS_LL = "ls_ll"
    SS_SL = "ss_sl"
    LL_SL = "ll_sl"
    LS_SS = "ls_ss"


# Which single-arm phase the pair picks up: "both" is the sum
# w_A*tau_A + w_B*tau_B; "A"/"B" the corresponding arm alone.
_PAIR_ARM: dict[PathPair, str] = {
    PathPair.LL_SS: "both",
    PathPair.LL_LS: "B",
    PathPair.LS_LL: "A",
    PathPair.SS_SL: "B",
    PathPair.LL_SL: "A",
    PathPair.LS_SS: "A",
}


@dataclass(frozen=True)
class JointDistribution:
    """Joint outcome probabilities p(a, b) for a, b in {+1, -1}."""

    p_pp: float
    p_pm: float
    p_mp: float
    p_mm: float

    def __post_init__(self):
        entries = (self.p_pp, self.p_pm, self.p_mp, self.p_mm)
        for p in entries:
            if p < -1e-15 or p > 1.0 + 1e-15:
                raise ValueError(f"probability {p!r} outside [0, 1]")
        total = sum(entries)
        if abs(total - 1.0) > _SUM_TOL:
            raise ValueError(f"joint probabilities sum to {total!r}, not 1")

    def prob(self, a: int, b: int) -> float:
        key = {(1, 1): self.p_pp, (1, -1): self.p_pm,
               (-1, 1): self.p_mp, (-1, -1): self.p_mm}
        try:
            return key[(a, b)]
        except KeyError:
            raise ValueError(f"outcomes must be +-1, got {(a, b)!r}") from None

    @property
    def p_equal(self) -> float:
        return self.p_pp + self.p_mm

    @property
    def p_differ(self) -> float:
        return self.p_pm + self.p_mp


@dataclass(frozen=True)
class FransonConfig:
    """Pump and offset spectra plus the two interferometer delays.

    ``coincidence_window`` selects which arrival-time classes survive
    post-selection; ``None`` keeps everything (no post-selection).
    """

    pump: Spectrum
    photon_offset: Spectrum
    tau_a: float
    tau_b: float
    coincidence_window: float | None = None

    def __post_init__(self):
        if self.tau_a < 0.0 or self.tau_b < 0.0:
            raise ValueError("interferometer delays must be >= 0")
        if self.coincidence_window is not None and self.coincidence_window < 0.0:
            raise ValueError("coincidence window must be >= 0 or None")


@dataclass(frozen=True)
class EntanglementConditions:
    satisfied: bool
    ratios: Mapping[str, float]
    threshold: float
    failing: tuple[str, ...]


@dataclass(frozen=True)
class FransonResult:
    distribution: JointDistribution
    visibility: float
    mean_phase: float
    kept_classes: tuple[str, ...]


def downconverted_frequencies(cfg: FransonConfig) -> tuple[float, float]:
    """Center frequencies w/2 +- w_off; their sum equals w exactly."""
    w = cfg.pump.center
    w_off = cfg.photon_offset.center
    if abs(w_off) >= w / 2.0:
        raise ValueError(
            f"offset {w_off!r} must satisfy |offset| < pump/2 = {w / 2.0!r}: "
            "a down-converted frequency would be negative"
        )
    # Larger frequency first, partner by exact subtraction (Sterbenz).
    if w_off >= 0.0:
        w_a = w / 2.0 + w_off
        w_b = w - w_a
    else:
        w_b = w / 2.0 - w_off
        w_a = w - w_b
    return (w_a, w_b)


def path_pair_phase(cfg: FransonConfig, pair: PathPair) -> float:
    """Relative phase of one interfering path-pair at the center frequencies."""
    pair = PathPair(pair)
    w_a, w_b = downconverted_frequencies(cfg)
    arm = _PAIR_ARM[pair]
    if arm == "both":
        return w_a * cfg.tau_a + w_b * cfg.tau_b
    if arm == "A":
        return w_a * cfg.tau_a
    return w_b * cfg.tau_b


def check_entanglement_conditions(
    cfg: FransonConfig, ratio_threshold: float = 100.0
) -> EntanglementConditions:
    """Coherence hierarchy for the ideal limit: tau_c >> tau >> tau_c_off >> |dtau|.

    Ratios: pump coherence time over the larger delay, that delay over the
    offset coherence time, and the offset coherence time over the delay
    mismatch (infinite for exactly matched delays).  All must reach the
    threshold.
    """
    if not ratio_threshold > 1.0:
        raise ValueError(f"ratio_threshold must exceed 1, got {ratio_threshold!r}")
    tau = max(cfg.tau_a, cfg.tau_b)
    tau_c = 2.0 * math.pi / cfg.pump.bandwidth
    tau_c_off = 2.0 * math.pi / cfg.photon_offset.bandwidth
    mismatch = abs(cfg.tau_a - cfg.tau_b)
    ratios = {
        "pump_coherence": tau_c / tau if tau > 0.0 else math.inf,
        "offset_incoherence": tau / tau_c_off,
        "delay_balance": tau_c_off / mismatch if mismatch > 0.0 else math.inf,
    }
    failing = tuple(name for name, r in ratios.items() if r < ratio_threshold)
    return EntanglementConditions(
        satisfied=not failing, ratios=ratios,
        threshold=ratio_threshold, failing=failing,
    )


def ideal_joint_distribution(phi: float, visibility: float = 1.0) -> JointDistribution:
    """Maximally-entangled joint law with optional fringe contrast V.

    Concordance (1 + V cos(phi))/2 and discordance (1 - V cos(phi))/2 are
    split symmetrically over the outcome pairs so both marginals are 1/2.
    """
    if not 0.0 <= visibility <= 1.0:
        raise ValueError(f"visibility must lie in [0, 1], got {visibility!r}")
    c = visibility * math.cos(phi)
    equal = 0.25 * (1.0 + c)
    differ = 0.25 * (1.0 - c)
    return JointDistribution(p_pp=equal, p_pm=differ, p_mp=differ, p_mm=equal)


def marginal(dist: JointDistribution, side: str) -> float:
    """Probability of outcome +1 on side "A" or "B"."""
    if side == "A":
        return dist.p_pp + dist.p_pm
    if side == "B":
        return dist.p_pp + dist.p_mp
    raise ValueError(f"side must be 'A' or 'B', got {side!r}")


def no_signaling_residual(
    model, phi_a_grid: Iterable[float], phi_b_grid: Iterable[float]
) -> float:
    """Largest change of either side's marginal under the remote setting.

    ``model`` may be a rule callable (phi_a, phi_b) -> JointDistribution or
    any object exposing one as ``.rule``.
    """
    rule: Rule = getattr(model, "rule", model)
    phi_a = list(phi_a_grid)
    phi_b = list(phi_b_grid)
    if not phi_a or not phi_b:
        raise ValueError("setting grids must be nonempty")
    marg_a = np.empty((len(phi_a), len(phi_b)))
    marg_b = np.empty((len(phi_a), len(phi_b)))
    for i, pa in enumerate(phi_a):
        for j, pb in enumerate(phi_b):
            dist = rule(pa, pb)
            marg_a[i, j] = marginal(dist, "A")
            marg_b[i, j] = marginal(dist, "B")
    dev_a = float(np.max(marg_a.max(axis=1) - marg_a.min(axis=1)))
    dev_b = float(np.max(marg_b.max(axis=0) - marg_b.min(axis=0)))
    return max(dev_a, dev_b)


# Output-port coefficients of a balanced long/short interferometer with
# symmetric splitters, split off from the long-arm propagation phase:
# amplitude(a via long) = _KAPPA[a] * exp(i * w * tau),
# amplitude(a via short) = _LAMBDA[a].
_KAPPA = {+1: 0.5j, -1: 0.5 + 0.0j}
_LAMBDA = {+1: 0.5j, -1: -0.5 + 0.0j}

# Path classes: does each photon take its long arm?
_CLASSES: dict[str, tuple[bool, bool]] = {
    "ll": (True, True),
    "ss": (False, False),
    "ls": (True, False),
    "sl": (False, True),
}


def _arrival_offset(name: str, tau_a: float, tau_b: float) -> float:
    a_long, b_long = _CLASSES[name]
    return (tau_a if a_long else 0.0) - (tau_b if b_long else 0.0)


def _class_linear_phase(name: str, tau_a: float, tau_b: float) -> tuple[float, float]:
    """Coefficients (alpha, beta) of the class phase alpha*w + beta*w_off."""
    a_long, b_long = _CLASSES[name]
    ta = tau_a if a_long else 0.0
    tb = tau_b if b_long else 0.0
    return (0.5 * (ta + tb), ta - tb)


def _complex_envelope(spectrum: Spectrum, gamma: float, tol: float) -> complex:
    """K * integral of exp(i*gamma*(w - center)) against the density.

    Centering removes the fast carrier so the quadrature only sees the
    envelope oscillation across the bandwidth.
    """
    c = spectrum.center
    re = integrate_over_spectrum(spectrum, lambda w: np.cos(gamma * (w - c)), tol)
    im = integrate_over_spectrum(spectrum, lambda w: np.sin(gamma * (w - c)), tol)
    return complex(re, im)


def physical_joint_distribution(cfg: FransonConfig, tol: float = 1e-10) -> FransonResult:
    """Four-path spectral model with coincidence post-selection.

    Sums the surviving path-class populations and every interference term
    between kept classes, each weighted by the pump/offset coherence factor
    obtained by integrating the relative phase over both spectra.  Classes
    whose arrival-time offset exceeds the coincidence window are discarded
    and the result renormalized.  The fringe visibility is extracted exactly
    from the concordance probability's single-harmonic dependence on a
    carrier-phase sweep.
    """
    w_a, w_b = downconverted_frequencies(cfg)
    tau_a, tau_b = cfg.tau_a, cfg.tau_b

    kept = [
        name for name in _CLASSES
        if cfg.coincidence_window is None
        or abs(_arrival_offset(name, tau_a, tau_b)) <= cfg.coincidence_window
    ]
    if not kept:
        raise ValueError("coincidence window rejects every path class")

    # Carrier phase of each class at the center frequencies.
    def carrier(name: str) -> float:
        a_long, b_long = _CLASSES[name]
        return (w_a * tau_a if a_long else 0.0) + (w_b * tau_b if b_long else 0.0)

    # Static detector coefficients per class and outcome pair.
    def coeff(name: str, a: int, b: int) -> complex:
        a_long, b_long = _CLASSES[name]
        ka = _KAPPA[a] if a_long else _LAMBDA[a]
        kb = _KAPPA[b] if b_long else _LAMBDA[b]
        return ka * kb

    # Spectral coherence factor for each unordered kept pair, with envelope
    # integrals cached by their linear coefficient.
    env_pump: dict[float, complex] = {}
    env_off: dict[float, complex] = {}

    def envelope(spectrum: Spectrum, cache: dict[float, complex], gamma: float) -> complex:
        if gamma not in cache:
            cache[gamma] = _complex_envelope(spectrum, gamma, tol)
        return cache[gamma]

    pairs = []
    for i, u in enumerate(kept):
        for v in kept[i + 1:]:
            au, bu = _class_linear_phase(u, tau_a, tau_b)
            av, bv = _class_linear_phase(v, tau_a, tau_b)
            coherence = (
                envelope(cfg.pump, env_pump, au - av)
                * envelope(cfg.photon_offset, env_off, bu - bv)
            )
            pairs.append((u, v, coherence))

    outcomes = [(1, 1), (1, -1), (-1, 1), (-1, -1)]

    def raw_probabilities(chi: float) -> dict[tuple[int, int], float]:
        """Un-normalized joint probabilities with an extra phase chi on the
        long arm at side A (a sub-wavelength delay tweak)."""
        phase = {}
        for name in kept:
            a_long, _ = _CLASSES[name]
            phase[name] = cmath.exp(1j * (carrier(name) + (chi if a_long else 0.0)))
        probs = {}
        for a, b in outcomes:
            total = sum(abs(coeff(name, a, b)) ** 2 for name in kept)
            for u, v, coherence in pairs:
                cross = (coeff(u, a, b) * coeff(v, a, b).conjugate()
                         * phase[u] * phase[v].conjugate() * coherence)
                total += 2.0 * cross.real
            probs[(a, b)] = total
        return probs

    raw = raw_probabilities(0.0)
    weight = sum(raw.values())
    dist = JointDistribution(
        p_pp=max(raw[(1, 1)] / weight, 0.0),
        p_pm=max(raw[(1, -1)] / weight, 0.0),
        p_mp=max(raw[(-1, 1)] / weight, 0.0),
        p_mm=max(raw[(-1, -1)] / weight, 0.0),
    )

    # p_equal(chi) = u0 + A cos(chi) + B sin(chi): three samples pin the
    # harmonic, and the fringe contrast is sqrt(A^2+B^2)/u0.
    def p_equal(chi: float) -> float:
        p = raw_probabilities(chi)
        return (p[(1, 1)] + p[(-1, -1)]) / weight

    pe_0, pe_quarter, pe_half = p_equal(0.0), p_equal(0.5 * math.pi), p_equal(math.pi)
    u0 = 0.5 * (pe_0 + pe_half)
    a_cos = 0.5 * (pe_0 - pe_half)
    b_sin = pe_quarter - u0
    visibility = math.hypot(a_cos, b_sin) / u0 if u0 > 0.0 else 0.0

    return FransonResult(
        distribution=dist,
        visibility=visibility,
        mean_phase=path_pair_phase(cfg, PathPair.LL_SS),
        kept_classes=tuple(kept),
    )


def bob_measurement_rule(m: MeasurementMatrix) -> Rule:
    """Joint-outcome rule of the ideal path-entangled pair when side B's
    measurement is described by ``m`` (side A keeps the standard
    interferometer matrix).

    Side A's marginal acquires the cross term b11 b21* + b12 b22* times the
    remote phase, so matrices passing the single-particle unitarity check
    produce no-signaling correlations with no extra assumption.  With the
    standard matrix on both sides the rule reproduces the ideal joint law at
    phase phi_a + phi_b.
    """
    b_long = {+1: m.a11, -1: m.a12}
    b_short = {+1: m.a21, -1: m.a22}
    a_long = {+1: 1j * _INV_SQRT2, -1: complex(_INV_SQRT2)}
    a_short = {+1: 1j * _INV_SQRT2, -1: complex(-_INV_SQRT2)}

    def rule(phi_a: float, phi_b: float) -> JointDistribution:
        za = cmath.exp(1j * phi_a)
        zb = cmath.exp(1j * phi_b)
        p = {}
        for a in (1, -1):
            for b in (1, -1):
                amp = (a_long[a] * za * b_long[b] * zb
                       + a_short[a] * b_short[b]) * _INV_SQRT2
                p[(a, b)] = abs(amp) ** 2
        return JointDistribution(p_pp=p[(1, 1)], p_pm=p[(1, -1)],
                                 p_mp=p[(-1, 1)], p_mm=p[(-1, -1)])

    return rule
