"""Chained Bell inequality engine over pluggable correlation models.

The chain uses 2N settings (N per side) whose phases equipartition a total
spread Theta, so every adjacent setting pair realizes the phase Theta/2N
while the closing pair realizes (2N-1)*Theta/2N.  The figure of merit

    I = P(a = b | closing pair) + sum over adjacent pairs of P(a != b)

satisfies I >= 1 for every locally deterministic assignment; I < 1 certifies
nonlocality, and I = 0 at finite N would be maximal nonlocality.  Provided
models: the quantum fringe law, a sign-box that is maximally nonlocal on
pi-chains, the product-of-marginals model with all correlations suppressed,
and explicit deterministic strategies.  A brute-force enumeration over all
deterministic strategies serves as the independent oracle for the local
bound.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .entangle import JointDistribution, ideal_joint_distribution

_LHV_ENUMERATION_CAP = 12  # 2^(2N) strategies; 12 -> 16.7M, seconds of work
_CHUNK = 1 << 20


class Classification(str, enum.Enum):
    LOCAL_COMPATIBLE = "local_compatible"
    BOUNDED_NONLOCAL = "bounded_nonlocal"
    MAXIMAL_NONLOCAL = "maximal_nonlocal"


@dataclass(frozen=True)
class CorrelationModel:
    """A named rule mapping a pair of setting phases to joint probabilities."""

    name: str
    rule: Callable[[float, float], JointDistribution]


@dataclass(frozen=True)
class ChainedConfig:
    """Setting count per side and total equipartitioned phase."""

    n: int
    theta: float

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"need at least 2 settings per side, got n={self.n!r}")
        if self.theta < 0.0:
            raise ValueError(f"theta must be >= 0, got {self.theta!r}")

    @property
    def settings(self) -> tuple[float, ...]:
        """2N phases; even indices belong to side A, odd to side B."""
        step = self.theta / (2 * self.n)
        return tuple(i * step for i in range(2 * self.n))


@dataclass(frozen=True)
class ChainedResult:
    i_value: float
    contributions: tuple[float, ...]  # closing concordance first, then adjacents
    classification: Classification


@dataclass(frozen=True)
class LhvMinimum:
    value: float
    strategy: tuple[int, ...]
    n_strategies: int


@dataclass(frozen=True)
class BoundednessReport:
    n_max: int
    all_positive: bool
    strictly_decreasing: bool
    closing_concordance_positive: bool
    tail_product: float  # N * I(N, pi) at n_max; tends to pi^2 / 8
    i_values: np.ndarray


def classify(i_value: float) -> Classification:
    if i_value <= 1e-12:
        return Classification.MAXIMAL_NONLOCAL
    if i_value >= 1.0:
        return Classification.LOCAL_COMPATIBLE
    return Classification.BOUNDED_NONLOCAL


def quantum_model(visibility: float = 1.0) -> CorrelationModel:
    """Fringe-law correlations, phase = difference of the setting phases."""

    def rule(phi_a: float, phi_b: float) -> JointDistribution:
        return ideal_joint_distribution(phi_a - phi_b, visibility)

    return CorrelationModel(name="quantum", rule=rule)


def pr_box_model() -> CorrelationModel:
    """No-signaling box with perfect correlations flipping at cos(phase) = 0.

    Adjacent pairs of a pi-chain fall in the correlated half, the closing
    pair in the anticorrelated one, so I vanishes for every N: maximal
    nonlocality with uniform marginals.
    """

    def rule(phi_a: float, phi_b: float) -> JointDistribution:
        equal = 0.5 if math.cos(phi_a - phi_b) >= 0.0 else 0.0
        differ = 0.5 - equal
        return JointDistribution(p_pp=equal, p_pm=differ, p_mp=differ, p_mm=equal)

    return CorrelationModel(name="pr_box", rule=rule)


def suppressed_nonlocality_model() -> CorrelationModel:
    """Product of the uniform marginals: all correlations removed."""

    def rule(phi_a: float, phi_b: float) -> JointDistribution:
        return JointDistribution(p_pp=0.25, p_pm=0.25, p_mp=0.25, p_mm=0.25)

    return CorrelationModel(name="suppressed_nonlocality", rule=rule)


def deterministic_strategy_model(
    outcomes: Sequence[int], cfg: ChainedConfig
) -> CorrelationModel:
    """Local deterministic responses: setting l_i always yields outcomes[i].

    Settings are recognized by their phase on the equipartition grid, so the
    model only accepts the phases of ``cfg`` (and needs theta > 0 to tell
    them apart).
    """
    outcomes = tuple(outcomes)
    if len(outcomes) != 2 * cfg.n:
        raise ValueError(f"need {2 * cfg.n} outcomes, got {len(outcomes)}")
    if any(o not in (1, -1) for o in outcomes):
        raise ValueError("outcomes must be +-1")
    if cfg.theta <= 0.0:
        raise ValueError("setting phases are degenerate at theta = 0")
    step = cfg.theta / (2 * cfg.n)

    def index_of(phi: float) -> int:
        i = round(phi / step)
        if not 0 <= i < 2 * cfg.n or abs(phi - i * step) > 1e-9 * max(step, 1.0):
            raise ValueError(f"phase {phi!r} is not one of the chain settings")
        return i

    def rule(phi_a: float, phi_b: float) -> JointDistribution:
        a = outcomes[index_of(phi_a)]
        b = outcomes[index_of(phi_b)]
        p = {(x, y): 0.0 for x in (1, -1) for y in (1, -1)}
        p[(a, b)] = 1.0
        return JointDistribution(p_pp=p[(1, 1)], p_pm=p[(1, -1)],
                                 p_mp=p[(-1, 1)], p_mm=p[(-1, -1)])

    return CorrelationModel(name="local_deterministic", rule=rule)


def chained_I(model, cfg: ChainedConfig) -> ChainedResult:
    """Evaluate the chained figure of merit on a correlation model.

    The model's rule is called once per term; a rule producing an invalid
    distribution is rejected with the underlying diagnostic.
    """
    rule = getattr(model, "rule", model)
    settings = cfg.settings
    last = 2 * cfg.n - 1

    def term(i: int, j: int) -> JointDistribution:
        # even index = side A, odd = side B
        if i % 2 == 0:
            return rule(settings[i], settings[j])
        return rule(settings[j], settings[i])

    contributions = [term(0, last).p_equal]
    for i in range(last):
        contributions.append(term(i, i + 1).p_differ)
    # fsum: plain accumulation loses ~2e-12 against the closed form at N = 10^4
    i_value = math.fsum(contributions)
    return ChainedResult(
        i_value=i_value,
        contributions=tuple(contributions),
        classification=classify(i_value),
    )


def quantum_I_closed_form(n: int, theta: float) -> float:
    """Direct substitution of the fringe law into the chained sum.

    At theta = pi this simplifies to N (1 - cos(pi / 2N)): strictly positive
    for every finite N, decreasing, with N * I tending to pi^2 / 8.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n!r}")
    adj = theta / (2 * n)
    return 0.5 * (1.0 + math.cos((2 * n - 1) * adj)) + (2 * n - 1) * 0.5 * (1.0 - math.cos(adj))


def deterministic_strategy_value(outcomes: Sequence[int]) -> float:
    """Chained value of a fixed +-1 assignment: closing agreement indicator
    plus the number of adjacent sign flips.  Always an integer >= 1."""
    outcomes = tuple(outcomes)
    if len(outcomes) < 4 or len(outcomes) % 2:
        raise ValueError("need an even number (>= 4) of outcomes")
    if any(o not in (1, -1) for o in outcomes):
        raise ValueError("outcomes must be +-1")
    closing = 1.0 if outcomes[0] == outcomes[-1] else 0.0
    flips = sum(1.0 for x, y in zip(outcomes, outcomes[1:]) if x != y)
    return closing + flips


def lhv_minimum_I(n: int, theta: float = math.pi) -> LhvMinimum:
    """Exhaustive minimum of the chained value over deterministic strategies.

    Deterministic outcomes make every term an indicator, so the value does
    not depend on theta; the parameter is kept for interface symmetry.
    Enumeration covers all 2^(2N) assignments (bit i of the strategy word is
    setting l_i, set bit = +1) and reports the first minimizer in ascending
    word order.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n!r}")
    if n > _LHV_ENUMERATION_CAP:
        raise ValueError(
            f"n = {n} exceeds the enumeration bound {_LHV_ENUMERATION_CAP} "
            f"(2^(2n) = {2 ** (2 * n)} strategies)"
        )
    bits = 2 * n
    total = 1 << bits
    adj_mask = np.uint64((1 << (bits - 1)) - 1)
    closing_shift = np.uint64(bits - 1)
    one = np.uint64(1)

    best_value = bits + 2  # above any attainable value
    best_word = 0
    for lo in range(0, total, _CHUNK):
        words = np.arange(lo, min(lo + _CHUNK, total), dtype=np.uint64)
        flips = np.bitwise_count((words ^ (words >> one)) & adj_mask)
        closing_equal = one - ((words ^ (words >> closing_shift)) & one)
        values = flips + closing_equal
        idx = int(np.argmin(values))
        if int(values[idx]) < best_value:
            best_value = int(values[idx])
            best_word = int(words[idx])
    strategy = tuple(1 if (best_word >> i) & 1 else -1 for i in range(bits))
    return LhvMinimum(value=float(best_value), strategy=strategy, n_strategies=total)


def boundedness_check(n_max: int) -> BoundednessReport:
    """Verify the quantum pi-chain stays strictly positive and decreasing.

    Also checks the closing-pair concordance (1 - cos(pi/2N))/2 stays above
    its Phi = pi value of zero, the monotonicity step behind the
    no-maximal-nonlocality argument.
    """
    if n_max < 2:
        raise ValueError(f"need n_max >= 2, got {n_max!r}")
    ns = np.arange(2, n_max + 1, dtype=float)
    i_values = ns * (1.0 - np.cos(math.pi / (2.0 * ns)))
    closing = 0.5 * (1.0 - np.cos(math.pi / (2.0 * ns)))
    return BoundednessReport(
        n_max=n_max,
        all_positive=bool(np.all(i_values > 0.0)),
        strictly_decreasing=bool(np.all(np.diff(i_values) < 0.0)),
        closing_concordance_positive=bool(np.all(closing > 0.0)),
        tail_product=float(n_max * i_values[-1]),
        i_values=i_values,
    )
