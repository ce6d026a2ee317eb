"""Falsification of biased-marginal extensions of the fringe-law correlations.

No-signaling bounds the statistical distance D between any subensemble's
outcome distribution and the uniform one by 1.5 times the chained figure of
merit.  Because the quantum pi-chain value can be driven arbitrarily close
to zero by raising N, any model positing D > 0 is contradicted by some
finite chain; :func:`find_falsifying_N` locates the smallest such N and
:func:`leggett_inconsistency_demo` packages the whole argument for an
explicit two-subensemble model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .bell import (
    ChainedConfig,
    CorrelationModel,
    chained_I,
    quantum_I_closed_form,
    quantum_model,
)
from .entangle import JointDistribution, marginal


class FalsificationCapError(RuntimeError):
    """No chain length up to the cap pushed the bound below the distance."""

    def __init__(self, distance: float, n_cap: int, bound_at_cap: float):
        self.distance = distance
        self.n_cap = n_cap
        self.bound_at_cap = bound_at_cap
        super().__init__(
            f"no N <= {n_cap} with bound < {distance!r}: bound at the cap is "
            f"{bound_at_cap!r}"
        )


@dataclass(frozen=True)
class DistanceReport:
    distance: float
    bound: float  # 1.5 * I(N)
    violated: bool
    i_value: float


@dataclass(frozen=True)
class FalsificationWitness:
    n: int
    bound: float
    i_value: float
    previous_bound: float | None  # None when n == 2
    previous_i: float | None
    distance: float


@dataclass(frozen=True)
class LeggettReport:
    bias: float
    measured_distance: float
    subensemble_marginals: tuple[tuple[float, float], tuple[float, float]]
    witness: FalsificationWitness
    inconsistent: bool


def statistical_distance(p: Sequence[float], q: Sequence[float]) -> float:
    """Total variation distance between two two-outcome distributions."""
    for name, dist in (("p", p), ("q", q)):
        if len(dist) != 2:
            raise ValueError(f"{name} must have two entries, got {len(dist)}")
        if any(x < -1e-12 or x > 1.0 + 1e-12 for x in dist):
            raise ValueError(f"{name} has entries outside [0, 1]: {tuple(dist)!r}")
        if abs(sum(dist) - 1.0) > 1e-9:
            raise ValueError(f"{name} sums to {sum(dist)!r}, not 1")
    return 0.5 * (abs(p[0] - q[0]) + abs(p[1] - q[1]))


def colbeck_renner_bound(
    n: int, theta: float, model, distance: float
) -> DistanceReport:
    """Evaluate the no-signaling bound 1.5 * I(N) and compare a claimed D."""
    if not 0.0 <= distance <= 1.0:
        raise ValueError(f"distance must lie in [0, 1], got {distance!r}")
    result = chained_I(model, ChainedConfig(n=n, theta=theta))
    bound = 1.5 * result.i_value
    return DistanceReport(
        distance=distance, bound=bound,
        violated=distance > bound, i_value=result.i_value,
    )


def find_falsifying_N(
    distance: float, theta: float = math.pi, n_cap: int = 1_000_000
) -> FalsificationWitness:
    """Smallest N whose quantum bound 1.5 * I(N, theta) drops below D.

    Scans upward from N = 2 with the closed form; reports the bound on
    either side of the crossing.  Raises :class:`FalsificationCapError`
    (carrying the bound at the cap) if the cap is reached first -- which
    cannot happen for theta = pi and D > 0, but guards misuse at other
    angles.
    """
    if not 0.0 < distance <= 1.0:
        raise ValueError(f"distance must lie in (0, 1], got {distance!r}")
    if n_cap < 2:
        raise ValueError(f"n_cap must be >= 2, got {n_cap!r}")
    previous_i: float | None = None
    for n in range(2, n_cap + 1):
        i_value = quantum_I_closed_form(n, theta)
        bound = 1.5 * i_value
        if bound < distance:
            return FalsificationWitness(
                n=n, bound=bound, i_value=i_value,
                previous_bound=None if previous_i is None else 1.5 * previous_i,
                previous_i=previous_i,
                distance=distance,
            )
        previous_i = i_value
    assert previous_i is not None
    raise FalsificationCapError(distance, n_cap, 1.5 * previous_i)


@dataclass(frozen=True)
class BiasedMarginalModel:
    """Two equal-weight subensembles whose A-side marginals are 1/2 +- bias.

    Each subensemble reweights the base joint law by (1 + 2*bias*a) or its
    mirror, so the whole-ensemble mixture restores the base model exactly
    while each half exhibits the prescribed statistical distance from the
    uniform outcome distribution.
    """

    base: CorrelationModel
    bias: float

    def __post_init__(self):
        if not 0.0 <= self.bias <= 0.5:
            raise ValueError(f"bias must lie in [0, 1/2], got {self.bias!r}")

    def subensemble_rule(self, k: int) -> CorrelationModel:
        if k not in (0, 1):
            raise ValueError(f"subensemble index must be 0 or 1, got {k!r}")
        sign = 1.0 if k == 0 else -1.0
        factor = 2.0 * self.bias * sign

        def rule(phi_a: float, phi_b: float) -> JointDistribution:
            d = self.base.rule(phi_a, phi_b)
            return JointDistribution(
                p_pp=d.p_pp * (1.0 + factor),
                p_pm=d.p_pm * (1.0 + factor),
                p_mp=d.p_mp * (1.0 - factor),
                p_mm=d.p_mm * (1.0 - factor),
            )

        return CorrelationModel(name=f"{self.base.name}_biased_{k}", rule=rule)

    def ensemble_rule(self) -> CorrelationModel:
        sub0 = self.subensemble_rule(0)
        sub1 = self.subensemble_rule(1)

        def rule(phi_a: float, phi_b: float) -> JointDistribution:
            d0 = sub0.rule(phi_a, phi_b)
            d1 = sub1.rule(phi_a, phi_b)
            return JointDistribution(
                p_pp=0.5 * (d0.p_pp + d1.p_pp),
                p_pm=0.5 * (d0.p_pm + d1.p_pm),
                p_mp=0.5 * (d0.p_mp + d1.p_mp),
                p_mm=0.5 * (d0.p_mm + d1.p_mm),
            )

        return CorrelationModel(name=f"{self.base.name}_biased_mixture", rule=rule)

    def subensemble_marginal(self, k: int, phi_a: float = 0.0, phi_b: float = 0.0) -> tuple[float, float]:
        """A-side outcome distribution (+1, -1) of subensemble k."""
        d = self.subensemble_rule(k).rule(phi_a, phi_b)
        p_plus = marginal(d, "A")
        return (p_plus, 1.0 - p_plus)


def leggett_inconsistency_demo(
    bias: float, theta: float = math.pi, n_cap: int = 1_000_000
) -> LeggettReport:
    """Build the biased-marginal model, measure its D, and exhibit the chain
    length whose no-signaling bound it violates."""
    if not 0.0 < bias <= 0.5:
        raise ValueError(f"bias must lie in (0, 1/2], got {bias!r}")
    model = BiasedMarginalModel(base=quantum_model(), bias=bias)
    uniform = (0.5, 0.5)
    marg0 = model.subensemble_marginal(0)
    marg1 = model.subensemble_marginal(1)
    measured = statistical_distance(marg0, uniform)
    witness = find_falsifying_N(measured, theta=theta, n_cap=n_cap)
    return LeggettReport(
        bias=bias,
        measured_distance=measured,
        subensemble_marginals=(marg0, marg1),
        witness=witness,
        inconsistent=measured > witness.bound,
    )
