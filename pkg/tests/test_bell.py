import math

import numpy as np
import pytest

from bellsim.bell import (
    ChainedConfig,
    Classification,
    boundedness_check,
    chained_I,
    classify,
    deterministic_strategy_model,
    deterministic_strategy_value,
    lhv_minimum_I,
    pr_box_model,
    quantum_I_closed_form,
    quantum_model,
    suppressed_nonlocality_model,
)
from bellsim.entangle import JointDistribution, marginal, no_signaling_residual

PI = math.pi


def test_chained_config_settings():
    cfg = ChainedConfig(n=3, theta=PI)
    settings = cfg.settings
    assert len(settings) == 6
    step = PI / 6
    for a, b in zip(settings, settings[1:]):
        assert abs((b - a) - step) <= 1e-15
    assert abs((settings[-1] - settings[0]) - 5 * step) <= 1e-15
    with pytest.raises(ValueError):
        ChainedConfig(n=1, theta=PI)
    with pytest.raises(ValueError):
        ChainedConfig(n=2, theta=-0.1)


def test_quantum_chsh_point():
    result = chained_I(quantum_model(), ChainedConfig(n=2, theta=PI))
    assert result.i_value == pytest.approx(2.0 - math.sqrt(2.0), abs=1e-12)
    assert result.classification is Classification.BOUNDED_NONLOCAL
    assert len(result.contributions) == 4
    assert result.i_value == pytest.approx(sum(result.contributions), abs=1e-15)


def test_quantum_matches_closed_form():
    for n in (2, 3, 5, 10, 100, 1000, 10000):
        for theta in (0.0, PI / 4, PI / 2, PI):
            full = chained_I(quantum_model(), ChainedConfig(n=n, theta=theta)).i_value
            closed = quantum_I_closed_form(n, theta)
            assert abs(full - closed) <= 1e-12, (n, theta)


def test_closed_form_values():
    assert quantum_I_closed_form(2, PI) == pytest.approx(2.0 - math.sqrt(2.0), abs=1e-12)
    assert quantum_I_closed_form(3, PI) == pytest.approx(3.0 * (1.0 - math.cos(PI / 6)), abs=1e-12)
    # Taylor tail: I(N, pi) ~ pi^2 / (8 N)
    assert quantum_I_closed_form(10 ** 6, PI) == pytest.approx(PI ** 2 / 8e6, rel=1e-2)
    with pytest.raises(ValueError):
        quantum_I_closed_form(1, PI)


def test_quantum_theta_zero_is_local_boundary():
    for n in (2, 17, 10 ** 6):
        assert quantum_I_closed_form(n, 0.0) == 1.0
    result = chained_I(quantum_model(), ChainedConfig(n=4, theta=0.0))
    assert result.i_value == pytest.approx(1.0, abs=1e-15)
    assert result.classification is Classification.LOCAL_COMPATIBLE


def test_limit_reached_beyond_minimal_chain_length():
    # the pi-chain value crosses below 1e-6 near N = pi^2/8e-6 ~ 1.2337e6
    # (1 - cos cancellation blurs the exact crossing, so probe either side)
    assert quantum_I_closed_form(1_300_000, PI) <= 1e-6
    assert quantum_I_closed_form(1_200_000, PI) > 1e-6


def test_lhv_minimum_is_one():
    for n in range(2, 9):
        result = lhv_minimum_I(n)
        assert result.value == 1.0
        assert result.n_strategies == 2 ** (2 * n)
        assert result.strategy == tuple([-1] * (2 * n))
    with pytest.raises(ValueError):
        lhv_minimum_I(13)
    with pytest.raises(ValueError):
        lhv_minimum_I(1)


def test_strategy_value_examples():
    assert deterministic_strategy_value((1, 1, 1, 1)) == 1.0  # all-agree: closing term only
    assert deterministic_strategy_value((1, 1, -1, -1)) == 1.0
    assert deterministic_strategy_value((1, -1, 1, -1)) == 3.0
    with pytest.raises(ValueError):
        deterministic_strategy_value((1, 1, 1))
    with pytest.raises(ValueError):
        deterministic_strategy_value((1, 0, 1, 1))


def test_strategy_value_agrees_with_enumeration_formula():
    rng = np.random.default_rng(3)
    for _ in range(200):
        n = int(rng.integers(2, 7))
        word = int(rng.integers(0, 2 ** (2 * n)))
        outcomes = tuple(1 if (word >> i) & 1 else -1 for i in range(2 * n))
        flips = bin((word ^ (word >> 1)) & ((1 << (2 * n - 1)) - 1)).count("1")
        closing = 1.0 if ((word >> (2 * n - 1)) & 1) == (word & 1) else 0.0
        assert deterministic_strategy_value(outcomes) == flips + closing


def test_chained_on_deterministic_model_matches_strategy_value():
    rng = np.random.default_rng(7)
    cfg = ChainedConfig(n=3, theta=PI)
    for _ in range(25):
        outcomes = tuple(int(x) for x in rng.choice([-1, 1], size=6))
        model = deterministic_strategy_model(outcomes, cfg)
        result = chained_I(model, cfg)
        assert result.i_value == pytest.approx(deterministic_strategy_value(outcomes), abs=1e-12)
        assert result.i_value >= 1.0


def test_pr_box_is_maximally_nonlocal_on_pi_chains():
    model = pr_box_model()
    for n in (2, 3, 5, 8):
        result = chained_I(model, ChainedConfig(n=n, theta=PI))
        assert result.i_value == 0.0
        assert result.classification is Classification.MAXIMAL_NONLOCAL
    grid = np.linspace(0.0, 2 * PI, 16)
    assert no_signaling_residual(model, grid, grid) <= 1e-12
    for pa, pb in ((0.0, 0.3), (1.0, 2.9)):
        d = model.rule(pa, pb)
        assert marginal(d, "A") == 0.5
        assert marginal(d, "B") == 0.5


def test_suppressed_nonlocality_value():
    model = suppressed_nonlocality_model()
    result = chained_I(model, ChainedConfig(n=2, theta=PI))
    assert result.i_value == 2.0
    assert result.classification is Classification.LOCAL_COMPATIBLE
    assert model.rule(0.2, 1.9) == JointDistribution(0.25, 0.25, 0.25, 0.25)


def test_hierarchy_at_chsh_point():
    cfg = ChainedConfig(n=2, theta=PI)
    pr = chained_I(pr_box_model(), cfg).i_value
    quantum = chained_I(quantum_model(), cfg).i_value
    lhv = lhv_minimum_I(2).value
    suppressed = chained_I(suppressed_nonlocality_model(), cfg).i_value
    assert pr < quantum < lhv <= suppressed


def test_chained_rejects_invalid_model_distribution():
    def broken(phi_a, phi_b):
        return JointDistribution(0.5, 0.5, 0.5, 0.5)

    with pytest.raises(ValueError):
        chained_I(broken, ChainedConfig(n=2, theta=PI))


def test_classification_thresholds():
    assert classify(0.0) is Classification.MAXIMAL_NONLOCAL
    assert classify(5e-13) is Classification.MAXIMAL_NONLOCAL
    assert classify(0.5) is Classification.BOUNDED_NONLOCAL
    assert classify(1.0) is Classification.LOCAL_COMPATIBLE
    assert classify(2.0) is Classification.LOCAL_COMPATIBLE


def test_boundedness_check():
    report = boundedness_check(1024)
    assert report.all_positive
    assert report.strictly_decreasing
    assert report.closing_concordance_positive
    assert report.tail_product == pytest.approx(PI ** 2 / 8.0, rel=1e-2)
    assert report.i_values[0] == pytest.approx(2.0 - math.sqrt(2.0), abs=1e-12)
    assert report.i_values[1] == pytest.approx(3.0 * (1.0 - math.cos(PI / 6)), abs=1e-12)
    with pytest.raises(ValueError):
        boundedness_check(1)


def test_visibility_degrades_quantum_value():
    # lower fringe contrast pushes the chain value toward the local region
    cfg = ChainedConfig(n=2, theta=PI)
    values = [chained_I(quantum_model(v), cfg).i_value for v in (1.0, 0.9, 0.7, 0.5)]
    assert all(a < b for a, b in zip(values, values[1:]))
    assert chained_I(quantum_model(0.0), cfg).i_value == pytest.approx(2.0, abs=1e-12)
