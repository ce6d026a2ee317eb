import math

import numpy as np
import pytest

from bellsim.interferometer import (
    DetectionDistribution,
    InterferenceRegime,
    InterferometerConfig,
    classify_interference,
    local_detection_distribution,
    probability_monochromatic,
    probability_wavepacket,
    quantum_detection_distribution,
    sample_events,
)
from bellsim.spectra import Spectrum

TWO_PI = 2.0 * math.pi


def rect_config(center_phase_turns: float, dw_tau: float, tau: float = 1.0) -> InterferometerConfig:
    """Rectangular source whose center phase is a whole number of turns."""
    center = center_phase_turns * TWO_PI / tau
    return InterferometerConfig(
        path_delay_tau=tau,
        source=Spectrum(shape="rectangular", center=center, bandwidth=dw_tau / tau),
    )


def test_monochromatic_extremes():
    assert probability_monochromatic(+1, 0.0) == 1.0
    assert probability_monochromatic(-1, 0.0) == 0.0
    assert probability_monochromatic(-1, math.pi) == 1.0
    assert probability_monochromatic(+1, math.pi) == 0.0
    assert probability_monochromatic(+1, math.pi / 2) == pytest.approx(0.5, abs=1e-15)
    with pytest.raises(ValueError):
        probability_monochromatic(0, 1.0)


def test_monochromatic_normalization_grid():
    for phi in np.linspace(0.0, TWO_PI, 1000):
        total = probability_monochromatic(+1, float(phi)) + probability_monochromatic(-1, float(phi))
        assert abs(total - 1.0) <= 1e-12


def test_monochromatic_monotone_on_0_pi():
    phis = np.linspace(1e-3, math.pi - 1e-3, 200)
    values = [probability_monochromatic(+1, float(p)) for p in phis]
    assert all(a > b for a, b in zip(values, values[1:]))
    minus = [probability_monochromatic(-1, float(p)) for p in phis]
    assert all(a < b for a, b in zip(minus, minus[1:]))


def test_monochromatic_surjective_on_unit_interval():
    for r in np.linspace(0.0, 1.0, 101):
        phi = math.acos(2.0 * float(r) - 1.0)
        assert abs(probability_monochromatic(+1, phi) - float(r)) <= 1e-12


def test_fringe_antisymmetry():
    # f(phi) = 2 P(+1|phi) - 1 satisfies f(phi) = -f(pi - phi)
    for phi in np.linspace(0.0, math.pi, 97):
        f = 2.0 * probability_monochromatic(+1, float(phi)) - 1.0
        g = 2.0 * probability_monochromatic(+1, math.pi - float(phi)) - 1.0
        assert abs(f + g) <= 1e-15


def test_wavepacket_washout():
    # fractional turns: the fringe must vanish at every center phase
    for turns in (7.0, 40.21, 113.5, 58.77):
        cfg = rect_config(center_phase_turns=turns, dw_tau=TWO_PI)
        assert abs(probability_wavepacket(+1, cfg, 1e-10) - 0.5) <= 1e-8
        assert abs(probability_wavepacket(-1, cfg, 1e-10) - 0.5) <= 1e-8


def test_wavepacket_equals_half_at_full_turn_multiples():
    for k in (1, 2, 3):
        cfg = rect_config(center_phase_turns=11, dw_tau=k * TWO_PI)
        assert abs(probability_wavepacket(+1, cfg, 1e-10) - 0.5) <= 1e-8


def test_wavepacket_constructive_limit():
    cfg = rect_config(center_phase_turns=100, dw_tau=1e-6)
    assert abs(probability_wavepacket(+1, cfg, 1e-10) - 1.0) <= 1e-6


def test_wavepacket_intermediate_value():
    cfg = rect_config(center_phase_turns=25, dw_tau=math.pi)
    expected = 0.5 * (1.0 + 2.0 / math.pi)  # = 0.8183098861837907
    assert abs(probability_wavepacket(+1, cfg, 1e-10) - expected) <= 1e-8


def test_wavepacket_matches_monochromatic_in_narrow_limit():
    rng = np.random.default_rng(11)
    for _ in range(20):
        turns = float(rng.uniform(3, 50))
        cfg = rect_config(center_phase_turns=turns, dw_tau=1e-7)
        phi = turns * TWO_PI
        mono = probability_monochromatic(+1, phi)
        assert abs(probability_wavepacket(+1, cfg, 1e-10) - mono) <= 1e-6


def test_wavepacket_stays_in_unit_interval():
    rng = np.random.default_rng(5)
    for _ in range(50):
        cfg = rect_config(
            center_phase_turns=float(rng.uniform(5, 30)),
            dw_tau=float(rng.uniform(0.01, 8 * math.pi)),
        )
        p = probability_wavepacket(+1, cfg, 1e-10)
        assert 0.0 <= p <= 1.0


def test_classify_interference():
    # tau_c / tau = 1000
    assert classify_interference(rect_config(10, TWO_PI / 1000)) is InterferenceRegime.INTERFERING
    assert classify_interference(rect_config(10, TWO_PI)) is InterferenceRegime.PARTICLE_LIKE
    assert classify_interference(rect_config(10, TWO_PI / 10)) is InterferenceRegime.INTERMEDIATE
    zero = InterferometerConfig(path_delay_tau=0.0, source=Spectrum("rectangular", 100.0, 1.0))
    assert classify_interference(zero) is InterferenceRegime.INTERFERING
    with pytest.raises(ValueError):
        classify_interference(rect_config(10, 1.0), ratio_threshold=1.0)


def test_detection_distribution_validation():
    with pytest.raises(ValueError):
        DetectionDistribution(0.5, 0.5, 0.1, -0.1)
    with pytest.raises(ValueError):
        DetectionDistribution(0.5, 0.4, 0.0, 0.0)


def test_quantum_distribution_has_no_double_or_null():
    for phi in np.linspace(0.0, TWO_PI, 50):
        d = quantum_detection_distribution(float(phi))
        assert d.p_double == 0.0 and d.p_null == 0.0
        assert abs(d.p_plus + d.p_minus - 1.0) <= 1e-12


def test_local_detection_headline_values():
    d = local_detection_distribution(math.pi / 2)
    assert d.p_double == pytest.approx(0.25, abs=1e-12)
    assert d.p_null == pytest.approx(0.25, abs=1e-12)
    assert d.p_plus == pytest.approx(0.25, abs=1e-12)
    assert d.p_minus == pytest.approx(0.25, abs=1e-12)
    zero = local_detection_distribution(0.0)
    assert zero.p_plus == 1.0 and zero.p_minus == 0.0
    assert zero.p_double == 0.0 and zero.p_null == 0.0
    assert local_detection_distribution(math.pi / 3).p_double == pytest.approx(0.1875, abs=1e-12)


def test_local_detection_double_equals_null():
    # complementary independent detectors miss exactly as often as they double-fire
    for phi in np.linspace(0.0, TWO_PI, 37):
        d = local_detection_distribution(float(phi))
        assert d.p_double == pytest.approx(d.p_null, abs=1e-15)


def test_sampling_deterministic_and_stream_separated():
    d = local_detection_distribution(1.0)
    a = sample_events(d, 10000, seed=3, stream=0)
    b = sample_events(d, 10000, seed=3, stream=0)
    c = sample_events(d, 10000, seed=3, stream=1)
    assert a == b
    assert a != c
    assert a.total == 10000
    with pytest.raises(ValueError):
        sample_events(d, 0, seed=3)
    with pytest.raises(ValueError):
        sample_events(d, 10, seed=-1)


def test_sampling_never_draws_zero_probability_categories():
    counts = sample_events(quantum_detection_distribution(0.7), 10 ** 6, seed=1)
    assert counts.n_double == 0 and counts.n_null == 0
    assert counts.n_plus + counts.n_minus == 10 ** 6


def test_sampling_uniform_quarters_within_three_sigma():
    counts = sample_events(DetectionDistribution(0.25, 0.25, 0.25, 0.25), 10 ** 6, seed=20260808)
    sigma = math.sqrt(10 ** 6 * 0.25 * 0.75)
    for n in (counts.n_plus, counts.n_minus, counts.n_double, counts.n_null):
        assert abs(n - 250000) <= 3 * sigma


@pytest.mark.parametrize("model,seed", [
    (quantum_detection_distribution, 99),
    (local_detection_distribution, 77),
])
def test_sampling_frequencies_match_probabilities(model, seed):
    n = 10 ** 6
    for stream, phi in enumerate(np.linspace(0.0, math.pi, 20)):
        d = model(float(phi))
        counts = sample_events(d, n, seed=seed, stream=stream)
        observed = (counts.n_plus, counts.n_minus, counts.n_double, counts.n_null)
        for count, p in zip(observed, d.as_tuple()):
            sigma = math.sqrt(n * p * (1.0 - p))
            if sigma == 0.0:
                assert count == round(n * p)
            else:
                assert abs(count - n * p) <= 4.0 * sigma
