#!/usr/bin/env python3
"""Why beam-splitter matrices must be unitary.

If exactly one detector fires per photon, the two output probabilities must
sum to 1 at every phase.  Writing the outputs as amplitudes L, S mixed by a
2x2 matrix, the phase-dependent part of the total is the cross term
a11 a21* + a12 a22*.  A splitter whose reflections imprint pi/4 instead of
pi/2 keeps per-path probability but leaves the cross term alive: its two
ports read (1+cos)/2 and (1+sin)/2, and at phi = pi/4 the "photon" triggers
1.707 detections on average.
"""

import math

import numpy as np

from bellsim import (
    PathAmplitudes,
    is_valid_quantum_measurement,
    mach_zehnder_effective,
    outcome_distribution,
    pi_quarter_model,
    sample_events,
    symmetric_beam_splitter,
    unitarity_residual,
)
from bellsim.interferometer import DetectionDistribution, local_detection_distribution

BALANCED = PathAmplitudes.balanced()


def show_matrix(name, m):
    report = is_valid_quantum_measurement(m)
    print(f"   {name}")
    print(f"      cross-term residual : {report.residual:.6f}")
    print(f"      per-path norms      : {report.path_norms[0]:.6f}, {report.path_norms[1]:.6f}")
    print(f"      valid measurement   : {report.valid}")


def main():
    print("=" * 64)
    print("1. The unitarity condition, matrix by matrix")
    print("=" * 64)
    show_matrix("symmetric splitter (reflection phase pi/2)", symmetric_beam_splitter())
    show_matrix("pi/4-reflection interferometer", pi_quarter_model())

    print()
    print("=" * 64)
    print("2. Total detection probability across the fringe")
    print("=" * 64)
    good = mach_zehnder_effective(math.pi / 2)
    bad = pi_quarter_model()
    print("   phi/pi     unitary total    pi/4-model total")
    for phi in np.linspace(0.0, 2 * math.pi, 9):
        t_good = outcome_distribution(good, BALANCED, float(phi)).total
        t_bad = outcome_distribution(bad, BALANCED, float(phi)).total
        print(f"   {phi / math.pi:6.3f}    {t_good:12.9f}    {t_bad:12.9f}")
    peak = outcome_distribution(bad, BALANCED, math.pi / 4).total
    print(f"   -> worst violation at phi = pi/4: total = {peak:.9f} = 1 + sqrt(2)/2")

    print()
    print("=" * 64)
    print("3. The independent-detectors alternative, as counting statistics")
    print("=" * 64)
    print("   a local model with each detector deciding alone must pay in")
    print("   double counts and missed photons (here at phi = pi/2):")
    local = local_detection_distribution(math.pi / 2)
    counts = sample_events(local, 1_000_000, seed=11)
    print(f"      single (+): {counts.n_plus:7d}   single (-): {counts.n_minus:7d}")
    print(f"      double    : {counts.n_double:7d}   none      : {counts.n_null:7d}")
    quantum = DetectionDistribution(p_plus=0.5, p_minus=0.5, p_double=0.0, p_null=0.0)
    q_counts = sample_events(quantum, 1_000_000, seed=11)
    print("   the one-count-per-photon distribution never produces either:")
    print(f"      double    : {q_counts.n_double:7d}   none      : {q_counts.n_null:7d}")


if __name__ == "__main__":
    main()
