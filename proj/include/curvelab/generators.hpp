#pragma once

// Seeded random inputs for the property suites.

#include <random>

#include "curvelab/polynomial.hpp"
#include "curvelab/trig_series.hpp"

namespace curvelab {

using Rng = std::mt19937_64;

/// Random closed trig curve that crosses z = 0 about `target_a` times. The z
/// coordinate is dominated by one harmonic of frequency target_a / 2; odd
/// targets give one-sided curves with half-integer frequencies.
TrigSeries<double> random_trig_curve(Rng& rng, int target_a, int harmonics = 5);

/// Random smooth quartic meeting z = 0 in `target_a` real points (0, 2 or 4):
/// a product of two conics (ellipses or hyperbolas) plus a small generic
/// perturbation.
Polynomial random_quartic(Rng& rng, int target_a);

/// The cubic y^2 z = x^2 (x + l z) with a node at the origin (isolated when
/// l < 0) under a random rotation, shift and projective tilt. N = 1.
Polynomial random_nodal_cubic(Rng& rng, bool isolated);

/// Random line through the unit cube of coefficients.
Vec3 random_line(Rng& rng);

}  // namespace curvelab
