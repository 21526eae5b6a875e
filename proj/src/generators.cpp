#include "curvelab/generators.hpp"

#include <cmath>
#include <numbers>

#include "curvelab/errors.hpp"

namespace curvelab {

namespace {

constexpr double kNoise = 0.3;
constexpr double kPerturbation = 0.03;

// (x - cx z)^2 / p^2 + s (y - cy z)^2 / q^2 - z^2 in a frame rotated by theta.
Polynomial conic(Rng& rng, bool hyperbola) {
  std::uniform_real_distribution<double> center(-0.5, 0.5), axis(0.6, 1.4), angle(0.0, std::numbers::pi);
  const double cx = center(rng), cy = center(rng), p = axis(rng), q = axis(rng), th = angle(rng);
  const double c = std::cos(th), s = std::sin(th);
  Polynomial u(1), v(1), z(1);
  u.add(1, 0, 0, c);
  u.add(0, 1, 0, s);
  u.add(0, 0, 1, -cx);
  v.add(1, 0, 0, -s);
  v.add(0, 1, 0, c);
  v.add(0, 0, 1, -cy);
  z.add(0, 0, 1, 1.0);
  return (1.0 / (p * p)) * (u * u) + ((hyperbola ? -1.0 : 1.0) / (q * q)) * (v * v) + (-1.0) * (z * z);
}

}  // namespace

TrigSeries<double> random_trig_curve(Rng& rng, int target_a, int harmonics) {
  if (target_a < 0 || harmonics < 1) fail(ErrorCode::SchemaError, "bad generator parameters");
  std::normal_distribution<double> N(0.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2 * std::numbers::pi);
  const bool twisted = target_a % 2 == 1;
  const int dominant = twisted ? (target_a - 1) / 2 : target_a / 2;
  harmonics = std::max(harmonics, dominant + 1);

  TrigSeries<double> s;
  s.half_integer = twisted;
  s.cos_coeffs.setZero(3, harmonics);
  s.sin_coeffs.setZero(3, harmonics);
  for (int k = 0; k < harmonics; ++k)
    for (int r = 0; r < 3; ++r) {
      const double scale = (r == 2 ? kNoise : 1.0) / (1 + k);
      s.cos_coeffs(r, k) = N(rng) * scale;
      s.sin_coeffs(r, k) = N(rng) * scale;
    }
  const double amplitude = target_a == 0 ? 4.0 : 2.0;
  const double ph = dominant == 0 && !twisted ? 0.0 : phase(rng);
  s.cos_coeffs(2, dominant) = amplitude * std::cos(ph);
  s.sin_coeffs(2, dominant) = amplitude * std::sin(ph);
  return s;
}

Polynomial random_quartic(Rng& rng, int target_a) {
  if (target_a != 0 && target_a != 2 && target_a != 4)
    fail(ErrorCode::SchemaError, "quartics meet a line in 0, 2 or 4 real points");
  std::normal_distribution<double> N(0.0, 1.0);
  const Polynomial q1 = conic(rng, target_a >= 2);
  const Polynomial q2 = conic(rng, target_a == 4);
  Polynomial noise(4);
  noise.for_each_monomial([&](int i, int j, int k, double) { noise.add(i, j, k, kPerturbation * N(rng)); });
  return q1 * q2 + noise;
}

Polynomial random_nodal_cubic(Rng& rng, bool isolated) {
  std::uniform_real_distribution<double> lambda(0.5, 2.0), shift(-0.4, 0.4), tilt(-0.15, 0.15), angle(0.0, 2 * std::numbers::pi);
  Polynomial F(3);
  const double l = isolated ? -lambda(rng) : lambda(rng);
  F.add(0, 2, 1, 1.0);
  F.add(3, 0, 0, -1.0);
  F.add(2, 0, 1, -l);
  const double th = angle(rng), c = std::cos(th), s = std::sin(th);
  Mat3 A;
  A << c, -s, shift(rng), s, c, shift(rng), tilt(rng), tilt(rng), 1.0;
  return F.composed(A);
}

Vec3 random_line(Rng& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  return Vec3(U(rng), U(rng), U(rng));
}

}  // namespace curvelab
