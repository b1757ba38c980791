#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "orlicz/grid.hpp"
#include "orlicz/phi.hpp"

namespace orlicz::testing {

// Piecewise constant along x0 with 1..12 random levels in [lo, hi].
inline SampledField random_steps(const GridDomain& domain, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_int_distribution<int> pieces(1, 12);
  std::uniform_real_distribution<double> level(lo, hi);
  const int m = pieces(rng);
  std::vector<double> levels(static_cast<std::size_t>(m));
  for (double& l : levels) l = level(rng);
  const auto box = domain.box().front();
  std::vector<double> v(domain.cell_count());
  for (std::size_t c = 0; c < v.size(); ++c) {
    const double s = (domain.center(c)[0] - box.lo) / (box.hi - box.lo);
    v[c] = levels[std::min(static_cast<std::size_t>(s * m), levels.size() - 1)];
  }
  return SampledField::scalar(std::move(v));
}

// Independent uniform values per cell.
inline SampledField random_noise(const GridDomain& domain, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(domain.cell_count());
  for (double& x : v) x = d(rng);
  return SampledField::scalar(std::move(v));
}

// Random smooth-ish field a + b sin(k x0 + phase) + c x0, rescaled by 10^s.
inline SampledField random_wave(const GridDomain& domain, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double a = u(rng), b = u(rng), c = u(rng), k = 1.0 + 9.0 * std::abs(u(rng)), phase = 3.0 * u(rng);
  const double scale = std::pow(10.0, u(rng));
  std::vector<double> v(domain.cell_count());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = domain.center(i)[0];
    v[i] = scale * (a + b * std::sin(k * x + phase) + c * x);
  }
  return SampledField::scalar(std::move(v));
}

inline SampledField random_field(const GridDomain& domain, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double scale = std::pow(10.0, u(rng));
  switch (kind(rng)) {
    case 0: return random_steps(domain, rng, 0.0, scale);
    case 1: return random_noise(domain, rng, -scale, scale);
    default: return random_wave(domain, rng);
  }
}

}  // namespace orlicz::testing
