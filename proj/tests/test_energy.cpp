#include <doctest.h>

#include <cmath>
#include <random>

#include "orlicz/energy.hpp"
#include "orlicz/fields.hpp"

using namespace orlicz;

namespace {

const GridDomain& interval() {
  static const GridDomain g = build_grid({{0.0, 1.0}}, {500}, masks::everywhere());
  return g;
}

Integrand two_wells() {
  Integrand f;
  f.name = "two_wells";
  f.evaluate = [](Point, std::span<const double>, std::span<const double> xi) {
    return std::min(std::abs(xi[0] - 1.0), std::abs(xi[0] + 1.0));
  };
  return f;
}

}  // namespace

TEST_CASE("composite and the four energies") {
  const auto& g = interval();
  const auto u = fields::linear(2.0);
  const auto f = integrands::abs_xi();
  const auto c = composite(f, u, g);
  for (double v : c.values()) REQUIRE(v == doctest::Approx(2.0));

  CHECK(norm_energy(phi::power(5.0), f, u, g).value == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(modular_energy(phi::power(2.0), f, u, g).value == doctest::Approx(4.0));
  CHECK(sup_energy(f, u, g).value == doctest::Approx(2.0));
  CHECK(indicator_energy(f, u, g).value == kInf);
  CHECK(indicator_energy(f, fields::linear(0.5), g).value == 0.0);
  CHECK(norm_energy(phi::infinity(), f, u, g).value == doctest::Approx(sup_energy(f, u, g).value));

  auto rough = u;
  rough.weakly_differentiable = false;
  CHECK(norm_energy(phi::power(2.0), f, rough, g).value == kInf);
  CHECK(modular_energy(phi::power(2.0), f, rough, g).value == kInf);
  CHECK(sup_energy(f, rough, g).value == kInf);
  CHECK(indicator_energy(f, rough, g).value == kInf);
}

TEST_CASE("vector gradients in two dimensions") {
  const auto g = build_grid({{0.0, 1.0}, {0.0, 1.0}}, {40, 40}, masks::everywhere());
  auto u = FieldExpr::scalar([](Point x) { return 3.0 * x[0] + 4.0 * x[1]; });
  CHECK(sup_energy(integrands::abs_xi(), u, g).value == doctest::Approx(5.0).epsilon(1e-9));
  const auto f = integrands::affine_max({{1.0, 0.0}, {0.0, -1.0}}, {0.0, 10.0});
  CHECK(sup_energy(f, u, g).value == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("level convexity on sampled segments") {
  std::vector<Vec> xs{{0.5}};
  std::vector<Vec> us{{0.0}};
  std::vector<std::pair<Vec, Vec>> pairs{{{-2.0}, {3.0}}, {{1.0}, {-1.0}}, {{0.1}, {0.2}}};
  const auto theta = default_theta_grid();
  CHECK(theta.size() == 33);
  for (const auto& f : {integrands::abs_xi(), integrands::abs_xi_pow(3.0), integrands::sqrt_abs_xi(),
                        integrands::constant(2.0), integrands::affine_max({{2.0}, {-1.0}}, {0.0, 1.0})}) {
    CAPTURE(f.name);
    CHECK(check_level_convex(f, xs, us, pairs, theta).pass());
  }
  const auto r = check_level_convex(two_wells(), xs, us, pairs, theta);
  REQUIRE_FALSE(r.pass());
  CHECK(r.violations.front().pair_index == 1);
  CHECK(r.violations.front().value > r.violations.front().bound);
}

TEST_CASE("coercivity") {
  std::vector<CoercivitySample> samples;
  for (double xi : {0.0, 0.3, 1.0, 4.0, 100.0}) samples.push_back({{0.5}, {0.0}, {xi}});
  CHECK(check_coercivity(integrands::abs_xi(), 1.0, 1.0, samples).pass());
  CHECK(check_coercivity(integrands::abs_xi_pow(2.0), 1.0, 2.0, samples).pass());
  CHECK(check_coercivity(integrands::sqrt_abs_xi(), 1.0, 0.5, samples).pass());
  const auto r = check_coercivity(integrands::sqrt_abs_xi(), 1.0, 1.0, samples);
  CHECK(r.violations == std::vector<std::size_t>{3, 4});
}

TEST_CASE("discrete Jensen") {
  auto abs = [](std::span<const double> v) { return std::abs(v[0]); };
  const auto r = discrete_jensen_check(abs, DiscreteMeasure(1, {-1.0, 1.0}, {0.5, 0.5}));
  CHECK(r.pass());
  CHECK(r.at_barycenter == 0.0);
  CHECK(r.margin == 1.0);
  auto wells = [](std::span<const double> v) { return std::min(std::abs(v[0] - 1.0), std::abs(v[0] + 1.0)); };
  CHECK_FALSE(discrete_jensen_check(wells, DiscreteMeasure(1, {-1.0, 1.0}, {0.5, 0.5})).pass());
}

TEST_CASE("random level-convex functions are level convex (property)") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> d(0.0, 3.0);
  std::uniform_real_distribution<double> th(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 1 + static_cast<std::size_t>(trial % 4);
    const auto g = random_level_convex(rng, k);
    CAPTURE(g.description);
    for (int s = 0; s < 20; ++s) {
      std::vector<double> a(k), b(k), m(k);
      for (auto& v : a) v = d(rng);
      for (auto& v : b) v = d(rng);
      const double t = th(rng);
      for (std::size_t i = 0; i < k; ++i) m[i] = t * a[i] + (1.0 - t) * b[i];
      const double bound = std::max(g.fn(a), g.fn(b));
      REQUIRE(g.fn(m) <= bound + 1e-12 * std::abs(bound));
    }
  }
}

TEST_CASE("Young-limit probe") {
  const auto& g = interval();
  const auto f = integrands::abs_xi();
  const std::vector<double> ps{1.0, 2.0, 8.0, 50.0, 400.0};

  const auto flat = young_limit_probe(f, fields::linear(3.0), dirac_measures(fields::linear(3.0), g), g, ps);
  for (const auto& row : flat.rows) CHECK(row.value == doctest::Approx(3.0));
  CHECK(flat.double_max == doctest::Approx(3.0));

  // On a probability space the p-means increase with p towards the maximum.
  const auto u = fields::oscillation(fields::linear(), 3.0);
  const auto measures = dirac_measures(u, g);
  CHECK(measures.size() == g.cell_count());
  const auto probe = young_limit_probe(f, u, measures, g, ps);
  for (std::size_t i = 1; i < probe.rows.size(); ++i) CHECK(probe.rows[i].value >= probe.rows[i - 1].value);
  CHECK(probe.double_max == doctest::Approx(ess_sup(composite(f, u, g), g)));
  CHECK(probe.rows.back().value <= probe.double_max);

  // Two-atom measures: the maximum sees both atoms.
  std::vector<DiscreteMeasure> two;
  for (std::size_t c = 0; c < g.cell_count(); ++c) two.emplace_back(1, std::vector<double>{1.0, -4.0}, std::vector<double>{0.9, 0.1});
  const auto p2 = young_limit_probe(f, fields::linear(), two, g, ps);
  CHECK(p2.double_max == doctest::Approx(4.0));
  CHECK(p2.rows.front().value == doctest::Approx(0.9 + 0.4));
}
