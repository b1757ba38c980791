#include <doctest.h>

#include <cmath>
#include <random>

#include "orlicz/fields.hpp"
#include "orlicz/norm.hpp"
#include "support.hpp"

using namespace orlicz;

namespace {

const GridDomain& interval() {
  static const GridDomain g = build_grid({{0.0, 1.0}}, {1000}, masks::everywhere());
  return g;
}

std::vector<PhiFunction> families() {
  return {phi::power(1.0),
          phi::power(3.0),
          phi::scaled_power(2.0, 0.25),
          phi::double_phase(2.0, 5.0, [](Point x) { return x[0]; }),
          phi::variable_exponent([](Point x) { return 1.0 + 3.0 * x[0]; }),
          phi::infinity(),
          phi::scaled_infinity(3.0),
          phi::linear_plus_infinity(),
          phi::power(150.0)};
}

}  // namespace

TEST_CASE("modular of simple fields") {
  const auto& g = interval();
  CHECK(modular(phi::power(2.0), sample(fields::linear(), g), g) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  CHECK(modular(phi::infinity(), SampledField::constant(g.cell_count(), 1.0), g) == 0.0);
  CHECK(modular(phi::infinity(), SampledField::constant(g.cell_count(), 1.5), g) == kInf);
  // Vector fields enter through their magnitude.
  SampledField v(g.cell_count(), 2, std::vector<double>(2 * g.cell_count(), 0.6));
  CHECK(modular(phi::power(2.0), v, g) == doctest::Approx(0.72));
  CHECK(log_modular(phi::power(400.0), SampledField::constant(g.cell_count(), 10.0), g) ==
        doctest::Approx(400.0 * std::log(10.0)));
}

TEST_CASE("Luxemburg norm closed forms") {
  const auto& g = interval();
  const auto c = SampledField::constant(g.cell_count(), 2.0);
  // t^2 + t^4: s^2 + s - 1 = 0 with s = (c / lambda)^2.
  const double s = (std::sqrt(5.0) - 1.0) / 2.0;
  CHECK(luxemburg_norm(phi::double_phase(2.0, 4.0, [](Point) { return 1.0; }), c, g).value ==
        doctest::Approx(2.0 / std::sqrt(s)).epsilon(1e-8));
  CHECK(luxemburg_norm(phi::scaled_power(3.0, 8.0), c, g).value == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(luxemburg_norm(phi::scaled_infinity(3.0), c, g).value == doctest::Approx(6.0));
  CHECK(luxemburg_norm(phi::linear_plus_infinity(), c, g).value == doctest::Approx(2.0).epsilon(1e-8));
  // For u = x the modular is 1/lambda - 1 + lambda/4 <= 1 as soon as the indicator part allows it.
  CHECK(luxemburg_norm(phi::linear_plus_infinity(), sample(fields::linear(), g), g).value ==
        doctest::Approx(0.9995).epsilon(1e-8));
  for (double p : {1.5, 4.0, 30.0})
    CHECK(luxemburg_norm(phi::power(p), sample(fields::linear(), g), g).value ==
          doctest::Approx(std::pow(p + 1.0, -1.0 / p)).epsilon(1e-5));
}

TEST_CASE("Luxemburg norm edge cases") {
  const auto& g = interval();
  const auto zero = SampledField::constant(g.cell_count(), 0.0);
  for (const auto& phi : families()) CHECK(luxemburg_norm(phi, zero, g).value == 0.0);
  const auto inf = SampledField::constant(g.cell_count(), kInf);
  CHECK(luxemburg_norm(phi::power(2.0), inf, g).value == kInf);
  CHECK_THROWS_AS(luxemburg_norm(phi::power(2.0), zero, g, 0.0), Error);
  CHECK_THROWS_AS(luxemburg_norm(phi::power(2.0), zero, g, 0.1), Error);

  const auto r = luxemburg_norm(phi::power(2.0), SampledField::constant(g.cell_count(), 3.0), g, 1e-10);
  CHECK(r.tolerance_met);
  CHECK(r.lo <= r.value);
  CHECK(r.value <= r.hi);
  CHECK(r.hi - r.lo <= 1e-10 * r.lo);
}

TEST_CASE("bisection bracket expansion") {
  // rho(f/lambda) = (s/lambda)^2 with s far from the initial scale.
  auto root = [](double s) {
    return detail::bisect_norm([s](double lambda) { return 2.0 * std::log(s / lambda); }, 1.0, 1e-9).value;
  };
  for (double s : {1e-12, 1e-3, 1.0, 1e5, 1e12}) CHECK(std::abs(root(s) / s - 1.0) <= 1e-8);
  // The bracket gives up after 60 doublings or halvings of the seed scale.
  CHECK(root(1e40) == kInf);
  CHECK(root(1e-40) == 0.0);
  CHECK(detail::bisect_norm([](double) { return kInf; }, 1.0, 1e-8).value == kInf);
  CHECK(detail::bisect_norm([](double) { return -kInf; }, 1.0, 1e-8).value == 0.0);
}

TEST_CASE("norms are homogeneous and monotone (property)") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> k(0.05, 20.0), shrink(0.0, 1.0);
  const auto& g = interval();
  for (const auto& phi : families()) {
    for (int i = 0; i < 10; ++i) {
      const auto f = testing::random_field(g, rng);
      const double a = k(rng);
      const double nf = luxemburg_norm(phi, f, g, 1e-10).value;
      CAPTURE(phi.name());
      CHECK(luxemburg_norm(phi, f.scaled(a), g, 1e-10).value == doctest::Approx(a * nf).epsilon(1e-8));
      std::vector<double> smaller(f.values().begin(), f.values().end());
      for (double& v : smaller) v *= shrink(rng);
      CHECK(luxemburg_norm(phi, SampledField::scalar(smaller), g, 1e-10).value <= nf * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("unit-ball implications and the modular bound (property)") {
  std::mt19937_64 rng(8);
  const auto& g = interval();
  for (const auto& phi : families()) {
    for (int i = 0; i < 10; ++i) {
      const auto f = testing::random_field(g, rng);
      CAPTURE(phi.name());
      CHECK(unit_ball_check(phi, f, g).pass());
    }
  }
  for (double p : {1.0, 2.0, 7.0}) {
    for (int i = 0; i < 10; ++i) {
      const auto b = norm_from_modular_bound(phi::power(p), testing::random_field(g, rng), p, 1.0, g);
      CHECK(b.holds);
    }
  }
}

TEST_CASE("Lebesgue norms") {
  const auto& g = interval();
  const auto u = sample(fields::linear(), g);
  CHECK(lp_norm(u, 2.0, g) == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-6));
  CHECK(lp_norm(u, kInf, g) == doctest::Approx(0.9995));
  CHECK(lp_norm(SampledField::constant(g.cell_count(), 1e200), 4.0, g) == doctest::Approx(1e200));
  CHECK(lp_norm(SampledField::constant(g.cell_count(), 0.0), 3.0, g) == 0.0);
  CHECK_THROWS_AS(lp_norm(u, 0.5, g), Error);
}

TEST_CASE("embedding constant and check") {
  CHECK(embedding_constant(1.0, 1.0, 1.0, 2.0) == doctest::Approx(2.0));
  CHECK(embedding_constant(2.0, 3.0, 0.5, 1.0) == doctest::Approx(14.0));
  CHECK_THROWS_AS(embedding_constant(0.5, 1.0, 1.0, 2.0), Error);

  std::mt19937_64 rng(9);
  const auto& g = interval();
  std::vector<SampledField> fs;
  for (int i = 0; i < 10; ++i) fs.push_back(testing::random_field(g, rng));
  const auto ok = embedding_check(phi::double_phase(2.0, 3.0, [](Point x) { return x[0]; }), 2.0, 1.0, 2.0, fs, g);
  CHECK(ok.hypotheses_hold);
  CHECK(ok.pass());
  CHECK(ok.cases.size() == fs.size());

  const auto anchors = embedding_check(phi::scaled_power(2.0, 5.0), 2.0, 1.0, 2.0, fs, g);
  CHECK_FALSE(anchors.hypotheses_hold);
  CHECK_FALSE(anchors.pass());
  // t^2 is not aInc(3) with L = 1.
  const auto growth = embedding_check(phi::power(2.0), 3.0, 1.0, 1.0, fs, g);
  CHECK_FALSE(growth.hypotheses_hold);
}

TEST_CASE("Sobolev modular and norm") {
  const auto& g = interval();
  CHECK(sobolev_modular(phi::power(2.0), fields::linear(), g) == doctest::Approx(4.0 / 3.0).epsilon(1e-6));
  CHECK(sobolev_norm(phi::power(2.0), fields::linear(), g).value ==
        doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-6));
  auto rough = fields::linear();
  rough.weakly_differentiable = false;
  CHECK(sobolev_modular(phi::power(2.0), rough, g) == kInf);
  CHECK(sobolev_norm(phi::power(2.0), rough, g).value == kInf);
}

TEST_CASE("norm record CSV") {
  NormResult r;
  r.value = 0.5;
  r.iterations = 31;
  r.tolerance_met = true;
  const auto text = format_norm_records({{"a,b", "power(p=2)", 0.25, r}});
  CHECK(text == "field,phi,modular,norm,iterations,tolerance_met\n\"a,b\",power(p=2),0.25,0.5,31,true\n");
}
