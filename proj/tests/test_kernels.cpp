#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "orlicz/kernels.hpp"

using namespace orlicz;

namespace {

std::vector<double> random_values(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d(0.0, 10.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

struct ThreadLimit {
  int saved = kernels::thread_limit();
  explicit ThreadLimit(int n) { kernels::set_thread_limit(n); }
  ~ThreadLimit() { kernels::set_thread_limit(saved); }
};

}  // namespace

TEST_CASE("parallel kernels agree with the serial reference") {
  for (std::size_t n : {0u, 1u, 7u, 2048u, 4095u, 4096u, 10001u, 100000u}) {
    const auto v = random_values(n, static_cast<unsigned>(n) + 1);
    CAPTURE(n);
    CHECK(kernels::parallel::sum(v) == doctest::Approx(kernels::serial::sum(v)).epsilon(1e-12));
    CHECK(kernels::parallel::max(v) == kernels::serial::max(v));
    CHECK(kernels::parallel::min(v) == kernels::serial::min(v));
    const double a = kernels::parallel::log_sum_exp(v), b = kernels::serial::log_sum_exp(v);
    if (n == 0)
      CHECK(a == -kInf);
    else
      CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("blocked sum is bitwise independent of the thread count") {
  const auto v = random_values(123457, 5);
  double reference;
  {
    ThreadLimit one(1);
    reference = kernels::parallel::sum(v);
  }
  for (int t : {2, 3, 4}) {
    ThreadLimit limit(t);
    CHECK(kernels::parallel::sum(v) == reference);
    CHECK(kernels::parallel::log_sum_exp(v) == kernels::parallel::log_sum_exp(v));
  }
}

TEST_CASE("reductions handle infinities") {
  std::vector<double> v(9000, 1.0);
  v[4500] = kInf;
  CHECK(kernels::sum(v) == kInf);
  CHECK(kernels::max(v) == kInf);
  CHECK(kernels::log_sum_exp(v) == kInf);
  std::vector<double> logs(9000, -kInf);
  CHECK(kernels::log_sum_exp(logs) == -kInf);
  logs[17] = 0.0;
  CHECK(kernels::log_sum_exp(logs) == 0.0);
}

TEST_CASE("log_sum_exp does not overflow") {
  std::vector<double> v(5000, 800.0);
  CHECK(kernels::log_sum_exp(v) == doctest::Approx(800.0 + std::log(5000.0)));
}

TEST_CASE("map_cells fills every cell") {
  ThreadLimit limit(3);
  std::vector<double> out(20000);
  kernels::map_cells(out.size(), out, [](std::size_t i) { return 2.0 * static_cast<double>(i); });
  for (std::size_t i = 0; i < out.size(); ++i) REQUIRE(out[i] == 2.0 * static_cast<double>(i));
}

TEST_CASE("log_add and safe_log") {
  CHECK(log_add(-kInf, -kInf) == -kInf);
  CHECK(log_add(-kInf, 1.5) == 1.5);
  CHECK(log_add(kInf, 0.0) == kInf);
  CHECK(log_add(0.0, 0.0) == doctest::Approx(std::log(2.0)));
  CHECK(safe_log(0.0) == -kInf);
  CHECK(safe_log(kInf) == kInf);
}
