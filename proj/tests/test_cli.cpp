#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "orlicz/csv.hpp"
#include "orlicz/kernels.hpp"
#include "specs.hpp"

using namespace orlicz;
using namespace orlicz::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  return dir.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("spec tokens") {
  const auto t = tokenize("power:p=3:extra");
  CHECK(t.name == "power");
  CHECK(t.number("p", 0.0) == 3.0);
  CHECK(t.number("q", 7.0) == 7.0);
  CHECK(t.positional == std::vector<std::string>{"extra"});
  CHECK_THROWS_AS(tokenize(""), Error);
  CHECK_THROWS_AS(tokenize("power:p=abc").number("p", 0.0), Error);
}

TEST_CASE("domain specs") {
  const auto box = parse_domain("box:0,2,0,1:res=20,10");
  CHECK(box.cell_count() == 200);
  CHECK(box.measure() == doctest::Approx(2.0));
  const auto ball = parse_domain("ball:-1,1,-1,1:res=200:r=1");
  CHECK(ball.measure() == doctest::Approx(M_PI).epsilon(1e-2));
  const auto ring = parse_domain("annulus:-1,1,-1,1:res=200:rin=0.5:rout=1");
  CHECK(ring.measure() == doctest::Approx(0.75 * M_PI).epsilon(1e-2));
  CHECK_THROWS_AS(parse_domain("box:0,1,2:res=10"), Error);
  CHECK_THROWS_AS(parse_domain("box:0,1:res=2.5"), Error);
  CHECK_THROWS_AS(parse_domain("disk:0,1"), Error);
}

TEST_CASE("phi, field and integrand specs") {
  const double x[] = {0.5};
  CHECK(parse_phi("power:p=3")(x, 2.0) == doctest::Approx(8.0));
  CHECK(parse_phi("scaled_base:a=3:n=2")(x, 1.0) == doctest::Approx(9.0));
  CHECK(parse_phi("double_phase:p=2:q=4:a=2")(x, 1.0) == doctest::Approx(2.0));
  CHECK(parse_phi("double_phase:p=2:q=4:weight=const:a=2")(x, 1.0) == doctest::Approx(3.0));
  CHECK(parse_phi("variable_exponent:p0=2:slope=2")(x, 2.0) == doctest::Approx(8.0));
  CHECK(parse_phi("infinity")(x, 2.0) == kInf);
  CHECK_THROWS_AS(parse_phi("nope"), Error);
  CHECK_THROWS_AS(parse_phi("variable_exponent:kind=other"), Error);

  const auto g = parse_domain("box:0,1:res=4");
  CHECK(sample(parse_field("const:3"), g).at(2) == 3.0);
  CHECK(sample(parse_field("linear:slope=2"), g).at(0) == doctest::Approx(0.25));
  CHECK(sample(parse_field("clamp:cap=0.5"), g).at(3) == 0.5);
  CHECK_THROWS_AS(parse_field("wiggle"), Error);

  const double xi[] = {-3.0}, u[] = {0.0};
  CHECK(parse_integrand("abs_xi")(x, u, xi) == 3.0);
  CHECK(parse_integrand("abs_xi_pow:k=2")(x, u, xi) == doctest::Approx(9.0));
  CHECK(parse_integrand("affine_max:rows=1/-2:offsets=0,1")(x, u, xi) == doctest::Approx(7.0));
  CHECK_THROWS_AS(parse_integrand("affine_max"), Error);
}

TEST_CASE("n lists") {
  CHECK(parse_n_list("1..128") == std::vector<long>{1, 2, 4, 8, 16, 32, 64, 128});
  CHECK(parse_n_list("3..20") == std::vector<long>{3, 6, 12});
  CHECK(parse_n_list("5,1,200") == std::vector<long>{5, 1, 200});
  CHECK_THROWS_AS(parse_n_list("0..4"), Error);
  CHECK_THROWS_AS(parse_n_list("1.5"), Error);
}

TEST_CASE("norm command") {
  auto r = call({"norm", "--phi", "power:p=2", "--field", "const:1", "--domain", "box:0,1:res=1000"});
  CHECK(r.code == kOk);
  CHECK(r.out == "1.0\n");
  r = call({"norm", "--phi", "power:p=2", "--field", "linear", "--domain", "box:0,1:res=1000"});
  CHECK(csv::parse_number(r.out.substr(0, r.out.size() - 1)) == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-6));

  const auto dir = temp_dir("orlicz_cli_norm");
  std::filesystem::create_directories(dir);
  const auto path = dir + "/norm.csv";
  r = call({"norm", "--phi", "power:p=2", "--field", "const:1", "--out", path});
  CHECK(r.code == kOk);
  CHECK(slurp(path).rfind("field,phi,modular,norm,iterations,tolerance_met\nconst:1,", 0) == 0);
  std::filesystem::remove_all(dir);

  CHECK(call({"norm", "--phi", "power:p=2", "--rel-tol", "0.5"}).code == kConfigError);
  CHECK(call({"norm", "--phi", "bogus"}).code == kConfigError);
  CHECK(call({"norm", "--field", "const:1", "--out", "/nonexistent/dir/x.csv"}).code == kConfigError);
}

TEST_CASE("other operations") {
  auto r = call({"lp-norm", "--field", "linear:slope=3", "--p", "inf", "--domain", "box:0,1:res=10"});
  CHECK(r.code == kOk);
  CHECK(csv::parse_number(r.out.substr(0, r.out.size() - 1)) == doctest::Approx(2.85));
  r = call({"modular", "--phi", "power:p=2", "--field", "const:2"});
  CHECK(r.out == "4\n");
  r = call({"ainc", "--phi", "power:p=2", "--p", "3"});
  CHECK(r.code == kOk);
  CHECK(csv::parse_number(r.out.substr(12, r.out.find('\n') - 12)) == doctest::Approx(1000.0).epsilon(1e-12));
  r = call({"axioms", "--phi", "power:p=2"});
  CHECK(r.code == kOk);
  // (1e-8 t) stays below the divergence threshold on the sampled t range.
  r = call({"axioms", "--phi", "scaled_base:a=1e-8:n=1"});
  CHECK(r.code == kAssertionFailed);
  r = call({"sobolev", "--phi", "power:p=2", "--field", "linear"});
  CHECK(r.out.find("norm 1.1547005") != std::string::npos);
}

TEST_CASE("usage errors and help") {
  CHECK(call({}).code == kConfigError);
  CHECK(call({"frobnicate"}).code == kConfigError);
  CHECK(call({"experiment", "unknown-id"}).code == kConfigError);
  CHECK(call({"experiment", "norm-convergence", "--tol", "0.5"}).code == kConfigError);
  CHECK(call({"norm", "--no-such-flag"}).code == kConfigError);
  const auto help = call({"experiment", "--help"});
  CHECK(help.code == kOk);
  CHECK(help.out.find("Reference ids:") != std::string::npos);
  CHECK(call({"--help"}).code == kOk);
}

TEST_CASE("experiment command writes CSV") {
  const auto dir = temp_dir("orlicz_cli_exp");
  auto r = call({"experiment", "norm-convergence", "--phi-family", "power", "--field", "linear", "--n", "1..128",
                 "--out", dir});
  CHECK(r.code == kOk);
  const auto text = slurp(dir + "/norm-convergence.csv");
  const auto last = text.substr(text.rfind('\n', text.size() - 2) + 1);
  const double err = csv::parse_number(last.substr(last.rfind(',') + 1, last.size() - last.rfind(',') - 2));
  CHECK(err < 0.05);

  r = call({"experiment", "gamma-modular", "--phi-family", "power", "--out", dir});
  CHECK(r.code == kOk);
  CHECK(r.out.find("informational") != std::string::npos);

  // Same config and seed: byte-identical files.
  call({"experiment", "embedding-sharpness", "--seed", "5", "--out", dir});
  const auto first = slurp(dir + "/embedding-sharpness.csv");
  call({"experiment", "embedding-sharpness", "--seed", "5", "--out", dir});
  CHECK(slurp(dir + "/embedding-sharpness.csv") == first);
  std::filesystem::remove_all(dir);
}

TEST_CASE("config file and thread settings") {
  const auto dir = temp_dir("orlicz_cli_cfg");
  std::filesystem::create_directories(dir);
  const auto cfg = dir + "/run.ini";
  {
    std::ofstream out(cfg);
    out << "[norm]\nphi=\"power:p=2\"\nfield=\"const:2\"\ndomain=\"box:0,1:res=100\"\n";
  }
  const int saved = kernels::thread_limit();
  auto r = call({"--config", cfg, "--threads", "2", "norm"});
  CHECK(r.code == kOk);
  CHECK(r.out == "2.0\n");
  CHECK(kernels::thread_limit() == 2);

  setenv(kThreadsEnv, "3", 1);
  CHECK(apply_thread_env());
  CHECK(kernels::thread_limit() == 3);
  setenv(kThreadsEnv, "many", 1);
  CHECK_FALSE(apply_thread_env());
  unsetenv(kThreadsEnv);
  kernels::set_thread_limit(saved);
  std::filesystem::remove_all(dir);
}

TEST_CASE("suite writes every table and the index") {
  const auto dir = temp_dir("orlicz_cli_suite");
  const auto r = call({"suite", "--out", dir});
  CHECK(r.code == kOk);
  const auto index = slurp(dir + "/index.csv");
  for (const auto& id : experiment_ids()) CHECK(index.find("\n" + id + ",") != std::string::npos);
  CHECK(std::filesystem::exists(dir + "/gamma-norm.liminf.csv"));
  CHECK(std::filesystem::exists(dir + "/nonuniform-ainc.constant.csv"));
  std::filesystem::remove_all(dir);
}
