#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "rednoise/commands.hpp"
#include "rednoise/noise_models.hpp"
#include "rednoise/spectral.hpp"

using namespace rednoise;
using namespace rednoise::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::temp_directory_path() / "rednoise_cli_test";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

RunConfig generate(std::string model, Eigen::Index n, double dt, std::uint64_t seed,
                   fs::path out) {
  RunConfig c;
  c.command = Command::generate;
  c.model = std::move(model);
  c.n = n;
  c.dt = dt;
  c.seed = Seed{seed};
  c.output = std::move(out);
  return c;
}

double column_variance(const fs::path& csv) {
  const auto s = io::read_series(csv, io::Format::csv);
  const double m = s.values.mean();
  return (s.values.array() - m).square().sum() / static_cast<double>(s.values.size() - 1);
}

// Exit status of the command-line tool, or -1 when it is not available.
int shell(const std::string& args) {
  const char* exe = std::getenv("REDNOISE_CLI");
  if (exe == nullptr) return -1;
  const int status = std::system((std::string(exe) + " " + args + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("generate: white noise file") {
  fs::create_directories(kDir);
  const Outcome o = run(generate("model=white", 1000, 1.0, 7, kDir / "w.csv"));
  REQUIRE(o.exit_code == 0);
  REQUIRE(o.lines.size() == 1);
  CHECK(o.lines[0].find("n=1000") != std::string::npos);
  CHECK(o.lines[0].find("variance=") != std::string::npos);
  const auto s = io::read_series(kDir / "w.csv", io::Format::csv);
  CHECK(s.values.size() == 1000);
  CHECK(column_variance(kDir / "w.csv") == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("generate: red noise variance follows the left-endpoint rule") {
  fs::create_directories(kDir);
  const Outcome o =
      run(generate("model=red theta=0.1", 2'000'000, 0.1, 7, kDir / "r.f64"));
  REQUIRE(o.exit_code == 0);
  RunConfig c = generate("model=red theta=0.1", 2'000'000, 0.1, 7, kDir / "r.f64");
  c.format = io::Format::f64le;
  REQUIRE(run(c).exit_code == 0);
  const auto s = io::read_series(kDir / "r.f64", io::Format::f64le);
  const double m = s.values.mean();
  const double var = (s.values.array() - m).square().mean();
  CHECK(var == doctest::Approx(0.05).epsilon(0.03));
}

TEST_CASE("generate: systems") {
  fs::create_directories(kDir);
  Outcome d = run(generate("model=discrete psi=0.8 phi=0.9", 100, 1.0, 1, kDir / "d.csv"));
  CHECK(d.exit_code == 0);
  Outcome c = run(generate("model=continuous lambda=0.223 theta=0.105 subsample=10", 100, 0.1, 1,
                           kDir / "c.csv"));
  CHECK(c.exit_code == 0);
  const auto s = io::read_series(kDir / "c.csv", io::Format::csv);
  CHECK(*s.dt == doctest::Approx(1.0));
  Outcome warn = run(generate("model=continuous lambda=1 theta=0.1", 10, 0.1, 1, kDir / "c2.csv"));
  CHECK(warn.exit_code == 0);
  CHECK(warn.lines.front().rfind("warning:", 0) == 0);
  CHECK(run(generate("model=discrete psi=0.8 phi=0.9", 100, 0.5, 1, kDir / "d.csv")).exit_code == 2);
  CHECK(run(generate("model=continuous lambda=0.2", 100, 0.1, 1, kDir / "d.csv")).exit_code == 2);
}

TEST_CASE("invalid input exits with code 2 and a one-line reason") {
  for (const RunConfig& c :
       {generate("model=bogus", 10, 1.0, 1, kDir / "x.csv"),
        generate("model=white", 0, 1.0, 1, kDir / "x.csv"),
        generate("model=white", 10, -1.0, 1, kDir / "x.csv"),
        generate("model=ar1 phi=0.9", 10, 0.5, 1, kDir / "x.csv"),
        generate("model=white", 10, 1.0, 1, "")}) {
    const Outcome o = run(c);
    CHECK(o.exit_code == 2);
    REQUIRE(o.lines.size() == 1);
    CHECK(o.lines[0].rfind("error: ", 0) == 0);
  }
}

TEST_CASE("every command is a pure function of flags and seed") {
  fs::create_directories(kDir);
  REQUIRE(run(generate("model=mixed theta=0.1 gamma=0.5", 5000, 0.1, 3, kDir / "m1.csv")).exit_code == 0);
  REQUIRE(run(generate("model=mixed theta=0.1 gamma=0.5", 5000, 0.1, 3, kDir / "m2.csv")).exit_code == 0);
  CHECK(slurp(kDir / "m1.csv") == slurp(kDir / "m2.csv"));
  REQUIRE(run(generate("model=mixed theta=0.1 gamma=0.5", 5000, 0.1, 4, kDir / "m3.csv")).exit_code == 0);
  CHECK(slurp(kDir / "m1.csv") != slurp(kDir / "m3.csv"));

  for (const char* name : {"p1.csv", "p2.csv"}) {
    RunConfig c;
    c.command = Command::psd;
    c.input = kDir / "m1.csv";
    c.band_width = 10;
    c.output = kDir / name;
    REQUIRE(run(c).exit_code == 0);
  }
  CHECK(slurp(kDir / "p1.csv") == slurp(kDir / "p2.csv"));

  for (const char* name : {"a1.csv", "a2.csv"}) {
    RunConfig c;
    c.command = Command::acf;
    c.input = kDir / "m1.csv";
    c.max_lag = 5;
    c.output = kDir / name;
    REQUIRE(run(c).exit_code == 0);
  }
  CHECK(slurp(kDir / "a1.csv") == slurp(kDir / "a2.csv"));

  for (const char* name : {"t1.csv", "t2.csv"}) {
    RunConfig c;
    c.command = Command::theorem;
    c.replicas = 32;
    c.horizon = 200;
    c.output = kDir / name;
    CHECK(run(c).exit_code == 0);
  }
  CHECK(slurp(kDir / "t1.csv") == slurp(kDir / "t2.csv"));

  for (const char* name : {"f2a", "f2b"}) {
    RunConfig c;
    c.command = Command::fig2;
    c.n = 20'000;
    c.output = kDir / name;
    CHECK(run(c).exit_code != 2);
  }
  CHECK(slurp(kDir / "f2a" / "fig2_acf_continuous.csv") ==
        slurp(kDir / "f2b" / "fig2_acf_continuous.csv"));
  CHECK(slurp(kDir / "f2a" / "fig2_acf_discrete.csv") ==
        slurp(kDir / "f2b" / "fig2_acf_discrete.csv"));
}

TEST_CASE("psd, acf and slope subcommands") {
  fs::create_directories(kDir);
  REQUIRE(run(generate("model=white", 4096, 0.5, 9, kDir / "in.csv")).exit_code == 0);
  RunConfig p;
  p.command = Command::psd;
  p.input = kDir / "in.csv";
  p.band_width = 16;
  p.output = kDir / "psd.csv";
  const Outcome po = run(p);
  REQUIRE(po.exit_code == 0);
  CHECK(po.lines[0].find("bands=128") != std::string::npos);
  CHECK(slurp(kDir / "psd.csv").rfind("omega,power\n", 0) == 0);

  RunConfig a;
  a.command = Command::acf;
  a.input = kDir / "in.csv";
  a.max_lag = 500;
  a.output = kDir / "acf.csv";
  CHECK(run(a).exit_code == 2);  // max_lag must stay below length / 10
  a.max_lag = 3;
  REQUIRE(run(a).exit_code == 0);
  CHECK(slurp(kDir / "acf.csv").rfind("lag,value\n0,1.0000000000000000e+00\n", 0) == 0);

  RunConfig s;
  s.command = Command::slope;
  s.input = kDir / "in.csv";
  s.band_width = 8;
  s.omega_min = 0.1;
  s.omega_max = 6.0;
  const Outcome so = run(s);
  REQUIRE(so.exit_code == 0);
  CHECK(so.lines[0].rfind("slope=", 0) == 0);
}

TEST_CASE("fig1: band count and output files") {
  RunConfig c;
  c.command = Command::fig1;
  c.n = 200'000;
  c.band_width = 10;
  c.output = kDir / "fig1";
  const Fig1Result r = cmd_fig1(c);
  REQUIRE(r.entries.size() == 4);
  for (const auto& e : r.entries) CHECK(e.spectrum.powers.size() == 10'000);
  for (const char* f : {"fig1_white.csv", "fig1_red.csv", "fig1_du.csv", "fig1_mixed.csv"})
    CHECK(fs::exists(c.output / f));
  CHECK(slurp(c.output / "fig1_red.csv").rfind("omega,empirical,theoretical\n", 0) == 0);
  CHECK(r.tolerance == 0.10);
}

TEST_CASE("fig2: parameter correspondence and lag zero") {
  RunConfig c;
  c.command = Command::fig2;
  c.n = 200'000;
  c.output = kDir / "fig2";
  const Fig2Result r = cmd_fig2(c);
  CHECK(r.outcome.lines.front().find("lambda=0.223144 theta=0.105361") != std::string::npos);
  CHECK(r.discrete.values[0] == 1.0);
  CHECK(r.continuous.values[0] == 1.0);
  CHECK(r.theory[0] == 1.0);
  CHECK(r.tolerance == 0.01);
  RunConfig q = c;
  q.quick = true;
  q.n.reset();
  CHECK(cmd_fig2(q).tolerance == 0.03);
}

TEST_CASE("theorem: exit code reflects the assertions") {
  RunConfig c;
  c.command = Command::theorem;
  c.output = kDir / "th.csv";
  c.beta = 1.0;
  CHECK(run(c).exit_code == 0);
  CHECK(slurp(c.output).rfind("omega,empirical,theoretical,plateau_target\n", 0) == 0);
  c.beta = 0.0;
  CHECK(run(c).exit_code == 0);
  c.beta = 0.5;
  c.target = 0.0;
  const Outcome o = run(c);
  CHECK(o.exit_code == 1);
  REQUIRE(o.lines.size() == 1);
  CHECK(o.lines[0].rfind("FAIL theorem", 0) == 0);
  c.replicas = 8;
  CHECK(run(c).exit_code == 2);
}

TEST_CASE("halving n doubles the variance of the mean band power") {
  // Mean over all bands of a seed's spectrum, variance taken across seeds.
  const Eigen::Index bw = 16;
  const int seeds = 1000;
  auto spread = [&](Eigen::Index n) {
    Eigen::VectorXd means(seeds);
    for (int s = 0; s < seeds; ++s) {
      GaussianStream g(Seed{static_cast<std::uint64_t>(1000 + s)});
      means[s] = band_average(periodogram(increments(model::White{}, 1.0, n, g)), bw).powers.mean();
    }
    return (means.array() - means.mean()).square().sum() / (seeds - 1);
  };
  const double ratio = spread(1 << 13) / spread(1 << 14);
  INFO("variance ratio " << ratio);
  CHECK(ratio >= 1.5);
  CHECK(ratio <= 2.5);
}

TEST_CASE("command-line tool") {
  if (std::getenv("REDNOISE_CLI") == nullptr) return;
  fs::create_directories(kDir);
  const std::string a = (kDir / "cli_a.csv").string();
  const std::string b = (kDir / "cli_b.csv").string();
  CHECK(shell("generate --model \"model=white\" --n 1000 --dt 1 --seed 7 --out " + a) == 0);
  CHECK(shell("generate --model \"model=white\" --n 1000 --dt 1 --seed 7 --out " + b) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(shell("generate --model \"model=bogus\" --n 10 --out " + a) == 2);
  CHECK(shell("generate --model \"model=white\" --out " + a) != 0);
  CHECK(shell("psd --in " + a + " --band-width 10 --out " + (kDir / "cli_p.csv").string()) == 0);
  CHECK(shell("theorem --beta 0.5 --target 0 --replicas 32 --T 200 --out " +
              (kDir / "cli_t.csv").string()) == 1);
  CHECK(shell("theorem --beta 0.5 --replicas 32 --T 200 --out " + (kDir / "cli_t.csv").string()) == 0);
}
