// Command-line front end: noise generation, spectral/ACF analysis and the
// figure and theorem reproduction runs.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "rednoise/commands.hpp"

using rednoise::cli::Command;
using rednoise::cli::RunConfig;

namespace {

struct Flags {
  std::string format = "csv";
  std::string input_format = "csv";
  std::string mode = "correlation";
  std::uint64_t seed = 0;
  Eigen::Index n = 0;
  double dt = 0.0;
  Eigen::Index band_width = 0;
  double target = 0.0;
};

void add_common(CLI::App* sub, RunConfig& rc, Flags& f) {
  sub->add_option("--seed", f.seed, "Root seed (decimal)");
  sub->add_option("--out", rc.output, "Output file or directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlated-noise generation and spectral analysis"};
  app.require_subcommand(1);

  RunConfig rc;
  Flags f;
  std::map<CLI::App*, Command> commands;

  auto* gen = app.add_subcommand("generate", "Write noise increments or a simulated path");
  add_common(gen, rc, f);
  gen->add_option("--model", rc.model,
                  "Model spec, e.g. \"model=red theta=0.1\" or "
                  "\"model=continuous lambda=0.22 theta=0.1 subsample=10\"")
      ->required();
  gen->add_option("--n", f.n, "Number of values")->required();
  gen->add_option("--dt", f.dt, "Time step (fine step for model=continuous)");
  gen->add_option("--format", f.format, "csv|f64le")->check(CLI::IsMember({"csv", "f64le"}));
  commands[gen] = Command::generate;

  auto* psd = app.add_subcommand("psd", "Band-averaged periodogram of an increment file");
  add_common(psd, rc, f);
  psd->add_option("--in", rc.input, "Input file")->required();
  psd->add_option("--in-format", f.input_format, "csv|f64le")->check(CLI::IsMember({"csv", "f64le"}));
  psd->add_option("--dt", f.dt, "Time step (required for f64le input)");
  psd->add_option("--band-width", f.band_width, "Raw frequencies per band");
  commands[psd] = Command::psd;

  auto* acf = app.add_subcommand("acf", "Empirical autocovariance/autocorrelation of a path");
  add_common(acf, rc, f);
  acf->add_option("--in", rc.input, "Input file")->required();
  acf->add_option("--in-format", f.input_format, "csv|f64le")->check(CLI::IsMember({"csv", "f64le"}));
  acf->add_option("--max-lag", rc.max_lag, "Largest lag");
  acf->add_option("--mode", f.mode, "covariance|correlation")
      ->check(CLI::IsMember({"covariance", "correlation"}));
  commands[acf] = Command::acf;

  auto* slope = app.add_subcommand("slope", "Log-log spectral slope of an increment file");
  add_common(slope, rc, f);
  slope->add_option("--in", rc.input, "Input file")->required();
  slope->add_option("--in-format", f.input_format, "csv|f64le")->check(CLI::IsMember({"csv", "f64le"}));
  slope->add_option("--dt", f.dt, "Time step (required for f64le input)");
  slope->add_option("--band-width", f.band_width, "Raw frequencies per band");
  slope->add_option("--omega-min", rc.omega_min, "Lower end of the fit range");
  slope->add_option("--omega-max", rc.omega_max, "Upper end of the fit range");
  commands[slope] = Command::slope;

  auto* fig1 = app.add_subcommand("fig1", "PSDs of dW, U dt, dU and gamma U dt + dW");
  add_common(fig1, rc, f);
  fig1->add_option("--theta", rc.theta, "OU rate");
  fig1->add_option("--gamma", rc.gamma, "Mixed-model drift weight");
  fig1->add_option("--n", f.n, "Samples per model (default 2e7, quick 2^21)");
  fig1->add_option("--dt", f.dt, "Time step (default 0.1)");
  fig1->add_option("--band-width", f.band_width, "Raw frequencies per band (default 1000)");
  fig1->add_flag("--quick", rc.quick, "Desk-scale run with loosened tolerance");
  commands[fig1] = Command::fig1;

  auto* fig2 = app.add_subcommand("fig2", "ACFs of the discrete and continuous restoring systems");
  add_common(fig2, rc, f);
  fig2->add_option("--psi", rc.psi, "Discrete restoring coefficient");
  fig2->add_option("--phi", rc.phi, "Discrete noise AR(1) coefficient");
  fig2->add_option("--sigma", rc.sigma, "Noise amplitude");
  fig2->add_option("--n", f.n, "Path length (default 2e7, quick 2e6)");
  fig2->add_option("--dt", f.dt, "Fine integration step (default 0.1)");
  fig2->add_option("--subsample", rc.subsample, "Fine steps per output step (default 10)");
  fig2->add_option("--max-lag", rc.max_lag, "Largest lag (default 20)");
  fig2->add_flag("--quick", rc.quick, "Desk-scale run with loosened tolerance");
  commands[fig2] = Command::fig2;

  auto* thm = app.add_subcommand("theorem", "High-frequency plateau of alpha dt + beta dW");
  add_common(thm, rc, f);
  thm->add_option("--theta", rc.theta, "OU rate of alpha");
  thm->add_option("--beta", rc.beta, "Martingale weight");
  thm->add_option("--T", rc.horizon, "Horizon per replica (default 1e3)");
  thm->add_option("--dt", f.dt, "Time step (default 1e-2)");
  thm->add_option("--replicas", rc.replicas, "Replica count (default 64)");
  thm->add_option("--band-width", f.band_width, "Raw frequencies per band (default 64)");
  auto* target = thm->add_option("--target", f.target, "Override the plateau target (default beta^2)");
  thm->add_flag("--quick", rc.quick, "Accepted for symmetry; no effect");
  commands[thm] = Command::theorem;

  CLI11_PARSE(app, argc, argv);

  CLI::App* active = app.get_subcommands().front();
  rc.command = commands.at(active);
  rc.seed = rednoise::Seed{f.seed};
  rc.format = rednoise::io::parse_format(f.format);
  rc.input_format = rednoise::io::parse_format(f.input_format);
  rc.acf_mode = f.mode == "covariance" ? rednoise::AcfMode::covariance
                                       : rednoise::AcfMode::correlation;
  auto given = [active](const std::string& name) {
    const CLI::Option* opt = active->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--n")) rc.n = f.n;
  if (given("--dt")) rc.dt = f.dt;
  if (given("--band-width")) rc.band_width = f.band_width;
  if (active == thm && target->count() > 0) rc.target = f.target;

  const auto outcome = rednoise::cli::run(rc);
  for (const auto& line : outcome.lines)
    (outcome.exit_code == 2 ? std::cerr : std::cout) << line << '\n';
  return outcome.exit_code;
}
