// topent: runs the named experiments and writes JSON + CSV reports.
//
//   topent counterexample --out reports
//   topent product-entropy --config cfg.json --instances 20
//
// Exit status: 0 when every check passes, 1 on a failed check, 2 on a
// configuration or runtime error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "topent/error.h"
#include "topent/experiments.h"

namespace {

struct Overrides {
  std::string config_path;
  std::string system;
  std::optional<int> L;
  std::optional<int> N_lev;
  std::optional<int> y_L;
  std::optional<int> y_N_lev;
  std::optional<int> N1;
  std::optional<int> N2;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> points;
  std::optional<std::size_t> instances;
  std::vector<std::size_t> horizons;
  std::vector<std::size_t> y_horizons;
  std::vector<std::string> epsilons;
  std::optional<int> k;
  std::optional<std::size_t> K;
  std::optional<std::size_t> K0;
  std::optional<std::size_t> separated_cap;
  std::optional<std::size_t> spanning_cap;
  std::string output_dir;
  std::string prefix;
  bool quiet = false;
};

void add_options(CLI::App* sub, Overrides& o) {
  sub->add_option("-c,--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
  sub->add_option("--system", o.system, "example_x | example_y | random | full_shift");
  sub->add_option("--L", o.L, "word length");
  sub->add_option("--N-lev", o.N_lev, "level cap");
  sub->add_option("--y-L", o.y_L, "word length of the Y side");
  sub->add_option("--y-N-lev", o.y_N_lev, "level cap of the Y side");
  sub->add_option("--N1", o.N1);
  sub->add_option("--N2", o.N2);
  sub->add_option("--seed", o.seed);
  sub->add_option("--points", o.points, "points of a random system");
  sub->add_option("--instances", o.instances, "random systems in the corpus");
  sub->add_option("--horizons", o.horizons)->delimiter(',');
  sub->add_option("--y-horizons", o.y_horizons)->delimiter(',');
  sub->add_option("--eps", o.epsilons, "epsilons as p/q")->delimiter(',');
  sub->add_option("--k", o.k, "tuple size");
  sub->add_option("--K", o.K, "weak* truncation");
  sub->add_option("--K0", o.K0, "certificate K0 (0 derives it from eps)");
  sub->add_option("--separated-cap", o.separated_cap);
  sub->add_option("--spanning-cap", o.spanning_cap);
  sub->add_option("-o,--out", o.output_dir, "output directory");
  sub->add_option("--prefix", o.prefix, "report file stem");
  sub->add_flag("-q,--quiet", o.quiet, "do not print the check summary");
}

topent::ExperimentConfig resolve(const std::string& experiment, const Overrides& o) {
  topent::ExperimentConfig cfg = topent::default_config(experiment);
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    topent::Json j;
    try {
      j = topent::Json::parse(in);
    } catch (const topent::Json::exception& e) {
      throw topent::ConfigError(std::string("cannot parse ") + o.config_path + ": " + e.what());
    }
    if (j.contains("experiment") && j["experiment"] != experiment) {
      throw topent::ConfigError("config is for experiment " + j["experiment"].get<std::string>());
    }
    j["experiment"] = experiment;
    cfg = topent::config_from_json(j);
  }
  if (!o.system.empty()) cfg.system = o.system;
  if (o.L) cfg.L = *o.L;
  if (o.N_lev) cfg.N_lev = *o.N_lev;
  if (o.y_L) cfg.y_L = *o.y_L;
  if (o.y_N_lev) cfg.y_N_lev = *o.y_N_lev;
  if (o.N1) cfg.N1 = *o.N1;
  if (o.N2) cfg.N2 = *o.N2;
  if (o.seed) cfg.seed = *o.seed;
  if (o.points) cfg.points = *o.points;
  if (o.instances) cfg.instances = *o.instances;
  if (!o.horizons.empty()) cfg.horizons = o.horizons;
  if (!o.y_horizons.empty()) cfg.y_horizons = o.y_horizons;
  if (!o.epsilons.empty()) {
    cfg.epsilons.clear();
    for (const auto& e : o.epsilons) cfg.epsilons.push_back(topent::Rational::parse(e));
  }
  if (o.k) cfg.k = *o.k;
  if (o.K) cfg.K = *o.K;
  if (o.K0) cfg.K0 = *o.K0;
  if (o.separated_cap) cfg.separated_cap = *o.separated_cap;
  if (o.spanning_cap) cfg.spanning_cap = *o.spanning_cap;
  if (!o.output_dir.empty()) cfg.output_dir = o.output_dir;
  if (!o.prefix.empty()) cfg.prefix = o.prefix;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy experiments on finite nonautonomous systems"};
  app.set_version_flag("--version", topent::library_version());
  app.require_subcommand(1);
  Overrides o;
  const std::vector<std::string> experiments = {"counterexample", "product-entropy", "induced-entropy",
                                                "gw-certificate", "space-check"};
  for (const auto& name : experiments) add_options(app.add_subcommand(name, "run the " + name + " experiment"), o);
  CLI11_PARSE(app, argc, argv);

  const std::string experiment = app.get_subcommands().front()->get_name();
  try {
    const auto cfg = resolve(experiment, o);
    const auto start = std::chrono::steady_clock::now();
    const auto report = topent::run_experiment(cfg);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto files = topent::write_report(report, cfg);
    if (!o.quiet) {
      for (const auto& c : report.checks) {
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name;
        if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
        std::cout << "\n";
      }
      for (const auto& f : files) std::cout << "wrote " << f << "\n";
    }
    // Timing stays off the reports so that reruns are byte-identical.
    std::cerr << experiment << ": " << seconds << " s\n";
    return report.ok() ? 0 : 1;
  } catch (const topent::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
