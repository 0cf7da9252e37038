#ifndef TOPENT_EXPERIMENTS_H_
#define TOPENT_EXPERIMENTS_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "topent/dynamics.h"
#include "topent/rational.h"
#include "topent/serialize.h"

namespace topent {

std::string library_version();

// Every field has a default chosen per experiment by default_config; a JSON
// config overrides any subset of them.
struct ExperimentConfig {
  std::string experiment = "counterexample";
  // example_x | example_y | random | full_shift
  std::string system = "example_x";
  int L = 12;
  int N_lev = 12;
  // Truncation of the Y side of the counterexample.
  int y_L = 13;
  int y_N_lev = 13;
  int N1 = 4;
  int N2 = 3;
  std::uint64_t seed = 1;
  // Random systems: number of points, edge weight range, corpus size.
  std::size_t points = 6;
  int max_weight = 6;
  std::size_t instances = 1;
  std::vector<std::size_t> horizons;
  std::vector<std::size_t> y_horizons;
  std::vector<Rational> epsilons;
  int k = 2;
  // Weak* truncation and the certificate's K0 (0 = derived from eps).
  std::size_t K = 16;
  std::size_t K0 = 0;
  std::size_t separated_cap = 512;
  std::size_t spanning_cap = 512;
  // Product spaces above this many points are skipped.
  std::size_t product_cap = 216;
  std::string output_dir = ".";
  // Report file stem; empty means the experiment name.
  std::string prefix;
};

ExperimentConfig default_config(const std::string& experiment);
// Starts from default_config(j["experiment"]) and applies the other keys;
// unknown keys throw ConfigError.
ExperimentConfig config_from_json(const Json& j);
Json config_to_json(const ExperimentConfig& cfg);

// Throws ConfigError when a symbolic truncation is too small for the
// requested horizons (L and N_lev must be at least max horizon + 1).
void check_adequacy(const ExperimentConfig& cfg);

Nads make_system(const ExperimentConfig& cfg);

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ExperimentReport {
  std::string experiment;
  Json config;
  Json results;
  // (table name, CSV text)
  std::vector<std::pair<std::string, std::string>> tables;
  std::vector<Check> checks;

  bool ok() const;
  Json to_json() const;
};

ExperimentReport run_counterexample(const ExperimentConfig& cfg);
ExperimentReport run_product_entropy(const ExperimentConfig& cfg);
ExperimentReport run_induced_entropy(const ExperimentConfig& cfg);
ExperimentReport run_gw_certificate(const ExperimentConfig& cfg);
ExperimentReport run_space_check(const ExperimentConfig& cfg);
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Writes <prefix>.json and <prefix>_<table>.csv under cfg.output_dir and
// returns the written paths.
std::vector<std::string> write_report(const ExperimentReport& report, const ExperimentConfig& cfg);

}  // namespace topent

#endif  // TOPENT_EXPERIMENTS_H_
