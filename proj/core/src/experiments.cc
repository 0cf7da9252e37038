#include "topent/experiments.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "topent/cover.h"
#include "topent/entropy.h"
#include "topent/error.h"
#include "topent/gw.h"
#include "topent/measures.h"

#ifndef TOPENT_VERSION
#define TOPENT_VERSION "0.0.0"
#endif

namespace topent {
namespace {

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> out;
  for (std::size_t n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12f", v);
  return buf;
}

std::size_t max_of(const std::vector<std::size_t>& v) {
  return v.empty() ? 0 : *std::max_element(v.begin(), v.end());
}

bool is_symbolic(const std::string& system) { return system == "example_x" || system == "example_y"; }

EntropyCaps caps_of(const ExperimentConfig& cfg) {
  EntropyCaps caps;
  caps.separated = cfg.separated_cap;
  caps.spanning = cfg.spanning_cap;
  return caps;
}

CoverCaps unbounded_partition_caps() {
  CoverCaps caps;
  caps.partition_cap = std::numeric_limits<std::size_t>::max();
  return caps;
}

void add_check(ExperimentReport& report, std::string name, bool pass, std::string detail = {}) {
  report.checks.push_back({std::move(name), pass, std::move(detail)});
}

std::vector<std::uint64_t> counts_of(const GrowthTable& t) {
  std::vector<std::uint64_t> out;
  for (const auto& r : t.rows) out.push_back(r.count);
  return out;
}

std::string join_counts(const std::vector<std::uint64_t>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + "]";
}

std::uint64_t ipow(std::uint64_t base, int k) {
  std::uint64_t out = 1;
  for (int i = 0; i < k; ++i) out *= base;
  return out;
}

// Cover counts N(join_{j<n} f_1^{-j} cover) for each horizon.
GrowthTable cover_growth(const Nads& sys, const OpenCover& cover, const std::vector<std::size_t>& horizons) {
  const OrbitTable orbits(sys, max_of(horizons));
  return growth_table(horizons, [&](std::size_t n) {
    const SubcoverCount c = minimal_subcover_count(iterated_join(orbits, cover, n), unbounded_partition_caps());
    return GrowthSample{c.count, c.exact};
  });
}

}  // namespace

std::string library_version() { return TOPENT_VERSION; }

ExperimentConfig default_config(const std::string& experiment) {
  ExperimentConfig cfg;
  cfg.experiment = experiment;
  if (experiment == "counterexample") {
    cfg.system = "example_x";
    cfg.horizons = range(1, 10);
    cfg.y_horizons = range(1, 12);
    cfg.epsilons = {Rational(1, 4)};
  } else if (experiment == "product-entropy") {
    cfg.system = "random";
    cfg.points = 8;
    cfg.instances = 100;
    cfg.horizons = range(1, 4);
    cfg.epsilons = {Rational(3, 2), Rational(5, 2)};
    cfg.k = 3;
  } else if (experiment == "induced-entropy") {
    cfg.system = "example_x";
    cfg.L = 2;
    cfg.N_lev = 2;
    cfg.horizons = {1};
    cfg.epsilons = {Rational(1, 4)};
    cfg.k = 3;
  } else if (experiment == "gw-certificate") {
    cfg.system = "example_x";
    cfg.L = 10;
    cfg.N_lev = 7;
    cfg.horizons = {6};
    cfg.epsilons = {Rational(1, 4)};
  } else if (experiment == "space-check") {
    cfg.system = "example_x";
    cfg.L = 4;
    cfg.N_lev = 4;
  } else {
    throw ConfigError("unknown experiment '" + experiment + "'");
  }
  return cfg;
}

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig cfg = default_config(j.value("experiment", std::string("counterexample")));
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "experiment") continue;
      if (key == "system") cfg.system = v.get<std::string>();
      else if (key == "L") cfg.L = v.get<int>();
      else if (key == "N_lev") cfg.N_lev = v.get<int>();
      else if (key == "y_L") cfg.y_L = v.get<int>();
      else if (key == "y_N_lev") cfg.y_N_lev = v.get<int>();
      else if (key == "N1") cfg.N1 = v.get<int>();
      else if (key == "N2") cfg.N2 = v.get<int>();
      else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
      else if (key == "points") cfg.points = v.get<std::size_t>();
      else if (key == "max_weight") cfg.max_weight = v.get<int>();
      else if (key == "instances") cfg.instances = v.get<std::size_t>();
      else if (key == "horizons") cfg.horizons = v.get<std::vector<std::size_t>>();
      else if (key == "y_horizons") cfg.y_horizons = v.get<std::vector<std::size_t>>();
      else if (key == "epsilons") {
        cfg.epsilons.clear();
        for (const auto& e : v) cfg.epsilons.push_back(rational_from_json(e));
      } else if (key == "k") cfg.k = v.get<int>();
      else if (key == "K") cfg.K = v.get<std::size_t>();
      else if (key == "K0") cfg.K0 = v.get<std::size_t>();
      else if (key == "separated_cap") cfg.separated_cap = v.get<std::size_t>();
      else if (key == "spanning_cap") cfg.spanning_cap = v.get<std::size_t>();
      else if (key == "product_cap") cfg.product_cap = v.get<std::size_t>();
      else if (key == "output_dir") cfg.output_dir = v.get<std::string>();
      else if (key == "prefix") cfg.prefix = v.get<std::string>();
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return cfg;
}

Json config_to_json(const ExperimentConfig& cfg) {
  Json eps = Json::array();
  for (const auto& e : cfg.epsilons) eps.push_back(rational_to_json(e));
  // Output locations are left out so that reports written to different
  // directories stay comparable.
  return {{"experiment", cfg.experiment}, {"system", cfg.system},   {"L", cfg.L},
          {"N_lev", cfg.N_lev},           {"y_L", cfg.y_L},         {"y_N_lev", cfg.y_N_lev},
          {"N1", cfg.N1},                 {"N2", cfg.N2},           {"seed", cfg.seed},
          {"points", cfg.points},         {"max_weight", cfg.max_weight},
          {"instances", cfg.instances},   {"horizons", cfg.horizons},
          {"y_horizons", cfg.y_horizons}, {"epsilons", eps},        {"k", cfg.k},
          {"K", cfg.K},                   {"K0", cfg.K0},           {"separated_cap", cfg.separated_cap},
          {"spanning_cap", cfg.spanning_cap}, {"product_cap", cfg.product_cap}};
}

void check_adequacy(const ExperimentConfig& cfg) {
  for (auto n : cfg.horizons) {
    if (n < 1) throw ConfigError("horizons must be positive");
  }
  if (!is_symbolic(cfg.system)) return;
  const auto need = static_cast<int>(max_of(cfg.horizons)) + 1;
  if (cfg.L < need || cfg.N_lev < need) {
    throw ConfigError("truncation L=" + std::to_string(cfg.L) + ", N_lev=" + std::to_string(cfg.N_lev) +
                      " is too small for horizon " + std::to_string(need - 1) + "; both must be >= " +
                      std::to_string(need));
  }
  if (cfg.experiment == "counterexample") {
    const auto y_need = static_cast<int>(max_of(cfg.y_horizons)) + 1;
    if (cfg.y_L < y_need || cfg.y_N_lev < y_need) {
      throw ConfigError("Y truncation y_L=" + std::to_string(cfg.y_L) + ", y_N_lev=" +
                        std::to_string(cfg.y_N_lev) + " is too small for horizon " +
                        std::to_string(y_need - 1));
    }
  }
}

Nads make_system(const ExperimentConfig& cfg) {
  if (cfg.system == "example_x") return example_x_system(cfg.L, cfg.N_lev);
  if (cfg.system == "example_y") return example_y_system(cfg.L, cfg.N_lev);
  if (cfg.system == "full_shift") return full_shift_constant(cfg.L);
  if (cfg.system == "random") return random_system(cfg.points, cfg.seed, cfg.max_weight);
  throw ConfigError("unknown system '" + cfg.system + "'");
}

bool ExperimentReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

Json ExperimentReport::to_json() const {
  Json checks_json = Json::object();
  for (const auto& c : checks) checks_json[c.name] = {{"pass", c.pass}, {"detail", c.detail}};
  return {{"experiment", experiment},
          {"version", library_version()},
          {"config", config},
          {"results", results},
          {"checks", checks_json},
          {"ok", ok()}};
}

ExperimentReport run_counterexample(const ExperimentConfig& cfg) {
  check_adequacy(cfg);
  if (cfg.horizons.empty() || cfg.y_horizons.empty()) throw ConfigError("counterexample needs horizons");
  ExperimentReport report;
  report.experiment = "counterexample";
  report.config = config_to_json(cfg);

  // (a) X with the first-symbol cover.
  const Nads x_sys = example_x_system(cfg.L, cfg.N_lev);
  const SymbolicLayout& x_layout = *x_sys.space().symbolic();
  const GrowthTable x_table = cover_growth(x_sys, example_first_symbol_cover(x_layout), cfg.horizons);
  report.results["x_cover_counts"] = growth_table_to_json(x_table);
  report.tables.emplace_back("x_counts", x_table.to_csv());
  const auto x_counts = counts_of(x_table);
  bool x_pow = true;
  bool x_pattern = true;
  bool x_exact = true;
  for (const auto& r : x_table.rows) {
    x_pow = x_pow && r.count == (std::uint64_t{1} << r.n);
    x_pattern = x_pattern && r.count == (std::uint64_t{1} << std::max<std::size_t>(1, r.n - 1));
    x_exact = x_exact && r.exact;
  }
  add_check(report, "x_counts_equal_2_pow_m", x_pow, "counts " + join_counts(x_counts));
  add_check(report, "x_counts_equal_2_pow_max(1,m-1)", x_pattern,
            "f_1 is the identity, so the j=0 and j=1 preimages coincide");
  add_check(report, "x_counts_exact", x_exact);

  // (b) Y with V*.
  const Nads y_sys = example_y_system(cfg.y_L, cfg.y_N_lev);
  const SymbolicLayout& y_layout = *y_sys.space().symbolic();
  const GrowthTable y_table =
      cover_growth(y_sys, example_v_star_cover(y_layout, cfg.N1, cfg.N2), cfg.y_horizons);
  report.results["y_cover_counts"] = growth_table_to_json(y_table);
  report.tables.emplace_back("y_counts", y_table.to_csv());
  std::optional<std::uint64_t> plateau;
  bool y_constant = true;
  for (const auto& r : y_table.rows) {
    if (r.n <= static_cast<std::size_t>(cfg.N1)) continue;
    if (!plateau) plateau = r.count;
    y_constant = y_constant && r.count == *plateau && r.exact;
  }
  add_check(report, "y_counts_constant_beyond_N1", y_constant && plateau.has_value(),
            "counts " + join_counts(counts_of(y_table)));
  add_check(report, "y_slope_tail_zero", y_table.slope_tail == 0.0, "slope_tail " + fixed(y_table.slope_tail));

  // (c) The factor map.
  const FactorMap fm = example_factor_map(cfg.L, cfg.N_lev);
  const FactorReport factor = verify_factor(fm, max_of(cfg.horizons));
  report.results["factor"] = factor_report_to_json(factor);
  add_check(report, "factor_surjective", factor.surjective);
  add_check(report, "factor_equivariant", factor.equivariant,
            "n <= " + std::to_string(factor.n_max));
  add_check(report, "factor_max_fiber_2", factor.max_fiber == 2, "max fiber " + std::to_string(factor.max_fiber));

  // (d) Separated counts on every fiber.
  const auto all_fibers = fibers(fm);
  const OrbitTable x_orbits(fm.domain, max_of(cfg.horizons));
  Json fiber_json = Json::array();
  std::ostringstream fiber_csv;
  fiber_csv << "eps,n,min_count,max_count,exact_flag\n";
  bool fibers_constant = true;
  for (const auto& eps : cfg.epsilons) {
    std::vector<std::uint64_t> first(all_fibers.size(), 0);
    for (std::size_t h = 0; h < cfg.horizons.size(); ++h) {
      const std::size_t n = cfg.horizons[h];
      std::uint64_t lo = std::numeric_limits<std::uint64_t>::max();
      std::uint64_t hi = 0;
      bool exact = true;
      for (std::size_t y = 0; y < all_fibers.size(); ++y) {
        const auto s = max_separated_in(x_orbits, all_fibers[y], n, eps, CountMode::exact, caps_of(cfg));
        exact = exact && s.exact;
        lo = std::min(lo, s.count);
        hi = std::max(hi, s.count);
        if (h == 0) first[y] = s.count;
        fibers_constant = fibers_constant && s.count == first[y];
      }
      fiber_csv << eps.str() << ',' << n << ',' << lo << ',' << hi << ',' << (exact ? 1 : 0) << '\n';
      fiber_json.push_back({{"eps", rational_to_json(eps)}, {"n", n}, {"min_count", lo}, {"max_count", hi},
                            {"exact", exact}});
    }
  }
  report.results["fiber_counts"] = fiber_json;
  report.results["fibers"] = all_fibers.size();
  report.tables.emplace_back("fiber_counts", fiber_csv.str());
  add_check(report, "fiber_counts_constant", fibers_constant,
            std::to_string(all_fibers.size()) + " fibers, every count constant in n");
  return report;
}

ExperimentReport run_product_entropy(const ExperimentConfig& cfg) {
  check_adequacy(cfg);
  if (cfg.horizons.empty() || cfg.epsilons.empty()) throw ConfigError("product-entropy needs horizons and epsilons");
  if (cfg.k < 1) throw ConfigError("k must be at least 1");
  ExperimentReport report;
  report.experiment = "product-entropy";
  report.config = config_to_json(cfg);
  const EntropyCaps caps = caps_of(cfg);
  const std::size_t max_h = max_of(cfg.horizons);

  std::ostringstream csv;
  csv << "instance,size,seed,k,n,eps,s_base,r_base,s_prod,r_prod,s_ok,r_ok,sandwich_ok,exact_flag\n";
  std::size_t rows = 0;
  std::size_t systems = 0;
  std::size_t skipped = 0;
  bool s_ok = true;
  bool r_ok = true;
  bool sandwich_ok = true;
  bool exact_all = true;
  bool k1_equal = true;
  Json log_ratios = Json::array();

  for (std::size_t i = 0; i < std::max<std::size_t>(cfg.instances, 1); ++i) {
    std::size_t size = 0;
    std::uint64_t seed = cfg.seed;
    Nads base = [&] {
      if (cfg.system != "random") return make_system(cfg);
      if (cfg.points < 2) throw ConfigError("random corpus needs at least two points");
      size = 2 + i % (cfg.points - 1);
      seed = cfg.seed + i;
      return random_system(size, seed, cfg.max_weight);
    }();
    size = base.size();
    ++systems;
    const OrbitTable bo(base, max_h);
    struct BaseCounts {
      SeparatedResult s;
      SpanningResult r;
      SpanningResult r_half;
    };
    std::vector<BaseCounts> base_counts;
    for (auto n : cfg.horizons) {
      for (const auto& eps : cfg.epsilons) {
        base_counts.push_back({max_separated(bo, n, eps, CountMode::exact, caps),
                               min_spanning(bo, n, eps, CountMode::exact, caps),
                               min_spanning(bo, n, eps / 2, CountMode::exact, caps)});
      }
    }
    for (int k = 1; k <= cfg.k; ++k) {
      if (ipow(size, k) > cfg.product_cap) {
        ++skipped;
        continue;
      }
      ProductOptions po;
      po.max_bits = 24;
      const Nads prod = product_system(base, k, po);
      const OrbitTable orbits(prod, max_h);
      std::size_t idx = 0;
      for (auto n : cfg.horizons) {
        for (const auto& eps : cfg.epsilons) {
          const BaseCounts& b = base_counts[idx++];
          const auto sp = max_separated(orbits, n, eps, CountMode::exact, caps);
          const auto rp = min_spanning(orbits, n, eps, CountMode::exact, caps);
          const auto rp_half = min_spanning(orbits, n, eps / 2, CountMode::exact, caps);
          const bool exact = b.s.exact && b.r.exact && b.r_half.exact && sp.exact && rp.exact && rp_half.exact;
          const bool row_s = sp.count >= ipow(b.s.count, k);
          const bool row_r = rp.count <= ipow(b.r.count, k);
          const bool row_sandwich = b.r.count <= b.s.count && b.s.count <= b.r_half.count &&
                                    rp.count <= sp.count && sp.count <= rp_half.count;
          if (k == 1) k1_equal = k1_equal && sp.count == b.s.count && rp.count == b.r.count;
          s_ok = s_ok && row_s;
          r_ok = r_ok && row_r;
          sandwich_ok = sandwich_ok && row_sandwich;
          exact_all = exact_all && exact;
          if (b.s.count > 1 && sp.count > 1) {
            log_ratios.push_back({{"instance", i}, {"k", k}, {"n", n}, {"eps", rational_to_json(eps)},
                                  {"ratio", fixed(std::log(static_cast<double>(sp.count)) /
                                                  std::log(static_cast<double>(b.s.count)))}});
          }
          csv << i << ',' << size << ',' << seed << ',' << k << ',' << n << ',' << eps.str() << ',' << b.s.count
              << ',' << b.r.count << ',' << sp.count << ',' << rp.count << ',' << row_s << ',' << row_r << ','
              << row_sandwich << ',' << (exact ? 1 : 0) << '\n';
          ++rows;
        }
      }
    }
  }
  report.tables.emplace_back("counts", csv.str());
  report.results["systems"] = systems;
  report.results["rows"] = rows;
  report.results["skipped_products"] = skipped;
  report.results["separated_log_ratios"] = log_ratios;
  add_check(report, "separated_product_lower_bound", s_ok, "s_n(X^k) >= s_n(X)^k");
  add_check(report, "spanning_product_upper_bound", r_ok, "r_n(X^k) <= r_n(X)^k");
  add_check(report, "sandwich", sandwich_ok, "r_n(eps) <= s_n(eps) <= r_n(eps/2)");
  add_check(report, "k1_equalities", k1_equal);
  add_check(report, "all_counts_exact", exact_all);
  return report;
}

ExperimentReport run_induced_entropy(const ExperimentConfig& cfg) {
  check_adequacy(cfg);
  if (cfg.horizons.empty() || cfg.epsilons.empty()) throw ConfigError("induced-entropy needs horizons and epsilons");
  if (cfg.k < 1) throw ConfigError("k must be at least 1");
  ExperimentReport report;
  report.experiment = "induced-entropy";
  report.config = config_to_json(cfg);
  const EntropyCaps caps = caps_of(cfg);
  const std::size_t max_h = max_of(cfg.horizons);

  const Nads base = make_system(cfg);
  const TestFunctionFamily fam = default_family(base.space_ptr());
  const OrbitTable bo(base, max_h);
  report.results["base"] = {{"name", base.name()}, {"size", base.size()}};

  std::ostringstream csv;
  csv << "k,n,eps,eps_induced,base_count,induced_count,log_ratio,exact_flag\n";
  bool bound_ok = true;
  bool equivariant = true;
  Json skipped = Json::array();
  Json embeddings = Json::array();
  for (int k = 1; k <= cfg.k; ++k) {
    std::optional<InducedTupleSystem> induced;
    try {
      induced.emplace(induced_tuple_system(base, k, fam, cfg.K));
    } catch (const SizeCapExceeded& e) {
      skipped.push_back({{"k", k}, {"reason", e.what()}});
      continue;
    } catch (const TruncationTooCoarse& e) {
      skipped.push_back({{"k", k}, {"reason", e.what()}});
      bound_ok = false;
      continue;
    }
    if (induced->layout.size() <= 4096) {
      equivariant = equivariant && !check_embedding_equivariance(base, k, max_h);
    }
    embeddings.push_back({{"k", k},
                          {"points", induced->layout.size()},
                          {"min_positive_distance", rational_to_json(induced->min_positive_distance)},
                          {"tail_bound", rational_to_json(induced->tail_bound)},
                          {"certified", induced->exact}});
    const OrbitTable io(induced->system, max_h);
    for (auto n : cfg.horizons) {
      for (const auto& eps : cfg.epsilons) {
        const CountMode base_mode = base.size() <= caps.separated ? CountMode::exact : CountMode::greedy;
        const auto F = max_separated(bo, n, eps, base_mode, caps);
        // F^k embedded; eps_ind is half its smallest weak* Bowen gap.
        std::vector<PointId> seed;
        std::vector<PointId> coords(static_cast<std::size_t>(k));
        const std::size_t total = ipow(F.witness.size(), k);
        for (std::size_t t = 0; t < total; ++t) {
          std::size_t rest = t;
          for (int i = 0; i < k; ++i) {
            coords[static_cast<std::size_t>(i)] = F.witness[rest % F.witness.size()];
            rest /= F.witness.size();
          }
          seed.push_back(induced->layout.encode(coords));
        }
        std::optional<Rational> gap;
        for (std::size_t a = 0; a < seed.size(); ++a) {
          for (std::size_t b = a + 1; b < seed.size(); ++b) {
            const Rational d = io.bowen_distance(n, seed[a], seed[b]);
            if (!gap || d < *gap) gap = d;
          }
        }
        const Rational eps_ind = gap ? *gap / 2 : eps;
        const CountMode mode =
            induced->layout.size() <= caps.separated ? CountMode::exact : CountMode::greedy;
        const auto s = mode == CountMode::exact ? max_separated(io, n, eps_ind, mode, caps)
                                                : max_separated(io, n, eps_ind, mode, caps, seed);
        const bool exact = s.exact && F.exact;
        bound_ok = bound_ok && s.count >= total;
        const double ratio = F.count > 1 ? std::log(static_cast<double>(s.count)) /
                                               std::log(static_cast<double>(F.count))
                                         : 0.0;
        csv << k << ',' << n << ',' << eps.str() << ',' << eps_ind.str() << ',' << F.count << ',' << s.count << ','
            << fixed(ratio) << ',' << (exact ? 1 : 0) << '\n';
      }
    }
  }
  report.tables.emplace_back("counts", csv.str());
  report.results["embeddings"] = embeddings;
  report.results["skipped"] = skipped;
  add_check(report, "induced_count_at_least_base_pow_k", bound_ok, "s_n(pi_k(X^k)) >= s_n(X)^k");
  add_check(report, "embedding_equivariant", equivariant);
  return report;
}

ExperimentReport run_gw_certificate(const ExperimentConfig& cfg) {
  check_adequacy(cfg);
  if (cfg.system != "example_x") throw ConfigError("gw-certificate runs on the example_x system");
  if (cfg.horizons.empty() || cfg.epsilons.empty()) throw ConfigError("gw-certificate needs a horizon and eps");
  ExperimentReport report;
  report.experiment = "gw-certificate";
  report.config = config_to_json(cfg);

  const Nads sys = make_system(cfg);
  const std::size_t N = cfg.horizons.back();
  const Rational eps = cfg.epsilons.front();
  const std::size_t K0 = cfg.K0 == 0 ? k0_for_eps(eps) : cfg.K0;
  const TestFunctionFamily fam = default_family(sys.space_ptr());
  const OrbitTable orbits(sys, N);

  // E: Dirac measures at the lowest point of each cell of the N-fold join
  // of the first-symbol cover.
  const OpenCover coarse = iterated_join(orbits, example_first_symbol_cover(*sys.space().symbolic()), N);
  const CoverPartition coarse_part = partition_from_cover(coarse);
  std::vector<AtomicMeasure> E;
  for (auto z : coarse_part.representatives) E.push_back(AtomicMeasure::dirac(z));

  const DeltaChoice delta = choose_delta(sys.space(), fam, K0, eps);
  const OpenCover fine_base = ball_partition(sys.space(), delta.delta / 2);
  Json subcover_counts = Json::array();
  for (std::size_t n = 1; n <= N; ++n) {
    const auto c = minimal_subcover_count(iterated_join(orbits, fine_base, n), unbounded_partition_caps());
    subcover_counts.push_back({{"n", n}, {"count", c.count}, {"exact", c.exact}});
  }
  const CoverPartition part = partition_from_cover(iterated_join(orbits, fine_base, N));

  CertificateParams params;
  params.eps = eps;
  params.K0 = K0;
  params.N = N;
  params.K = cfg.K;
  params.delta = delta;
  params.strict = false;
  const CertificateReport cert = separation_certificate(E, sys, part, fam, params);

  std::ostringstream csv;
  csv << "first,second,separation,I1,I2,I3,phi_gap,margin,margin_approx,pass\n";
  Rational min_margin;
  for (std::size_t i = 0; i < cert.pairs.size(); ++i) {
    const auto& p = cert.pairs[i];
    if (i == 0 || p.margin < min_margin) min_margin = p.margin;
    csv << p.first << ',' << p.second << ',' << p.separation.str() << ',' << p.I1.str() << ',' << p.I2.str() << ','
        << p.I3.str() << ',' << p.phi_gap.str() << ',' << p.margin.str() << ',' << fixed(p.margin.to_double())
        << ',' << (p.pass ? 1 : 0) << '\n';
  }
  report.tables.emplace_back("pairs", csv.str());
  report.results["certificate"] = certificate_to_json(cert);
  report.results["measures"] = E.size();
  report.results["fine_subcover_counts"] = subcover_counts;
  report.results["coarse_cells"] = coarse_part.size();
  report.results["lipschitz_valid"] = delta.lipschitz_valid;
  add_check(report, "all_pairs_certified", cert.ok(),
            std::to_string(cert.pairs.size() - cert.failures) + "/" + std::to_string(cert.pairs.size()) +
                " pairs, min margin " + min_margin.str());
  add_check(report, "lipschitz_delta_valid", delta.lipschitz_valid,
            "delta " + delta.delta.str() + " >= " + delta.lipschitz_delta.str());
  return report;
}

ExperimentReport run_space_check(const ExperimentConfig& cfg) {
  check_adequacy(cfg);
  ExperimentReport report;
  report.experiment = "space-check";
  report.config = config_to_json(cfg);
  const Nads sys = make_system(cfg);
  const FiniteSpace& space = sys.space();
  report.results["space"] = space_to_json(space);
  report.results["system"] = sys.name();
  add_check(report, "metric_valid", true, "validated at construction");
  const Rational diam = compute_diameter(space);
  add_check(report, "diameter_matches", diam == space.diameter(), "computed " + diam.str());
  if (const auto mp = min_positive_distance(space)) report.results["min_positive_distance"] = rational_to_json(*mp);
  if (space.size() <= 4096) {
    const TestFunctionFamily fam = default_family(sys.space_ptr());
    const auto pair = fam.first_unseparated(space.size());
    add_check(report, "default_family_separates_points", !pair,
              pair ? "points " + std::to_string(pair->first) + ", " + std::to_string(pair->second) : "");
  }
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  if (cfg.experiment == "counterexample") return run_counterexample(cfg);
  if (cfg.experiment == "product-entropy") return run_product_entropy(cfg);
  if (cfg.experiment == "induced-entropy") return run_induced_entropy(cfg);
  if (cfg.experiment == "gw-certificate") return run_gw_certificate(cfg);
  if (cfg.experiment == "space-check") return run_space_check(cfg);
  throw ConfigError("unknown experiment '" + cfg.experiment + "'");
}

std::vector<std::string> write_report(const ExperimentReport& report, const ExperimentConfig& cfg) {
  namespace fs = std::filesystem;
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  const std::string stem = cfg.prefix.empty() ? report.experiment : cfg.prefix;
  std::vector<std::string> written;
  auto write = [&](const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
    written.push_back(path.string());
  };
  write(dir / (stem + ".json"), dump_json(report.to_json()));
  for (const auto& [name, text] : report.tables) write(dir / (stem + "_" + name + ".csv"), text);
  return written;
}

}  // namespace topent
