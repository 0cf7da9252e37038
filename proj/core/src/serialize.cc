#include "topent/serialize.h"

#include <cstdio>

#include "topent/error.h"

namespace topent {

Json rational_to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw ConfigError("expected a rational as an integer or a \"p/q\" string");
}

Json space_to_json(const FiniteSpace& space) {
  Json out;
  out["size"] = space.size();
  out["diameter"] = rational_to_json(space.diameter());
  if (!space.builder().empty()) {
    out["builder"] = space.builder();
    return out;
  }
  Json labels = Json::array();
  Json rows = Json::array();
  for (PointId x = 0; x < space.size(); ++x) {
    labels.push_back(space.label(x));
    Json row = Json::array();
    for (PointId y = 0; y < space.size(); ++y) row.push_back(rational_to_json(space.distance(x, y)));
    rows.push_back(std::move(row));
  }
  out["labels"] = std::move(labels);
  out["metric"] = std::move(rows);
  return out;
}

FiniteSpace space_from_json(const Json& j) {
  if (j.contains("builder")) {
    const auto name = j.at("builder").get<std::string>();
    int L = 0;
    int levels = 0;
    if (std::sscanf(name.c_str(), "example_X(L=%d,N_lev=%d)", &L, &levels) == 2) return build_example_x(L, levels);
    if (std::sscanf(name.c_str(), "example_Y(L=%d,N_lev=%d)", &L, &levels) == 2) return build_example_y(L, levels);
    throw ConfigError("unknown space builder " + name);
  }
  const auto labels = j.at("labels").get<std::vector<std::string>>();
  const auto& rows = j.at("metric");
  if (rows.size() != labels.size()) throw ConfigError("metric table does not match the labels");
  std::vector<Rational> table;
  for (const auto& row : rows) {
    if (row.size() != labels.size()) throw ConfigError("metric table is not square");
    for (const auto& v : row) table.push_back(rational_from_json(v));
  }
  return build_finite_space(labels, std::move(table));
}

Json measure_to_json(const AtomicMeasure& mu) {
  Json out = Json::array();
  for (const auto& [x, w] : mu.atoms()) out.push_back(Json::array({x, w.num(), w.den()}));
  return out;
}

AtomicMeasure measure_from_json(const Json& j) {
  std::vector<AtomicMeasure::Atom> atoms;
  for (const auto& triple : j) {
    if (!triple.is_array() || triple.size() != 3) throw InvalidMeasure("atoms are (point, numerator, denominator)");
    atoms.emplace_back(triple[0].get<PointId>(),
                       Rational(triple[1].get<std::int64_t>(), triple[2].get<std::int64_t>()));
  }
  return AtomicMeasure(std::move(atoms));
}

Json growth_table_to_json(const GrowthTable& table) {
  Json rows = Json::array();
  for (const auto& r : table.rows) {
    rows.push_back({{"n", r.n}, {"count", r.count}, {"log_count", r.log_count}, {"exact", r.exact}});
  }
  return {{"rows", std::move(rows)},
          {"slope_fit", table.slope_fit},
          {"slope_tail", table.slope_tail},
          {"window", table.window}};
}

Json factor_report_to_json(const FactorReport& report) {
  Json out{{"surjective", report.surjective},
           {"equivariant", report.equivariant},
           {"max_fiber", report.max_fiber},
           {"finite_to_one", report.finite_to_one},
           {"n_max", report.n_max}};
  if (report.first_missed) out["first_missed"] = *report.first_missed;
  if (report.first_violation) {
    out["first_violation"] = {{"n", report.first_violation->n}, {"x", report.first_violation->x}};
  }
  return out;
}

Json certificate_to_json(const CertificateReport& report) {
  Json pairs = Json::array();
  for (const auto& p : report.pairs) {
    pairs.push_back({{"first", p.first},
                     {"second", p.second},
                     {"separation", rational_to_json(p.separation)},
                     {"j0", p.j0},
                     {"partial_sum", rational_to_json(p.partial_sum)},
                     {"I1", rational_to_json(p.I1)},
                     {"I2", rational_to_json(p.I2)},
                     {"I3", rational_to_json(p.I3)},
                     {"triangle_ok", p.triangle_ok},
                     {"phi_gap", rational_to_json(p.phi_gap)},
                     {"margin", rational_to_json(p.margin)},
                     {"pass", p.pass}});
  }
  return {{"eps", rational_to_json(report.eps)},
          {"K0", report.K0},
          {"N", report.N},
          {"delta", rational_to_json(report.delta)},
          {"lipschitz_delta", rational_to_json(report.lipschitz_delta)},
          {"threshold", rational_to_json(report.threshold)},
          {"cells", report.cells},
          {"max_cell_diameter", rational_to_json(report.max_cell_diameter)},
          {"failures", report.failures},
          {"pairs", std::move(pairs)}};
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace topent
