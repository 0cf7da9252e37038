#ifndef TOPENT_SERIALIZE_H_
#define TOPENT_SERIALIZE_H_

#include <string>

#include <nlohmann/json.hpp>

#include "topent/dynamics.h"
#include "topent/entropy.h"
#include "topent/gw.h"
#include "topent/measures.h"
#include "topent/rational.h"
#include "topent/space.h"

namespace topent {

// nlohmann::json keeps object keys sorted, so dumps are deterministic.
using Json = nlohmann::json;

// "p/q", or "p" for integers.
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

// Named spaces serialize as builder + size + diameter; explicit ones carry
// their labels and the full distance table.
Json space_to_json(const FiniteSpace& space);
FiniteSpace space_from_json(const Json& j);

// [[point, numerator, denominator], ...]
Json measure_to_json(const AtomicMeasure& mu);
AtomicMeasure measure_from_json(const Json& j);

Json growth_table_to_json(const GrowthTable& table);
Json factor_report_to_json(const FactorReport& report);
Json certificate_to_json(const CertificateReport& report);

// Two-space indented dump with a trailing newline.
std::string dump_json(const Json& j);

}  // namespace topent

#endif  // TOPENT_SERIALIZE_H_
