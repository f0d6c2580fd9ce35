#pragma once

#include <iosfwd>

#include <json.hpp>

#include "amot/certify.hpp"
#include "amot/cyclotomic.hpp"
#include "amot/shtuka.hpp"

namespace amot {

// Insertion-ordered JSON so reports are byte-stable across runs.
using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "amot.report/1";

// Common envelope: {schema, command, seed, ...payload appended by caller}.
Json report_envelope(const std::string& command, uint64_t seed);

Json to_json(const CharPoly& P);
Json to_json(const WeightVector& W);
Json to_json(const UniformizerCondition& c);
Json to_json(const PrimeSupport& S);
Json to_json(const ImaiCertificate& c);
Json to_json(const HodgePinkData& h);
Json to_json(const ReductionVerdict& v);
Json to_json(const TowerCheckReport& r);
Json to_json(const KernelBijectionReport& r);
Json to_json(const TorsionModule& tm, const FieldTower& tw);

std::string admissibility_name(Admissibility a);

// format "json": indented dump; "table": flattened `path = value` lines.
void emit_report(const Json& j, const std::string& format, std::ostream& os);

}  // namespace amot
