#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ksrg/experiments.hpp"
#include "ksrg/params.hpp"
#include "ksrg_cli/config.hpp"

namespace ksrg::cli {

/// Shortest round-trip decimal form; "inf"/"-inf"/"nan" for non-finite.
std::string format_double(double v);

inline constexpr const char* kCsvHeader = "n,statistic,value,ci_low,ci_high,replicates";

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);

/// Throws Error{Parse} on a malformed header or row.
std::vector<ResultRow> read_results_csv(std::istream& in);

nlohmann::json to_json(const ExtReal& v);
nlohmann::json to_json(const ExponentReport& report);
nlohmann::json to_json(const ScalingFit& fit);
nlohmann::json to_json(const FitReport& fit);
nlohmann::json to_json(const TailAnalysis& tail);

/// fit.json: primary fit (null when absent) plus alternatives.
nlohmann::json fit_json(const ExperimentResult& result);

/// meta.json: config echo, versions, exponents, warnings and run facts.
nlohmann::json meta_json(const RunConfig& config, const ExponentReport& exponents,
                         const std::vector<std::string>& warnings, const ExperimentResult* result = nullptr);

}  // namespace ksrg::cli
