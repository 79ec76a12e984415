#pragma once
// Report rows emitted by the experiment harness. Every row carries both
// the measured value and the theoretical value or bound it is judged
// against; the pass flag is a pure function of those plus the stated
// comparison. Writers produce JSON-lines or CSV with a versioned schema.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace qpick::report {

inline constexpr const char* kSchema = "qpick-report/1";

struct ReportRow {
  std::string experiment;
  std::string metric;
  nlohmann::ordered_json params;  // parameter echo
  double measured = 0.0;
  double theory = 0.0;
  std::string comparison;  // "<=", ">=", "==", "info"
  bool pass = true;
  std::optional<double> ci_lo;
  std::optional<double> ci_hi;
};

ReportRow make_row(std::string experiment, std::string metric, nlohmann::ordered_json params,
                   double measured, double theory, std::string comparison);

enum class Format { Jsonl, Csv };

void write_rows(std::ostream& os, const std::vector<ReportRow>& rows, Format format);
bool all_pass(const std::vector<ReportRow>& rows);

}  // namespace qpick::report
