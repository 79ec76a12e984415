#include "qpick/report.hpp"

#include <cmath>
#include <cstdio>

namespace qpick::report {

ReportRow make_row(std::string experiment, std::string metric, nlohmann::ordered_json params,
                   double measured, double theory, std::string comparison) {
  ReportRow row;
  row.experiment = std::move(experiment);
  row.metric = std::move(metric);
  row.params = std::move(params);
  row.measured = measured;
  row.theory = theory;
  row.comparison = std::move(comparison);
  if (row.comparison == "<=")
    row.pass = measured <= theory;
  else if (row.comparison == ">=")
    row.pass = measured >= theory;
  else if (row.comparison == "==")
    row.pass = measured == theory;
  else
    row.pass = true;  // info rows never fail
  return row;
}

static std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_rows(std::ostream& os, const std::vector<ReportRow>& rows, Format format) {
  if (format == Format::Csv) {
    os << "# schema=" << kSchema << "\n";
    os << "experiment,metric,params,measured,theory,comparison,pass,ci_lo,ci_hi\n";
    for (const auto& r : rows) {
      std::string params = r.params.dump();
      std::string quoted;
      quoted.reserve(params.size() + 2);
      quoted.push_back('"');
      for (char c : params) {
        if (c == '"') quoted.push_back('"');
        quoted.push_back(c);
      }
      quoted.push_back('"');
      os << r.experiment << ',' << r.metric << ',' << quoted << ',' << fmt_double(r.measured)
         << ',' << fmt_double(r.theory) << ',' << r.comparison << ',' << (r.pass ? 1 : 0) << ','
         << (r.ci_lo ? fmt_double(*r.ci_lo) : "") << ',' << (r.ci_hi ? fmt_double(*r.ci_hi) : "")
         << "\n";
    }
    return;
  }
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["schema"] = kSchema;
    j["experiment"] = r.experiment;
    j["metric"] = r.metric;
    j["params"] = r.params;
    j["measured"] = r.measured;
    j["theory"] = r.theory;
    j["comparison"] = r.comparison;
    j["pass"] = r.pass;
    if (r.ci_lo) j["ci_lo"] = *r.ci_lo;
    if (r.ci_hi) j["ci_hi"] = *r.ci_hi;
    os << j.dump() << "\n";
  }
}

bool all_pass(const std::vector<ReportRow>& rows) {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

}  // namespace qpick::report
