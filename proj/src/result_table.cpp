#include "kronlab/result_table.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "kronlab/errors.hpp"

namespace kronlab {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", x);
}

ResultTable::ResultTable(std::string experiment, std::vector<std::string> param_names)
    : experiment_(std::move(experiment)), param_names_(std::move(param_names)) {}

void ResultTable::add(std::vector<ParamValue> params, std::int64_t trial, std::string metric,
                      double value) {
  if (params.size() != param_names_.size()) {
    throw Error(fmt::format("row has {} params, table {} expects {}", params.size(), experiment_,
                            param_names_.size()));
  }
  rows_.push_back({std::move(params), trial, std::move(metric), value});
}

void ResultTable::append(std::vector<ResultRow> rows) {
  for (auto& r : rows) add(std::move(r.params), r.trial, std::move(r.metric), r.value);
}

void ResultTable::sort() {
  std::stable_sort(rows_.begin(), rows_.end(), [](const ResultRow& a, const ResultRow& b) {
    if (a.params != b.params) return a.params < b.params;
    if (a.trial != b.trial) return a.trial < b.trial;
    return a.metric < b.metric;
  });
}

std::vector<double> ResultTable::values(const std::vector<ParamValue>& params,
                                        std::string_view metric) const {
  std::vector<double> out;
  for (const auto& r : rows_) {
    if (r.params == params && r.metric == metric) out.push_back(r.value);
  }
  return out;
}

std::string ResultTable::to_csv() const {
  std::string out = "experiment";
  for (const auto& n : param_names_) out += "," + n;
  out += ",trial,metric,value\n";
  for (const auto& r : rows_) {
    out += experiment_;
    for (const auto& p : r.params) {
      out += ',';
      if (const double* d = std::get_if<double>(&p)) {
        out += format_double(*d);
      } else {
        out += std::get<std::string>(p);
      }
    }
    out += fmt::format(",{},{},{}\n", r.trial, r.metric, format_double(r.value));
  }
  return out;
}

}  // namespace kronlab
