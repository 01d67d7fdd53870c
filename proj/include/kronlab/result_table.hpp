#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace kronlab {

using ParamValue = std::variant<double, std::string>;

struct ResultRow {
  std::vector<ParamValue> params;
  std::int64_t trial = 0;  // -1 marks a per-point summary row
  std::string metric;
  double value = 0.0;
};

// Tidy result rows. CSV columns: experiment, <param names...>, trial, metric, value.
class ResultTable {
 public:
  ResultTable(std::string experiment, std::vector<std::string> param_names);

  const std::string& experiment() const noexcept { return experiment_; }
  const std::vector<std::string>& param_names() const noexcept { return param_names_; }
  const std::vector<ResultRow>& rows() const noexcept { return rows_; }

  void add(std::vector<ParamValue> params, std::int64_t trial, std::string metric, double value);
  void append(std::vector<ResultRow> rows);

  // Lexicographic by params, then trial, then metric.
  void sort();

  // Values of a metric at a fixed parameter tuple.
  std::vector<double> values(const std::vector<ParamValue>& params, std::string_view metric) const;

  std::string to_csv() const;

  nlohmann::json meta;

 private:
  std::string experiment_;
  std::vector<std::string> param_names_;
  std::vector<ResultRow> rows_;
};

std::string format_double(double x);

}  // namespace kronlab
