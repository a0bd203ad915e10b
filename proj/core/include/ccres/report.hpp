// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ccres {

using Cell = std::variant<std::string, double, std::int64_t, bool>;

/// Column-named table that serializes to CSV. Doubles are written with 17
/// significant digits so that values round-trip exactly.
class Table {
 public:
  Table() = default;
  explicit Table(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  /// Appends a row; throws DataError when the width does not match.
  void add(std::vector<Cell> row);
  /// Index of a named column; throws IndexError when absent.
  std::size_t column(std::string_view name) const;
  /// Numeric cell (double or integer); throws DataError otherwise.
  double number(std::size_t row, std::string_view name) const;
  const Cell& cell(std::size_t row, std::string_view name) const;

  std::string csv() const;
  void write_csv(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

std::string format_cell(const Cell& c);
std::string format_double(double v);

/// Detailed rows plus one summary row per check.
struct EstimateReport {
  Table rows;
  Table summary;
  /// Overall verdict: every summary row passed.
  bool pass = false;
};

}  // namespace ccres
