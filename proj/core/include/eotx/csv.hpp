// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

//! Comma-separated tables: first line column names, second line units,
//! numbers in scientific notation with 17 significant digits, LF endings.

#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace eotx {

using CsvCell = std::variant<double, bool, std::string>;

struct CsvColumn
{
    std::string name;
    std::string unit;  //!< "1" for dimensionless, "-" for labels/flags
};

class CsvTable
{
  public:
    explicit CsvTable(std::vector<CsvColumn> columns);

    /// Throws InvalidArgument if the row width differs from the header.
    void add_row(std::vector<CsvCell> row);

    std::vector<CsvColumn> const& columns() const { return columns_; }
    std::vector<std::vector<CsvCell>> const& rows() const { return rows_; }

    void write(std::ostream& out) const;
    std::string str() const;

  private:
    std::vector<CsvColumn> columns_;
    std::vector<std::vector<CsvCell>> rows_;
};

/// Format one number the way CsvTable does.
std::string format_number(double v);

}  // namespace eotx
