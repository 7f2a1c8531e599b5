// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

#include "eotx/csv.hpp"

#include "eotx/errors.hpp"

#include <fmt/format.h>

#include <ostream>
#include <sstream>

namespace eotx {

std::string format_number(double v)
{
    return fmt::format("{:.16e}", v);
}

CsvTable::CsvTable(std::vector<CsvColumn> columns) : columns_(std::move(columns)) {}

void CsvTable::add_row(std::vector<CsvCell> row)
{
    if (row.size() != columns_.size())
        throw InvalidArgument(fmt::format("CSV row has {} cells, header has {}", row.size(),
                                          columns_.size()));
    rows_.push_back(std::move(row));
}

void CsvTable::write(std::ostream& out) const
{
    auto line = [&](auto&& field) {
        for (std::size_t k = 0; k < columns_.size(); ++k)
        {
            if (k)
                out << ',';
            out << field(k);
        }
        out << '\n';
    };
    line([&](std::size_t k) { return columns_[k].name; });
    line([&](std::size_t k) { return columns_[k].unit; });
    for (auto const& row : rows_)
    {
        line([&](std::size_t k) -> std::string {
            return std::visit(
                [](auto const& v) -> std::string {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>)
                        return format_number(v);
                    else if constexpr (std::is_same_v<T, bool>)
                        return v ? "true" : "false";
                    else
                        return v;
                },
                row[k]);
        });
    }
}

std::string CsvTable::str() const
{
    std::ostringstream os;
    write(os);
    return os.str();
}

}  // namespace eotx
