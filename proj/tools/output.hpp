#pragma once

#include <json.hpp>

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace bvtp::cli {

enum class Format { Csv, JsonLines };

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

using Cell = std::variant<double, std::int64_t, std::string, bool>;

/// Column-oriented result of one command, written after the manifest.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

/// CSV: "# manifest: {...}", header line, rows.
/// JSON lines: {"manifest": {...}}, then one object per row keyed by column.
void write_table(std::ostream& out, const nlohmann::ordered_json& manifest, const Table& table, Format format);

}  // namespace bvtp::cli
