#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace workex {

// One output cell. Monostate renders as an empty CSV field / JSON null.
using Cell = std::variant<std::monostate, double, std::int64_t, bool, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

enum class OutputFormat { csv, json };

OutputFormat parse_format(const std::string& name);

// Fixed 12-significant-digit decimal rendering; shared by both writers so
// identical inputs produce byte-identical outputs.
std::string format_number(double value);

std::string render_cell(const Cell& cell);

// CSV with a header row and RFC-style quoting.
void write_csv(const Table& table, std::ostream& out);

// JSON array of row objects, keys in column order, numbers rendered with
// format_number.
void write_json(const Table& table, std::ostream& out);

void write_table(const Table& table, OutputFormat format, std::ostream& out);

// Minimal CSV reader (quoting-aware), used by the serialization round-trip
// checks. All cells come back as strings.
Table parse_csv(std::istream& in);

}  // namespace workex
