#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "kimpa/config.h"

namespace kimpa {

// Homogeneous numeric records with a fixed column order.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// 12 significant digits, the precision of every emitted number.
std::string format_number(double v);

void emit_results(const Table& t, OutputFormat format, std::ostream& out);

// Writes to `path`, or stdout when empty. I/O failures name the path.
void write_results(const Table& t, OutputFormat format, const std::string& path);

// Comma-separated numeric text with a header row.
Table parse_csv(const std::string& text);
Table read_csv_file(const std::string& path);

std::string read_text_file(const std::string& path);

// Column index by name, or a Validation error naming the missing column.
std::size_t column_index(const Table& t, const std::string& name);

Table simulate_table(const GainProfile& p);
Table map_table(const std::vector<MapCell>& cells);
Table search_table(const std::vector<DesignRecord>& records);

}  // namespace kimpa
