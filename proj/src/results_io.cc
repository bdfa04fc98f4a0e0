#include "kimpa/results_io.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "kimpa/errors.h"

namespace kimpa {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void emit_results(const Table& t, OutputFormat format, std::ostream& out) {
  for (const auto& row : t.rows)
    require(row.size() == t.columns.size(), "record width does not match the header");
  if (format == OutputFormat::Csv) {
    for (std::size_t c = 0; c < t.columns.size(); ++c)
      out << (c ? "," : "") << t.columns[c];
    out << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_number(row[c]);
      out << '\n';
    }
    return;
  }
  // Structured: one object per record, same names, same 12-digit values.
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json rec = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (std::isfinite(row[c]))
        rec[t.columns[c]] = std::strtod(format_number(row[c]).c_str(), nullptr);
      else
        rec[t.columns[c]] = format_number(row[c]);
    }
    doc.push_back(std::move(rec));
  }
  out << doc.dump(2) << '\n';
}

void write_results(const Table& t, OutputFormat format, const std::string& path) {
  if (path.empty() || path == "-") {
    emit_results(t, format, std::cout);
    std::cout.flush();
    if (!std::cout) fail(ErrorKind::Io, "failed writing to standard output");
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
  emit_results(t, format, f);
  f.flush();
  if (!f) fail(ErrorKind::Io, "failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) fail(ErrorKind::Io, "failed reading '" + path + "'");
  return ss.str();
}

Table parse_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t\r");
      const auto e = cell.find_last_not_of(" \t\r");
      out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    return out;
  };
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split(line);
    if (t.columns.empty()) {
      t.columns = std::move(cells);
      continue;
    }
    if (cells.size() != t.columns.size())
      fail(ErrorKind::Parse, "line " + std::to_string(n) + ": expected " +
                                 std::to_string(t.columns.size()) + " fields");
    std::vector<double> row;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      char* end = nullptr;
      const double v = std::strtod(cells[c].c_str(), &end);
      if (cells[c].empty() || *end != '\0')
        fail(ErrorKind::Parse, "line " + std::to_string(n) + ", column " + std::to_string(c + 1) +
                                   ": '" + cells[c] + "' is not a number");
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  if (t.columns.empty()) fail(ErrorKind::Parse, "CSV has no header row");
  return t;
}

Table read_csv_file(const std::string& path) {
  try {
    return parse_csv(read_text_file(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) fail(ErrorKind::Parse, path + ": " + e.what());
    throw;
  }
}

std::size_t column_index(const Table& t, const std::string& name) {
  for (std::size_t c = 0; c < t.columns.size(); ++c)
    if (t.columns[c] == name) return c;
  fail(ErrorKind::Validation, "input lacks column '" + name + "'");
}

Table simulate_table(const GainProfile& p) {
  Table t{{"freq_hz", "re_s11", "im_s11", "gain_db"}, {}};
  for (std::size_t k = 0; k < p.omega.size(); ++k)
    t.rows.push_back({p.omega[k] / kTwoPi, p.s11[k].real(), p.s11[k].imag(), p.gain_db[k]});
  return t;
}

Table map_table(const std::vector<MapCell>& cells) {
  Table t{{"fp_hz", "idc_a", "bandwidth_hz", "peaks", "ripple_db"}, {}};
  for (const auto& c : cells) {
    const bool q = c.ramp.qualified;
    t.rows.push_back({c.omega_p / kTwoPi, c.i_dc, q ? c.ramp.best.bandwidth / kTwoPi : 0.0,
                      q ? double(c.ramp.best.peak_count) : 0.0, q ? c.ramp.best.ripple_db : 0.0});
  }
  return t;
}

Table search_table(const std::vector<DesignRecord>& records) {
  Table t{{"z14", "z12", "znr", "fp2_hz", "bandwidth_hz", "xi3_hz", "eta"}, {}};
  for (const auto& r : records)
    t.rows.push_back({r.params.z_quarter, r.params.z_half, r.params.z_nr,
                      r.params.omega_p_half / kTwoPi, r.max_bandwidth / kTwoPi,
                      r.optimal_xi3 / kTwoPi, r.eta});
  return t;
}

}  // namespace kimpa
