#include "fracmc/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace fracmc {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc{}) {
    throw std::runtime_error("format_double: conversion failed");
  }
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  const std::string t = trim(s);
  if (t == "nan" || t == "-nan") return std::nan("");
  if (t == "inf") return std::numeric_limits<double>::infinity();
  if (t == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size()) {
    throw std::invalid_argument("parse_double: cannot parse '" + s + "'");
  }
  return v;
}

void write_table(std::ostream& out, const Table& table) {
  for (const auto& [key, value] : table.meta) {
    out << "# " << key << " = " << value << "\n";
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ',';
    out << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::invalid_argument("write_table: row width does not match header");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
}

Table read_table(std::istream& in) {
  Table table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string body = trim(line.substr(1));
      const auto eq = body.find('=');
      if (eq != std::string::npos) {
        table.meta.emplace_back(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
      }
      continue;
    }
    if (!have_header) {
      for (auto& name : split(line, ',')) table.columns.push_back(trim(name));
      have_header = true;
      continue;
    }
    const auto cells = split(line, ',');
    if (cells.size() != table.columns.size()) {
      throw std::invalid_argument("read_table: row width does not match header: '" + line + "'");
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) row.push_back(parse_double(cell));
    table.rows.push_back(std::move(row));
  }
  if (!have_header) {
    throw std::invalid_argument("read_table: missing header row");
  }
  return table;
}

namespace {

struct LawMetaVisitor {
  Table& table;
  void operator()(const StableOneSided& law) const {
    table.meta.emplace_back("alpha", format_double(law.alpha));
  }
  void operator()(const Subordinator& law) const {
    table.meta.emplace_back("alpha", format_double(law.alpha));
    table.meta.emplace_back("t", format_double(law.t));
  }
  void operator()(const InverseSubordinator& law) const {
    table.meta.emplace_back("beta", format_double(law.beta));
    table.meta.emplace_back("t", format_double(law.t));
  }
  void operator()(const GaussianKernel& law) const {
    table.meta.emplace_back("tau", format_double(law.tau));
  }
};

std::string meta_value(const Table& table, const std::string& key) {
  for (const auto& [k, v] : table.meta) {
    if (k == key) return v;
  }
  throw std::invalid_argument("read_batch: missing metadata key '" + key + "'");
}

}  // namespace

void write_batch(std::ostream& out, const SampleBatch& batch) {
  Table table;
  table.meta.emplace_back("law", law_name(batch.law));
  std::visit(LawMetaVisitor{table}, batch.law);
  table.meta.emplace_back("master_seed", std::to_string(batch.master_seed));
  table.meta.emplace_back("stream_id", std::to_string(batch.stream_id));
  table.meta.emplace_back("n", std::to_string(batch.values.size()));
  table.columns = {"value"};
  table.rows.reserve(batch.values.size());
  for (double v : batch.values) table.rows.push_back({v});
  write_table(out, table);
}

SampleBatch read_batch(std::istream& in) {
  const Table table = read_table(in);
  SampleBatch batch;
  const std::string name = meta_value(table, "law");
  if (name == "stable-oneside") {
    batch.law = StableOneSided{parse_double(meta_value(table, "alpha"))};
  } else if (name == "subordinator") {
    batch.law = Subordinator{parse_double(meta_value(table, "alpha")),
                             parse_double(meta_value(table, "t"))};
  } else if (name == "inverse-subordinator") {
    batch.law = InverseSubordinator{parse_double(meta_value(table, "beta")),
                                    parse_double(meta_value(table, "t"))};
  } else if (name == "gaussian") {
    batch.law = GaussianKernel{parse_double(meta_value(table, "tau"))};
  } else {
    throw std::invalid_argument("read_batch: unknown law '" + name + "'");
  }
  batch.master_seed = std::stoull(meta_value(table, "master_seed"));
  batch.stream_id = std::stoull(meta_value(table, "stream_id"));
  batch.values.reserve(table.rows.size());
  for (const auto& row : table.rows) batch.values.push_back(row.at(0));
  return batch;
}

void read_xy(std::istream& in, std::vector<double>& x, std::vector<double>& y) {
  x.clear();
  y.clear();
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split(line, ',');
    if (cells.size() != 2) {
      throw std::invalid_argument("read_xy: expected two columns, got '" + line + "'");
    }
    // skip a header row of names
    try {
      const double a = parse_double(cells[0]);
      const double b = parse_double(cells[1]);
      x.push_back(a);
      y.push_back(b);
    } catch (const std::invalid_argument&) {
      if (x.empty()) continue;
      throw;
    }
  }
  if (x.empty()) {
    throw std::invalid_argument("read_xy: no data rows");
  }
}

}  // namespace fracmc
