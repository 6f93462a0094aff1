#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "fracmc/stable_sampler.hpp"

namespace fracmc {

// Numeric table with '# key = value' metadata lines, a column header row and
// comma-separated rows. Doubles are printed with std::to_chars (shortest
// round-trip form), so write followed by read reproduces values exactly.
struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string format_double(double v);
double parse_double(const std::string& s);

void write_table(std::ostream& out, const Table& table);
Table read_table(std::istream& in);

// Batch serialization keeps the law and stream coordinates in the metadata.
void write_batch(std::ostream& out, const SampleBatch& batch);
SampleBatch read_batch(std::istream& in);

// Two-column (x, density) file for tabulated initial data; tolerates either a
// bare two-column table or one produced by write_table.
void read_xy(std::istream& in, std::vector<double>& x, std::vector<double>& y);

}  // namespace fracmc
