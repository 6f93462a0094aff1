#pragma once

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace testutil {

// Two-sided Kolmogorov-Smirnov statistic of a sample against a continuous CDF.
inline double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, std::max(f - static_cast<double>(i) / n, (static_cast<double>(i) + 1.0) / n - f));
  }
  return d;
}

inline double normal_pdf(double x, double mean, double variance) {
  const double d = x - mean;
  return std::exp(-d * d / (2.0 * variance)) / std::sqrt(2.0 * 3.141592653589793 * variance);
}

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

// Runs a shell command and captures stdout + stderr.
inline CommandResult run_command(const std::string& cmd) {
  CommandResult result;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (pipe == nullptr) return result;
  char buf[4096];
  while (std::fgets(buf, sizeof(buf), pipe) != nullptr) result.output += buf;
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline bool same_bytes(const std::string& path_a, const std::string& path_b) {
  const std::string a = read_file(path_a);
  return !a.empty() && a == read_file(path_b);
}

inline std::string make_temp_dir() {
  char tmpl[] = "/tmp/fracmc-test-XXXXXX";
  char* dir = mkdtemp(tmpl);
  return dir != nullptr ? std::string(dir) : std::string("/tmp");
}

}  // namespace testutil
