#include "fracmc/fode.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fracmc/gamma.hpp"
#include "fracmc/mittag_leffler.hpp"

namespace fracmc {
namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0};

constexpr double kA[7][6] = {
    {},
    {1.0 / 5.0},
    {3.0 / 40.0, 9.0 / 40.0},
    {44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0},
    {19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0},
    {9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0},
    {35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0},
};

// 5th-order weights are row 6 of kA; the embedded error weights are b5 - b4.
constexpr double kErr[7] = {71.0 / 57600.0,    0.0,          -71.0 / 16695.0, 71.0 / 1920.0,
                            -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0};

constexpr std::size_t kMaxSteps = 10'000'000;

void check_state(const std::vector<double>& y, double x) {
  for (double v : y) {
    if (!std::isfinite(v)) {
      throw std::runtime_error("solve_system: state became non-finite at x = " +
                               std::to_string(x));
    }
  }
}

// Integrates from the last node of `path` up to x_max, appending nodes.
void integrate_to(OdePath& path, double x_max) {
  const std::size_t dim = path.nodes.back().y.size();
  std::vector<std::vector<double>> k(7, std::vector<double>(dim));
  std::vector<double> y = path.nodes.back().y;
  std::vector<double> y5(dim);
  std::vector<double> stage(dim);
  double x = path.nodes.back().x;
  k[0] = path.nodes.back().dy;

  double h = std::min(0.1, x_max - x);
  std::size_t steps = 0;

  while (x < x_max) {
    if (++steps > kMaxSteps) {
      throw std::runtime_error("solve_system: step limit exceeded at x = " + std::to_string(x));
    }
    const double remaining = x_max - x;
    if (remaining <= std::abs(x) * 1e-14 + 1e-300) {
      path.nodes.back().x = x_max;  // sub-roundoff sliver: snap instead of stepping
      break;
    }
    h = std::min(h, remaining);
    if (h <= std::abs(x) * 1e-14 + 1e-300) {
      throw std::runtime_error("solve_system: step size underflow at x = " + std::to_string(x));
    }

    for (int s = 1; s < 7; ++s) {
      for (std::size_t d = 0; d < dim; ++d) {
        double acc = y[d];
        for (int j = 0; j < s; ++j) acc += h * kA[s][j] * k[j][d];
        stage[d] = acc;
      }
      if (s == 6) y5 = stage;  // row 6 holds the 5th-order weights
      path.rhs(x + kC[s] * h, stage, k[s]);
    }

    double err_sq = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      double e = 0.0;
      for (int s = 0; s < 7; ++s) e += kErr[s] * k[s][d];
      e *= h;
      const double scale =
          path.tol.abs + path.tol.rel * std::max(std::abs(y[d]), std::abs(y5[d]));
      err_sq += (e / scale) * (e / scale);
    }
    const double err = std::sqrt(err_sq / static_cast<double>(dim));

    if (err <= 1.0) {
      x += h;
      y = y5;
      check_state(y, x);
      path.nodes.push_back({x, y, k[6]});
      k[0] = k[6];  // FSAL
    }
    const double factor =
        err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= factor;
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& tok : split(s, ',')) {
    out.push_back(std::stod(trim(tok)));
  }
  return out;
}

}  // namespace

void validate(const LinearFodeSpec& spec) {
  if (spec.y0.empty()) {
    throw std::invalid_argument("LinearFodeSpec: y0 must not be empty");
  }
  if (spec.a.size() != spec.y0.size() + 1) {
    throw std::invalid_argument("LinearFodeSpec: a must have y0.size() + 1 entries");
  }
  if (spec.a[spec.y0.size() - 1] == 0.0) {
    throw std::invalid_argument("LinearFodeSpec: leading derivative coefficient must be nonzero");
  }
  if (!(spec.beta > 0.0) || spec.beta >= 1.0) {
    throw std::domain_error("LinearFodeSpec: beta must lie in (0, 1)");
  }
  for (double v : spec.a) {
    if (!std::isfinite(v)) throw std::invalid_argument("LinearFodeSpec: coefficients must be finite");
  }
  for (double v : spec.y0) {
    if (!std::isfinite(v)) throw std::invalid_argument("LinearFodeSpec: y0 must be finite");
  }
}

OdePath solve_system(const SystemRhs& rhs, const std::vector<double>& y0, double x_max,
                     const RkTolerances& tol) {
  if (!rhs) throw std::invalid_argument("solve_system: rhs must be callable");
  if (y0.empty()) throw std::invalid_argument("solve_system: empty initial state");
  if (!(x_max >= 0.0) || !std::isfinite(x_max)) {
    throw std::invalid_argument("solve_system: x_max must be finite and >= 0");
  }
  OdePath path;
  path.rhs = rhs;
  path.tol = tol;
  std::vector<double> dy(y0.size());
  rhs(0.0, y0, dy);
  path.nodes.push_back({0.0, y0, dy});
  if (x_max > 0.0) integrate_to(path, x_max);
  return path;
}

OdePath solve_classical(const LinearFodeSpec& spec, double x_max, const RkTolerances& tol) {
  validate(spec);
  const std::size_t n = spec.y0.size();
  const std::vector<double> a = spec.a;
  const std::function<double(double)> forcing = spec.forcing;
  // companion form: y[i] = z^{(i)};  a_n z^{(n)} = F - a_{n+1} z - sum a_k z^{(k)}
  SystemRhs rhs = [n, a, forcing](double x, const std::vector<double>& y,
                                  std::vector<double>& dy) {
    for (std::size_t i = 0; i + 1 < n; ++i) dy[i] = y[i + 1];
    double top = forcing ? forcing(x) : 0.0;
    top -= a[n] * y[0];
    for (std::size_t k = 1; k < n; ++k) top -= a[k - 1] * y[k];
    dy[n - 1] = top / a[n - 1];
  };
  return solve_system(rhs, spec.y0, x_max, tol);
}

void extend_path(OdePath& path, double new_x_max) {
  if (path.nodes.empty() || !path.rhs) {
    throw std::invalid_argument("extend_path: path was not produced by solve_system");
  }
  if (!(new_x_max >= path.x_max()) || !std::isfinite(new_x_max)) {
    throw std::invalid_argument("extend_path: new endpoint must be finite and beyond x_max");
  }
  if (new_x_max > path.x_max()) integrate_to(path, new_x_max);
}

double eval_path(const OdePath& path, double x) {
  if (path.nodes.empty()) {
    throw std::out_of_range("eval_path: empty path");
  }
  const double lo = path.nodes.front().x;
  const double hi = path.nodes.back().x;
  if (!(x >= lo) || !(x <= hi)) {
    throw std::out_of_range("eval_path: x = " + std::to_string(x) + " outside [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  auto it = std::upper_bound(path.nodes.begin(), path.nodes.end(), x,
                             [](double v, const OdePath::Node& nd) { return v < nd.x; });
  if (it == path.nodes.begin()) return path.nodes.front().y[0];
  if (it == path.nodes.end()) return path.nodes.back().y[0];
  const OdePath::Node& n1 = *it;
  const OdePath::Node& n0 = *(it - 1);
  const double h = n1.x - n0.x;
  const double th = (x - n0.x) / h;
  const double h00 = (1.0 + 2.0 * th) * (1.0 - th) * (1.0 - th);
  const double h10 = th * (1.0 - th) * (1.0 - th);
  const double h01 = th * th * (3.0 - 2.0 * th);
  const double h11 = th * th * (th - 1.0);
  return h00 * n0.y[0] + h10 * h * n0.dy[0] + h01 * n1.y[0] + h11 * h * n1.dy[0];
}

Estimate solve_fode_at(const LinearFodeSpec& spec, double t, std::uint64_t n, RngStream& stream,
                       const RkTolerances& tol) {
  validate(spec);
  if (n == 0) throw std::invalid_argument("solve_fode_at: n must be >= 1");
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("solve_fode_at: t must be finite and >= 0");
  }

  SampleBatch batch = sample_inverse_subordinator(stream, spec.beta, t, n);
  std::vector<double>& s = batch.values;
  std::sort(s.begin(), s.end());
  const double s_max = s.back();

  Accumulator acc;
  if (s_max == 0.0) {
    for (std::uint64_t i = 0; i < n; ++i) acc.add(spec.y0[0]);
    return acc.estimate();
  }

  const std::size_t q_idx = std::min<std::size_t>(
      s.size() - 1,
      static_cast<std::size_t>(std::ceil(0.9999 * static_cast<double>(s.size()))) - 1);
  double horizon = s[q_idx];
  if (horizon <= 0.0) horizon = s_max;

  OdePath path = solve_classical(spec, horizon, tol);
  while (path.x_max() < s_max) {
    extend_path(path, std::min(s_max, std::max(2.0 * path.x_max(), 1e-3)));
  }

  // monotone sweep: advance the segment cursor instead of re-searching
  std::size_t seg = 0;
  const auto& nodes = path.nodes;
  for (double si : s) {
    while (seg + 2 < nodes.size() && nodes[seg + 1].x < si) ++seg;
    const OdePath::Node& n0 = nodes[seg];
    const OdePath::Node& n1 = nodes[seg + 1];
    const double h = n1.x - n0.x;
    const double th = std::clamp((si - n0.x) / h, 0.0, 1.0);
    const double h00 = (1.0 + 2.0 * th) * (1.0 - th) * (1.0 - th);
    const double h10 = th * (1.0 - th) * (1.0 - th);
    const double h01 = th * th * (3.0 - 2.0 * th);
    const double h11 = th * th * (th - 1.0);
    acc.add(h00 * n0.y[0] + h10 * h * n0.dy[0] + h01 * n1.y[0] + h11 * h * n1.dy[0]);
  }
  return acc.estimate();
}

std::vector<FodePoint> solve_fode(const LinearFodeSpec& spec, const GridSpec& t_grid,
                                  std::uint64_t n, std::uint64_t master_seed,
                                  const RkTolerances& tol) {
  validate(t_grid);
  std::vector<FodePoint> out;
  out.reserve(t_grid.count);
  for (std::size_t i = 0; i < t_grid.count; ++i) {
    RngStream stream(master_seed, i);
    FodePoint p;
    p.t = t_grid.point(i);
    p.estimate = solve_fode_at(spec, p.t, n, stream, tol);
    out.push_back(p);
  }
  return out;
}

LinearFodeSpec builtin_fode_spec(const std::string& name, double beta) {
  LinearFodeSpec spec;
  spec.beta = beta;
  if (name == "decay") {
    spec.a = {1.0, 1.0};
    spec.y0 = {1.0};
  } else if (name == "growth") {
    spec.a = {1.0, -1.0};
    spec.y0 = {1.0};
  } else if (name == "oscillator") {
    spec.a = {0.0, 1.0, 1.0};
    spec.y0 = {0.0, 1.0};
  } else if (name == "constant") {
    spec.a = {1.0, 0.0};
    spec.y0 = {0.0};
    spec.forcing = [](double) { return 1.0; };
  } else {
    throw std::invalid_argument("builtin_fode_spec: unknown problem '" + name + "'");
  }
  return spec;
}

std::function<double(double)> fode_exact_solution(const std::string& name, double beta) {
  if (name == "decay") {
    return [beta](double t) { return mittag_leffler({beta, 1.0}, -std::pow(t, beta)); };
  }
  if (name == "growth") {
    return [beta](double t) { return mittag_leffler({beta, 1.0}, std::pow(t, beta)); };
  }
  if (name == "oscillator") {
    return [beta](double t) { return frac_sin(beta, t); };
  }
  if (name == "constant") {
    return [beta](double t) { return std::pow(t, beta) * rgamma(beta + 1.0); };
  }
  return {};
}

LinearFodeSpec parse_fode_config(std::istream& in) {
  LinearFodeSpec spec;
  spec.a.clear();
  spec.y0.clear();
  std::string preset;
  double beta = 0.5;
  bool have_beta = false;
  double forcing_const = 0.0;
  bool have_forcing = false;

  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("fode config: expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "beta") {
      beta = std::stod(value);
      have_beta = true;
    } else if (key == "a") {
      spec.a = parse_list(value);
    } else if (key == "y0") {
      spec.y0 = parse_list(value);
    } else if (key == "forcing_const") {
      forcing_const = std::stod(value);
      have_forcing = true;
    } else if (key == "preset") {
      preset = value;
    } else {
      throw std::invalid_argument("fode config: unknown key '" + key + "'");
    }
  }

  if (!preset.empty()) {
    LinearFodeSpec out = builtin_fode_spec(preset, have_beta ? beta : 0.5);
    if (!spec.a.empty()) out.a = spec.a;
    if (!spec.y0.empty()) out.y0 = spec.y0;
    if (have_forcing) {
      out.forcing = [forcing_const](double) { return forcing_const; };
    }
    validate(out);
    return out;
  }

  spec.beta = beta;
  if (have_forcing) {
    spec.forcing = [forcing_const](double) { return forcing_const; };
  }
  validate(spec);
  return spec;
}

LinearFodeSpec load_fode_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("load_fode_config: cannot open '" + path + "'");
  }
  return parse_fode_config(in);
}

}  // namespace fracmc
