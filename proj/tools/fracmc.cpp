#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "fracmc/csv.hpp"
#include "fracmc/fode.hpp"
#include "fracmc/green.hpp"
#include "fracmc/mc.hpp"
#include "fracmc/mittag_leffler.hpp"
#include "fracmc/oracle.hpp"
#include "fracmc/rng.hpp"
#include "fracmc/stable_sampler.hpp"

namespace {

fracmc::GridSpec parse_grid(const std::string& text) {
  std::istringstream in(text);
  std::string a, b, n;
  if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, n)) {
    throw std::invalid_argument("grid must have the form start:stop:count, got '" + text + "'");
  }
  fracmc::GridSpec grid;
  grid.start = fracmc::parse_double(a);
  grid.stop = fracmc::parse_double(b);
  const long long count = std::stoll(n);
  if (count < 1) throw std::invalid_argument("grid count must be >= 1");
  grid.count = static_cast<std::size_t>(count);
  fracmc::validate(grid);
  return grid;
}

std::pair<std::string, std::string> split_colon(const std::string& text) {
  const auto pos = text.find(':');
  if (pos == std::string::npos) {
    throw std::invalid_argument("expected a colon-separated pair, got '" + text + "'");
  }
  return {text.substr(0, pos), text.substr(pos + 1)};
}

// Writes to the file when set, else stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct CommonArgs {
  std::uint64_t seed = 1;
  std::uint64_t n = 10000;
  std::string out;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--seed", args.seed, "master RNG seed");
  cmd->add_option("--n", args.n, "Monte Carlo draws per point")->check(CLI::PositiveNumber);
  cmd->add_option("--out", args.out, "output CSV path (default stdout)");
}

struct InitialArgs {
  double x0 = 0.0;
  std::string gaussian;  // mean:variance
  std::string csv_path;
};

void add_initial(CLI::App* cmd, InitialArgs& args) {
  cmd->add_option("--x0", args.x0, "point-mass initial position");
  cmd->add_option("--initial-gaussian", args.gaussian, "Gaussian initial density mean:variance");
  cmd->add_option("--initial-csv", args.csv_path, "tabulated initial density (x,density CSV)");
}

fracmc::InitialData make_initial(const InitialArgs& args) {
  if (!args.gaussian.empty() && !args.csv_path.empty()) {
    throw std::invalid_argument("--initial-gaussian and --initial-csv are mutually exclusive");
  }
  if (!args.gaussian.empty()) {
    const auto [m, v] = split_colon(args.gaussian);
    return fracmc::InitialData::gaussian(fracmc::parse_double(m), fracmc::parse_double(v));
  }
  if (!args.csv_path.empty()) {
    std::ifstream in(args.csv_path);
    if (!in) throw std::runtime_error("cannot open '" + args.csv_path + "'");
    std::vector<double> x, d;
    fracmc::read_xy(in, x, d);
    return fracmc::InitialData::tabulated(std::move(x), std::move(d));
  }
  return fracmc::InitialData::point_mass(args.x0);
}

fracmc::GridSpec time_grid(double t_single, const std::string& t_grid_text, bool has_single) {
  if (!t_grid_text.empty()) return parse_grid(t_grid_text);
  if (has_single) return fracmc::GridSpec{t_single, t_single, 1};
  throw std::invalid_argument("either --t or --t-grid is required");
}

void append_meta(fracmc::Table& table, const std::string& key, const std::string& value) {
  table.meta.emplace_back(key, value);
}

void append_meta(fracmc::Table& table, const std::string& key, double value) {
  table.meta.emplace_back(key, fracmc::format_double(value));
}

void append_meta(fracmc::Table& table, const std::string& key, std::uint64_t value) {
  table.meta.emplace_back(key, std::to_string(value));
}

// Runs fn over every (ix, it) cell on `workers` threads; cell c is seeded with
// derive_seed(seed, c), so the result is identical for any worker count.
std::vector<fracmc::Estimate> grid_run(
    const fracmc::GridSpec& x_grid, const fracmc::GridSpec& t_grid, unsigned workers,
    std::uint64_t seed,
    const std::function<fracmc::Estimate(double, double, std::uint64_t)>& fn) {
  const auto xs = x_grid.points();
  const auto ts = t_grid.points();
  std::vector<fracmc::Estimate> cells(xs.size() * ts.size());
  std::vector<std::exception_ptr> errors(std::max<unsigned>(workers, 1));

  auto run_range = [&](unsigned w, std::size_t begin, std::size_t end) {
    try {
      for (std::size_t c = begin; c < end; ++c) {
        cells[c] = fn(xs[c / ts.size()], ts[c % ts.size()], fracmc::RngStream::derive_seed(seed, c));
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  if (workers <= 1) {
    run_range(0, 0, cells.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (cells.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(cells.size(), begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run_range, w, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return cells;
}

fracmc::Table surface_table(const fracmc::GridSpec& x_grid, const fracmc::GridSpec& t_grid,
                            const std::vector<fracmc::Estimate>& cells) {
  fracmc::Table table;
  table.columns = {"x", "t", "mean", "std_error", "n"};
  const auto xs = x_grid.points();
  const auto ts = t_grid.points();
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& e = cells[c];
    table.rows.push_back({xs[c / ts.size()], ts[c % ts.size()], e.mean, e.std_error,
                          static_cast<double>(e.n)});
  }
  return table;
}

int run_sample(const CommonArgs& common, const std::string& law_name, double alpha, double beta,
               double t, double tau, std::uint64_t stream_id) {
  fracmc::Law law;
  if (law_name == "stable-oneside") {
    law = fracmc::StableOneSided{alpha};
  } else if (law_name == "subordinator") {
    law = fracmc::Subordinator{alpha, t};
  } else if (law_name == "inverse-subordinator") {
    law = fracmc::InverseSubordinator{beta, t};
  } else if (law_name == "gaussian") {
    law = fracmc::GaussianKernel{tau};
  } else {
    throw std::invalid_argument("unknown law '" + law_name + "'");
  }
  fracmc::validate(law);
  fracmc::RngStream stream(common.seed, stream_id);
  fracmc::SampleBatch batch;
  batch.law = law;
  batch.master_seed = common.seed;
  batch.stream_id = stream_id;
  batch.values.resize(common.n);
  for (auto& v : batch.values) v = fracmc::draw(law, stream);
  Output out(common.out);
  fracmc::write_batch(out.stream(), batch);
  return 0;
}

int run_fode(const CommonArgs& common, const std::string& spec_name, double beta,
             const std::string& spec_file, const std::string& t_grid_text, unsigned repeats) {
  fracmc::LinearFodeSpec spec;
  std::function<double(double)> exact;
  if (!spec_file.empty()) {
    spec = fracmc::load_fode_config(spec_file);
  } else if (!spec_name.empty()) {
    spec = fracmc::builtin_fode_spec(spec_name, beta);
    exact = fracmc::fode_exact_solution(spec_name, beta);
  } else {
    throw std::invalid_argument("either --spec-name or --spec is required");
  }
  const fracmc::GridSpec grid = parse_grid(t_grid_text);

  auto estimator = [&](double t, fracmc::RngStream& stream) {
    return fracmc::solve_fode_at(spec, t, common.n, stream);
  };
  const auto points = fracmc::sweep(common.seed, grid, estimator, repeats);

  fracmc::Table table;
  append_meta(table, "command", std::string("fode"));
  if (!spec_name.empty()) append_meta(table, "problem", spec_name);
  if (!spec_file.empty()) append_meta(table, "spec_file", spec_file);
  append_meta(table, "beta", spec.beta);
  append_meta(table, "seed", common.seed);
  append_meta(table, "n", common.n);
  append_meta(table, "repeats", static_cast<std::uint64_t>(repeats));
  table.columns = {"t", "mc_mean", "mc_std_error", "lo", "hi", "n"};
  if (exact) table.columns.push_back("exact");
  for (const auto& p : points) {
    std::vector<double> row{p.t,  p.estimate.mean, p.estimate.std_error,
                            p.lo, p.hi,            static_cast<double>(p.estimate.n)};
    if (exact) row.push_back(exact(p.t));
    table.rows.push_back(std::move(row));
  }
  Output out(common.out);
  fracmc::write_table(out.stream(), table);
  return 0;
}

int run_heat(const CommonArgs& common, double alpha, double beta, double theta,
             const std::string& x_grid_text, double t_single, const std::string& t_grid_text,
             bool has_t, const InitialArgs& initial_args, unsigned shards, bool with_oracle) {
  fracmc::HeatSpec spec;
  spec.order = {beta, alpha, theta};
  spec.initial = make_initial(initial_args);
  const fracmc::GridSpec x_grid = parse_grid(x_grid_text);
  const fracmc::GridSpec t_grid = time_grid(t_single, t_grid_text, has_t);

  const auto cells = grid_run(x_grid, t_grid, shards, common.seed,
                              [&](double x, double t, std::uint64_t cell_seed) {
                                return fracmc::heat_solution(spec, x, t, common.n, cell_seed);
                              });

  fracmc::Table table = surface_table(x_grid, t_grid, cells);
  if (with_oracle) {
    table.columns.push_back("oracle");
    const auto ts = t_grid.points();
    const auto xs = x_grid.points();
    for (std::size_t c = 0; c < table.rows.size(); ++c) {
      table.rows[c].push_back(fracmc::green_fourier(spec.order, xs[c / ts.size()],
                                                    ts[c % ts.size()]));
    }
  }
  fracmc::Table meta;
  append_meta(meta, "command", std::string("heat"));
  append_meta(meta, "alpha", alpha);
  append_meta(meta, "beta", beta);
  append_meta(meta, "theta", theta);
  append_meta(meta, "seed", common.seed);
  append_meta(meta, "n", common.n);
  append_meta(meta, "shards", static_cast<std::uint64_t>(shards));
  table.meta = meta.meta;
  Output out(common.out);
  fracmc::write_table(out.stream(), table);
  return 0;
}

int run_wave(const CommonArgs& common, double beta, double speed, const std::string& profile_name,
             const std::string& x_grid_text, double t_single, const std::string& t_grid_text,
             bool has_t, unsigned shards) {
  fracmc::WaveSpec spec;
  spec.beta = beta;
  spec.wave_speed = speed;
  if (profile_name == "gaussian") {
    spec.profile = [](double v) { return std::exp(-v * v); };
  } else if (profile_name == "cosine") {
    spec.profile = [](double v) { return std::cos(v); };
  } else if (profile_name == "linear") {
    spec.profile = [](double v) { return v; };
  } else {
    throw std::invalid_argument("unknown profile '" + profile_name + "'");
  }
  const fracmc::GridSpec x_grid = parse_grid(x_grid_text);
  const fracmc::GridSpec t_grid = time_grid(t_single, t_grid_text, has_t);

  const auto cells = grid_run(x_grid, t_grid, shards, common.seed,
                              [&](double x, double t, std::uint64_t cell_seed) {
                                return fracmc::wave_solution(spec, x, t, common.n, cell_seed);
                              });

  fracmc::Table table = surface_table(x_grid, t_grid, cells);
  fracmc::Table meta;
  append_meta(meta, "command", std::string("wave"));
  append_meta(meta, "beta", beta);
  append_meta(meta, "wave_speed", speed);
  append_meta(meta, "profile", profile_name);
  append_meta(meta, "seed", common.seed);
  append_meta(meta, "n", common.n);
  append_meta(meta, "shards", static_cast<std::uint64_t>(shards));
  table.meta = meta.meta;
  Output out(common.out);
  fracmc::write_table(out.stream(), table);
  return 0;
}

int run_fokker_planck(const CommonArgs& common, double beta, const std::string& x_grid_text,
                      double t_single, const std::string& t_grid_text, bool has_t,
                      const InitialArgs& initial_args, unsigned shards,
                      const std::string& compare_n) {
  fracmc::FokkerPlanckSpec spec;
  spec.beta = beta;
  spec.initial = make_initial(initial_args);
  const fracmc::GridSpec x_grid = parse_grid(x_grid_text);
  const fracmc::GridSpec t_grid = time_grid(t_single, t_grid_text, has_t);

  Output out(common.out);
  if (!compare_n.empty()) {
    const auto [a_text, b_text] = split_colon(compare_n);
    const std::uint64_t n_a = std::stoull(a_text);
    const std::uint64_t n_b = std::stoull(b_text);
    if (n_a == 0 || n_b == 0) throw std::invalid_argument("--compare-n counts must be >= 1");
    const std::uint64_t seed_a = fracmc::RngStream::derive_seed(common.seed, 0);
    const std::uint64_t seed_b = fracmc::RngStream::derive_seed(common.seed, 1);
    auto runner = [&](std::uint64_t n_run, std::uint64_t seed_run) {
      return grid_run(x_grid, t_grid, shards, seed_run,
                      [&](double x, double t, std::uint64_t cell_seed) {
                        return fracmc::fokker_planck_solution(spec, x, t, n_run, cell_seed);
                      });
    };
    const auto cells_a = runner(n_a, seed_a);
    const auto cells_b = runner(n_b, seed_b);

    fracmc::Table table;
    append_meta(table, "command", std::string("fokker-planck"));
    append_meta(table, "beta", beta);
    append_meta(table, "seed", common.seed);
    append_meta(table, "n_a", n_a);
    append_meta(table, "n_b", n_b);
    table.columns = {"x", "t", "mean_a", "std_error_a", "mean_b", "std_error_b", "abs_diff"};
    const auto xs = x_grid.points();
    const auto ts = t_grid.points();
    for (std::size_t c = 0; c < cells_a.size(); ++c) {
      table.rows.push_back({xs[c / ts.size()], ts[c % ts.size()], cells_a[c].mean,
                            cells_a[c].std_error, cells_b[c].mean, cells_b[c].std_error,
                            std::abs(cells_a[c].mean - cells_b[c].mean)});
    }
    fracmc::write_table(out.stream(), table);
    return 0;
  }

  const auto cells = grid_run(x_grid, t_grid, shards, common.seed,
                              [&](double x, double t, std::uint64_t cell_seed) {
                                return fracmc::fokker_planck_solution(spec, x, t, common.n,
                                                                      cell_seed);
                              });
  fracmc::Table table = surface_table(x_grid, t_grid, cells);
  fracmc::Table meta;
  append_meta(meta, "command", std::string("fokker-planck"));
  append_meta(meta, "beta", beta);
  append_meta(meta, "seed", common.seed);
  append_meta(meta, "n", common.n);
  append_meta(meta, "shards", static_cast<std::uint64_t>(shards));
  table.meta = meta.meta;
  fracmc::write_table(out.stream(), table);
  return 0;
}

int run_oracle(const CommonArgs& common, const std::string& check, double alpha, double beta,
               double s_single, const std::string& s_grid_text, bool has_s,
               const std::string& x_grid_text, double t, unsigned shards) {
  Output out(common.out);
  fracmc::Table table;
  append_meta(table, "command", std::string("oracle"));
  append_meta(table, "check", check);
  append_meta(table, "beta", beta);
  append_meta(table, "t", t);
  append_meta(table, "seed", common.seed);
  append_meta(table, "n", common.n);

  if (check == "laplace") {
    fracmc::GridSpec s_grid;
    if (!s_grid_text.empty()) {
      s_grid = parse_grid(s_grid_text);
    } else if (has_s) {
      s_grid = {s_single, s_single, 1};
    } else {
      throw std::invalid_argument("--s or --s-grid is required for the laplace check");
    }
    append_meta(table, "shards", static_cast<std::uint64_t>(shards));
    table.columns = {"s", "t", "exact", "mc", "std_error", "diff_over_se"};
    for (std::size_t i = 0; i < s_grid.count; ++i) {
      const double s = s_grid.point(i);
      const double exact = fracmc::mittag_leffler({beta, 1.0}, -s * std::pow(t, beta));
      const fracmc::Estimate mc = fracmc::expect_sharded(
          fracmc::RngStream::derive_seed(common.seed, i), fracmc::InverseSubordinator{beta, t},
          [s](double v) { return std::exp(-s * v); }, common.n, shards);
      const double dse = mc.std_error > 0.0 ? std::abs(mc.mean - exact) / mc.std_error
                                            : std::abs(mc.mean - exact);
      table.rows.push_back({s, t, exact, mc.mean, mc.std_error, dse});
    }
    fracmc::write_table(out.stream(), table);
    return 0;
  }

  if (check == "green-fourier") {
    if (x_grid_text.empty()) {
      throw std::invalid_argument("--x-grid is required for the green-fourier check");
    }
    append_meta(table, "alpha", alpha);
    const fracmc::GridSpec x_grid = parse_grid(x_grid_text);
    fracmc::HeatSpec spec;
    spec.order = {beta, alpha, 0.0};
    table.columns = {"x", "t", "exact", "mc", "std_error", "diff_over_se"};
    for (std::size_t i = 0; i < x_grid.count; ++i) {
      const double x = x_grid.point(i);
      const double exact = fracmc::green_fourier(spec.order, x, t);
      const fracmc::Estimate mc =
          fracmc::heat_solution(spec, x, t, common.n, fracmc::RngStream::derive_seed(common.seed, i));
      const double dse = mc.std_error > 0.0 ? std::abs(mc.mean - exact) / mc.std_error
                                            : std::abs(mc.mean - exact);
      table.rows.push_back({x, t, exact, mc.mean, mc.std_error, dse});
    }
    fracmc::write_table(out.stream(), table);
    return 0;
  }

  throw std::invalid_argument("unknown oracle check '" + check + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo solutions of fractional diffusion and relaxation problems"};
  app.require_subcommand(1);

  // sample
  auto* sample = app.add_subcommand("sample", "draw from one of the supported laws");
  CommonArgs sample_common;
  std::string sample_law;
  double sample_alpha = 0.5, sample_beta = 0.5, sample_t = 1.0, sample_tau = 1.0;
  std::uint64_t sample_stream = 0;
  sample->add_option("--law", sample_law,
                     "stable-oneside | subordinator | inverse-subordinator | gaussian")
      ->required();
  sample->add_option("--alpha", sample_alpha, "stability index");
  sample->add_option("--beta", sample_beta, "inverse subordinator order");
  sample->add_option("--t", sample_t, "process time");
  sample->add_option("--tau", sample_tau, "gaussian kernel variance scale");
  sample->add_option("--stream", sample_stream, "stream id");
  add_common(sample, sample_common);

  // fode
  auto* fode = app.add_subcommand("fode", "solve a linear fractional relaxation problem");
  CommonArgs fode_common;
  std::string fode_name, fode_file, fode_t_grid;
  double fode_beta = 0.5;
  unsigned fode_repeats = 1;
  fode->add_option("--spec-name", fode_name, "decay | growth | oscillator | constant");
  fode->add_option("--beta", fode_beta, "fractional order in (0, 1)");
  fode->add_option("--spec", fode_file, "problem config file (key = value lines)");
  fode->add_option("--t-grid", fode_t_grid, "time grid start:stop:count")->required();
  fode->add_option("--repeats", fode_repeats, "independent repeats per grid point")
      ->check(CLI::PositiveNumber);
  add_common(fode, fode_common);

  // heat
  auto* heat = app.add_subcommand("heat", "space-time fractional diffusion surface");
  CommonArgs heat_common;
  double heat_alpha = 2.0, heat_beta = 1.0, heat_theta = 0.0, heat_t = 1.0;
  std::string heat_x_grid, heat_t_grid;
  InitialArgs heat_initial;
  unsigned heat_shards = 1;
  bool heat_oracle = false;
  heat->add_option("--alpha", heat_alpha, "space order in (0, 2]");
  heat->add_option("--beta", heat_beta, "time order in (0, 1]");
  heat->add_option("--theta", heat_theta, "skewness (0 only)");
  heat->add_option("--x-grid", heat_x_grid, "space grid start:stop:count")->required();
  auto* heat_t_opt = heat->add_option("--t", heat_t, "single output time");
  heat->add_option("--t-grid", heat_t_grid, "time grid start:stop:count")->excludes(heat_t_opt);
  add_initial(heat, heat_initial);
  heat->add_option("--shards", heat_shards, "worker threads over grid cells")
      ->check(CLI::PositiveNumber);
  heat->add_flag("--oracle", heat_oracle, "append a quadrature oracle column");
  add_common(heat, heat_common);

  // wave
  auto* wave = app.add_subcommand("wave", "fractional wave surface");
  CommonArgs wave_common;
  double wave_beta = 0.5, wave_speed = 1.0, wave_t = 1.0;
  std::string wave_profile = "gaussian", wave_x_grid, wave_t_grid;
  unsigned wave_shards = 1;
  wave->add_option("--beta", wave_beta, "time order is beta + 1, beta in (0, 1)");
  wave->add_option("--wave-speed", wave_speed, "propagation speed");
  wave->add_option("--profile", wave_profile, "gaussian | cosine | linear");
  wave->add_option("--x-grid", wave_x_grid, "space grid start:stop:count")->required();
  auto* wave_t_opt = wave->add_option("--t", wave_t, "single output time");
  wave->add_option("--t-grid", wave_t_grid, "time grid start:stop:count")->excludes(wave_t_opt);
  wave->add_option("--shards", wave_shards, "worker threads over grid cells")
      ->check(CLI::PositiveNumber);
  add_common(wave, wave_common);

  // fokker-planck
  auto* fp = app.add_subcommand("fokker-planck", "time-fractional Fokker-Planck surface");
  CommonArgs fp_common;
  double fp_beta = 1.0, fp_t = 1.0;
  std::string fp_x_grid, fp_t_grid, fp_compare;
  InitialArgs fp_initial;
  unsigned fp_shards = 1;
  fp->add_option("--beta", fp_beta, "time order in (0, 1]");
  fp->add_option("--x-grid", fp_x_grid, "space grid start:stop:count")->required();
  auto* fp_t_opt = fp->add_option("--t", fp_t, "single output time");
  fp->add_option("--t-grid", fp_t_grid, "time grid start:stop:count")->excludes(fp_t_opt);
  add_initial(fp, fp_initial);
  fp->add_option("--shards", fp_shards, "worker threads over grid cells")
      ->check(CLI::PositiveNumber);
  fp->add_option("--compare-n", fp_compare, "two draw counts A:B to contrast");
  add_common(fp, fp_common);

  // oracle
  auto* oracle = app.add_subcommand("oracle", "quadrature oracles with MC comparison");
  CommonArgs oracle_common;
  std::string oracle_check = "laplace", oracle_s_grid, oracle_x_grid;
  double oracle_alpha = 2.0, oracle_beta = 0.5, oracle_s = 1.0, oracle_t = 1.0;
  unsigned oracle_shards = 1;
  oracle->add_option("--check", oracle_check, "laplace | green-fourier");
  oracle->add_option("--alpha", oracle_alpha, "space order (green-fourier)");
  oracle->add_option("--beta", oracle_beta, "time order");
  auto* oracle_s_opt = oracle->add_option("--s", oracle_s, "single transform argument");
  oracle->add_option("--s-grid", oracle_s_grid, "transform grid start:stop:count")
      ->excludes(oracle_s_opt);
  oracle->add_option("--x-grid", oracle_x_grid, "space grid start:stop:count");
  oracle->add_option("--t", oracle_t, "process time");
  oracle->add_option("--shards", oracle_shards, "expect_sharded worker count (laplace)")
      ->check(CLI::PositiveNumber);
  add_common(oracle, oracle_common);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sample->parsed()) {
      return run_sample(sample_common, sample_law, sample_alpha, sample_beta, sample_t,
                        sample_tau, sample_stream);
    }
    if (fode->parsed()) {
      return run_fode(fode_common, fode_name, fode_beta, fode_file, fode_t_grid, fode_repeats);
    }
    if (heat->parsed()) {
      return run_heat(heat_common, heat_alpha, heat_beta, heat_theta, heat_x_grid, heat_t,
                      heat_t_grid, heat_t_opt->count() > 0, heat_initial, heat_shards,
                      heat_oracle);
    }
    if (wave->parsed()) {
      return run_wave(wave_common, wave_beta, wave_speed, wave_profile, wave_x_grid, wave_t,
                      wave_t_grid, wave_t_opt->count() > 0, wave_shards);
    }
    if (fp->parsed()) {
      return run_fokker_planck(fp_common, fp_beta, fp_x_grid, fp_t, fp_t_grid,
                               fp_t_opt->count() > 0, fp_initial, fp_shards, fp_compare);
    }
    if (oracle->parsed()) {
      return run_oracle(oracle_common, oracle_check, oracle_alpha, oracle_beta, oracle_s,
                        oracle_s_grid, oracle_s_opt->count() > 0, oracle_x_grid, oracle_t,
                        oracle_shards);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
