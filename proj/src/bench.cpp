#include <conelp/bench.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>
#include <tuple>

#include <conelp/errors.hpp>
#include <conelp/lp_solver.hpp>
#include <conelp/simplex.hpp>

namespace conelp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Clock = std::chrono::steady_clock;

struct Job {
  Family family;
  GridPoint point;
  std::uint64_t seed;
};

std::vector<BenchRecord> run_job(const Job& job, const std::vector<std::string>& solvers) {
  const InstanceSpec spec{job.family, job.point.n, job.point.m, job.seed};
  const LpProblem prob = generate(spec);

  auto base = [&](const std::string& id) {
    BenchRecord rec;
    rec.family = job.family;
    rec.n = job.point.n;
    rec.m = job.point.m;
    rec.seed = job.seed;
    rec.solver_id = id;
    return rec;
  };

  // The oracle always runs: its objective is the deviation reference.
  double reference = kNaN;
  BenchRecord oracle_rec = base(kSolverSimplex);
  {
    const auto t0 = Clock::now();
    try {
      const OracleSolution oracle = solve_simplex(prob);
      oracle_rec.wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
      oracle_rec.rounds = static_cast<int>(oracle.pivots);
      if (oracle.status == OracleStatus::Optimal) {
        reference = oracle.objective;
        oracle_rec.objective = oracle.objective;
        oracle_rec.rel_deviation = 0.0;
      } else {
        oracle_rec.objective = kNaN;
        oracle_rec.rel_deviation = kNaN;
      }
    } catch (const Error&) {
      oracle_rec.wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
      oracle_rec.objective = kNaN;
      oracle_rec.rel_deviation = kNaN;
    }
  }

  std::vector<BenchRecord> out;
  for (const auto& id : solvers) {
    if (id == kSolverSimplex) {
      out.push_back(oracle_rec);
    } else if (id == kSolverConelp) {
      BenchRecord rec = base(kSolverConelp);
      const auto t0 = Clock::now();
      try {
        const LpSolution sol = solve(prob);
        rec.wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
        rec.theta_used = sol.theta_used;
        rec.rounds = sol.rounds;
        rec.final_basis_size = sol.diagnostics.active.size();
        if (sol.status == LpStatus::Optimal) {
          rec.objective = sol.objective;
          rec.rel_deviation = relative_deviation(sol.objective, reference);
        } else {
          rec.objective = kNaN;
          rec.rel_deviation = kNaN;
        }
      } catch (const Error&) {
        rec.wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
        rec.objective = kNaN;
        rec.rel_deviation = kNaN;
      }
      out.push_back(rec);
    } else {
      throw InvalidInput("unknown solver id '" + id + "'");
    }
  }
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

}  // namespace

bool BenchRecord::failed() const { return std::isnan(objective); }

unsigned default_threads() {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CONELP_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) threads = std::min<unsigned>(threads, static_cast<unsigned>(cap));
  }
  return threads;
}

double relative_deviation(double objective, double reference) {
  return std::abs(objective - reference) / (1.0 + std::abs(reference));
}

std::vector<BenchRecord> run_bench(const BenchConfig& config,
                                   const std::function<void(const BenchRecord&)>& on_record) {
  if (config.grid.empty() || config.seeds.empty() || config.families.empty()) {
    throw InvalidInput("run_bench: empty grid");
  }
  for (const auto& id : config.solvers) {
    if (id != kSolverConelp && id != kSolverSimplex) {
      throw InvalidInput("unknown solver id '" + id + "'");
    }
  }
  std::vector<Job> jobs;
  for (Family family : config.families) {
    for (const GridPoint& point : config.grid) {
      for (std::uint64_t seed : config.seeds) jobs.push_back({family, point, seed});
    }
  }

  std::vector<std::vector<BenchRecord>> results(jobs.size());
  std::vector<char> done(jobs.size(), 0);
  std::size_t emitted = 0;
  std::mutex mu;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    while (true) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      auto rows = run_job(jobs[j], config.solvers);
      std::lock_guard<std::mutex> lock(mu);
      results[j] = std::move(rows);
      done[j] = 1;
      while (emitted < jobs.size() && done[emitted]) {
        if (on_record) {
          for (const auto& rec : results[emitted]) on_record(rec);
        }
        ++emitted;
      }
    }
  };

  const unsigned threads = std::max(
      1u, std::min<unsigned>(config.threads ? config.threads : default_threads(),
                             static_cast<unsigned>(jobs.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<BenchRecord> records;
  for (auto& rows : results) {
    for (auto& rec : rows) records.push_back(std::move(rec));
  }
  return records;
}

void write_bench_header(std::ostream& out) {
  out << "family,n,m,seed,solver_id,wall_time_s,objective,rel_deviation,theta_used,rounds,"
         "final_basis_size\n";
}

void write_bench_row(std::ostream& out, const BenchRecord& rec) {
  out << to_string(rec.family) << ',' << rec.n << ',' << rec.m << ',' << rec.seed << ','
      << rec.solver_id << ',' << format_double(rec.wall_time_s) << ','
      << format_double(rec.objective) << ',' << format_double(rec.rel_deviation) << ','
      << format_double(rec.theta_used) << ',' << rec.rounds << ',' << rec.final_basis_size
      << '\n';
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  write_bench_header(out);
  for (const auto& rec : records) write_bench_row(out, rec);
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace) {
  out << "iteration,basis_size,update_time_s\n";
  for (const auto& t : trace) {
    out << t.iteration << ',' << t.basis_size << ',' << format_double(t.update_time_s) << '\n';
  }
}

std::vector<TraceRecord> make_trace(const std::vector<std::size_t>& basis_sizes,
                                    const std::vector<double>& update_times) {
  std::vector<TraceRecord> trace;
  const std::size_t count = std::min(basis_sizes.size(), update_times.size());
  trace.reserve(count);
  for (std::size_t i = 0; i < count; ++i) trace.push_back({i, basis_sizes[i], update_times[i]});
  return trace;
}

double median(std::vector<double> values) {
  if (values.empty()) return kNaN;
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidInput("spearman: need two equal-length samples");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mean = (n + 1.0) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

std::string bench_summary(const std::vector<BenchRecord>& records) {
  using Key = std::tuple<int, Index, Index>;
  std::map<Key, std::map<std::uint64_t, std::pair<double, double>>> times;
  for (const auto& rec : records) {
    if (rec.failed()) continue;
    auto& slot = times[{static_cast<int>(rec.family), rec.n, rec.m}][rec.seed];
    if (rec.solver_id == kSolverSimplex) slot.first = rec.wall_time_s;
    if (rec.solver_id == kSolverConelp) slot.second = rec.wall_time_s;
  }
  std::ostringstream out;
  out << "family n m samples median_time_ratio_simplex_over_conelp\n";
  for (const auto& [key, per_seed] : times) {
    std::vector<double> ratios;
    for (const auto& [seed, t] : per_seed) {
      if (t.first > 0.0 && t.second > 0.0) ratios.push_back(t.first / t.second);
    }
    out << to_string(static_cast<Family>(std::get<0>(key))) << ' ' << std::get<1>(key) << ' '
        << std::get<2>(key) << ' ' << ratios.size() << ' ';
    if (ratios.empty()) out << "nan\n";
    else out << std::setprecision(4) << median(ratios) << '\n';
  }
  return out.str();
}

}  // namespace conelp
