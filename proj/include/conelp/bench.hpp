#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <conelp/instance_gen.hpp>

namespace conelp {

inline constexpr const char* kSolverConelp = "conelp";
inline constexpr const char* kSolverSimplex = "simplex";

// One row per (instance, solver). Failed runs carry NaN objective and
// deviation.
struct BenchRecord {
  Family family = Family::Box;
  Index n = 0;
  Index m = 0;
  std::uint64_t seed = 0;
  std::string solver_id;
  double wall_time_s = 0.0;
  double objective = 0.0;
  double rel_deviation = 0.0;
  double theta_used = 0.0;
  int rounds = 0;                  // theta rounds, or pivots for simplex
  std::size_t final_basis_size = 0;

  bool failed() const;
};

struct TraceRecord {
  std::size_t iteration = 0;
  std::size_t basis_size = 0;
  double update_time_s = 0.0;
};

struct GridPoint {
  Index n = 0;
  Index m = 0;
};

struct BenchConfig {
  std::vector<Family> families{Family::Box};
  std::vector<GridPoint> grid;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> solvers{kSolverConelp, kSolverSimplex};
  unsigned threads = 0;  // 0: default_threads()
};

// min(hardware concurrency, CONELP_THREADS) with a floor of 1.
unsigned default_threads();

// |obj - ref| / (1 + |ref|).
double relative_deviation(double objective, double reference);

// Runs every (family, grid point, seed) instance with each requested solver.
// Timing covers the solve only. Records come back in (family, grid, seed,
// solver) order regardless of how the worker pool finished; `on_record` is
// invoked in that same order as soon as a prefix is complete.
std::vector<BenchRecord> run_bench(const BenchConfig& config,
                                   const std::function<void(const BenchRecord&)>& on_record = {});

void write_bench_header(std::ostream& out);
void write_bench_row(std::ostream& out, const BenchRecord& rec);
void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);
void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace);

std::vector<TraceRecord> make_trace(const std::vector<std::size_t>& basis_sizes,
                                    const std::vector<double>& update_times);

// Median simplex/conelp wall-time ratio per (family, n, m).
std::string bench_summary(const std::vector<BenchRecord>& records);

double median(std::vector<double> values);
// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace conelp
