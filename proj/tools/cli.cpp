#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"

#include <conelp/bench.hpp>
#include <conelp/errors.hpp>
#include <conelp/instance_gen.hpp>
#include <conelp/lp_solver.hpp>
#include <conelp/problem_io.hpp>
#include <conelp/simplex.hpp>

namespace conelp::cli {

namespace {

void print_error(std::ostream& out, const std::string& kind, const std::string& message) {
  Json doc;
  doc["error"] = kind;
  doc["message"] = message;
  out << doc.dump() << '\n';
}

struct SolveArgs {
  std::string input;
  std::string output;
  std::string theta = "auto";
  double tol = 1e-6;
  int rounds = 12;
  bool oracle = false;
  std::string trace;
};

int do_solve(const SolveArgs& a, std::ostream& out) {
  LpProblem prob;
  try {
    prob = read_problem(a.input);
  } catch (const ParseError& e) {
    print_error(out, e.kind(), e.what());
    return kParseError;
  }

  ThetaPolicy policy = ThetaPolicy::automatic(prob);
  if (a.theta != "auto") {
    try {
      std::size_t used = 0;
      policy.theta0 = std::stod(a.theta, &used);
      if (used != a.theta.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      print_error(out, "ParseError", "--theta expects 'auto' or a positive number");
      return kParseError;
    }
  }
  policy.max_rounds = a.rounds;
  SolveOptions opts;
  opts.certificate_tol = a.tol;

  Json report;
  int code = kOk;
  try {
    const LpSolution sol = solve(prob, policy, Vector::Zero(prob.cols()), opts);
    report = solution_to_json(sol);
    if (sol.status != LpStatus::Optimal) code = kSolverFailure;
    if (a.oracle) {
      const OracleSolution oracle = solve_simplex(prob);
      report["oracle"] = oracle_to_json(oracle);
      if (oracle.status == OracleStatus::Optimal && sol.status == LpStatus::Optimal) {
        report["rel_deviation"] = relative_deviation(sol.objective, oracle.objective);
      } else {
        report["rel_deviation"] = nullptr;
      }
    }
    if (!a.trace.empty()) {
      std::ofstream tf(a.trace);
      if (!tf) throw Error("cannot write trace file '" + a.trace + "'");
      write_trace_csv(tf, make_trace(sol.basis_trace, sol.update_times));
    }
  } catch (const InvalidInput& e) {
    print_error(out, e.kind(), e.what());
    return kParseError;
  } catch (const Error& e) {
    print_error(out, e.kind(), e.what());
    return kSolverFailure;
  }

  if (a.output.empty()) {
    out << report.dump(2) << '\n';
  } else {
    std::ofstream f(a.output);
    f << report.dump(2) << '\n';
    if (!f) {
      print_error(out, "Error", "cannot write '" + a.output + "'");
      return kSolverFailure;
    }
  }
  return code;
}

struct GenArgs {
  std::string family = "box";
  Index n = 10;
  Index m = 10;
  std::uint64_t seed = 1;
  std::string output;
};

int do_gen(const GenArgs& a, std::ostream& out) {
  try {
    const InstanceSpec spec{parse_family(a.family), a.n, a.m, a.seed};
    const LpProblem prob = generate(spec);
    const ProblemOrigin origin{spec.family, spec.m, spec.seed};
    if (a.output.empty() || a.output == "-") {
      out << problem_to_json(prob, origin).dump() << '\n';
    } else {
      write_problem(a.output, prob, origin);
    }
  } catch (const InvalidInput& e) {
    print_error(out, e.kind(), e.what());
    return kParseError;
  } catch (const Error& e) {
    print_error(out, e.kind(), e.what());
    return kSolverFailure;
  }
  return kOk;
}

struct BenchArgs {
  std::vector<Index> sizes;
  std::vector<Index> ms;
  unsigned seeds = 5;
  std::uint64_t seed_base = 1;
  std::vector<std::string> solvers{kSolverConelp, kSolverSimplex};
  std::vector<std::string> families{"box"};
  std::string csv;
  unsigned threads = 0;
};

int do_bench(const BenchArgs& a, std::ostream& out) {
  BenchConfig config;
  try {
    config.families.clear();
    for (const auto& f : a.families) config.families.push_back(parse_family(f));
    for (Index n : a.sizes) {
      if (a.ms.empty()) {
        config.grid.push_back({n, n});
      } else {
        for (Index m : a.ms) config.grid.push_back({n, m});
      }
    }
    for (unsigned k = 0; k < a.seeds; ++k) config.seeds.push_back(a.seed_base + k);
    config.solvers = a.solvers;
    config.threads = a.threads;
  } catch (const InvalidInput& e) {
    print_error(out, e.kind(), e.what());
    return kParseError;
  }

  std::unique_ptr<std::ofstream> file;
  std::ostream* csv = &out;
  if (!a.csv.empty() && a.csv != "-") {
    file = std::make_unique<std::ofstream>(a.csv);
    if (!*file) {
      print_error(out, "Error", "cannot write '" + a.csv + "'");
      return kSolverFailure;
    }
    csv = file.get();
  }
  write_bench_header(*csv);
  std::vector<BenchRecord> records;
  try {
    records = run_bench(config, [&](const BenchRecord& rec) {
      write_bench_row(*csv, rec);
      csv->flush();
    });
  } catch (const InvalidInput& e) {
    print_error(out, e.kind(), e.what());
    return kParseError;
  }
  if (file) out << bench_summary(records);
  bool any_failed = false;
  for (const auto& rec : records) any_failed = any_failed || rec.failed();
  return any_failed ? kSolverFailure : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear programming by projection onto a polyhedral cone", "conelp"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an LP given as a JSON problem file");
  solve_cmd->add_option("input", solve_args.input, "Problem file")->required();
  solve_cmd->add_option("-o,--output", solve_args.output, "Report path (default: stdout)");
  solve_cmd->add_option("--theta", solve_args.theta, "Initial shift: 'auto' or a number");
  solve_cmd->add_option("--rounds", solve_args.rounds, "Maximum theta rounds")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--tol", solve_args.tol, "Certificate tolerance")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--oracle", solve_args.oracle, "Also run the simplex oracle");
  solve_cmd->add_option("--trace", solve_args.trace, "Write the basis trace CSV here");

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded test instance");
  gen_cmd->add_option("--family", gen_args.family, "box | dense");
  gen_cmd->add_option("--n", gen_args.n, "Number of variables")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--m", gen_args.m, "Rows of the cone block")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen_args.seed, "RNG seed");
  gen_cmd->add_option("-o,--output", gen_args.output, "Output path (default: stdout)");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Run the timing/accuracy grid");
  bench_cmd->add_option("--sizes", bench_args.sizes, "Values of n (n = m unless --m is given)")
      ->delimiter(',')
      ->required();
  bench_cmd->add_option("--m", bench_args.ms, "Values of m crossed with --sizes")->delimiter(',');
  bench_cmd->add_option("--seeds", bench_args.seeds, "Seeds per grid point")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed-base", bench_args.seed_base, "First seed");
  bench_cmd->add_option("--solvers", bench_args.solvers, "conelp,simplex")->delimiter(',');
  bench_cmd->add_option("--family", bench_args.families, "box,dense")->delimiter(',');
  bench_cmd->add_option("--csv", bench_args.csv, "CSV output path (default: stdout)");
  bench_cmd->add_option("--threads", bench_args.threads, "Worker threads (default: CONELP_THREADS)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    print_error(out, "UsageError", e.what());
    return kParseError;
  }

  if (*solve_cmd) return do_solve(solve_args, out);
  if (*gen_cmd) return do_gen(gen_args, out);
  return do_bench(bench_args, out);
}

}  // namespace conelp::cli
