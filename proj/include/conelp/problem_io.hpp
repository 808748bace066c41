#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include <conelp/instance_gen.hpp>
#include <conelp/lp_problem.hpp>
#include <conelp/lp_solver.hpp>
#include <conelp/simplex.hpp>

namespace conelp {

using Json = nlohmann::ordered_json;

// Generator metadata stored alongside a problem.
struct ProblemOrigin {
  Family family = Family::Box;
  Index cone_rows = 0;
  std::uint64_t seed = 0;
};

// {"n": cols, "m": rows, ["family", "cone_rows", "seed",] "A": [row-major],
//  "b": [...], "c": [...]}. A may also be given as an array of rows on input.
Json problem_to_json(const LpProblem& prob, const std::optional<ProblemOrigin>& origin = {});
LpProblem problem_from_json(const Json& doc);

// Throws ParseError on malformed input.
LpProblem parse_problem(const std::string& text);
LpProblem read_problem(const std::string& path);
void write_problem(const std::string& path, const LpProblem& prob,
                   const std::optional<ProblemOrigin>& origin = {});

Json solution_to_json(const LpSolution& sol);
Json oracle_to_json(const OracleSolution& sol);

}  // namespace conelp
