#include <conelp/problem_io.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

#include <conelp/errors.hpp>

namespace conelp {

namespace {

Json vector_json(const Vector& v) {
  Json arr = Json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

// NaN and infinities have no JSON encoding; emit null.
Json number_json(double value) { return std::isfinite(value) ? Json(value) : Json(nullptr); }

Vector vector_from(const Json& arr, Index expected, const char* name) {
  if (!arr.is_array()) throw ParseError(std::string("field '") + name + "' must be an array");
  if (static_cast<Index>(arr.size()) != expected) {
    throw ParseError(std::string("field '") + name + "' has wrong length");
  }
  Vector v(expected);
  for (Index i = 0; i < expected; ++i) {
    const Json& x = arr[static_cast<std::size_t>(i)];
    if (!x.is_number()) throw ParseError(std::string("field '") + name + "' must hold numbers");
    v(i) = x.get<double>();
  }
  return v;
}

Index size_field(const Json& doc, const char* name) {
  if (!doc.contains(name) || !doc[name].is_number_integer() || doc[name].get<long long>() < 1) {
    throw ParseError(std::string("field '") + name + "' must be a positive integer");
  }
  return static_cast<Index>(doc[name].get<long long>());
}

}  // namespace

Json problem_to_json(const LpProblem& prob, const std::optional<ProblemOrigin>& origin) {
  Json doc;
  doc["n"] = prob.cols();
  doc["m"] = prob.rows();
  if (origin) {
    doc["family"] = to_string(origin->family);
    doc["cone_rows"] = origin->cone_rows;
    doc["seed"] = origin->seed;
  }
  Json a = Json::array();
  for (Index i = 0; i < prob.rows(); ++i) {
    for (Index j = 0; j < prob.cols(); ++j) a.push_back(prob.A(i, j));
  }
  doc["A"] = std::move(a);
  doc["b"] = vector_json(prob.b);
  doc["c"] = vector_json(prob.c);
  return doc;
}

LpProblem problem_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("problem must be a JSON object");
  const Index n = size_field(doc, "n");
  const Index m = size_field(doc, "m");
  if (!doc.contains("A") || !doc.contains("b") || !doc.contains("c")) {
    throw ParseError("problem needs fields A, b and c");
  }
  LpProblem prob;
  prob.A.resize(m, n);
  const Json& a = doc["A"];
  if (!a.is_array()) throw ParseError("field 'A' must be an array");
  if (!a.empty() && a[0].is_array()) {
    if (static_cast<Index>(a.size()) != m) throw ParseError("field 'A' has wrong row count");
    for (Index i = 0; i < m; ++i) prob.A.row(i) = vector_from(a[static_cast<std::size_t>(i)], n, "A").transpose();
  } else {
    const Vector flat = vector_from(a, m * n, "A");
    for (Index i = 0; i < m; ++i) {
      for (Index j = 0; j < n; ++j) prob.A(i, j) = flat(i * n + j);
    }
  }
  prob.b = vector_from(doc["b"], m, "b");
  prob.c = vector_from(doc["c"], n, "c");
  try {
    prob.validate();
  } catch (const InvalidInput& e) {
    throw ParseError(e.what());
  }
  return prob;
}

LpProblem parse_problem(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return problem_from_json(doc);
}

LpProblem read_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

void write_problem(const std::string& path, const LpProblem& prob,
                   const std::optional<ProblemOrigin>& origin) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << problem_to_json(prob, origin).dump() << '\n';
  if (!out) throw Error("write to '" + path + "' failed");
}

Json solution_to_json(const LpSolution& sol) {
  Json doc;
  doc["status"] = to_string(sol.status);
  doc["objective"] = number_json(sol.objective);
  doc["theta_used"] = sol.theta_used;
  doc["rounds"] = sol.rounds;
  doc["x"] = vector_json(sol.x_star);
  doc["dual_u"] = vector_json(sol.dual_u);
  Json cert;
  cert["primal_infeasibility"] = sol.certificate.primal_infeasibility;
  cert["dual_residual"] = sol.certificate.dual_residual;
  cert["dual_sign"] = sol.certificate.dual_sign;
  cert["duality_gap"] = sol.certificate.duality_gap;
  cert["passed"] = sol.certificate.passed();
  doc["certificate"] = std::move(cert);
  Json diag;
  diag["iterations"] = sol.diagnostics.iterations;
  diag["final_basis_size"] = sol.diagnostics.active.size();
  diag["refactorizations"] = sol.diagnostics.refactorizations;
  diag["total_iterations"] = sol.basis_trace.size();
  doc["diagnostics"] = std::move(diag);
  if (!sol.message.empty()) doc["message"] = sol.message;
  return doc;
}

Json oracle_to_json(const OracleSolution& sol) {
  Json doc;
  doc["status"] = to_string(sol.status);
  doc["objective"] = number_json(sol.objective);
  doc["pivots"] = sol.pivots;
  return doc;
}

}  // namespace conelp
