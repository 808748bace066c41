#include <conelp/certificate.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include <conelp/errors.hpp>

namespace conelp {

void LpProblem::validate() const {
  if (A.rows() < 1 || A.cols() < 1) throw InvalidInput("LpProblem: empty constraint matrix");
  if (b.size() != A.rows()) throw InvalidInput("LpProblem: b has wrong length");
  if (c.size() != A.cols()) throw InvalidInput("LpProblem: c has wrong length");
  if (!A.allFinite() || !b.allFinite() || !c.allFinite()) {
    throw InvalidInput("LpProblem: non-finite entry");
  }
}

double CertificateReport::worst() const {
  return std::max({primal_infeasibility, dual_residual, dual_sign, duality_gap});
}

std::string CertificateReport::summary() const {
  std::ostringstream out;
  out << "Ax<=b " << primal_infeasibility << ", uA=c " << dual_residual << ", u<=0 "
      << dual_sign << ", gap " << duality_gap << (passed() ? " [pass]" : " [fail]");
  return out.str();
}

CertificateReport verify_certificate(const LpProblem& prob, const Vector& x, const Vector& u,
                                     double tol) {
  if (x.size() != prob.cols() || u.size() != prob.rows()) {
    throw InvalidInput("verify_certificate: dimension mismatch");
  }
  CertificateReport rep;
  rep.tol = tol;
  rep.primal_infeasibility = std::max(0.0, (prob.A * x - prob.b).maxCoeff());
  rep.dual_residual = (prob.A.transpose() * u - prob.c).cwiseAbs().maxCoeff();
  rep.dual_sign = std::max(0.0, u.maxCoeff());
  rep.duality_gap = std::abs(prob.c.dot(x) - prob.b.dot(u));
  return rep;
}

}  // namespace conelp
