#include <conelp/cone_projection.hpp>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include <conelp/errors.hpp>

namespace conelp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

GeneratorSet::GeneratorSet(Matrix rows) : rows_(std::move(rows)) {
  if (rows_.rows() < 1 || rows_.cols() < 1) {
    throw InvalidInput("GeneratorSet: need at least one generator of dimension >= 1");
  }
  if (!rows_.allFinite()) throw InvalidInput("GeneratorSet: non-finite entry");
}

ConeProjector::ConeProjector(const GeneratorSet& gens, const Vector& p, ProjectionOptions opts)
    : target_(p), opts_(std::move(opts)), basis_(gens.dim(), p) {
  if (p.size() != gens.dim()) throw InvalidInput("project_onto_cone: dimension mismatch");
  if (!p.allFinite()) throw InvalidInput("project_onto_cone: non-finite point");
  if (!(opts_.zero_tol > 0 && opts_.kkt_tol > 0 && opts_.lin_tol > 0 && opts_.rank_tol > 0)) {
    throw InvalidInput("project_onto_cone: tolerances must be positive");
  }

  const Index r = gens.count();
  const Index d = gens.dim();
  unit_.resize(d, r);
  scale_.setZero(r);
  in_active_.assign(r, 0);
  rejected_.assign(r, 0);
  for (Index i = 0; i < r; ++i) {
    const double norm = gens.row(i).norm();
    if (norm <= std::numeric_limits<double>::min()) {
      unit_.col(i).setZero();
      warnings_.push_back("generator " + std::to_string(i) + " is a zero row; skipped");
      continue;
    }
    scale_(i) = 1.0 / norm;
    unit_.col(i) = gens.row(i).transpose() * scale_(i);
  }
  pnorm_ = p.norm();
  seed(opts_.warm_start);
}

void ConeProjector::seed(const std::vector<Index>& warm) {
  std::vector<Index> order;
  std::vector<char> seen(scale_.size(), 0);
  for (Index i : warm) {
    if (i < 0 || i >= scale_.size()) throw InvalidInput("warm start index out of range");
    if (seen[i] || scale_(i) == 0.0) continue;
    seen[i] = 1;
    order.push_back(i);
  }
  active_ = std::move(order);
  refactorize();
  refactorizations_ = 0;
}

void ConeProjector::refactorize() {
  std::vector<Index> keep;
  basis_.clear();
  std::fill(in_active_.begin(), in_active_.end(), 0);
  for (Index i : active_) {
    if (basis_.append(unit_.col(i), opts_.rank_tol)) {
      keep.push_back(i);
      in_active_[i] = 1;
    }
  }
  active_ = std::move(keep);
  coeffs_ = basis_.solve();
  // Drop generators with non-positive least-squares coefficients until the
  // remaining ones form a strictly positive combination.
  while (!active_.empty()) {
    Index worst = -1;
    for (Index k = 0; k < coeffs_.size(); ++k) {
      if (coeffs_(k) <= opts_.zero_tol && (worst < 0 || coeffs_(k) < coeffs_(worst))) worst = k;
    }
    if (worst < 0) break;
    remove_at(worst);
    coeffs_ = basis_.solve();
  }
  if (active_.empty()) coeffs_.resize(0);
  std::fill(rejected_.begin(), rejected_.end(), 0);
  ++refactorizations_;
  refresh();
}

void ConeProjector::remove_at(Index pos) {
  in_active_[active_[pos]] = 0;
  active_.erase(active_.begin() + pos);
  basis_.remove(pos);
  if (coeffs_.size() > pos) {
    Vector c(coeffs_.size() - 1);
    c << coeffs_.head(pos), coeffs_.tail(coeffs_.size() - pos - 1);
    coeffs_ = std::move(c);
  }
}

void ConeProjector::refresh() {
  point_.setZero(target_.size());
  for (std::size_t k = 0; k < active_.size(); ++k) {
    point_.noalias() += coeffs_(k) * unit_.col(active_[k]);
  }
  residual_ = target_ - point_;
  scores_.noalias() = unit_.transpose() * residual_;
}

void ConeProjector::record(double seconds) {
  basis_trace_.push_back(active_.size());
  update_times_.push_back(seconds);
}

std::optional<Index> ConeProjector::select_entering() const {
  const double threshold = opts_.kkt_tol * pnorm_;
  std::optional<Index> best;
  for (Index i = 0; i < scores_.size(); ++i) {
    if (scale_(i) == 0.0 || in_active_[i] || rejected_[i]) continue;
    if (scores_(i) > threshold && (!best || scores_(i) > scores_(*best))) best = i;
  }
  return best;
}

bool ConeProjector::refine_active_set(Index entering) {
  if (entering < 0 || entering >= scale_.size() || in_active_[entering] ||
      scale_(entering) == 0.0) {
    throw InvalidInput("refine_active_set: invalid entering generator");
  }
  ++iterations_;
  const auto t0 = Clock::now();

  if (!basis_.append(unit_.col(entering), opts_.rank_tol)) {
    rejected_[entering] = 1;
    record(seconds_since(t0));
    return false;
  }
  active_.push_back(entering);
  in_active_[entering] = 1;
  Vector coeffs(coeffs_.size() + 1);
  coeffs << coeffs_, 0.0;
  coeffs_ = std::move(coeffs);

  bool removed = false;
  for (bool first = true;; first = false) {
    const Vector s = basis_.solve();
    if ((s.array() > opts_.zero_tol).all()) {
      coeffs_ = s;
      break;
    }
    if (first && s(s.size() - 1) <= opts_.zero_tol) {
      // Roundoff-level entry: the inner solve disagrees with the pricing.
      remove_at(static_cast<Index>(active_.size()) - 1);
      rejected_[entering] = 1;
      record(seconds_since(t0));
      return false;
    }
    double alpha = std::numeric_limits<double>::infinity();
    Index blocking = -1;
    for (Index k = 0; k < s.size(); ++k) {
      if (s(k) > opts_.zero_tol) continue;
      const double step = coeffs_(k) / (coeffs_(k) - s(k));
      if (step < alpha) {
        alpha = step;
        blocking = k;
      }
    }
    coeffs_ += alpha * (s - coeffs_);
    coeffs_(blocking) = 0.0;
    for (Index k = s.size() - 1; k >= 0; --k) {
      if (coeffs_(k) <= opts_.zero_tol && s(k) <= opts_.zero_tol) remove_at(k);
    }
    removed = true;
  }
  if (removed) std::fill(rejected_.begin(), rejected_.end(), 0);
  record(seconds_since(t0));
  refresh();
  return true;
}

ConeProjectionResult ConeProjector::run() {
  const std::size_t limit = opts_.max_iterations > 0
                                ? opts_.max_iterations
                                : 5 * static_cast<std::size_t>(scale_.size() + target_.size());
  bool repaired = false;
  while (true) {
    double drift = 0.0;
    for (Index i : active_) drift = std::max(drift, std::abs(scores_(i)));
    if (drift > opts_.kkt_tol * pnorm_) {
      if (repaired) {
        throw NumericalBreakdown("cone projection: active residual stays non-orthogonal after refactorization");
      }
      refactorize();
      repaired = true;
      continue;
    }
    repaired = false;

    const auto entering = select_entering();
    if (!entering) {
      status_ = ProjectionStatus::Converged;
      break;
    }
    if (iterations_ >= limit) {
      status_ = ProjectionStatus::IterationLimitExceeded;
      break;
    }
    refine_active_set(*entering);
  }
  return result();
}

ConeProjectionResult ConeProjector::result() const {
  ConeProjectionResult res;
  const Index r = scale_.size();
  res.coeffs.setZero(r);
  for (std::size_t k = 0; k < active_.size(); ++k) {
    res.coeffs(active_[k]) = coeffs_(k) * scale_(active_[k]);
  }
  res.active = active_;
  std::sort(res.active.begin(), res.active.end());
  res.point = point_;
  res.residual = residual_;
  res.iterations = iterations_;
  res.basis_trace = basis_trace_;
  res.update_times = update_times_;
  res.refactorizations = refactorizations_;
  res.status = status_;
  res.warnings = warnings_;
  return res;
}

ConeProjectionResult project_onto_cone(const GeneratorSet& gens, const Vector& p,
                                       const ProjectionOptions& opts) {
  ConeProjector projector(gens, p, opts);
  return projector.run();
}

ConeProjectionResult brute_force_projection(const GeneratorSet& gens, const Vector& p) {
  const Index r = gens.count();
  const Index d = gens.dim();
  if (r > 20) throw SizeLimitExceeded("brute_force_projection: more than 20 generators");
  if (p.size() != d) throw InvalidInput("brute_force_projection: dimension mismatch");

  const Matrix& g = gens.rows();
  const double pscale = std::max(1.0, p.norm());

  struct Candidate {
    double dist = std::numeric_limits<double>::infinity();
    Vector coeffs;
    bool polar = false;
  };
  Candidate best;

  const std::uint32_t subsets = std::uint32_t{1} << r;
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    const int k = std::popcount(mask);
    if (k > d) continue;
    std::vector<Index> idx;
    for (Index i = 0; i < r; ++i) {
      if (mask & (std::uint32_t{1} << i)) idx.push_back(i);
    }
    Vector u_sub;
    if (k > 0) {
      Matrix cols(d, k);
      for (int j = 0; j < k; ++j) cols.col(j) = g.row(idx[j]).transpose();
      Eigen::ColPivHouseholderQR<Matrix> qr(cols);
      qr.setThreshold(1e-12);
      if (qr.rank() < k) continue;
      u_sub = qr.solve(p);
      if ((u_sub.array() < -1e-12).any()) continue;
    }
    Vector coeffs = Vector::Zero(r);
    for (int j = 0; j < k; ++j) coeffs(idx[j]) = std::max(0.0, u_sub(j));
    const Vector z = g.transpose() * coeffs;
    const Vector res = p - z;
    bool polar = true;
    for (Index i = 0; i < r && polar; ++i) {
      polar = g.row(i).dot(res) <= 1e-9 * pscale * std::max(1.0, g.row(i).norm());
    }
    const double dist = res.norm();
    const bool better = (polar && !best.polar) || (polar == best.polar && dist < best.dist);
    if (better) best = Candidate{dist, std::move(coeffs), polar};
  }

  ConeProjectionResult res;
  res.coeffs = best.coeffs;
  res.point = g.transpose() * best.coeffs;
  res.residual = p - res.point;
  for (Index i = 0; i < r; ++i) {
    if (best.coeffs(i) > 0.0) res.active.push_back(i);
  }
  res.iterations = static_cast<std::size_t>(subsets);
  res.status = ProjectionStatus::Converged;
  if (!best.polar) res.warnings.push_back("no subset satisfied the polar conditions");
  return res;
}

}  // namespace conelp
