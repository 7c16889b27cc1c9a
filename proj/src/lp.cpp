#include "gptdisc/lp.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gptdisc/errors.hpp"

namespace gptdisc {

namespace {

// Tableau entries with magnitude at or below this are never used as pivots.
constexpr double kPivotFloor = 1e-12;
// A reduced cost must be below -kPriceTol for its column to enter.
constexpr double kPriceTol = 1e-11;
// Entries this small after a pivot are rounding noise and are zeroed.
constexpr double kSnap = 1e-14;

class Tableau {
 public:
  Tableau(const LpProblem& p) : m_(p.rows()), n_(p.cols()), t_(m_, n_ + m_ + 1), sign_(m_) {
    t_.setZero();
    for (std::size_t i = 0; i < m_; ++i) {
      sign_[i] = p.b[i] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) t_(i, j) = sign_[i] * p.a(i, j);
      t_(i, n_ + i) = 1.0;
      t_(i, rhs()) = sign_[i] * p.b[i];
      basis_.push_back(n_ + i);
    }
    price_ = Eigen::VectorXd::Zero(n_ + m_ + 1);
  }

  std::size_t rhs() const { return n_ + m_; }
  bool isArtificial(std::size_t col) const { return col >= n_; }

  // Loads reduced costs for the cost vector `cost` (length n + m) relative to
  // the current basis.
  void price(const Eigen::VectorXd& cost) {
    price_.setZero();
    price_.head(n_ + m_) = cost;
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb != 0.0) price_ -= cb * t_.row(i).transpose();
    }
  }

  double objective() const { return -price_[rhs()]; }

  void pivot(std::size_t r, std::size_t col) {
    const double piv = t_(r, col);
    t_.row(r) /= piv;
    t_(r, col) = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = t_(i, col);
      if (f == 0.0) continue;
      t_.row(i) -= f * t_.row(r);
      t_(i, col) = 0.0;
    }
    const double fp = price_[col];
    if (fp != 0.0) {
      price_ -= fp * t_.row(r).transpose();
      price_[col] = 0.0;
    }
    t_ = t_.unaryExpr([](double v) { return std::abs(v) < kSnap ? 0.0 : v; });
    basis_[r] = col;
  }

  enum class Outcome { optimal, unbounded };

  // Bland's rule: lowest-index improving column, ties in the ratio test go to
  // the row whose basic variable has the lowest index.
  Outcome run(std::size_t& iterations, std::size_t guard) {
    while (true) {
      std::size_t entering = n_;
      for (std::size_t j = 0; j < n_; ++j) {
        if (price_[j] < -kPriceTol) {
          entering = j;
          break;
        }
      }
      if (entering == n_) return Outcome::optimal;

      std::size_t leave = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = t_(i, entering);
        if (a <= kPivotFloor) continue;
        const double ratio = t_(i, rhs()) / a;
        const double slack = 1e-12 * (1.0 + std::abs(best));
        if (leave == m_ || ratio < best - slack) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + slack && basis_[i] < basis_[leave]) {
          best = std::min(best, ratio);
          leave = i;
        }
      }
      if (leave == m_) return Outcome::unbounded;

      pivot(leave, entering);
      if (++iterations > guard) {
        throw NumericalFailure("simplex iteration guard exceeded after " +
                               std::to_string(iterations) + " pivots");
      }
    }
  }

  // Pivots basic artificials out of the basis where a structural column can
  // replace them. Rows left with an artificial are linearly redundant.
  void expelArtificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (!isArtificial(basis_[i])) continue;
      std::size_t col = n_;
      double mag = 1e-9;
      for (std::size_t j = 0; j < n_; ++j) {
        if (std::abs(t_(i, j)) > mag) {
          mag = std::abs(t_(i, j));
          col = j;
        }
      }
      if (col == n_) continue;
      t_(i, rhs()) = 0.0;
      pivot(i, col);
    }
  }

  Eigen::VectorXd basicPoint() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_));
    for (std::size_t i = 0; i < m_; ++i) {
      if (!isArtificial(basis_[i])) x[basis_[i]] = t_(i, rhs());
    }
    return x;
  }

  const std::vector<std::size_t>& basis() const { return basis_; }
  double sign(std::size_t row) const { return sign_[row]; }

 private:
  std::size_t m_;
  std::size_t n_;
  Matrix t_;
  Eigen::VectorXd sign_;
  Eigen::VectorXd price_;
  std::vector<std::size_t> basis_;
};

}  // namespace

void LpProblem::checkShape() const {
  if (b.size() != a.rows() || c.size() != a.cols()) {
    throw InvalidInput("LP shape mismatch: A is " + std::to_string(a.rows()) + "x" +
                       std::to_string(a.cols()) + ", b has " + std::to_string(b.size()) +
                       ", c has " + std::to_string(c.size()));
  }
  if (!a.allFinite() || !b.allFinite() || !c.allFinite()) {
    throw InvalidInput("LP data contains non-finite values");
  }
}

std::string_view statusName(LpStatus status) {
  switch (status) {
    case LpStatus::optimal:
      return "optimal";
    case LpStatus::infeasible:
      return "infeasible";
    case LpStatus::unbounded:
      return "unbounded";
  }
  return "unknown";
}

LpBuilder::LpBuilder(std::size_t numVars)
    : numVars_(numVars), objective_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(numVars))) {}

LpBuilder& LpBuilder::setObjective(const Eigen::VectorXd& c) {
  if (static_cast<std::size_t>(c.size()) != numVars_) {
    throw InvalidInput("objective length does not match variable count");
  }
  objective_ = c;
  return *this;
}

LpBuilder& LpBuilder::addRow(const Eigen::VectorXd& coeffs, Sense sense, double rhs) {
  if (static_cast<std::size_t>(coeffs.size()) != numVars_) {
    throw InvalidInput("row length does not match variable count");
  }
  rows_.push_back({coeffs, sense, rhs});
  if (sense != Sense::eq) ++numSlacks_;
  return *this;
}

LpProblem LpBuilder::build() const {
  const auto m = static_cast<Eigen::Index>(rows_.size());
  const auto n = static_cast<Eigen::Index>(numVars_ + numSlacks_);
  LpProblem p;
  p.a = Matrix::Zero(m, n);
  p.b = Eigen::VectorXd::Zero(m);
  p.c = Eigen::VectorXd::Zero(n);
  p.c.head(static_cast<Eigen::Index>(numVars_)) = objective_;
  auto slack = static_cast<Eigen::Index>(numVars_);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Row& row = rows_[static_cast<std::size_t>(i)];
    p.a.row(i).head(static_cast<Eigen::Index>(numVars_)) = row.coeffs.transpose();
    p.b[i] = row.rhs;
    if (row.sense == Sense::le) p.a(i, slack++) = 1.0;
    if (row.sense == Sense::ge) p.a(i, slack++) = -1.0;
  }
  return p;
}

LpSolution solveLp(const LpProblem& problem, double tol) {
  problem.checkShape();
  const std::size_t m = problem.rows();
  const std::size_t n = problem.cols();
  const std::size_t guard = 50 * (n + m) + 1000;

  LpSolution sol;
  Tableau tab(problem);

  // Phase 1: minimize the sum of artificials.
  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n + m));
  phase1.tail(static_cast<Eigen::Index>(m)).setOnes();
  tab.price(phase1);
  tab.run(sol.iterations, guard);
  const double bScale = 1.0 + (m > 0 ? problem.b.cwiseAbs().maxCoeff() : 0.0);
  if (tab.objective() > tol * bScale) {
    sol.status = LpStatus::infeasible;
    return sol;
  }
  tab.expelArtificials();

  // Phase 2 on the original costs; artificials carry zero cost and never enter.
  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n + m));
  phase2.head(static_cast<Eigen::Index>(n)) = problem.c;
  tab.price(phase2);
  if (tab.run(sol.iterations, guard) == Tableau::Outcome::unbounded) {
    sol.status = LpStatus::unbounded;
    sol.x = tab.basicPoint();
    sol.basis = tab.basis();
    return sol;
  }

  // Recompute the basic solution and the multipliers from the original data so
  // that the certificate does not inherit tableau drift.
  sol.status = LpStatus::optimal;
  sol.basis = tab.basis();
  sol.x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  sol.y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  if (m > 0) {
    Matrix basisMatrix = Matrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    Eigen::VectorXd basisCost = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t col = sol.basis[k];
      const auto kk = static_cast<Eigen::Index>(k);
      if (col < n) {
        basisMatrix.col(kk) = problem.a.col(static_cast<Eigen::Index>(col));
        basisCost[kk] = problem.c[static_cast<Eigen::Index>(col)];
      } else {
        const std::size_t row = col - n;
        basisMatrix(static_cast<Eigen::Index>(row), kk) = tab.sign(row);
      }
    }
    Eigen::FullPivLU<Matrix> lu(basisMatrix);
    if (!lu.isInvertible()) throw NumericalFailure("final simplex basis is singular");
    const Eigen::VectorXd xb = lu.solve(problem.b);
    for (std::size_t k = 0; k < m; ++k) {
      if (sol.basis[k] < n) sol.x[static_cast<Eigen::Index>(sol.basis[k])] = xb[static_cast<Eigen::Index>(k)];
    }
    sol.y = basisMatrix.transpose().fullPivLu().solve(basisCost);
  }
  sol.reducedCosts = problem.c - problem.a.transpose() * sol.y;
  sol.objective = problem.c.dot(sol.x);
  return sol;
}

bool checkCertificate(const LpProblem& problem, const LpSolution& s, double tol) {
  if (s.status != LpStatus::optimal) return false;
  if (s.x.size() != problem.a.cols() || s.y.size() != problem.a.rows() ||
      s.reducedCosts.size() != problem.a.cols()) {
    return false;
  }
  if (!s.x.allFinite() || !s.y.allFinite()) return false;

  const Eigen::VectorXd residual = problem.a * s.x - problem.b;
  if (residual.size() > 0 && residual.cwiseAbs().maxCoeff() > tol) return false;

  const Eigen::VectorXd rc = problem.c - problem.a.transpose() * s.y;
  for (Eigen::Index j = 0; j < rc.size(); ++j) {
    if (s.x[j] < -tol) return false;
    if (rc[j] < -tol) return false;
    if (std::abs(s.x[j] * rc[j]) > tol) return false;
    if (std::abs(rc[j] - s.reducedCosts[j]) > tol) return false;
  }

  const double primal = problem.c.dot(s.x);
  if (std::abs(primal - s.objective) > tol) return false;
  return std::abs(primal - problem.b.dot(s.y)) <= tol;
}

}  // namespace gptdisc
