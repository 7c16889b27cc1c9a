#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "gptdisc/types.hpp"

namespace gptdisc {

/// Standard-form linear program: minimize c.x subject to A x = b, x >= 0.
struct LpProblem {
  Matrix a;
  Eigen::VectorXd b;
  Eigen::VectorXd c;

  std::size_t rows() const { return static_cast<std::size_t>(a.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(a.cols()); }

  /// Throws InvalidInput when the shapes of A, b and c disagree.
  void checkShape() const;
};

enum class LpStatus { optimal, infeasible, unbounded };

std::string_view statusName(LpStatus status);

/// Primal/dual output of the simplex engine.
///
/// For an optimal solution, `y` are the multipliers of the equality rows and
/// `reducedCosts = c - A^T y`. Together they form an optimality certificate
/// that `checkCertificate` can re-verify without trusting the solver.
struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
  Eigen::VectorXd y;
  Eigen::VectorXd reducedCosts;
  std::vector<std::size_t> basis;
  std::size_t iterations = 0;
};

/// Converts inequality-row descriptions into standard form.
///
/// Structural variables keep indices 0..n-1; one slack per inequality row is
/// appended after them in the order the rows were added.
class LpBuilder {
 public:
  enum class Sense { le, ge, eq };

  explicit LpBuilder(std::size_t numVars);

  LpBuilder& setObjective(const Eigen::VectorXd& c);
  LpBuilder& addRow(const Eigen::VectorXd& coeffs, Sense sense, double rhs);

  std::size_t numVars() const { return numVars_; }
  std::size_t numSlacks() const { return numSlacks_; }

  LpProblem build() const;

 private:
  struct Row {
    Eigen::VectorXd coeffs;
    Sense sense;
    double rhs;
  };
  std::size_t numVars_;
  std::size_t numSlacks_ = 0;
  Eigen::VectorXd objective_;
  std::vector<Row> rows_;
};

/// Two-phase dense simplex with Bland's rule.
///
/// Infeasible and unbounded problems are reported through `status`. Throws
/// NumericalFailure when the iteration guard trips or the final basis is
/// singular, InvalidInput on inconsistent shapes. Deterministic for a fixed
/// input.
LpSolution solveLp(const LpProblem& problem, double tol = kDefaultTol);

/// Recomputes every optimality condition of `solution` from the raw data:
/// primal feasibility, dual feasibility of c - A^T y, complementary slackness
/// and the duality gap. Returns false for non-optimal statuses.
bool checkCertificate(const LpProblem& problem, const LpSolution& solution,
                      double tol = kDefaultTol);

}  // namespace gptdisc
