#pragma once

#include <optional>
#include <vector>

#include "gptdisc/lp.hpp"
#include "gptdisc/model.hpp"

namespace gptdisc {

/// Weight r_x and normalized complementary state d_x with K = q_x w_x + r_x d_x.
/// `d` is empty when r_x is at or below tolerance (degenerate pair).
struct ComplementaryPair {
  double r = 0.0;
  std::optional<Point> d;

  bool degenerate() const { return !d.has_value(); }
  /// r_x d_x, or the zero vector for a degenerate pair.
  Point weighted(int dim) const { return d ? Point(r * *d) : Point(Point::Zero(dim)); }
};

struct DiscriminationSolution {
  double pGuess = 0.0;
  Measurement measurement;
  /// Symmetry operator K, the dual optimum.
  Point symmetryOperator;
  std::vector<ComplementaryPair> complementary;
  double primalObjective = 0.0;
  double dualObjective = 0.0;
};

/// Residuals of the optimality conditions, each recomputed from raw inputs.
struct KktReport {
  double tol = kDefaultTol;
  /// ||K - q_x w_x - r_x d_x||
  std::vector<double> stabilityResiduals;
  /// |u[d_x] - 1|, zero for degenerate pairs
  std::vector<double> normalizationResiduals;
  /// K >= q_x w_x in the order of the effect cone
  std::vector<bool> positivityOk;
  /// |e_x[r_x d_x]|
  std::vector<double> orthogonalityResiduals;
  /// e_x lies in the effect cone
  std::vector<bool> effectsInCone;
  /// ||sum_x e_x - u||
  double measurementResidual = 0.0;
  /// |sum_x q_x e_x[w_x] - u[K]|
  double gap = 0.0;

  bool passed() const;
  double maxStabilityResidual() const;
  double maxOrthogonalityResidual() const;
};

/// Primal LP over nonnegative coefficients c_{x,j}, e_x = sum_j c_{x,j} g_j,
/// with variable index x * G + j for the G deduplicated effect generators.
/// Minimizes -sum_x q_x e_x[w_x] subject to sum_x e_x = u.
LpProblem buildPrimal(const Ensemble& ensemble);

/// Dual LP over K = K+ - K- (variables 0..d-1 and d..2d-1) followed by one
/// slack per row g_j[K - q_x w_x] >= 0, rows ordered x-major. Minimizes u[K].
LpProblem buildDual(const Ensemble& ensemble);

/// Effects encoded by a primal LP point.
Measurement measurementFromPrimal(const Ensemble& ensemble, const Eigen::VectorXd& x);

/// K encoded by a dual LP point.
Point symmetryOperatorFromDual(const Ensemble& ensemble, const Eigen::VectorXd& x);

/// r_x = u[K] - q_x and d_x = (K - q_x w_x) / r_x, degenerate when r_x <= tol.
std::vector<ComplementaryPair> complementaryPairs(const Ensemble& ensemble, const Point& k,
                                                  double tol = kDefaultTol);

/// Solves both problems and assembles the certificate. Throws
/// NumericalFailure from the LP engine and InternalInconsistency when the two
/// optimal values differ by more than 10 tol.
DiscriminationSolution solveDiscrimination(const Ensemble& ensemble, double tol = kDefaultTol);

/// Checks a possibly untrusted solution against the optimality conditions.
KktReport verifyKkt(const Ensemble& ensemble, const DiscriminationSolution& solution,
                    double tol = kDefaultTol);

/// Success probability of guessing the most likely state without measuring.
double noMeasurementValue(const Ensemble& ensemble);

/// sum_x q_x e_x[w_x]
double successProbability(const Ensemble& ensemble, const Measurement& measurement);

}  // namespace gptdisc
