#pragma once

#include <optional>
#include <vector>

#include "gptdisc/discrimination.hpp"

namespace gptdisc {

/// How well the polytope of weighted states and the polytope of weighted
/// complementary states fit as point reflections of each other.
struct CongruenceReport {
  /// max over pairs x < y of ||(q_x w_x - q_y w_y) + (r_x d_x - r_y d_y)||
  double maxResidual = 0.0;
  /// Common edge ratio when priors are uniform and at least one pair qualifies.
  std::optional<double> ratio;
  /// max - min of the per-pair ratios (0 when ratio is unset).
  double ratioSpread = 0.0;
  /// Outcomes left out because their complementary pair is degenerate.
  std::vector<std::size_t> skipped;
};

CongruenceReport congruenceCheck(const Ensemble& ensemble, const DiscriminationSolution& solution,
                                 double tol = kDefaultTol);

/// Ratio r = ||(w_x - w_y) / N|| / ||d_x - d_y|| for uniform priors, with the
/// per-pair spread and the deviation from p_guess - 1/N.
struct RatioResult {
  double value = 0.0;
  double spread = 0.0;
  double crossCheck = 0.0;
  std::size_t pairsUsed = 0;
};

/// Throws PreconditionError for non-uniform priors or when no pair has
/// ||d_x - d_y|| > tol. Does not throw on a large spread; see ratioR.
RatioResult ratioReport(const Ensemble& ensemble, const DiscriminationSolution& solution,
                        double tol = kDefaultTol);

/// The ratio itself; throws InternalInconsistency when the per-pair values
/// disagree, or disagree with p_guess - 1/N, by more than tol.
double ratioR(const Ensemble& ensemble, const DiscriminationSolution& solution,
              double tol = kDefaultTol);

/// K = l * axis with the smallest l making K dominate every q_x w_x in the
/// effect-cone order. Always dual feasible; optimal for ensembles whose
/// symmetry group fixes `axis` and acts transitively. Throws
/// PreconditionError unless u[axis] = 1 and g[axis] > 0 for every effect
/// generator.
Point symmetricAxisK(const Ensemble& ensemble, const Point& axis, double tol = kDefaultTol);

}  // namespace gptdisc
