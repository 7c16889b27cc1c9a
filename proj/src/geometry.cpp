#include "gptdisc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gptdisc/errors.hpp"

namespace gptdisc {

namespace {

bool uniformPriors(const Ensemble& ensemble, double tol) {
  const double n = static_cast<double>(ensemble.size());
  return std::all_of(ensemble.priors().begin(), ensemble.priors().end(),
                     [&](double q) { return std::abs(q - 1.0 / n) <= tol; });
}

}  // namespace

CongruenceReport congruenceCheck(const Ensemble& ensemble, const DiscriminationSolution& sol,
                                 double tol) {
  const int d = ensemble.model().dim();
  const std::size_t n = ensemble.size();
  CongruenceReport report;
  for (std::size_t x = 0; x < n; ++x) {
    if (sol.complementary.at(x).degenerate()) report.skipped.push_back(x);
  }

  for (std::size_t x = 0; x < n; ++x) {
    if (sol.complementary[x].degenerate()) continue;
    for (std::size_t y = x + 1; y < n; ++y) {
      if (sol.complementary[y].degenerate()) continue;
      const Point lhs = ensemble.priors()[x] * ensemble.states()[x] -
                        ensemble.priors()[y] * ensemble.states()[y];
      const Point rhs = sol.complementary[x].weighted(d) - sol.complementary[y].weighted(d);
      report.maxResidual = std::max(report.maxResidual, (lhs + rhs).norm());
    }
  }

  if (n >= 2 && uniformPriors(ensemble, tol)) {
    try {
      const RatioResult r = ratioReport(ensemble, sol, tol);
      report.ratio = r.value;
      report.ratioSpread = r.spread;
    } catch (const PreconditionError&) {
      // every pair collapsed; the ratio stays undefined
    }
  }
  return report;
}

RatioResult ratioReport(const Ensemble& ensemble, const DiscriminationSolution& sol, double tol) {
  const std::size_t n = ensemble.size();
  if (n == 0 || !uniformPriors(ensemble, tol)) {
    throw PreconditionError("ratio requires uniform priors");
  }
  const double inv = 1.0 / static_cast<double>(n);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  RatioResult out;
  for (std::size_t x = 0; x < n; ++x) {
    const auto& px = sol.complementary.at(x);
    if (px.degenerate()) continue;
    for (std::size_t y = x + 1; y < n; ++y) {
      const auto& py = sol.complementary.at(y);
      if (py.degenerate()) continue;
      const double denom = (*px.d - *py.d).norm();
      if (denom <= tol) continue;
      const double ratio = (inv * (ensemble.states()[x] - ensemble.states()[y])).norm() / denom;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      ++out.pairsUsed;
    }
  }
  if (out.pairsUsed == 0) {
    throw PreconditionError("ratio undefined: no pair of distinct complementary states");
  }
  out.value = 0.5 * (lo + hi);
  out.spread = hi - lo;
  out.crossCheck = std::abs(out.value - (sol.pGuess - inv));
  return out;
}

double ratioR(const Ensemble& ensemble, const DiscriminationSolution& sol, double tol) {
  const RatioResult r = ratioReport(ensemble, sol, tol);
  if (r.spread > tol) {
    throw InternalInconsistency("pairwise ratios spread by " + formatReal(r.spread));
  }
  if (r.crossCheck > tol) {
    throw InternalInconsistency("ratio " + formatReal(r.value) + " differs from p_guess - 1/N by " +
                                formatReal(r.crossCheck));
  }
  return r.value;
}

Point symmetricAxisK(const Ensemble& ensemble, const Point& axis, double tol) {
  const GptModel& model = ensemble.model();
  if (axis.size() != model.dim()) throw InvalidInput("axis has the wrong dimension");
  if (std::abs(evaluate(model.unitEffect(), axis) - 1.0) > tol) {
    throw PreconditionError("axis must satisfy u[axis] = 1");
  }
  const auto& gens = model.effectCone().generators();
  double scale = 0.0;
  for (const Point& g : gens) {
    const double along = evaluate(g, axis);
    if (along <= tol) throw PreconditionError("axis is not strictly inside the state cone");
    for (std::size_t x = 0; x < ensemble.size(); ++x) {
      scale = std::max(scale, evaluate(g, ensemble.priors()[x] * ensemble.states()[x]) / along);
    }
  }
  return scale * axis;
}

}  // namespace gptdisc
