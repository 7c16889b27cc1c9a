#include "gptdisc/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gptdisc/errors.hpp"

namespace gptdisc {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

double maxOf(const std::vector<double>& v) {
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

}  // namespace

bool KktReport::passed() const {
  auto small = [this](double r) { return r <= tol; };
  auto yes = [](bool b) { return b; };
  return std::all_of(stabilityResiduals.begin(), stabilityResiduals.end(), small) &&
         std::all_of(normalizationResiduals.begin(), normalizationResiduals.end(), small) &&
         std::all_of(orthogonalityResiduals.begin(), orthogonalityResiduals.end(), small) &&
         std::all_of(positivityOk.begin(), positivityOk.end(), yes) &&
         std::all_of(effectsInCone.begin(), effectsInCone.end(), yes) &&
         measurementResidual <= tol && gap <= tol;
}

double KktReport::maxStabilityResidual() const { return maxOf(stabilityResiduals); }
double KktReport::maxOrthogonalityResidual() const { return maxOf(orthogonalityResiduals); }

LpProblem buildPrimal(const Ensemble& ensemble) {
  const GptModel& model = ensemble.model();
  const auto& gens = model.effectCone().generators();
  const std::size_t n = ensemble.size();
  const std::size_t g = gens.size();
  const int d = model.dim();

  LpBuilder builder(n * g);
  Eigen::VectorXd cost(idx(n * g));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t j = 0; j < g; ++j) {
      cost[idx(x * g + j)] = -ensemble.priors()[x] * evaluate(gens[j], ensemble.states()[x]);
    }
  }
  builder.setObjective(cost);
  for (int i = 0; i < d; ++i) {
    Eigen::VectorXd row(idx(n * g));
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t j = 0; j < g; ++j) row[idx(x * g + j)] = gens[j][i];
    }
    builder.addRow(row, LpBuilder::Sense::eq, model.unitEffect()[i]);
  }
  return builder.build();
}

LpProblem buildDual(const Ensemble& ensemble) {
  const GptModel& model = ensemble.model();
  const auto& gens = model.effectCone().generators();
  const int d = model.dim();
  const auto dd = static_cast<std::size_t>(d);

  LpBuilder builder(2 * dd);
  Eigen::VectorXd cost(2 * d);
  cost << model.unitEffect(), -model.unitEffect();
  builder.setObjective(cost);
  for (std::size_t x = 0; x < ensemble.size(); ++x) {
    const Point target = ensemble.priors()[x] * ensemble.states()[x];
    for (const Point& g : gens) {
      Eigen::VectorXd row(2 * d);
      row << g, -g;
      builder.addRow(row, LpBuilder::Sense::ge, g.dot(target));
    }
  }
  return builder.build();
}

Measurement measurementFromPrimal(const Ensemble& ensemble, const Eigen::VectorXd& x) {
  const auto& gens = ensemble.model().effectCone().generators();
  const std::size_t g = gens.size();
  Measurement m;
  for (std::size_t out = 0; out < ensemble.size(); ++out) {
    Point e = Point::Zero(ensemble.model().dim());
    for (std::size_t j = 0; j < g; ++j) e += x[idx(out * g + j)] * gens[j];
    m.effects.push_back(std::move(e));
  }
  return m;
}

Point symmetryOperatorFromDual(const Ensemble& ensemble, const Eigen::VectorXd& x) {
  const int d = ensemble.model().dim();
  return x.head(d) - x.segment(d, d);
}

std::vector<ComplementaryPair> complementaryPairs(const Ensemble& ensemble, const Point& k,
                                                  double tol) {
  const double value = evaluate(ensemble.model().unitEffect(), k);
  std::vector<ComplementaryPair> pairs;
  for (std::size_t x = 0; x < ensemble.size(); ++x) {
    ComplementaryPair pair;
    pair.r = value - ensemble.priors()[x];
    if (pair.r > tol) pair.d = (k - ensemble.priors()[x] * ensemble.states()[x]) / pair.r;
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

double successProbability(const Ensemble& ensemble, const Measurement& measurement) {
  if (measurement.effects.size() != ensemble.size()) {
    throw InvalidInput("measurement has " + std::to_string(measurement.effects.size()) +
                       " outcomes for " + std::to_string(ensemble.size()) + " states");
  }
  double total = 0.0;
  for (std::size_t x = 0; x < ensemble.size(); ++x) {
    total += ensemble.priors()[x] * evaluate(measurement.effects[x], ensemble.states()[x]);
  }
  return total;
}

DiscriminationSolution solveDiscrimination(const Ensemble& ensemble, double tol) {
  const LpProblem primal = buildPrimal(ensemble);
  const LpProblem dual = buildDual(ensemble);
  const LpSolution ps = solveLp(primal, tol);
  const LpSolution ds = solveLp(dual, tol);
  if (ps.status != LpStatus::optimal || ds.status != LpStatus::optimal) {
    throw NumericalFailure("discrimination LPs not optimal: primal " +
                           std::string(statusName(ps.status)) + ", dual " +
                           std::string(statusName(ds.status)));
  }

  DiscriminationSolution sol;
  sol.measurement = measurementFromPrimal(ensemble, ps.x);
  sol.symmetryOperator = symmetryOperatorFromDual(ensemble, ds.x);
  sol.primalObjective = successProbability(ensemble, sol.measurement);
  sol.dualObjective = evaluate(ensemble.model().unitEffect(), sol.symmetryOperator);
  const double gap = std::abs(sol.primalObjective - sol.dualObjective);
  if (gap > 10.0 * tol) {
    throw InternalInconsistency("primal " + formatReal(sol.primalObjective) + " and dual " +
                                formatReal(sol.dualObjective) + " optima differ by " +
                                formatReal(gap));
  }
  sol.pGuess = sol.dualObjective;
  sol.complementary = complementaryPairs(ensemble, sol.symmetryOperator, tol);
  return sol;
}

KktReport verifyKkt(const Ensemble& ensemble, const DiscriminationSolution& sol, double tol) {
  const GptModel& model = ensemble.model();
  const std::size_t n = ensemble.size();
  const int d = model.dim();
  KktReport report;
  report.tol = tol;

  const bool shapesOk = sol.measurement.effects.size() == n && sol.complementary.size() == n &&
                        sol.symmetryOperator.size() == d;
  if (!shapesOk) {
    throw InvalidInput("solution shape does not match the ensemble");
  }
  const Point& k = sol.symmetryOperator;

  Point sum = Point::Zero(d);
  for (std::size_t x = 0; x < n; ++x) {
    const Point& e = sol.measurement.effects[x];
    const Point& w = ensemble.states()[x];
    const double q = ensemble.priors()[x];
    const ComplementaryPair& pair = sol.complementary[x];
    if (pair.d && pair.d->size() != d) throw InvalidInput("complementary state has wrong dimension");
    const Point rd = pair.weighted(d);

    sum += e;
    report.stabilityResiduals.push_back((k - q * w - rd).norm());
    report.normalizationResiduals.push_back(
        pair.d ? std::abs(evaluate(model.unitEffect(), *pair.d) - 1.0) : 0.0);
    report.positivityOk.push_back(coneGe(k, q * w, model.effectCone(), tol));
    report.orthogonalityResiduals.push_back(std::abs(evaluate(e, rd)));
    report.effectsInCone.push_back(memberOf(model.effectCone(), e, tol));
  }
  report.measurementResidual = (sum - model.unitEffect()).norm();
  report.gap = std::abs(successProbability(ensemble, sol.measurement) -
                        evaluate(model.unitEffect(), k));
  return report;
}

double noMeasurementValue(const Ensemble& ensemble) {
  if (ensemble.size() == 0) return 0.0;
  return *std::max_element(ensemble.priors().begin(), ensemble.priors().end());
}

}  // namespace gptdisc
