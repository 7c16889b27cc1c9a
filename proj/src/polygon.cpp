#include "gptdisc/polygon.hpp"

#include <cmath>
#include <functional>
#include <future>
#include <numbers>

#include "gptdisc/errors.hpp"
#include "gptdisc/oracle.hpp"

namespace gptdisc {

namespace {

constexpr double kPi = std::numbers::pi;

Point vec3(double a, double b, double c) {
  Point p(3);
  p << a, b, c;
  return p;
}

AlternateMeasurement certify(const Ensemble& ens, const DiscriminationSolution& sol,
                             std::string name, std::string description,
                             std::vector<Point> effects, double tol) {
  DiscriminationSolution candidate = sol;
  candidate.measurement.effects = std::move(effects);
  AlternateMeasurement alt;
  alt.name = std::move(name);
  alt.description = std::move(description);
  alt.measurement = candidate.measurement;
  alt.successProbability = successProbability(ens, candidate.measurement);
  alt.kkt = verifyKkt(ens, candidate, tol);
  return alt;
}

double bisect(const std::function<bool(double)>& optimalAt) {
  if (optimalAt(0.0)) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-7) {
    const double mid = 0.5 * (lo + hi);
    (optimalAt(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

PolygonSpec::PolygonSpec(int order) : n(order), rn(0.0) {
  if (order < 3) throw InvalidInput("polygon order must be at least 3, got " + std::to_string(order));
  rn = 1.0 / std::sqrt(std::cos(kPi / order));
}

Point polygonState(const PolygonSpec& spec, int x) {
  const double angle = 2.0 * kPi * x / spec.n;
  return vec3(spec.rn * std::cos(angle), spec.rn * std::sin(angle), 1.0);
}

Point polygonEffect(const PolygonSpec& spec, int x) {
  if (spec.n % 2 == 0) {
    const double angle = (2.0 * x - 1.0) * kPi / spec.n;
    return 0.5 * vec3(spec.rn * std::cos(angle), spec.rn * std::sin(angle), 1.0);
  }
  return polygonState(spec, x) / (1.0 + spec.rn * spec.rn);
}

GptModel polygonModel(int n) {
  const PolygonSpec spec(n);
  std::vector<Point> states;
  std::vector<Point> effects;
  for (int x = 0; x < n; ++x) {
    states.push_back(polygonState(spec, x));
    effects.push_back(polygonEffect(spec, x));
  }
  return GptModel(3, std::move(states), std::move(effects), vec3(0.0, 0.0, 1.0));
}

Ensemble uniformPolygonEnsemble(int n) {
  auto model = std::make_shared<const GptModel>(polygonModel(n));
  std::vector<double> priors(static_cast<std::size_t>(n), 1.0 / n);
  return Ensemble(model, model->stateGenerators(), std::move(priors));
}

Ensemble noMeasurementEnsemble(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("p must lie in [0, 1]");
  auto model = std::make_shared<const GptModel>(polygonModel(4));
  std::vector<Point> states = model->stateGenerators();
  states.push_back(vec3(0.0, 0.0, 1.0));
  const double q = (1.0 - p) / 4.0;
  return Ensemble(model, std::move(states), {q, q, q, q, p});
}

DemoResult demoN3(double tol) {
  Ensemble ens = uniformPolygonEnsemble(3);
  DiscriminationSolution sol = solveDiscrimination(ens, tol);
  return {std::move(ens), std::move(sol)};
}

DemoN4Result demoN4(double tol) {
  Ensemble ens = uniformPolygonEnsemble(4);
  DiscriminationSolution sol = solveDiscrimination(ens, tol);
  const PolygonSpec spec(4);
  std::vector<Point> f;
  for (int x = 0; x < 4; ++x) f.push_back(polygonEffect(spec, x));

  std::vector<AlternateMeasurement> alts;
  alts.push_back(certify(ens, sol, "i", "{f_x/2}: every outcome gets half of its own effect",
                         {f[0] / 2, f[1] / 2, f[2] / 2, f[3] / 2}, tol));
  alts.push_back(certify(ens, sol, "ii",
                         "{f_0, f_2}: f_0 answers 0 or 3, f_2 answers 1 or 2, uniformly at random",
                         {f[0] / 2, f[2] / 2, f[2] / 2, f[0] / 2}, tol));
  alts.push_back(certify(ens, sol, "iii",
                         "{f_1, f_3}: f_1 answers 0 or 1, f_3 answers 2 or 3, uniformly at random",
                         {f[1] / 2, f[1] / 2, f[3] / 2, f[3] / 2}, tol));
  return {std::move(ens), std::move(sol), std::move(alts)};
}

DemoResult demoNoMeasurement(double p, double tol) {
  Ensemble ens = noMeasurementEnsemble(p);
  DiscriminationSolution sol = solveDiscrimination(ens, tol);
  return {std::move(ens), std::move(sol)};
}

std::vector<double> defaultScanGrid() {
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(i / 20.0);
  return grid;
}

ScanResult thresholdScan(const std::vector<double>& pGrid, double tol) {
  for (double p : pGrid) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("scan grid values must lie in [0, 1]");
  }
  auto evaluateAt = [tol](double p) {
    const Ensemble ens = noMeasurementEnsemble(p);
    ScanRow row;
    row.p = p;
    row.pGuess = solveDiscrimination(ens, tol).pGuess;
    row.oraclePGuess = dualVertexEnumeration(ens).pGuess;
    row.maxPrior = noMeasurementValue(ens);
    row.noMeasurementOptimal = row.pGuess <= row.maxPrior + tol;
    return row;
  };

  std::vector<std::future<ScanRow>> pending;
  for (double p : pGrid) pending.push_back(std::async(std::launch::async, evaluateAt, p));
  ScanResult result;
  for (auto& f : pending) result.rows.push_back(f.get());

  result.threshold = bisect([tol](double p) {
    const Ensemble ens = noMeasurementEnsemble(p);
    return solveDiscrimination(ens, tol).pGuess <= noMeasurementValue(ens) + tol;
  });
  result.oracleThreshold = bisect([tol](double p) {
    const Ensemble ens = noMeasurementEnsemble(p);
    return dualVertexEnumeration(ens).pGuess <= noMeasurementValue(ens) + tol;
  });
  return result;
}

}  // namespace gptdisc
