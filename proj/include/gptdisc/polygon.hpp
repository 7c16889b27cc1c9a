#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gptdisc/discrimination.hpp"
#include "gptdisc/model.hpp"

namespace gptdisc {

/// Regular n-gon state space at height 1 with vertex radius
/// rn = cos(pi/n)^(-1/2).
struct PolygonSpec {
  int n;
  double rn;

  explicit PolygonSpec(int order);
};

/// Vertex x of the n-gon: (rn cos(2 pi x/n), rn sin(2 pi x/n), 1).
Point polygonState(const PolygonSpec& spec, int x);

/// Effect generator x. Even n: (1/2)(rn cos((2x-1)pi/n), rn sin((2x-1)pi/n), 1).
/// Odd n: the vertex direction scaled by 1/(1 + rn^2).
Point polygonEffect(const PolygonSpec& spec, int x);

/// The n-gon model with unit effect (0, 0, 1). Throws InvalidInput for n < 3.
GptModel polygonModel(int n);

/// All n vertices with prior 1/n.
Ensemble uniformPolygonEnsemble(int n);

/// Four square vertices with prior (1 - p)/4 each plus their average
/// (0, 0, 1) with prior p. Throws InvalidInput unless 0 <= p <= 1.
Ensemble noMeasurementEnsemble(double p);

struct DemoResult {
  Ensemble ensemble;
  DiscriminationSolution solution;
};

/// One of the hand-made optimal measurements of the square ensemble and its
/// certificate against the solver's K and complementary states.
struct AlternateMeasurement {
  std::string name;
  std::string description;
  Measurement measurement;
  double successProbability = 0.0;
  KktReport kkt;
};

struct DemoN4Result {
  Ensemble ensemble;
  DiscriminationSolution solution;
  std::vector<AlternateMeasurement> alternates;
};

DemoResult demoN3(double tol = kDefaultTol);
DemoN4Result demoN4(double tol = kDefaultTol);
DemoResult demoNoMeasurement(double p, double tol = kDefaultTol);

struct ScanRow {
  double p = 0.0;
  double pGuess = 0.0;
  double oraclePGuess = 0.0;
  double maxPrior = 0.0;
  bool noMeasurementOptimal = false;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  /// Smallest p at which guessing without measuring is optimal, by bisection
  /// on the LP solver and, independently, on the vertex-enumeration oracle.
  double threshold = 0.0;
  double oracleThreshold = 0.0;
  /// Where f_0[p w_4 - q_0 w_0] = (3p - 1)/4 changes sign.
  static constexpr double kDualFeasibilityThreshold = 1.0 / 3.0;
  /// Threshold quoted for the quantum version of this ensemble.
  static constexpr double kPublishedThreshold = 0.2;
};

/// Solves the no-measurement ensemble at every grid point and bisects for the
/// threshold to within 1e-7. Grid points are solved concurrently.
ScanResult thresholdScan(const std::vector<double>& pGrid, double tol = kDefaultTol);

/// {0, 0.05, ..., 1}
std::vector<double> defaultScanGrid();

}  // namespace gptdisc
