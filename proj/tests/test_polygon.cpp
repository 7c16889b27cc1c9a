#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gptdisc/errors.hpp"
#include "gptdisc/polygon.hpp"

using namespace gptdisc;

namespace {

Point p3(double a, double b, double c) {
  Point p(3);
  p << a, b, c;
  return p;
}

}  // namespace

TEST_CASE("polygon radius") {
  for (int n = 3; n <= 20; ++n) {
    const PolygonSpec s(n);
    CHECK(s.rn * s.rn * std::cos(std::numbers::pi / n) == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(PolygonSpec(2), InvalidInput);
  CHECK_THROWS_AS(polygonModel(0), InvalidInput);
}

TEST_CASE("triangle and square coordinates") {
  const PolygonSpec tri(3);
  CHECK((polygonState(tri, 0) - p3(std::sqrt(2.0), 0, 1)).norm() <= 1e-14);
  CHECK((polygonEffect(tri, 0) - p3(std::sqrt(2.0) / 3.0, 0, 1.0 / 3.0)).norm() <= 1e-14);

  const PolygonSpec sq(4);
  const double r = std::pow(2.0, 0.25);
  const double c = std::pow(2.0, -1.25);
  CHECK((polygonState(sq, 0) - p3(r, 0, 1)).norm() <= 1e-14);
  CHECK((polygonState(sq, 1) - p3(0, r, 1)).norm() <= 1e-14);
  CHECK((polygonEffect(sq, 0) - p3(c, -c, 0.5)).norm() <= 1e-14);
  CHECK((polygonEffect(sq, 1) - p3(c, c, 0.5)).norm() <= 1e-14);
  CHECK(std::abs(evaluate(polygonEffect(sq, 0), polygonState(sq, 2))) <= 1e-15);

  Point sum = Point::Zero(3);
  for (int x = 0; x < 4; ++x) sum += polygonEffect(sq, x);
  CHECK((sum - p3(0, 0, 2)).norm() <= 1e-14);
}

TEST_CASE("polygon models for n = 3..12") {
  for (int n = 3; n <= 12; ++n) {
    CAPTURE(n);
    const GptModel m = polygonModel(n);
    CHECK(m.stateGenerators().size() == static_cast<std::size_t>(n));
    CHECK(m.effectGenerators().size() == static_cast<std::size_t>(n));
    const ValidationReport r = validateModel(m);
    CHECK(r.ok());
    CHECK(r.unrestrictedEffects);

    Point sum = Point::Zero(3);
    for (const Point& f : m.effectGenerators()) sum += f;
    const double expected = n % 2 == 0 ? n / 2.0 : n / (1.0 + PolygonSpec(n).rn * PolygonSpec(n).rn);
    CHECK((sum - expected * m.unitEffect()).norm() <= 1e-12);

    // Each effect generator is tight on some state: its max over states is 1.
    for (const Point& f : m.effectGenerators()) {
      double hi = 0.0;
      for (const Point& w : m.stateGenerators()) hi = std::max(hi, evaluate(f, w));
      CHECK(hi == doctest::Approx(1.0).epsilon(1e-12));
    }
    if (n % 2 == 1) {
      for (int x = 0; x < n; ++x) {
        CHECK(evaluate(m.effectGenerators()[x], m.stateGenerators()[x]) ==
              doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("ensemble constructors") {
  const Ensemble u = uniformPolygonEnsemble(6);
  CHECK(u.size() == 6);
  for (double q : u.priors()) CHECK(q == doctest::Approx(1.0 / 6.0));

  const Ensemble e = noMeasurementEnsemble(0.3);
  REQUIRE(e.size() == 5);
  CHECK(e.priors()[4] == doctest::Approx(0.3));
  CHECK(e.priors()[0] == doctest::Approx(0.175));
  CHECK((e.states()[4] - p3(0, 0, 1)).norm() == 0.0);
  CHECK_THROWS_AS(noMeasurementEnsemble(1.5), InvalidInput);
  CHECK_THROWS_AS(noMeasurementEnsemble(-0.1), InvalidInput);
}

TEST_CASE("triangle demo") {
  const DemoResult r = demoN3();
  CHECK(std::abs(r.solution.pGuess - 1.0) <= 1e-9);
  CHECK((r.solution.symmetryOperator - p3(0, 0, 1)).norm() <= 1e-9);
  for (std::size_t x = 0; x < 3; ++x) {
    CHECK(evaluate(r.solution.measurement.effects[x], r.ensemble.states()[x]) ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("square demo and its alternate measurements") {
  const DemoN4Result r = demoN4();
  CHECK(std::abs(r.solution.pGuess - 0.5) <= 1e-9);
  REQUIRE(r.alternates.size() == 3);
  CHECK(r.alternates[0].name == "i");
  CHECK(r.alternates[1].name == "ii");
  CHECK(r.alternates[2].name == "iii");
  for (const AlternateMeasurement& a : r.alternates) {
    CAPTURE(a.name);
    CHECK(std::abs(a.successProbability - 0.5) <= 1e-9);
    CHECK(a.kkt.passed());
    CHECK(validateMeasurement(r.ensemble.model(), a.measurement).ok());
  }
}

TEST_CASE("deterministic assignments of the two-outcome measurements") {
  const DemoN4Result r = demoN4();
  const auto& f = r.ensemble.model().effectGenerators();
  const Point z = Point::Zero(3);
  for (const Measurement& m : {Measurement{{f[0], z, f[2], z}}, Measurement{{f[1], z, f[3], z}}}) {
    CHECK(std::abs(successProbability(r.ensemble, m) - 0.5) <= 1e-9);
    DiscriminationSolution s = r.solution;
    s.measurement = m;
    CHECK(verifyKkt(r.ensemble, s).passed());
  }
}

TEST_CASE("no-measurement demo") {
  const DemoResult half = demoNoMeasurement(0.5);
  CHECK(std::abs(half.solution.pGuess - 0.5) <= 1e-9);
  CHECK((half.solution.symmetryOperator - p3(0, 0, 0.5)).norm() <= 1e-9);
  CHECK(std::abs(evaluate(half.ensemble.model().effectGenerators()[0],
                          0.5 * half.ensemble.states()[4] - 0.125 * half.ensemble.states()[0]) -
                 (3 * 0.5 - 1) / 4) <= 1e-12);

  CHECK(std::abs(demoNoMeasurement(0.0).solution.pGuess - 0.5) <= 1e-9);
  CHECK(std::abs(demoNoMeasurement(1.0).solution.pGuess - 1.0) <= 1e-9);
  CHECK(std::abs(demoNoMeasurement(0.2).solution.pGuess - 0.4) <= 1e-9);
}

TEST_CASE("threshold scan") {
  const ScanResult s = thresholdScan({0.05, 0.2, 0.3, 0.4, 0.9});
  REQUIRE(s.rows.size() == 5);
  CHECK_FALSE(s.rows[0].noMeasurementOptimal);
  CHECK_FALSE(s.rows[1].noMeasurementOptimal);
  CHECK_FALSE(s.rows[2].noMeasurementOptimal);
  CHECK(s.rows[3].noMeasurementOptimal);
  CHECK(s.rows[4].noMeasurementOptimal);
  for (const ScanRow& row : s.rows) {
    CHECK(std::abs(row.pGuess - std::max((1 - row.p) / 2, row.p)) <= 1e-9);
    CHECK(std::abs(row.pGuess - row.oraclePGuess) <= 1e-9);
  }
  CHECK(std::abs(s.threshold - 1.0 / 3.0) <= 1e-6);
  CHECK(std::abs(s.oracleThreshold - 1.0 / 3.0) <= 1e-6);
  CHECK(std::abs(s.threshold - ScanResult::kPublishedThreshold) > 0.1);

  CHECK_THROWS_AS(thresholdScan({1.2}), InvalidInput);
}

TEST_CASE("scan on the default grid is monotone") {
  const std::vector<double> grid = defaultScanGrid();
  CHECK(grid.size() == 21);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == doctest::Approx(1.0));
  const ScanResult s = thresholdScan(grid);
  bool seen = false;
  for (const ScanRow& row : s.rows) {
    if (seen) CHECK(row.noMeasurementOptimal);
    seen = seen || row.noMeasurementOptimal;
  }
  CHECK(seen);
}
