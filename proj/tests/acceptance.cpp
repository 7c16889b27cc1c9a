// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances and time limits are fixed here and are not tunable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "gptdisc/cone.hpp"
#include "gptdisc/discrimination.hpp"
#include "gptdisc/geometry.hpp"
#include "gptdisc/oracle.hpp"
#include "gptdisc/polygon.hpp"
#include "support/lp_bruteforce.hpp"
#include "support/random_instances.hpp"

using namespace gptdisc;

namespace {

constexpr double kValueTol = 1e-9;
constexpr double kGapTol = 1e-8;
constexpr double kOracleTol = 1e-8;
constexpr double kCongruenceTol = 1e-7;
constexpr double kLpTol = 1e-8;

Point p3(double a, double b, double c) {
  Point p(3);
  p << a, b, c;
  return p;
}

// Collects the first few failure reasons for a criterion.
struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  int reported = 0;

  void expect(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (reported++ < 3) detail << (reported > 1 ? "; " : "") << what;
  }
  void note(const std::string& what) { detail << (detail.tellp() > 0 ? "; " : "") << what; }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

int failures = 0;

void criterion(int id, const char* title, double limitSeconds,
               const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.expect(false, std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limitSeconds > 0.0) {
    out.expect(secs < limitSeconds, "took " + num(secs) + " s, limit " + num(limitSeconds) + " s");
  }
  if (!out.ok) ++failures;
  std::printf("[%s] criterion %d: %s (%.3f s)%s%s\n", out.ok ? "PASS" : "FAIL", id, title, secs,
              out.detail.tellp() > 0 ? " -- " : "", out.detail.str().c_str());
  std::fflush(stdout);
}

Ensemble permuted(const Ensemble& e, const std::vector<std::size_t>& perm) {
  std::vector<Point> states;
  std::vector<double> priors;
  for (std::size_t i : perm) {
    states.push_back(e.states()[i]);
    priors.push_back(e.priors()[i]);
  }
  return Ensemble(e.modelPtr(), states, priors);
}

}  // namespace

int main() {
  criterion(1, "uniform triangle is perfectly discriminable", 1.0, [](Outcome& o) {
    const DemoResult r = demoN3();
    o.expect(std::abs(r.solution.pGuess - 1.0) <= kValueTol, "p_guess " + num(r.solution.pGuess));
    o.expect((r.solution.symmetryOperator - p3(0, 0, 1)).norm() <= kValueTol, "K off (0,0,1)");
    for (const ComplementaryPair& c : r.solution.complementary) {
      o.expect(std::abs(c.r - 2.0 / 3.0) <= kValueTol, "r_x " + num(c.r));
    }
    o.expect(verifyKkt(r.ensemble, r.solution).passed(), "KKT check failed");
  });

  criterion(2, "uniform square: value, operator, complementary states, alternates", 1.0,
            [](Outcome& o) {
              const DemoN4Result r = demoN4();
              o.expect(std::abs(r.solution.pGuess - 0.5) <= kValueTol,
                       "p_guess " + num(r.solution.pGuess));
              o.expect((r.solution.symmetryOperator - p3(0, 0, 0.5)).norm() <= kValueTol,
                       "K off (0,0,1/2)");
              for (std::size_t x = 0; x < 4; ++x) {
                const ComplementaryPair& c = r.solution.complementary[x];
                o.expect(std::abs(c.r - 0.25) <= kValueTol, "r_x " + num(c.r));
                o.expect(c.d && (*c.d - r.ensemble.states()[(x + 2) % 4]).norm() <= kValueTol,
                         "d_" + std::to_string(x) + " is not the opposite vertex");
              }
              for (const AlternateMeasurement& a : r.alternates) {
                o.expect(std::abs(a.successProbability - 0.5) <= kValueTol && a.kkt.passed(),
                         "alternate " + a.name + " not optimal");
              }
            });

  criterion(3, "ratio of state and complementary differences", 0.0, [](Outcome& o) {
    const Ensemble four = uniformPolygonEnsemble(4);
    const DiscriminationSolution s4 = solveDiscrimination(four);
    const double r4 = ratioR(four, s4);
    o.expect(std::abs(r4 - 0.25) <= kValueTol, "square ratio " + num(r4));

    const Ensemble tri = uniformPolygonEnsemble(3);
    const DiscriminationSolution s3 = solveDiscrimination(tri);
    const RatioResult r3 = ratioReport(tri, s3);
    o.expect(r3.crossCheck <= kValueTol, "triangle |r - (p - 1/N)| = " + num(r3.crossCheck));
    o.expect(r3.spread <= kValueTol, "triangle ratio spread " + num(r3.spread));
  });

  criterion(4, "no-measurement threshold scan", 10.0, [](Outcome& o) {
    const ScanResult scan = thresholdScan(defaultScanGrid());
    const Point centre = p3(0, 0, 1);
    for (const ScanRow& row : scan.rows) {
      o.expect(std::abs(row.pGuess - row.oraclePGuess) <= kOracleTol,
               "oracle mismatch at p=" + num(row.p));
      if (row.p >= scan.threshold) {
        o.expect(std::abs(row.pGuess - row.p) <= kValueTol, "p_guess != p at p=" + num(row.p));
        const DiscriminationSolution s = solveDiscrimination(noMeasurementEnsemble(row.p));
        o.expect((s.symmetryOperator - row.p * centre).norm() <= kValueTol,
                 "K != p w_4 at p=" + num(row.p));
      }
    }
    o.expect(std::abs(scan.threshold - scan.oracleThreshold) <= 1e-6, "solver and oracle p* differ");
    o.expect(std::abs(scan.threshold - ScanResult::kDualFeasibilityThreshold) <= 1e-6,
             "p* " + num(scan.threshold) + " is not 1/3");
    char line[160];
    std::snprintf(line, sizeof line, "measured p*=%.7f, oracle p*=%.7f, published 1/5=%.7f, 1/3=%.7f",
                  scan.threshold, scan.oracleThreshold, ScanResult::kPublishedThreshold,
                  ScanResult::kDualFeasibilityThreshold);
    o.note(line);
  });

  criterion(5, "200 random polygon ensembles", 60.0, [](Outcome& o) {
    std::mt19937_64 rng(20240501);
    for (int t = 0; t < 200; ++t) {
      const Ensemble e = testing::randomPolygonEnsemble(rng);
      const std::string tag = "instance " + std::to_string(t) + ": ";
      const DiscriminationSolution s = solveDiscrimination(e);
      o.expect(std::abs(s.primalObjective - s.dualObjective) <= kGapTol, tag + "gap");
      o.expect(s.pGuess >= noMeasurementValue(e) - kValueTol && s.pGuess <= 1.0 + kValueTol,
               tag + "outside [max q, 1]");
      o.expect(verifyKkt(e, s).passed(), tag + "KKT");
      o.expect(congruenceCheck(e, s).maxResidual <= kCongruenceTol, tag + "congruence");
      o.expect(std::abs(dualVertexEnumeration(e).pGuess - s.pGuess) <= kOracleTol, tag + "oracle");
    }
  });

  criterion(6, "dual cone is an involution on polygon cones", 0.0, [](Outcome& o) {
    for (int n = 3; n <= 12; ++n) {
      const GptModel m = polygonModel(n);
      const PolyhedralCone& states = m.stateCone();
      o.expect(sameGenerators(dualCone(dualCone(states)), states),
               "double dual differs for n=" + std::to_string(n));
      if (n <= 4) {
        o.expect(sameGenerators(dualCone(states), m.effectCone()),
                 "dual of states is not the effect cone for n=" + std::to_string(n));
      }
    }
  });

  criterion(7, "simplex agrees with basis enumeration on 500 random LPs", 0.0, [](Outcome& o) {
    std::mt19937_64 rng(777);
    for (int t = 0; t < 500; ++t) {
      const LpProblem p = testing::randomBoundedLp(rng);
      const testing::BruteForceLp ref = testing::enumerateBases(p);
      const LpSolution s = solveLp(p);
      const std::string tag = "lp " + std::to_string(t) + ": ";
      if (!ref.feasible) {
        o.expect(s.status == LpStatus::infeasible, tag + "expected infeasible");
        continue;
      }
      o.expect(s.status == LpStatus::optimal, tag + std::string(statusName(s.status)));
      if (s.status != LpStatus::optimal) continue;
      o.expect(std::abs(s.objective - ref.objective) <= kLpTol * (1.0 + std::abs(ref.objective)),
               tag + "objective " + num(s.objective) + " vs " + num(ref.objective));
      o.expect(checkCertificate(p, s, kLpTol), tag + "certificate");
    }
  });

  criterion(8, "zero-prior padding and relabelling leave the optimum unchanged", 0.0,
            [](Outcome& o) {
              std::mt19937_64 rng(31337);
              for (int t = 0; t < 50; ++t) {
                const Ensemble e = testing::randomPolygonEnsemble(rng);
                const double base = solveDiscrimination(e).pGuess;
                const std::string tag = "instance " + std::to_string(t) + ": ";

                std::vector<std::size_t> perm(e.size());
                std::iota(perm.begin(), perm.end(), 0);
                std::shuffle(perm.begin(), perm.end(), rng);
                o.expect(std::abs(solveDiscrimination(permuted(e, perm)).pGuess - base) <= kValueTol,
                         tag + "permutation");

                std::vector<Point> states = e.states();
                std::vector<double> priors = e.priors();
                const auto& gens = e.model().stateGenerators();
                states.push_back(gens[static_cast<std::size_t>(t) % gens.size()]);
                priors.push_back(0.0);
                o.expect(std::abs(solveDiscrimination(Ensemble(e.modelPtr(), states, priors)).pGuess -
                                  base) <= kValueTol,
                         tag + "padding");
              }
            });

  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
