#include "gptdisc/oracle.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "gptdisc/discrimination.hpp"
#include "gptdisc/errors.hpp"
#include "gptdisc/lp.hpp"

namespace gptdisc {

namespace {

bool lexLess(const Point& a, const Point& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

// Advances `pick` to the next k-subset of {0..n-1} in lexicographic order.
bool nextCombination(std::vector<std::size_t>& pick, std::size_t n) {
  const std::size_t k = pick.size();
  for (std::size_t i = k; i-- > 0;) {
    if (pick[i] < n - k + i) {
      ++pick[i];
      for (std::size_t j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

OracleResult dualVertexEnumeration(const Ensemble& ensemble) {
  const GptModel& model = ensemble.model();
  const int d = model.dim();
  const auto& gens = model.effectCone().generators();
  const std::size_t rows = gens.size() * ensemble.size();
  if (d > kOracleMaxDim) {
    throw UnsupportedSize("oracle supports dimension <= " + std::to_string(kOracleMaxDim));
  }
  if (rows > kOracleMaxRows) {
    throw UnsupportedSize("oracle supports at most " + std::to_string(kOracleMaxRows) +
                          " constraint rows, got " + std::to_string(rows));
  }

  Matrix a(static_cast<Eigen::Index>(rows), d);
  Eigen::VectorXd b(static_cast<Eigen::Index>(rows));
  std::size_t r = 0;
  for (std::size_t x = 0; x < ensemble.size(); ++x) {
    for (const Point& g : gens) {
      a.row(static_cast<Eigen::Index>(r)) = g.transpose();
      b[static_cast<Eigen::Index>(r)] = ensemble.priors()[x] * g.dot(ensemble.states()[x]);
      ++r;
    }
  }

  OracleResult best;
  bool found = false;
  const auto k = static_cast<std::size_t>(d);
  if (rows < k) throw PreconditionError("too few constraints to define a vertex");
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  Matrix sub(d, d);
  Eigen::VectorXd rhs(d);
  do {
    for (std::size_t i = 0; i < k; ++i) {
      sub.row(static_cast<Eigen::Index>(i)) = a.row(static_cast<Eigen::Index>(pick[i]));
      rhs[static_cast<Eigen::Index>(i)] = b[static_cast<Eigen::Index>(pick[i])];
    }
    Eigen::FullPivLU<Matrix> lu(sub);
    lu.setThreshold(1e-10);
    if (!lu.isInvertible()) continue;
    ++best.verticesExamined;
    const Point cand = lu.solve(rhs);
    if (((a * cand - b).array() < -kOracleFeasTol).any()) continue;
    const double value = model.unitEffect().dot(cand);
    if (!found || value < best.pGuess - 1e-12 ||
        (value <= best.pGuess + 1e-12 && lexLess(cand, best.k))) {
      best.pGuess = found ? std::min(best.pGuess, value) : value;
      best.k = cand;
      found = true;
    }
  } while (nextCombination(pick, rows));

  if (!found) throw PreconditionError("dual feasible region has no vertex");
  best.pGuess = model.unitEffect().dot(best.k);
  return best;
}

double primalRandomSearch(const Ensemble& ensemble, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw InvalidInput("primalRandomSearch needs at least one sample");
  const GptModel& model = ensemble.model();
  const auto& gens = model.effectCone().generators();
  const std::size_t n = ensemble.size();
  const std::size_t g = gens.size();

  // value[x][j] = q_x g_j[w_x]
  Matrix value(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(g));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t j = 0; j < g; ++j) {
      value(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(j)) =
          ensemble.priors()[x] * evaluate(gens[j], ensemble.states()[x]);
    }
  }

  const auto top = static_cast<std::size_t>(
      std::max_element(ensemble.priors().begin(), ensemble.priors().end()) -
      ensemble.priors().begin());
  Measurement trivial;
  for (std::size_t x = 0; x < n; ++x) {
    trivial.effects.push_back(x == top ? model.unitEffect() : Point(Point::Zero(model.dim())));
  }
  double best = successProbability(ensemble, trivial);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);
  std::uniform_int_distribution<std::size_t> outcome(0, n - 1);

  for (std::size_t s = 1; s < samples; ++s) {
    LpBuilder builder(g);
    Eigen::VectorXd cost(static_cast<Eigen::Index>(g));
    for (std::size_t j = 0; j < g; ++j) cost[static_cast<Eigen::Index>(j)] = unit(rng);
    builder.setObjective(cost);
    for (int i = 0; i < model.dim(); ++i) {
      Eigen::VectorXd row(static_cast<Eigen::Index>(g));
      for (std::size_t j = 0; j < g; ++j) row[static_cast<Eigen::Index>(j)] = gens[j][i];
      builder.addRow(row, LpBuilder::Sense::eq, model.unitEffect()[i]);
    }
    const LpSolution mu = solveLp(builder.build());
    if (mu.status != LpStatus::optimal) continue;

    double total = 0.0;
    for (std::size_t j = 0; j < g; ++j) {
      const double weight = std::max(0.0, mu.x[static_cast<Eigen::Index>(j)]);
      if (unit(rng) < 0.5) {
        total += weight * value(static_cast<Eigen::Index>(outcome(rng)), static_cast<Eigen::Index>(j));
        continue;
      }
      std::vector<double> split(n);
      double norm = 0.0;
      for (double& v : split) norm += (v = expo(rng));
      for (std::size_t x = 0; x < n; ++x) {
        total += weight * split[x] / norm *
                 value(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(j));
      }
    }
    best = std::max(best, total);
  }
  return best;
}

}  // namespace gptdisc
