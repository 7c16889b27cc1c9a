#include "gptdisc/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "gptdisc/errors.hpp"
#include "gptdisc/lp.hpp"

namespace gptdisc {

namespace {

void requirePoint(int dim, const Point& p, const std::string& what) {
  if (p.size() != dim) {
    throw InvalidInput(what + ": expected dimension " + std::to_string(dim) + ", got " +
                       std::to_string(p.size()));
  }
  if (!p.allFinite()) throw InvalidInput(what + ": non-finite coordinate");
}

void addIssue(ValidationReport& report, Severity severity, std::string code, std::string message,
              std::vector<std::size_t> indices = {}, double residual = 0.0) {
  report.issues.push_back(
      {severity, std::move(code), std::move(message), std::move(indices), residual});
}

// Some nonzero nonnegative combination of the generators vanishes.
bool containsLine(const std::vector<Point>& gens, int dim) {
  if (gens.empty()) return false;
  const std::size_t n = gens.size();
  LpBuilder builder(n);
  for (int i = 0; i < dim; ++i) {
    Eigen::VectorXd row(static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) row[static_cast<Eigen::Index>(j)] = gens[j][i];
    builder.addRow(row, LpBuilder::Sense::eq, 0.0);
  }
  builder.addRow(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n)), LpBuilder::Sense::eq, 1.0);
  return solveLp(builder.build()).status == LpStatus::optimal;
}

int rankOf(const std::vector<Point>& gens, int dim) {
  if (gens.empty()) return 0;
  Matrix m(static_cast<Eigen::Index>(gens.size()), dim);
  for (std::size_t i = 0; i < gens.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = gens[i].transpose();
  Eigen::FullPivLU<Matrix> lu(m);
  lu.setThreshold(1e-10);
  return static_cast<int>(lu.rank());
}

}  // namespace

std::string formatReal(double v) {
  char buf[32];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

GptModel::GptModel(int dim, std::vector<Point> stateGenerators,
                   std::vector<Point> effectGenerators, Point unitEffect)
    : dim_(dim),
      stateGens_(std::move(stateGenerators)),
      effectGens_(std::move(effectGenerators)),
      unit_(std::move(unitEffect)),
      stateCone_(dim > 0 ? dim : 1, {}),
      effectCone_(dim > 0 ? dim : 1, {}) {
  if (dim <= 0) throw InvalidInput("model dimension must be positive");
  for (std::size_t i = 0; i < stateGens_.size(); ++i) {
    requirePoint(dim, stateGens_[i], "state generator " + std::to_string(i));
  }
  for (std::size_t i = 0; i < effectGens_.size(); ++i) {
    requirePoint(dim, effectGens_[i], "effect generator " + std::to_string(i));
  }
  requirePoint(dim, unit_, "unit effect");
  stateCone_ = PolyhedralCone(dim, stateGens_);
  effectCone_ = PolyhedralCone(dim, effectGens_);
}

Ensemble::Ensemble(std::shared_ptr<const GptModel> model, std::vector<Point> states,
                   std::vector<double> priors)
    : model_(std::move(model)), states_(std::move(states)), priors_(std::move(priors)) {
  if (!model_) throw InvalidInput("ensemble needs a model");
  if (states_.size() != priors_.size()) {
    throw InvalidInput("ensemble has " + std::to_string(states_.size()) + " states but " +
                       std::to_string(priors_.size()) + " priors");
  }
  for (std::size_t i = 0; i < states_.size(); ++i) {
    requirePoint(model_->dim(), states_[i], "state " + std::to_string(i));
  }
  for (double q : priors_) {
    if (!std::isfinite(q)) throw InvalidInput("prior is not finite");
  }
}

double evaluate(const Point& effect, const Point& state) {
  if (effect.size() != state.size()) {
    throw InvalidInput("evaluate: effect has dimension " + std::to_string(effect.size()) +
                       ", state has " + std::to_string(state.size()));
  }
  return effect.dot(state);
}

bool ValidationReport::ok() const { return errorCount() == 0; }

std::size_t ValidationReport::errorCount() const {
  return static_cast<std::size_t>(std::count_if(
      issues.begin(), issues.end(), [](const auto& i) { return i.severity == Severity::error; }));
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  for (Severity pass : {Severity::error, Severity::warning}) {
    for (const auto& issue : issues) {
      if (issue.severity != pass) continue;
      out << (pass == Severity::error ? "error" : "warning") << ": " << issue.message << '\n';
    }
  }
  return out.str();
}

ValidationReport validateModel(const GptModel& model, double tol) {
  ValidationReport report;
  const auto& states = model.stateGenerators();
  const auto& effects = model.effectGenerators();
  const Point& u = model.unitEffect();

  if (states.empty()) addIssue(report, Severity::error, "no-states", "model has no state generators");
  if (effects.empty()) addIssue(report, Severity::error, "no-effects", "model has no effect generators");

  for (std::size_t i = 0; i < states.size(); ++i) {
    const double residual = std::abs(evaluate(u, states[i]) - 1.0);
    if (residual > tol) {
      addIssue(report, Severity::error, "normalization",
               "state generator " + std::to_string(i) + ": u[w]=1 violated, residual " +
                   formatReal(residual),
               {i}, residual);
    }
  }

  for (std::size_t j = 0; j < effects.size(); ++j) {
    for (std::size_t i = 0; i < states.size(); ++i) {
      const double p = evaluate(effects[j], states[i]);
      const double excess = p < 0.0 ? -p : p - 1.0;
      if (excess > tol) {
        addIssue(report, Severity::error, "effect-range",
                 "effect generator " + std::to_string(j) + " on state generator " +
                     std::to_string(i) + " gives " + formatReal(p) + ", outside [0,1]",
                 {j, i}, excess);
      }
    }
  }

  if (!effects.empty() && !memberOf(model.effectCone(), u, tol)) {
    addIssue(report, Severity::error, "unit-effect",
             "unit effect is not in the cone of effect generators");
  }

  if (containsLine(states, model.dim())) {
    addIssue(report, Severity::error, "state-cone-not-pointed", "state cone contains a line");
  }
  if (const int r = rankOf(states, model.dim()); r < model.dim()) {
    addIssue(report, Severity::warning, "state-cone-not-full-dimensional",
             "state cone spans dimension " + std::to_string(r) + " of " +
                 std::to_string(model.dim()));
  }

  if (model.dim() > kMaxDualConeDim) {
    addIssue(report, Severity::warning, "unrestricted-effects-unchecked",
             "dimension too large to compare the effect cone with the dual state cone");
  } else if (!states.empty()) {
    const PolyhedralCone full = dualCone(model.stateCone());
    bool same = true;
    for (const Point& g : model.effectCone().generators()) {
      same = same && coneGe(g, Point::Zero(model.dim()), model.stateCone(), tol);
    }
    for (const Point& g : full.generators()) {
      same = same && memberOf(model.effectCone(), g, tol);
    }
    report.unrestrictedEffects = same;
    if (!same) {
      addIssue(report, Severity::warning, "restricted-effects",
               "effect cone differs from the dual of the state cone");
    }
  }
  return report;
}

ValidationReport validateEnsemble(const Ensemble& ensemble, double tol) {
  ValidationReport report;
  const GptModel& model = ensemble.model();
  if (ensemble.size() == 0) addIssue(report, Severity::error, "empty", "ensemble has no states");

  double sum = 0.0;
  for (std::size_t x = 0; x < ensemble.size(); ++x) {
    const double q = ensemble.priors()[x];
    sum += q;
    if (q < -tol) {
      addIssue(report, Severity::error, "negative-prior",
               "prior " + std::to_string(x) + " is negative: " + formatReal(q), {x}, -q);
    }
  }
  if (std::abs(sum - 1.0) > tol) {
    addIssue(report, Severity::error, "prior-sum", "priors sum " + formatReal(sum), {},
             std::abs(sum - 1.0));
  }

  for (std::size_t x = 0; x < ensemble.size(); ++x) {
    const Point& w = ensemble.states()[x];
    const double residual = std::abs(evaluate(model.unitEffect(), w) - 1.0);
    if (residual > tol) {
      addIssue(report, Severity::error, "normalization",
               "state " + std::to_string(x) + ": u[w]=1 violated, residual " + formatReal(residual),
               {x}, residual);
    }
    if (!memberOf(model.stateCone(), w, tol)) {
      addIssue(report, Severity::error, "state-membership",
               "state " + std::to_string(x) + " is outside the state cone", {x});
    }
  }
  return report;
}

ValidationReport validateMeasurement(const GptModel& model, const Measurement& measurement,
                                     double tol) {
  ValidationReport report;
  Point sum = Point::Zero(model.dim());
  for (std::size_t x = 0; x < measurement.effects.size(); ++x) {
    const Point& e = measurement.effects[x];
    requirePoint(model.dim(), e, "effect " + std::to_string(x));
    sum += e;
    if (!memberOf(model.effectCone(), e, tol)) {
      addIssue(report, Severity::error, "effect-membership",
               "effect " + std::to_string(x) + " is outside the effect cone", {x});
    }
  }
  const double residual = (sum - model.unitEffect()).norm();
  if (residual > tol) {
    addIssue(report, Severity::error, "completeness",
             "effects do not sum to the unit effect, residual " + formatReal(residual), {},
             residual);
  }
  return report;
}

}  // namespace gptdisc
