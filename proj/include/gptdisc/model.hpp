#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gptdisc/cone.hpp"
#include "gptdisc/types.hpp"

namespace gptdisc {

/// A finitely generated GPT: states are the normalized slice of the cone
/// spanned by `stateGenerators`, effects live in the cone spanned by
/// `effectGenerators`, and the probability of effect e on state w is e.w.
class GptModel {
 public:
  /// Checks shapes and finiteness only (throws InvalidInput). The physical
  /// axioms are reported by validateModel.
  GptModel(int dim, std::vector<Point> stateGenerators, std::vector<Point> effectGenerators,
           Point unitEffect);

  int dim() const { return dim_; }
  const std::vector<Point>& stateGenerators() const { return stateGens_; }
  const std::vector<Point>& effectGenerators() const { return effectGens_; }
  const Point& unitEffect() const { return unit_; }

  const PolyhedralCone& stateCone() const { return stateCone_; }
  const PolyhedralCone& effectCone() const { return effectCone_; }

 private:
  int dim_;
  std::vector<Point> stateGens_;
  std::vector<Point> effectGens_;
  Point unit_;
  PolyhedralCone stateCone_;
  PolyhedralCone effectCone_;
};

/// A discrimination instance: N states of one model with prior probabilities.
class Ensemble {
 public:
  Ensemble(std::shared_ptr<const GptModel> model, std::vector<Point> states,
           std::vector<double> priors);

  const GptModel& model() const { return *model_; }
  std::shared_ptr<const GptModel> modelPtr() const { return model_; }
  const std::vector<Point>& states() const { return states_; }
  const std::vector<double>& priors() const { return priors_; }
  std::size_t size() const { return states_.size(); }

 private:
  std::shared_ptr<const GptModel> model_;
  std::vector<Point> states_;
  std::vector<double> priors_;
};

/// One effect per outcome; outcome x means "the state was w_x".
struct Measurement {
  std::vector<Point> effects;
};

/// Euclidean pairing e.w. Throws InvalidInput on dimension mismatch.
double evaluate(const Point& effect, const Point& state);

enum class Severity { error, warning };

struct ValidationIssue {
  Severity severity = Severity::error;
  std::string code;
  std::string message;
  std::vector<std::size_t> indices;
  double residual = 0.0;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  /// Effect cone equals the full dual of the state cone. Only meaningful for
  /// model reports.
  bool unrestrictedEffects = false;

  bool ok() const;
  std::size_t errorCount() const;
  /// One line per issue, errors first.
  std::string summary() const;
};

ValidationReport validateModel(const GptModel& model, double tol = kDefaultTol);
ValidationReport validateEnsemble(const Ensemble& ensemble, double tol = kDefaultTol);
ValidationReport validateMeasurement(const GptModel& model, const Measurement& measurement,
                                     double tol = kDefaultTol);

/// Formats a real with 17 significant digits.
std::string formatReal(double v);

}  // namespace gptdisc
