#include "gptdisc/io.hpp"

#include <fstream>
#include <iostream>
#include <memory>

#include "gptdisc/errors.hpp"

namespace gptdisc::io {

namespace {

const json& field(const json& j, const std::string& name) {
  if (!j.is_object() || !j.contains(name)) throw InvalidInput("missing field \"" + name + "\"");
  return j.at(name);
}

std::vector<Point> pointsFromJson(const json& j, const std::string& name) {
  if (!j.is_array()) throw InvalidInput("\"" + name + "\" must be an array of points");
  std::vector<Point> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(pointFromJson(j[i], name + "[" + std::to_string(i) + "]"));
  }
  return out;
}

json pointsToJson(const std::vector<Point>& points) {
  json arr = json::array();
  for (const Point& p : points) arr.push_back(pointToJson(p));
  return arr;
}

}  // namespace

json pointToJson(const Point& p) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) arr.push_back(p[i]);
  return arr;
}

Point pointFromJson(const json& j, const std::string& name) {
  if (!j.is_array()) throw InvalidInput("\"" + name + "\" must be an array of numbers");
  Point p(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw InvalidInput("\"" + name + "\" must contain only numbers");
    p[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return p;
}

json modelToJson(const GptModel& model) {
  return json{{"dim", model.dim()},
              {"unit_effect", pointToJson(model.unitEffect())},
              {"state_generators", pointsToJson(model.stateGenerators())},
              {"effect_generators", pointsToJson(model.effectGenerators())}};
}

GptModel modelFromJson(const json& j) {
  const json& dim = field(j, "dim");
  if (!dim.is_number_integer()) throw InvalidInput("\"dim\" must be an integer");
  return GptModel(dim.get<int>(), pointsFromJson(field(j, "state_generators"), "state_generators"),
                  pointsFromJson(field(j, "effect_generators"), "effect_generators"),
                  pointFromJson(field(j, "unit_effect"), "unit_effect"));
}

json ensembleToJson(const Ensemble& ensemble) {
  return json{{"model", modelToJson(ensemble.model())},
              {"states", pointsToJson(ensemble.states())},
              {"priors", ensemble.priors()}};
}

Ensemble ensembleFromJson(const json& j, const std::filesystem::path& baseDir) {
  const json& m = field(j, "model");
  std::shared_ptr<const GptModel> model;
  if (m.is_string()) {
    std::filesystem::path path = m.get<std::string>();
    if (path.is_relative()) path = baseDir / path;
    model = std::make_shared<const GptModel>(modelFromJson(readJson(path.string())));
  } else {
    model = std::make_shared<const GptModel>(modelFromJson(m));
  }
  const json& priors = field(j, "priors");
  if (!priors.is_array()) throw InvalidInput("\"priors\" must be an array of numbers");
  std::vector<double> q;
  for (const json& v : priors) {
    if (!v.is_number()) throw InvalidInput("\"priors\" must contain only numbers");
    q.push_back(v.get<double>());
  }
  return Ensemble(model, pointsFromJson(field(j, "states"), "states"), std::move(q));
}

json kktToJson(const KktReport& r) {
  return json{{"stability_residuals", r.stabilityResiduals},
              {"normalization_residuals", r.normalizationResiduals},
              {"positivity_ok", r.positivityOk},
              {"orthogonality_residuals", r.orthogonalityResiduals},
              {"effects_in_cone", r.effectsInCone},
              {"measurement_residual", r.measurementResidual},
              {"gap", r.gap},
              {"tol", r.tol},
              {"passed", r.passed()}};
}

json congruenceToJson(const CongruenceReport& r) {
  return json{{"max_residual", r.maxResidual},
              {"ratio", r.ratio ? json(*r.ratio) : json(nullptr)},
              {"ratio_spread", r.ratioSpread},
              {"skipped", r.skipped}};
}

json oracleToJson(const OracleResult& r) {
  return json{{"p_guess", r.pGuess}, {"K", pointToJson(r.k)}, {"vertices_examined", r.verticesExamined}};
}

json measurementToJson(const Measurement& m) { return pointsToJson(m.effects); }

json solutionToJson(const DiscriminationSolution& s, const KktReport& kkt,
                    const CongruenceReport& geometry) {
  json pairs = json::array();
  for (const ComplementaryPair& c : s.complementary) {
    pairs.push_back(json{{"r", c.r}, {"d", c.d ? pointToJson(*c.d) : json(nullptr)}});
  }
  return json{{"p_guess", s.pGuess},
              {"measurement", measurementToJson(s.measurement)},
              {"K", pointToJson(s.symmetryOperator)},
              {"complementary", pairs},
              {"primal_objective", s.primalObjective},
              {"dual_objective", s.dualObjective},
              {"gap", std::abs(s.primalObjective - s.dualObjective)},
              {"kkt", kktToJson(kkt)},
              {"geometry", congruenceToJson(geometry)}};
}

DiscriminationSolution solutionFromJson(const json& j) {
  DiscriminationSolution s;
  const json& p = field(j, "p_guess");
  if (!p.is_number()) throw InvalidInput("\"p_guess\" must be a number");
  s.pGuess = p.get<double>();
  s.measurement.effects = pointsFromJson(field(j, "measurement"), "measurement");
  s.symmetryOperator = pointFromJson(field(j, "K"), "K");
  const json& pairs = field(j, "complementary");
  if (!pairs.is_array()) throw InvalidInput("\"complementary\" must be an array");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string name = "complementary[" + std::to_string(i) + "]";
    const json& r = field(pairs[i], "r");
    if (!r.is_number()) throw InvalidInput("\"" + name + ".r\" must be a number");
    ComplementaryPair pair;
    pair.r = r.get<double>();
    const json& d = field(pairs[i], "d");
    if (!d.is_null()) pair.d = pointFromJson(d, name + ".d");
    s.complementary.push_back(std::move(pair));
  }
  s.dualObjective = j.contains("dual_objective") && j["dual_objective"].is_number()
                        ? j["dual_objective"].get<double>()
                        : s.pGuess;
  s.primalObjective = j.contains("primal_objective") && j["primal_objective"].is_number()
                          ? j["primal_objective"].get<double>()
                          : s.pGuess;
  return s;
}

json readJson(const std::string& path) {
  try {
    if (path == "-") return json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput("cannot parse " + path + ": " + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace gptdisc::io
