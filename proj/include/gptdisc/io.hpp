#pragma once

#include <filesystem>
#include <string>

#include "gptdisc/discrimination.hpp"
#include "gptdisc/geometry.hpp"
#include "gptdisc/model.hpp"
#include "gptdisc/oracle.hpp"
#include "json.hpp"

namespace gptdisc::io {

using nlohmann::json;

// All parsers throw InvalidInput with a message naming the offending field.

json pointToJson(const Point& p);
Point pointFromJson(const json& j, const std::string& field);

/// { "dim", "unit_effect", "state_generators", "effect_generators" }
json modelToJson(const GptModel& model);
GptModel modelFromJson(const json& j);

/// { "model": <object or path>, "states", "priors" }. A string model is a
/// path resolved against `baseDir`.
json ensembleToJson(const Ensemble& ensemble);
Ensemble ensembleFromJson(const json& j, const std::filesystem::path& baseDir = {});

json kktToJson(const KktReport& report);
json congruenceToJson(const CongruenceReport& report);
json oracleToJson(const OracleResult& result);
json measurementToJson(const Measurement& measurement);

/// { "p_guess", "measurement", "K", "complementary", "kkt", "gap",
///   "primal_objective", "dual_objective", "geometry" }
json solutionToJson(const DiscriminationSolution& solution, const KktReport& kkt,
                    const CongruenceReport& geometry);
/// Reads p_guess, measurement, K and complementary; objectives default to
/// the values implied by the data when absent.
DiscriminationSolution solutionFromJson(const json& j);

/// "-" reads standard input.
json readJson(const std::string& path);
/// Pretty-printed with a trailing newline.
std::string dump(const json& j);

}  // namespace gptdisc::io
