#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "gptdisc/errors.hpp"
#include "gptdisc/geometry.hpp"
#include "gptdisc/io.hpp"
#include "gptdisc/polygon.hpp"

using namespace gptdisc;
using gptdisc::io::json;

namespace {

std::filesystem::path scratchDir() {
  auto dir = std::filesystem::temp_directory_path() / "gptdisc_test_io";
  std::filesystem::create_directories(dir);
  return dir;
}

void writeFile(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST_CASE("model round trip is exact") {
  const GptModel m = polygonModel(5);
  const json j = io::modelToJson(m);
  const GptModel back = io::modelFromJson(json::parse(j.dump()));
  CHECK(back.dim() == 3);
  REQUIRE(back.stateGenerators().size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(back.stateGenerators()[i] == m.stateGenerators()[i]);
    CHECK(back.effectGenerators()[i] == m.effectGenerators()[i]);
  }
  CHECK(back.unitEffect() == m.unitEffect());
}

TEST_CASE("ensemble round trip, inline and by path") {
  const Ensemble e = noMeasurementEnsemble(0.3);
  const Ensemble inlineBack = io::ensembleFromJson(json::parse(io::ensembleToJson(e).dump()));
  CHECK(inlineBack.priors() == e.priors());
  CHECK(inlineBack.states().back() == e.states().back());

  const auto dir = scratchDir();
  writeFile(dir / "model.json", io::dump(io::modelToJson(e.model())));
  json byPath = io::ensembleToJson(e);
  byPath["model"] = "model.json";
  const Ensemble viaFile = io::ensembleFromJson(byPath, dir);
  CHECK(viaFile.model().stateGenerators().size() == 4);
  CHECK(viaFile.priors() == e.priors());

  byPath["model"] = "missing.json";
  CHECK_THROWS_AS(io::ensembleFromJson(byPath, dir), InvalidInput);
}

TEST_CASE("solution round trip keeps verification results") {
  const Ensemble e = noMeasurementEnsemble(0.5);
  const DiscriminationSolution s = solveDiscrimination(e);
  const json j = io::solutionToJson(s, verifyKkt(e, s), congruenceCheck(e, s));
  CHECK(j["kkt"]["passed"] == true);
  CHECK(j["complementary"][4]["d"].is_null());
  CHECK(j["geometry"]["ratio"].is_null());

  const DiscriminationSolution back = io::solutionFromJson(json::parse(j.dump()));
  CHECK(back.pGuess == s.pGuess);
  CHECK(back.symmetryOperator == s.symmetryOperator);
  CHECK(back.complementary[4].degenerate());
  CHECK(*back.complementary[0].d == *s.complementary[0].d);
  CHECK(verifyKkt(e, back).passed());
}

TEST_CASE("malformed input is reported as InvalidInput") {
  json m = io::modelToJson(polygonModel(4));
  json noDim = m;
  noDim.erase("dim");
  CHECK_THROWS_AS(io::modelFromJson(noDim), InvalidInput);

  json textDim = m;
  textDim["dim"] = "three";
  CHECK_THROWS_AS(io::modelFromJson(textDim), InvalidInput);

  json textCoord = m;
  textCoord["unit_effect"][2] = "one";
  CHECK_THROWS_AS(io::modelFromJson(textCoord), InvalidInput);

  json wrongLen = m;
  wrongLen["unit_effect"] = json::array({0, 1});
  CHECK_THROWS_AS(io::modelFromJson(wrongLen), InvalidInput);

  json ens = io::ensembleToJson(uniformPolygonEnsemble(4));
  ens["priors"][1] = nullptr;
  CHECK_THROWS_AS(io::ensembleFromJson(ens), InvalidInput);

  json sol = {{"p_guess", "high"}};
  CHECK_THROWS_AS(io::solutionFromJson(sol), InvalidInput);
  CHECK_THROWS_AS(io::solutionFromJson(json::array()), InvalidInput);

  const auto bad = scratchDir() / "broken.json";
  writeFile(bad, "{ not json");
  CHECK_THROWS_AS(io::readJson(bad.string()), InvalidInput);
  CHECK_THROWS_AS(io::readJson((scratchDir() / "absent.json").string()), InvalidInput);
}

TEST_CASE("dump is indented and newline-terminated") {
  const std::string text = io::dump(json{{"a", 1}});
  CHECK(text == "{\n  \"a\": 1\n}\n");
}
