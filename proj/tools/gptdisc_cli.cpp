// gptdisc: minimum-error state discrimination for polyhedral GPTs.
//
// Exit codes: 0 success, 1 invalid input, 2 numerical failure,
// 3 oracle disagreement (with --oracle), 4 failed verification.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "gptdisc/discrimination.hpp"
#include "gptdisc/errors.hpp"
#include "gptdisc/geometry.hpp"
#include "gptdisc/io.hpp"
#include "gptdisc/oracle.hpp"
#include "gptdisc/polygon.hpp"

namespace {

using namespace gptdisc;
using io::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitOracle = 3;
constexpr int kExitVerify = 4;

constexpr double kOracleAgreement = 1e-6;
constexpr std::size_t kRandomSearchSamples = 2000;

struct CliConfig {
  double tolerance = kDefaultTol;
  std::string format;  // empty: the command's natural format
  bool oracle = false;
  std::uint64_t seed = 0;
  std::string out = "-";
};

struct ExitWith {
  int code;
  std::string message;
};

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream file(out);
  if (!file) throw ExitWith{kExitInvalid, "cannot write " + out};
  file << text;
}

std::string resolveFormat(const CliConfig& cfg, const std::string& natural, bool csvAllowed) {
  const std::string fmt = cfg.format.empty() ? natural : cfg.format;
  if (fmt == "csv" && !csvAllowed) throw ExitWith{kExitInvalid, "this command only emits json"};
  return fmt;
}

void requireValid(const ValidationReport& report, const std::string& what) {
  if (!report.ok()) throw ExitWith{kExitInvalid, what + " is invalid\n" + report.summary()};
  if (!report.issues.empty()) std::cerr << report.summary();
}

Ensemble loadEnsemble(const std::string& path, double tol) {
  const std::filesystem::path base =
      path == "-" ? std::filesystem::current_path() : std::filesystem::path(path).parent_path();
  Ensemble ens = io::ensembleFromJson(io::readJson(path), base);
  requireValid(validateModel(ens.model(), tol), "model");
  requireValid(validateEnsemble(ens, tol), "ensemble");
  return ens;
}

// Attaches vertex-enumeration and random-search results; returns the
// enumeration's p_guess when the instance is small enough for it.
std::optional<double> attachOracle(json& doc, const Ensemble& ens, const CliConfig& cfg) {
  json oracle;
  std::optional<double> value;
  try {
    const OracleResult r = dualVertexEnumeration(ens);
    oracle = io::oracleToJson(r);
    value = r.pGuess;
  } catch (const UnsupportedSize& e) {
    oracle = json{{"skipped", e.what()}};
  }
  oracle["random_search_lower_bound"] = primalRandomSearch(ens, kRandomSearchSamples, cfg.seed);
  oracle["random_search_samples"] = kRandomSearchSamples;
  oracle["seed"] = cfg.seed;
  doc["oracle"] = oracle;
  return value;
}

json solveToJson(const Ensemble& ens, const DiscriminationSolution& sol, double tol) {
  return io::solutionToJson(sol, verifyKkt(ens, sol, tol), congruenceCheck(ens, sol, tol));
}

int cmdSolve(const std::string& ensembleFile, const CliConfig& cfg) {
  resolveFormat(cfg, "json", false);
  const Ensemble ens = loadEnsemble(ensembleFile, cfg.tolerance);
  const DiscriminationSolution sol = solveDiscrimination(ens, cfg.tolerance);
  json doc = solveToJson(ens, sol, cfg.tolerance);
  int code = kExitOk;
  if (cfg.oracle) {
    const auto value = attachOracle(doc, ens, cfg);
    if (value && std::abs(*value - sol.pGuess) > kOracleAgreement) {
      std::cerr << "oracle disagreement: solver " << formatReal(sol.pGuess) << ", oracle "
                << formatReal(*value) << '\n';
      code = kExitOracle;
    }
  }
  emit(io::dump(doc), cfg.out);
  return code;
}

int cmdVerify(const std::string& ensembleFile, const std::string& solutionFile,
              const CliConfig& cfg) {
  resolveFormat(cfg, "json", false);
  const Ensemble ens = loadEnsemble(ensembleFile, cfg.tolerance);
  const DiscriminationSolution sol = io::solutionFromJson(io::readJson(solutionFile));
  const KktReport kkt = verifyKkt(ens, sol, cfg.tolerance);
  const CongruenceReport geometry = congruenceCheck(ens, sol, cfg.tolerance);
  const bool congruent = geometry.maxResidual <= cfg.tolerance;
  const bool passed = kkt.passed() && congruent;
  json doc{{"passed", passed},
           {"kkt", io::kktToJson(kkt)},
           {"geometry", io::congruenceToJson(geometry)}};
  emit(io::dump(doc), cfg.out);
  if (passed) return kExitOk;

  std::cerr << "verification failed (tol " << formatReal(cfg.tolerance) << ")\n";
  for (std::size_t x = 0; x < ens.size(); ++x) {
    if (kkt.stabilityResiduals[x] > cfg.tolerance)
      std::cerr << "  stability residual[" << x << "] = " << formatReal(kkt.stabilityResiduals[x]) << '\n';
    if (kkt.normalizationResiduals[x] > cfg.tolerance)
      std::cerr << "  normalization residual[" << x << "] = " << formatReal(kkt.normalizationResiduals[x]) << '\n';
    if (kkt.orthogonalityResiduals[x] > cfg.tolerance)
      std::cerr << "  orthogonality residual[" << x << "] = " << formatReal(kkt.orthogonalityResiduals[x]) << '\n';
    if (!kkt.positivityOk[x]) std::cerr << "  positivity K >= q_x w_x fails for x = " << x << '\n';
    if (!kkt.effectsInCone[x]) std::cerr << "  effect " << x << " is outside the effect cone\n";
  }
  if (kkt.measurementResidual > cfg.tolerance)
    std::cerr << "  measurement residual = " << formatReal(kkt.measurementResidual) << '\n';
  if (kkt.gap > cfg.tolerance) std::cerr << "  gap = " << formatReal(kkt.gap) << '\n';
  if (!congruent) std::cerr << "  congruence residual = " << formatReal(geometry.maxResidual) << '\n';
  return kExitVerify;
}

int cmdPolygon(int n, const CliConfig& cfg) {
  resolveFormat(cfg, "json", false);
  emit(io::dump(io::modelToJson(polygonModel(n))), cfg.out);
  return kExitOk;
}

json demoDocument(const std::string& name, const Ensemble& ens, const DiscriminationSolution& sol,
                  const CliConfig& cfg) {
  json doc{{"demo", name}, {"ensemble", io::ensembleToJson(ens)}};
  doc["solution"] = solveToJson(ens, sol, cfg.tolerance);
  doc["p_guess"] = sol.pGuess;
  try {
    doc["ratio"] = ratioR(ens, sol, cfg.tolerance);
  } catch (const std::exception& e) {
    doc["ratio"] = nullptr;
  }
  return doc;
}

int cmdDemo(const std::string& name, const CliConfig& cfg) {
  if (name == "n3") {
    resolveFormat(cfg, "json", false);
    const DemoResult demo = demoN3(cfg.tolerance);
    json doc = demoDocument(name, demo.ensemble, demo.solution, cfg);
    attachOracle(doc, demo.ensemble, cfg);
    emit(io::dump(doc), cfg.out);
    return kExitOk;
  }
  if (name == "n4") {
    resolveFormat(cfg, "json", false);
    const DemoN4Result demo = demoN4(cfg.tolerance);
    json doc = demoDocument(name, demo.ensemble, demo.solution, cfg);
    json alts = json::array();
    for (const AlternateMeasurement& alt : demo.alternates) {
      alts.push_back(json{{"name", alt.name},
                          {"description", alt.description},
                          {"measurement", io::measurementToJson(alt.measurement)},
                          {"success_probability", alt.successProbability},
                          {"kkt", io::kktToJson(alt.kkt)},
                          {"optimal", alt.kkt.passed()}});
    }
    doc["alternates"] = alts;
    attachOracle(doc, demo.ensemble, cfg);
    emit(io::dump(doc), cfg.out);
    return kExitOk;
  }
  if (name == "no-measurement") {
    const std::string fmt = resolveFormat(cfg, "csv", true);
    const ScanResult scan = thresholdScan(defaultScanGrid(), cfg.tolerance);
    if (fmt == "csv") {
      std::string text = "p,p_guess,no_measurement_optimal\n";
      for (const ScanRow& row : scan.rows) {
        text += formatReal(row.p) + "," + formatReal(row.pGuess) + "," +
                (row.noMeasurementOptimal ? "true" : "false") + "\n";
      }
      double worst = 0.0;
      for (const ScanRow& row : scan.rows) worst = std::max(worst, std::abs(row.pGuess - row.oraclePGuess));
      text += "# threshold=" + formatReal(scan.threshold) + "\n";
      text += "# oracle_threshold=" + formatReal(scan.oracleThreshold) + "\n";
      text += "# dual_feasibility_threshold=" + formatReal(ScanResult::kDualFeasibilityThreshold) + "\n";
      text += "# published_threshold=" + formatReal(ScanResult::kPublishedThreshold) + "\n";
      text += "# oracle_max_deviation=" + formatReal(worst) + "\n";
      emit(text, cfg.out);
    } else {
      json rows = json::array();
      for (const ScanRow& row : scan.rows) {
        rows.push_back(json{{"p", row.p},
                            {"p_guess", row.pGuess},
                            {"oracle_p_guess", row.oraclePGuess},
                            {"max_prior", row.maxPrior},
                            {"no_measurement_optimal", row.noMeasurementOptimal}});
      }
      emit(io::dump(json{{"demo", name},
                         {"rows", rows},
                         {"threshold", scan.threshold},
                         {"oracle_threshold", scan.oracleThreshold},
                         {"dual_feasibility_threshold", ScanResult::kDualFeasibilityThreshold},
                         {"published_threshold", ScanResult::kPublishedThreshold}}),
           cfg.out);
    }
    return kExitOk;
  }
  throw ExitWith{kExitInvalid, "unknown demo \"" + name + "\" (expected n3, n4 or no-measurement)"};
}

int cmdExportVertices(const std::string& modelFile, const CliConfig& cfg) {
  resolveFormat(cfg, "csv", true);
  if (!cfg.format.empty() && cfg.format != "csv") throw ExitWith{kExitInvalid, "export-vertices only emits csv"};
  const GptModel model = io::modelFromJson(io::readJson(modelFile));
  std::string text = "kind,index";
  if (model.dim() == 3) {
    text += ",x,y,z";
  } else {
    for (int i = 0; i < model.dim(); ++i) text += ",c" + std::to_string(i);
  }
  text += "\n";
  auto rows = [&text](const char* kind, const std::vector<Point>& points) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      text += std::string(kind) + "," + std::to_string(i);
      for (Eigen::Index k = 0; k < points[i].size(); ++k) text += "," + formatReal(points[i][k]);
      text += "\n";
    }
  };
  rows("state", model.stateGenerators());
  rows("effect", model.effectGenerators());
  emit(text, cfg.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-error state discrimination in polyhedral generalized probabilistic theories"};
  app.require_subcommand(1);
  app.fallthrough();

  CliConfig cfg;
  app.add_option("--tol", cfg.tolerance, "absolute tolerance, in (0, 1e-3]");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--oracle", cfg.oracle, "attach brute-force oracle results");
  app.add_option("--seed", cfg.seed, "seed for the random primal search");
  app.add_option("--out", cfg.out, "output file, - for standard output");

  std::string ensembleFile;
  std::string solutionFile;
  std::string modelFile;
  std::string demoName;
  int order = 0;

  auto* solve = app.add_subcommand("solve", "solve an ensemble file");
  solve->add_option("ensemble", ensembleFile, "ensemble JSON, - for standard input")->required();
  auto* verify = app.add_subcommand("verify", "re-verify a solution against an ensemble");
  verify->add_option("ensemble", ensembleFile, "ensemble JSON")->required();
  verify->add_option("solution", solutionFile, "solution JSON")->required();
  auto* polygon = app.add_subcommand("polygon", "write the n-gon model");
  polygon->add_option("--n", order, "polygon order, at least 3")->required();
  auto* demo = app.add_subcommand("demo", "run a worked example");
  demo->add_option("name", demoName, "n3, n4 or no-measurement")->required();
  auto* exportVertices = app.add_subcommand("export-vertices", "CSV of model generators");
  exportVertices->add_option("model", modelFile, "model JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (!(cfg.tolerance > 0.0 && cfg.tolerance <= 1e-3)) {
      throw ExitWith{kExitInvalid, "--tol must lie in (0, 1e-3]"};
    }
    if (*solve) return cmdSolve(ensembleFile, cfg);
    if (*verify) return cmdVerify(ensembleFile, solutionFile, cfg);
    if (*polygon) return cmdPolygon(order, cfg);
    if (*demo) return cmdDemo(demoName, cfg);
    if (*exportVertices) return cmdExportVertices(modelFile, cfg);
  } catch (const ExitWith& e) {
    std::cerr << e.message << (e.message.ends_with('\n') ? "" : "\n");
    return e.code;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const InternalInconsistency& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
