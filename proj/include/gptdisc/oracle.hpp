#pragma once

#include <cstdint>

#include "gptdisc/model.hpp"

namespace gptdisc {

/// Bounds for exhaustive dual enumeration.
inline constexpr int kOracleMaxDim = 4;
inline constexpr std::size_t kOracleMaxRows = 64;
/// Feasibility slack used by the enumeration. Fixed on purpose.
inline constexpr double kOracleFeasTol = 1e-9;

struct OracleResult {
  double pGuess = 0.0;
  Point k;
  std::size_t verticesExamined = 0;
};

/// Minimizes u[K] subject to g_j[K] >= q_x g_j[w_x] by visiting every vertex
/// of the feasible region: each dim-subset of rows is solved as equalities
/// and kept if it satisfies all rows. Ties on u[K] go to the
/// lexicographically smallest K.
///
/// Throws UnsupportedSize when dim > kOracleMaxDim or the row count
/// (effect generators times states) exceeds kOracleMaxRows, and
/// PreconditionError when the feasible region has no vertex.
OracleResult dualVertexEnumeration(const Ensemble& ensemble);

/// Best success probability over sampled measurements. The first sample is
/// always "answer the most likely state", so the result is at least max_x q_x.
/// Later samples decompose u over the effect generators with a
/// random-objective LP and split each term among the outcomes at random.
/// Deterministic for a fixed seed.
double primalRandomSearch(const Ensemble& ensemble, std::size_t samples, std::uint64_t seed);

}  // namespace gptdisc
