#pragma once

#include <vector>

#include "gptdisc/types.hpp"

namespace gptdisc {

/// Largest ambient dimension accepted by `dualCone`.
inline constexpr int kMaxDualConeDim = 8;

/// Finitely generated convex cone { sum_j l_j g_j : l_j >= 0 }.
///
/// Zero generators are dropped and positively parallel generators are kept
/// once (first occurrence wins), so `generators()` may be shorter than the
/// input list.
class PolyhedralCone {
 public:
  PolyhedralCone(int dim, const std::vector<Point>& generators);

  int dim() const { return dim_; }
  const std::vector<Point>& generators() const { return generators_; }
  std::size_t size() const { return generators_.size(); }

  /// Generators stacked as rows.
  Matrix generatorMatrix() const;

 private:
  int dim_;
  std::vector<Point> generators_;
};

/// True when `v` is a nonnegative combination of the generators, up to an
/// L1 residual of `tol`. Decided by a feasibility LP.
bool memberOf(const PolyhedralCone& cone, const Point& v, double tol = kDefaultTol);

/// Generators of { y : y.g >= 0 for every generator g } via the double
/// description method. Lineality directions of the result appear as +/- pairs.
/// Throws UnsupportedSize above kMaxDualConeDim.
PolyhedralCone dualCone(const PolyhedralCone& cone);

/// Order relation induced by `testCone`: g.(v - w) >= -tol for every generator.
bool coneGe(const Point& v, const Point& w, const PolyhedralCone& testCone,
            double tol = kDefaultTol);

/// Same generator directions up to positive scaling and permutation; unit
/// directions are compared with Euclidean tolerance `tol`.
bool sameGenerators(const PolyhedralCone& a, const PolyhedralCone& b, double tol = kDefaultTol);

}  // namespace gptdisc
