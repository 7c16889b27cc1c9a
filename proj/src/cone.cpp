#include "gptdisc/cone.hpp"

#include <cmath>
#include <string>

#include "gptdisc/errors.hpp"
#include "gptdisc/lp.hpp"

namespace gptdisc {

namespace {

constexpr double kZeroNorm = 1e-12;
constexpr double kParallelCos = 1.0 - 1e-12;
// Activity threshold for unit-normalized rays against unit-normalized rows.
constexpr double kActive = 1e-9;
constexpr double kRankTol = 1e-10;

void requireDim(int dim, const Point& v, const char* what) {
  if (v.size() != dim) {
    throw InvalidInput(std::string(what) + ": expected dimension " + std::to_string(dim) +
                       ", got " + std::to_string(v.size()));
  }
}

int numericRank(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > kRankTol * std::max(1.0, s[0])) ++r;
  }
  return r;
}

struct Ray {
  Eigen::VectorXd z;
  std::vector<std::size_t> active;  // processed constraint indices with h.z == 0
};

// Extreme rays of { z in R^r : H z >= 0 } for H of full column rank r.
std::vector<Eigen::VectorXd> extremeRays(const Matrix& h) {
  const Eigen::Index r = h.cols();
  const auto m = static_cast<std::size_t>(h.rows());

  // Seed with r independent rows; the seed cone's rays are the columns of the
  // inverse of that square block.
  std::vector<std::size_t> seed;
  std::vector<bool> used(m, false);
  Matrix chosen(0, r);
  for (std::size_t i = 0; i < m && static_cast<Eigen::Index>(seed.size()) < r; ++i) {
    Matrix trial(chosen.rows() + 1, r);
    trial << chosen, h.row(static_cast<Eigen::Index>(i));
    if (numericRank(trial) == trial.rows()) {
      chosen = trial;
      seed.push_back(i);
      used[i] = true;
    }
  }
  if (static_cast<Eigen::Index>(seed.size()) < r) {
    throw InternalInconsistency("double description seed is rank deficient");
  }

  const Matrix inv = chosen.inverse();
  std::vector<Ray> rays;
  std::vector<std::size_t> processed = seed;
  for (Eigen::Index k = 0; k < r; ++k) {
    Ray ray{inv.col(k).normalized(), {}};
    for (Eigen::Index q = 0; q < r; ++q) {
      if (q != k) ray.active.push_back(seed[static_cast<std::size_t>(q)]);
    }
    rays.push_back(std::move(ray));
  }

  for (std::size_t c = 0; c < m; ++c) {
    if (used[c]) continue;
    const Eigen::VectorXd row = h.row(static_cast<Eigen::Index>(c)).transpose();
    std::vector<double> s(rays.size());
    for (std::size_t k = 0; k < rays.size(); ++k) s[k] = row.dot(rays[k].z);

    std::vector<Ray> next;
    std::vector<std::size_t> pos;
    std::vector<std::size_t> neg;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (s[k] > kActive) {
        pos.push_back(k);
        next.push_back(rays[k]);
      } else if (s[k] < -kActive) {
        neg.push_back(k);
      } else {
        Ray kept = rays[k];
        kept.active.push_back(c);
        next.push_back(std::move(kept));
      }
    }

    for (std::size_t p : pos) {
      for (std::size_t q : neg) {
        // Adjacent iff the constraints active at both rays have rank r - 2.
        std::vector<std::size_t> common;
        for (std::size_t a : rays[p].active) {
          for (std::size_t b : rays[q].active) {
            if (a == b) common.push_back(a);
          }
        }
        if (static_cast<Eigen::Index>(common.size()) < r - 2) continue;
        Matrix sub(static_cast<Eigen::Index>(common.size()), r);
        for (std::size_t t = 0; t < common.size(); ++t) {
          sub.row(static_cast<Eigen::Index>(t)) = h.row(static_cast<Eigen::Index>(common[t]));
        }
        if (numericRank(sub) != r - 2) continue;
        Eigen::VectorXd z = s[p] * rays[q].z - s[q] * rays[p].z;
        if (z.norm() <= kZeroNorm) continue;
        Ray fresh{z.normalized(), common};
        fresh.active.push_back(c);
        next.push_back(std::move(fresh));
      }
    }
    rays = std::move(next);
    processed.push_back(c);
  }

  std::vector<Eigen::VectorXd> out;
  out.reserve(rays.size());
  for (auto& ray : rays) out.push_back(std::move(ray.z));
  return out;
}

}  // namespace

PolyhedralCone::PolyhedralCone(int dim, const std::vector<Point>& generators) : dim_(dim) {
  if (dim <= 0) throw InvalidInput("cone dimension must be positive");
  for (const Point& g : generators) {
    requireDim(dim, g, "cone generator");
    if (!g.allFinite()) throw InvalidInput("cone generator has non-finite coordinates");
    const double norm = g.norm();
    if (norm <= kZeroNorm) continue;
    bool duplicate = false;
    for (const Point& kept : generators_) {
      if (g.dot(kept) / (norm * kept.norm()) > kParallelCos) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) generators_.push_back(g);
  }
}

Matrix PolyhedralCone::generatorMatrix() const {
  Matrix m(static_cast<Eigen::Index>(generators_.size()), dim_);
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    m.row(static_cast<Eigen::Index>(i)) = generators_[i].transpose();
  }
  return m;
}

bool memberOf(const PolyhedralCone& cone, const Point& v, double tol) {
  requireDim(cone.dim(), v, "memberOf");
  const std::size_t g = cone.size();
  const auto d = static_cast<std::size_t>(cone.dim());
  // min sum(s+ + s-) s.t. sum_j l_j g_j + s+ - s- = v, all variables >= 0.
  LpBuilder builder(g + 2 * d);
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g + 2 * d));
  cost.tail(static_cast<Eigen::Index>(2 * d)).setOnes();
  builder.setObjective(cost);
  for (std::size_t i = 0; i < d; ++i) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g + 2 * d));
    for (std::size_t j = 0; j < g; ++j) row[static_cast<Eigen::Index>(j)] = cone.generators()[j][static_cast<Eigen::Index>(i)];
    row[static_cast<Eigen::Index>(g + i)] = 1.0;
    row[static_cast<Eigen::Index>(g + d + i)] = -1.0;
    builder.addRow(row, LpBuilder::Sense::eq, v[static_cast<Eigen::Index>(i)]);
  }
  const LpSolution sol = solveLp(builder.build());
  return sol.status == LpStatus::optimal && sol.objective <= tol;
}

PolyhedralCone dualCone(const PolyhedralCone& cone) {
  const int d = cone.dim();
  if (d > kMaxDualConeDim) {
    throw UnsupportedSize("dualCone supports dimension <= " + std::to_string(kMaxDualConeDim) +
                          ", got " + std::to_string(d));
  }
  std::vector<Point> out;
  if (cone.size() == 0) {
    for (int i = 0; i < d; ++i) {
      out.push_back(Point::Unit(d, i));
      out.push_back(-Point::Unit(d, i));
    }
    return PolyhedralCone(d, out);
  }

  // Work inside span(generators); its orthogonal complement is lineality of the dual.
  Matrix g = cone.generatorMatrix();
  for (Eigen::Index i = 0; i < g.rows(); ++i) g.row(i).normalize();
  Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeFullV);
  const int r = numericRank(g);
  const Matrix span = svd.matrixV().leftCols(r);
  const Matrix complement = svd.matrixV().rightCols(d - r);

  Matrix reduced = g * span;
  for (Eigen::Index i = 0; i < reduced.rows(); ++i) reduced.row(i).normalize();
  for (const Eigen::VectorXd& z : extremeRays(reduced)) {
    out.push_back((span * z).normalized());
  }
  for (Eigen::Index k = 0; k < complement.cols(); ++k) {
    out.push_back(complement.col(k));
    out.push_back(-complement.col(k));
  }
  return PolyhedralCone(d, out);
}

bool coneGe(const Point& v, const Point& w, const PolyhedralCone& testCone, double tol) {
  requireDim(testCone.dim(), v, "coneGe");
  requireDim(testCone.dim(), w, "coneGe");
  const Point diff = v - w;
  for (const Point& g : testCone.generators()) {
    if (g.dot(diff) < -tol) return false;
  }
  return true;
}

bool sameGenerators(const PolyhedralCone& a, const PolyhedralCone& b, double tol) {
  if (a.dim() != b.dim() || a.size() != b.size()) return false;
  std::vector<bool> taken(b.size(), false);
  for (const Point& ga : a.generators()) {
    const Point ua = ga.normalized();
    bool found = false;
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (taken[k]) continue;
      if ((ua - b.generators()[k].normalized()).norm() <= tol) {
        taken[k] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace gptdisc
