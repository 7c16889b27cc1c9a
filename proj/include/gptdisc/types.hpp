#pragma once

#include <Eigen/Dense>

namespace gptdisc {

/// Coordinates of a state or an effect in the ambient real vector space.
using Point = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Absolute tolerance used for equality checks unless a call overrides it.
inline constexpr double kDefaultTol = 1e-9;

}  // namespace gptdisc
