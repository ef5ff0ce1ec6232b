#pragma once

#include <functional>

#include <Eigen/Dense>

namespace clobs {

struct NelderMeadOptions {
  int max_iterations = 2000;
  double diameter_tol = 1e-9;  // stop when max vertex distance drops below
  double initial_step = 0.5;   // per-coordinate offset of the start simplex
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
};

struct NelderMeadResult {
  Eigen::VectorXd best_point;
  double best_value = 0.0;
  int iterations = 0;
  long long evaluations = 0;
};

/// Downhill simplex descent. Deterministic given the start point; ties in
/// the vertex ordering are broken by insertion order.
NelderMeadResult nelder_mead(
    const std::function<double(const Eigen::VectorXd&)>& objective,
    const Eigen::VectorXd& start, const NelderMeadOptions& options = {});

}  // namespace clobs
