#include "clobs/nelder_mead.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace clobs {

NelderMeadResult nelder_mead(
    const std::function<double(const Eigen::VectorXd&)>& objective,
    const Eigen::VectorXd& start, const NelderMeadOptions& options) {
  const int n = static_cast<int>(start.size());
  NelderMeadResult result;

  std::vector<Eigen::VectorXd> x(n + 1, start);
  std::vector<double> f(n + 1);
  for (int i = 1; i <= n; ++i) {
    x[i](i - 1) += options.initial_step;
  }
  for (int i = 0; i <= n; ++i) {
    f[i] = objective(x[i]);
    ++result.evaluations;
  }

  auto eval = [&](const Eigen::VectorXd& p) {
    ++result.evaluations;
    return objective(p);
  };

  std::vector<int> order(n + 1);
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return f[a] < f[b]; });
    {
      std::vector<Eigen::VectorXd> xs(n + 1);
      std::vector<double> fs(n + 1);
      for (int i = 0; i <= n; ++i) {
        xs[i] = x[order[i]];
        fs[i] = f[order[i]];
      }
      x.swap(xs);
      f.swap(fs);
    }

    double diameter = 0.0;
    for (int i = 1; i <= n; ++i) {
      diameter = std::max(diameter, (x[i] - x[0]).cwiseAbs().maxCoeff());
    }
    if (diameter < options.diameter_tol) {
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
      centroid += x[i];
    }
    centroid /= n;

    const Eigen::VectorXd reflected =
        centroid + options.reflection * (centroid - x[n]);
    const double f_reflected = eval(reflected);

    if (f_reflected < f[0]) {
      const Eigen::VectorXd expanded =
          centroid + options.expansion * (reflected - centroid);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        x[n] = expanded;
        f[n] = f_expanded;
      } else {
        x[n] = reflected;
        f[n] = f_reflected;
      }
    } else if (f_reflected < f[n - 1]) {
      x[n] = reflected;
      f[n] = f_reflected;
    } else {
      const bool outside = f_reflected < f[n];
      const Eigen::VectorXd contracted =
          centroid +
          options.contraction * ((outside ? reflected : x[n]) - centroid);
      const double f_contracted = eval(contracted);
      if (f_contracted < std::min(f_reflected, f[n])) {
        x[n] = contracted;
        f[n] = f_contracted;
      } else {
        for (int i = 1; i <= n; ++i) {
          x[i] = x[0] + options.shrink * (x[i] - x[0]);
          f[i] = eval(x[i]);
        }
      }
    }
  }

  const auto best = std::min_element(f.begin(), f.end()) - f.begin();
  result.best_point = x[best];
  result.best_value = f[best];
  result.iterations = it;
  return result;
}

}  // namespace clobs
