#pragma once

#include <algorithm>
#include <array>
#include <numeric>

#include <Eigen/Core>

namespace hartogs {

template <typename Scalar, int N> struct NelderMeadResult {
  Eigen::Matrix<Scalar, N, 1> x;
  Scalar value = 0;
  int iterations = 0;
};

/// Downhill simplex (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
/// `step` gives the initial simplex edge along each axis.
template <typename Scalar, int N, typename Objective>
NelderMeadResult<Scalar, N> nelder_mead(const Objective& f, const Eigen::Matrix<Scalar, N, 1>& x0,
                                        const Eigen::Matrix<Scalar, N, 1>& step, int max_iter = 200,
                                        Scalar f_tol = Scalar(0)) {
  using Vec = Eigen::Matrix<Scalar, N, 1>;
  std::array<Vec, N + 1> simplex;
  std::array<Scalar, N + 1> values;
  simplex[0] = x0;
  for (int i = 0; i < N; ++i) {
    simplex[i + 1] = x0;
    simplex[i + 1][i] += step[i];
  }
  for (int i = 0; i <= N; ++i) values[i] = f(simplex[i]);

  std::array<int, N + 1> order;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return values[a] < values[b]; });
    const int best = order[0];
    const int worst = order[N];
    const int second = order[N - 1];
    if (values[worst] - values[best] <= f_tol) break;

    Vec centroid = Vec::Zero();
    for (int i = 0; i <= N; ++i) {
      if (i != worst) centroid += simplex[i];
    }
    centroid /= Scalar(N);

    const Vec reflected = centroid + (centroid - simplex[worst]);
    const Scalar f_r = f(reflected);
    if (f_r < values[best]) {
      const Vec expanded = centroid + Scalar(2) * (centroid - simplex[worst]);
      const Scalar f_e = f(expanded);
      if (f_e < f_r) {
        simplex[worst] = expanded;
        values[worst] = f_e;
      } else {
        simplex[worst] = reflected;
        values[worst] = f_r;
      }
      continue;
    }
    if (f_r < values[second]) {
      simplex[worst] = reflected;
      values[worst] = f_r;
      continue;
    }
    const bool outside = f_r < values[worst];
    const Vec contracted = outside ? Vec(centroid + Scalar(0.5) * (reflected - centroid))
                                   : Vec(centroid + Scalar(0.5) * (simplex[worst] - centroid));
    const Scalar f_c = f(contracted);
    if (f_c < (outside ? f_r : values[worst])) {
      simplex[worst] = contracted;
      values[worst] = f_c;
      continue;
    }
    for (int i = 0; i <= N; ++i) {
      if (i == best) continue;
      simplex[i] = simplex[best] + Scalar(0.5) * (simplex[i] - simplex[best]);
      values[i] = f(simplex[i]);
    }
  }
  const int best = static_cast<int>(std::min_element(values.begin(), values.end()) - values.begin());
  return {simplex[best], values[best], iter};
}

} // namespace hartogs
