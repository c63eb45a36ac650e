#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace coronavis {

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> jensen_shannon_matrix(
    const Eigen::MatrixBase<Derived>& distributions) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index k = distributions.rows();
  Matrix js = Matrix::Zero(k, k);
  auto kl_to_mid = [](const auto& p, const auto& m) {
    Scalar sum(0);
    for (Eigen::Index i = 0; i < p.size(); ++i)
      if (p(i) > Scalar(0)) sum += p(i) * std::log(p(i) / m(i));
    return sum;
  };
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = a + 1; b < k; ++b) {
      const auto p = distributions.row(a);
      const auto q = distributions.row(b);
      const Eigen::Matrix<Scalar, 1, Eigen::Dynamic> m = (p + q) / Scalar(2);
      const Scalar d = std::clamp(Scalar(0.5) * (kl_to_mid(p, m) + kl_to_mid(q, m)), Scalar(0),
                                  Scalar(std::log(2.0)));
      js(a, b) = js(b, a) = d;
    }
  }
  return js;
}

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> classical_mds(
    const Eigen::MatrixBase<Derived>& distances, int dims) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = distances.rows();
  Matrix coords = Matrix::Zero(n, dims);
  if (n == 0) return coords;

  const Matrix squared = distances.array().square().matrix();
  const Matrix centering = Matrix::Identity(n, n) - Matrix::Constant(n, n, Scalar(1) / Scalar(n));
  const Matrix gram = Scalar(-0.5) * centering * squared * centering;

  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram);
  const auto& values = solver.eigenvalues();  // ascending
  const auto& vectors = solver.eigenvectors();
  for (int d = 0; d < dims && d < n; ++d) {
    const Eigen::Index col = n - 1 - d;
    const Scalar lambda = std::max(values(col), Scalar(0));
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v = vectors.col(col);
    // Deterministic orientation: largest-magnitude component positive.
    Eigen::Index pivot = 0;
    v.cwiseAbs().maxCoeff(&pivot);
    if (v(pivot) < Scalar(0)) v = -v;
    coords.col(d) = v * std::sqrt(lambda);
  }
  return coords;
}

}  // namespace coronavis
