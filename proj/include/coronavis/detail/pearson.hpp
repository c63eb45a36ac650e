#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <type_traits>

namespace coronavis {

template <typename DerivedX, typename DerivedY>
double pearson(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y) {
  using ScalarX = typename DerivedX::Scalar;
  using ScalarY = typename DerivedY::Scalar;
  if (x.size() != y.size()) throw std::invalid_argument("pearson: size mismatch");
  const Eigen::Index n = x.size();
  if (n < 2) throw InsufficientData("pearson needs at least two samples");

  if constexpr (std::is_integral_v<ScalarX> && std::is_integral_v<ScalarY>) {
    // n*sum(xy) - sum(x)sum(y) over sqrt of the two variance terms, in exact
    // 128-bit arithmetic until the final division.
    __int128 sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const __int128 a = static_cast<__int128>(x(i));
      const __int128 b = static_cast<__int128>(y(i));
      sx += a;
      sy += b;
      sxx += a * a;
      syy += b * b;
      sxy += a * b;
    }
    const __int128 num = n * sxy - sx * sy;
    const __int128 dx = n * sxx - sx * sx;
    const __int128 dy = n * syy - sy * sy;
    if (dx == 0 || dy == 0) throw InsufficientData("pearson: zero variance");
    const double r = static_cast<double>(num) / std::sqrt(static_cast<double>(dx) * static_cast<double>(dy));
    return std::clamp(r, -1.0, 1.0);
  } else {
    const Eigen::ArrayXd a = x.template cast<double>().array() - x.template cast<double>().mean();
    const Eigen::ArrayXd b = y.template cast<double>().array() - y.template cast<double>().mean();
    const double sab = (a * b).sum();
    const double saa = a.square().sum();
    const double sbb = b.square().sum();
    if (saa == 0.0 || sbb == 0.0) throw InsufficientData("pearson: zero variance");
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
  }
}

}  // namespace coronavis
