#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <utility>

namespace kmp {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using IntMatrix = Matrix<std::int64_t>;

/// Exact determinant by fraction-free (Bareiss) elimination.
template <typename Derived>
typename Derived::Scalar exact_determinant(const Eigen::MatrixBase<Derived>& input)
{
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> m = input;
  const Eigen::Index n = m.rows();
  if (n == 0)
    return Scalar(1);
  Scalar sign = 1;
  Scalar prev = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      Eigen::Index swap = k + 1;
      while (swap < n && m(swap, k) == 0)
        ++swap;
      if (swap == n)
        return Scalar(0);
      m.row(k).swap(m.row(swap));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

} // namespace kmp
