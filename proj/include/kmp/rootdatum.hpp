#pragma once

#include "kmp/assembly.hpp"
#include "kmp/dynkin.hpp"
#include "kmp/field.hpp"
#include "kmp/matrix.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kmp {

template <typename Scalar>
struct SmithDecomposition {
  Matrix<Scalar> U;
  Matrix<Scalar> S;
  Matrix<Scalar> V;

  /// Diagonal of S.
  [[nodiscard]] std::vector<Scalar> diagonal() const
  {
    std::vector<Scalar> out;
    for (Eigen::Index i = 0; i < std::min(S.rows(), S.cols()); ++i)
      out.push_back(S(i, i));
    return out;
  }
};

namespace detail {

template <typename Scalar>
Scalar floor_div(Scalar a, Scalar b)
{
  Scalar q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

} // namespace detail

/// U * A * V = S with U, V unimodular and S = diag(d1, d2, ...), d_i | d_{i+1},
/// nonnegative, zeros last.
template <typename Scalar>
SmithDecomposition<Scalar> smith_normal_form(const Matrix<Scalar>& a)
{
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  Matrix<Scalar> s = a;
  Matrix<Scalar> u = Matrix<Scalar>::Identity(rows, rows);
  Matrix<Scalar> v = Matrix<Scalar>::Identity(cols, cols);

  for (Eigen::Index t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      Eigen::Index pr = -1;
      Eigen::Index pc = -1;
      for (Eigen::Index i = t; i < rows; ++i) {
        for (Eigen::Index j = t; j < cols; ++j) {
          if (s(i, j) != 0 && (pr < 0 || std::abs(s(i, j)) < std::abs(s(pr, pc)))) {
            pr = i;
            pc = j;
          }
        }
      }
      if (pr < 0)
        return {u, s, v};
      s.row(t).swap(s.row(pr));
      u.row(t).swap(u.row(pr));
      s.col(t).swap(s.col(pc));
      v.col(t).swap(v.col(pc));

      bool clean = true;
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        const Scalar f = detail::floor_div(s(i, t), s(t, t));
        if (f != 0) {
          s.row(i) -= f * s.row(t);
          u.row(i) -= f * u.row(t);
        }
        clean = clean && s(i, t) == 0;
      }
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        const Scalar f = detail::floor_div(s(t, j), s(t, t));
        if (f != 0) {
          s.col(j) -= f * s.col(t);
          v.col(j) -= f * v.col(t);
        }
        clean = clean && s(t, j) == 0;
      }
      if (!clean)
        continue;
      // Enforce divisibility: fold an offending row into the pivot row.
      bool divides = true;
      for (Eigen::Index i = t + 1; i < rows && divides; ++i) {
        for (Eigen::Index j = t + 1; j < cols; ++j) {
          if (s(i, j) % s(t, t) != 0) {
            s.row(t) += s.row(i);
            u.row(t) += u.row(i);
            divides = false;
            break;
          }
        }
      }
      if (divides)
        break;
    }
    if (s(t, t) < 0) {
      s.row(t) = -s.row(t);
      u.row(t) = -u.row(t);
    }
  }
  return {u, s, v};
}

/// P/Q as invariant factors: entries > 1 in divisibility order, then one 0 per
/// infinite cyclic factor.
struct FundamentalGroup {
  std::vector<std::int64_t> factors;

  [[nodiscard]] int free_rank() const;
  [[nodiscard]] std::vector<std::int64_t> torsion() const;
  /// Table notation with the infinite factors first, e.g. "(0,2,2)" or "()".
  [[nodiscard]] std::string notation() const;
  friend bool operator==(const FundamentalGroup&, const FundamentalGroup&) = default;
};

/// Cokernel of the (untransposed) Cartan matrix.
FundamentalGroup fundamental_group(TypeLabel label, int rank);
FundamentalGroup cokernel(const IntMatrix& m);

/// 1 if gcd(k, q-1) > 1, else 0; k = 0 and k = 1 give 0.
int a_symbol(std::int64_t k, std::int64_t q);
/// Largest value of a_symbol(k, q) over all q of the given parity.
int a_symbol_sup(std::int64_t k, Parity p);
/// Largest value over all prime powers q.
int a_symbol_sup(std::int64_t k);

struct TorusCounts {
  int d1 = 0;         // generators of the center Z(q)
  int d2 = 0;         // generators of H(q)
  int extra_rels = 0; // 4 * d1
  /// Set for ~A2 with q in {2, 3}, where the group is not known to be 2-generated.
  bool generation_exception = false;
};

/// Exact counts for q, or with `maximal` the largest values over all q.
TorusCounts torus_counts(TypeLabel label, int rank, std::int64_t q, bool maximal);
/// Largest values over the q of one parity.
TorusCounts torus_counts_sup(TypeLabel label, int rank, Parity p);
TorusCounts counts_from(const FundamentalGroup& g, const std::function<int(std::int64_t)>& symbol);

/// Quotient by the center: one relation per center generator.
PresentationBudget adjoint_quotient_sizes(const PresentationBudget& b, TypeLabel label, int rank, std::int64_t q);
PresentationBudget adjoint_quotient_sizes(const PresentationBudget& b, const TorusCounts& c);
/// Adjoint group: extension by H(q).
PresentationBudget adjoint_group_sizes(const PresentationBudget& b, TypeLabel label, int rank, std::int64_t q);
PresentationBudget adjoint_group_sizes(const PresentationBudget& b, const TorusCounts& c);

enum class ClassicalGroup { PSL, PGL, SOOdd, SOEven };

std::string_view to_string(ClassicalGroup g);

/// Group over F_q[t, 1/t]: PSL_n, PGL_n, SO_{2n+1} or SO_{2n}.
PresentationBudget classical_group_sizes(ClassicalGroup g, int n, std::int64_t q);

/// Largest counts over the listed n and all q of the parity.
PresentationBudget classical_group_sup(ClassicalGroup g, const std::vector<int>& ns, Parity p);

} // namespace kmp
