#include "kmp/dynkin.hpp"
#include "kmp/error.hpp"
#include "kmp/rootdatum.hpp"

#include "support.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace kmp;
using T = TypeLabel;

namespace {

void check_decomposition(const IntMatrix& a, bool brute_force)
{
  const auto d = smith_normal_form(a);
  CHECK(d.U * a * d.V == d.S);
  CHECK(std::abs(exact_determinant(d.U)) == 1);
  CHECK(std::abs(exact_determinant(d.V)) == 1);
  for (Eigen::Index i = 0; i < d.S.rows(); ++i)
    for (Eigen::Index j = 0; j < d.S.cols(); ++j)
      if (i != j)
        CHECK(d.S(i, j) == 0);
  const auto diag = d.diagonal();
  for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
    CHECK(diag[i] >= 0);
    if (diag[i] != 0)
      CHECK(diag[i + 1] % diag[i] == 0);
    else
      CHECK(diag[i + 1] == 0);
  }
  if (brute_force)
    CHECK(diag == kmp::test::oracle_diagonal(a));
}

} // namespace

TEST_CASE("smith form of Cartan matrices against determinantal divisors")
{
  int count = 0;
  for (int i = 0; i <= static_cast<int>(T::AffG2t); ++i) {
    const auto t = static_cast<T>(i);
    const RankRange r = valid_ranks(t);
    for (int n = r.min_rank; n <= std::min(10, r.max_rank.value_or(10)); ++n) {
      const IntMatrix a = cartan_matrix(build_diagram(t, n));
      CAPTURE(to_string(TypeRank{t, n}));
      check_decomposition(a, true);
      ++count;
    }
  }
  CHECK(count > 80);
}

TEST_CASE("smith form of random matrices")
{
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> size(1, 6);
  std::uniform_int_distribution<int> entry(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const int rows = size(rng);
    const int cols = size(rng);
    IntMatrix a(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        a(i, j) = entry(rng);
    CAPTURE(trial);
    check_decomposition(a, true);
  }
  check_decomposition(IntMatrix::Zero(3, 2), true);
}

TEST_CASE("fundamental groups")
{
  CHECK(fundamental_group(T::A, 4).notation() == "(5)");
  CHECK(fundamental_group(T::D, 6).notation() == "(2,2)");
  CHECK(fundamental_group(T::D, 7).notation() == "(4)");
  CHECK(fundamental_group(T::E8, 8).notation() == "()");
  CHECK(fundamental_group(T::AffA, 4).notation() == "(0,5)");
  CHECK(fundamental_group(T::AffD, 8).notation() == "(0,2,2)");
  CHECK(fundamental_group(T::AffE6, 6).notation() == "(0,3)");
  CHECK(fundamental_group(T::AffCp, 5).notation() == "(0)");
  CHECK(fundamental_group(T::AffD, 8).free_rank() == 1);
  CHECK(fundamental_group(T::AffD, 8).torsion() == std::vector<std::int64_t>{2, 2});
}

TEST_CASE("torus symbol")
{
  CHECK(a_symbol(2, 5) == 1);
  CHECK(a_symbol(2, 4) == 0);
  CHECK(a_symbol(3, 4) == 1);
  CHECK(a_symbol(3, 5) == 0);
  CHECK(a_symbol(0, 5) == 0);
  CHECK(a_symbol(1, 7) == 0);
  CHECK_THROWS_AS(a_symbol(2, 6), RangeError);
  CHECK(a_symbol_sup(2, Parity::Even) == 0);
  CHECK(a_symbol_sup(4, Parity::Even) == 0);
  CHECK(a_symbol_sup(6, Parity::Even) == 1);
  CHECK(a_symbol_sup(2, Parity::Odd) == 1);
  CHECK(a_symbol_sup(2) == 1);

  const TorusCounts bn = torus_counts(T::AffB, 5, 2, true);
  CHECK(std::pair{bn.d1, bn.extra_rels} == std::pair{2, 8});
  CHECK(torus_counts(T::AffD, 8, 5, false).d1 == 3);
  CHECK(torus_counts(T::AffD, 8, 4, false).d1 == 1);
  CHECK(torus_counts(T::AffA, 2, 3, false).generation_exception);
}

TEST_CASE("adjoint and classical sizes")
{
  const PresentationBudget base = execute_budget(plan_for(T::AffB, 9, 5), standard_catalog());
  const PresentationBudget quotient = adjoint_quotient_sizes(base, T::AffB, 9, 5);
  CHECK(quotient.gens == base.gens);
  CHECK(quotient.rels == base.rels + 2);
  const PresentationBudget adjoint = adjoint_group_sizes(base, T::AffB, 9, 5);
  CHECK(adjoint.gens == base.gens + 2);
  CHECK(adjoint.rels == base.rels + 8);

  CHECK(classical_group_sizes(ClassicalGroup::PSL, 3, 4).sizes() == std::pair{5, 24});
  CHECK(classical_group_sup(ClassicalGroup::SOOdd, {3}, Parity::Odd).sizes() == std::pair{8, 47});
  CHECK(classical_group_sup(ClassicalGroup::PGL, {9, 10, 11}, Parity::Odd).sizes() == std::pair{10, 48});
  CHECK_THROWS_AS(classical_group_sizes(ClassicalGroup::SOEven, 3, 5), RangeError);
}
