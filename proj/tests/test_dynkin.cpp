#include "kmp/dynkin.hpp"
#include "kmp/error.hpp"

#include <doctest.h>

#include <numeric>

using namespace kmp;

namespace {

std::vector<std::string> all_but(const DynkinDiagram& d, const std::vector<std::string>& drop)
{
  std::vector<std::string> out;
  for (const std::string& n : d.nodes())
    if (std::find(drop.begin(), drop.end(), n) == drop.end())
      out.push_back(n);
  return out;
}

} // namespace

TEST_CASE("diagram shapes")
{
  const DynkinDiagram a2 = build_diagram(TypeLabel::AffA, 2);
  CHECK(a2.size() == 3);
  CHECK(a2.bonds().size() == 3);
  for (const Bond& b : a2.bonds())
    CHECK(b.multiplicity == 1);

  const DynkinDiagram a1 = build_diagram(TypeLabel::A, 1);
  CHECK(a1.size() == 1);
  CHECK(a1.bonds().empty());

  const DynkinDiagram c3 = build_diagram(TypeLabel::AffC, 3);
  CHECK(c3.size() == 4);
  CHECK(exact_determinant(cartan_matrix(c3)) == 0);

  CHECK_THROWS_AS(build_diagram(TypeLabel::AffA, 1), RangeError);
  CHECK_THROWS_AS(build_diagram(TypeLabel::E6, 7), RangeError);
}

TEST_CASE("cartan matrices")
{
  IntMatrix a2(2, 2);
  a2 << 2, -1, -1, 2;
  CHECK(cartan_matrix(build_diagram(TypeLabel::A, 2)) == a2);
  CHECK(exact_determinant(a2) == 3);
  CHECK(exact_determinant(cartan_matrix(build_diagram(TypeLabel::A, 1))) == 2);

  const IntMatrix aff = cartan_matrix(build_diagram(TypeLabel::AffA, 2));
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index j = 0; j < 3; ++j)
      CHECK(aff(i, j) == (i == j ? 2 : -1));
  CHECK(exact_determinant(aff) == 0);
}

TEST_CASE("finite determinants and affine singularity")
{
  // det of the finite Cartan matrix is the order of the weight lattice quotient.
  for (int n = 1; n <= 10; ++n)
    CHECK(exact_determinant(cartan_matrix(build_diagram(TypeLabel::A, n))) == n + 1);
  for (int n = 2; n <= 10; ++n)
    CHECK(exact_determinant(cartan_matrix(build_diagram(TypeLabel::B, n))) == 2);
  for (int n = 4; n <= 10; ++n)
    CHECK(exact_determinant(cartan_matrix(build_diagram(TypeLabel::D, n))) == 4);
  CHECK(exact_determinant(cartan_matrix(build_diagram(TypeLabel::E6, 6))) == 3);
  CHECK(exact_determinant(cartan_matrix(build_diagram(TypeLabel::E7, 7))) == 2);
  CHECK(exact_determinant(cartan_matrix(build_diagram(TypeLabel::E8, 8))) == 1);
  CHECK(exact_determinant(cartan_matrix(build_diagram(TypeLabel::F4, 4))) == 1);
  CHECK(exact_determinant(cartan_matrix(build_diagram(TypeLabel::G2, 2))) == 1);

  for (TypeLabel t : {TypeLabel::AffA, TypeLabel::AffB, TypeLabel::AffBt, TypeLabel::AffC, TypeLabel::AffCt,
                      TypeLabel::AffCp, TypeLabel::AffD, TypeLabel::AffE6, TypeLabel::AffE7, TypeLabel::AffE8,
                      TypeLabel::AffF4, TypeLabel::AffF4t, TypeLabel::AffG2, TypeLabel::AffG2t}) {
    const RankRange r = valid_ranks(t);
    for (int n = r.min_rank; n <= r.max_rank.value_or(r.min_rank + 6); ++n) {
      const DynkinDiagram d = build_diagram(t, n);
      CAPTURE(to_string(TypeRank{t, n}));
      CHECK(static_cast<int>(d.size()) == n + 1);
      CHECK(exact_determinant(cartan_matrix(d)) == 0);
      CHECK(d.type() == TypeRank{t, n});
    }
  }
}

TEST_CASE("subdiagrams")
{
  struct Case {
    TypeLabel label;
    int rank;
    std::vector<std::string> drop;
    std::vector<TypeRank> expect;
  };
  const std::vector<Case> cases = {
      {TypeLabel::AffA, 2, {"a2"}, {{TypeLabel::A, 2}}},
      {TypeLabel::AffB, 9, {"a8"}, {{TypeLabel::D, 8}, {TypeLabel::A, 1}}},
      {TypeLabel::AffA, 5, {"a0"}, {{TypeLabel::A, 5}}},
      {TypeLabel::AffD, 6, {"a0"}, {{TypeLabel::D, 6}}},
      {TypeLabel::AffE6, 6, {"a0"}, {{TypeLabel::E6, 6}}},
      {TypeLabel::AffE8, 8, {"a0"}, {{TypeLabel::E8, 8}}},
      {TypeLabel::AffG2, 2, {"a0"}, {{TypeLabel::G2, 2}}},
      {TypeLabel::AffF4, 4, {"a0"}, {{TypeLabel::F4, 4}}},
  };
  for (const Case& c : cases) {
    const DynkinDiagram d = build_diagram(c.label, c.rank);
    CAPTURE(to_string(TypeRank{c.label, c.rank}));
    CHECK(subdiagram(d, all_but(d, c.drop)).components() == c.expect);
  }
  const DynkinDiagram d5 = build_diagram(TypeLabel::D, 5);
  CHECK(subdiagram(d5, d5.nodes()).components() == d5.components());
  CHECK_THROWS(subdiagram(d5, {}));
}

TEST_CASE("classification of raw graphs")
{
  const std::vector<std::string> five{"p", "q", "r", "s", "t"};
  const std::vector<Bond> path{{0, 1, 1, false}, {1, 2, 1, false}, {2, 3, 1, false}, {3, 4, 1, false}};
  CHECK(classify(five, path) == std::vector<TypeRank>{{TypeLabel::A, 5}});
  CHECK(classify({"x", "y"}, {}) == std::vector<TypeRank>{{TypeLabel::A, 1}, {TypeLabel::A, 1}});

  std::vector<Bond> b5 = path;
  b5.back() = {3, 4, 2, true};
  CHECK(classify(five, b5) == std::vector<TypeRank>{{TypeLabel::B, 5}});
  b5.back() = {4, 3, 2, true};
  CHECK(classify(five, b5) == std::vector<TypeRank>{{TypeLabel::C, 5}});

  // A triangle with a double bond is of indefinite type.
  CHECK_THROWS_AS(classify({"x", "y", "z"}, {{0, 1, 2, true}, {1, 2, 1, false}, {2, 0, 1, false}}),
                  ClassificationError);
}

TEST_CASE("admissibility")
{
  CHECK(check_admissibility(TypeLabel::AffC, 4, 2).kind == Admissibility::Excluded);
  CHECK(check_admissibility(TypeLabel::AffA, 2, 3).kind == Admissibility::SpecialA2Small);
  CHECK(check_admissibility(TypeLabel::AffA, 2, 2).kind == Admissibility::SpecialA2Small);
  CHECK(check_admissibility(TypeLabel::AffA, 5, 2).kind == Admissibility::Admissible);
  CHECK(check_admissibility(TypeLabel::AffG2, 2, 3).kind == Admissibility::Excluded);
  CHECK(check_admissibility(TypeLabel::AffG2, 2, 4).kind == Admissibility::Admissible);
  CHECK(check_admissibility(TypeLabel::AffB, 3, 3).kind == Admissibility::Admissible);
  CHECK(check_admissibility(TypeLabel::AffA, 2, 4).kind == Admissibility::Admissible);
}

TEST_CASE("type codes round trip")
{
  for (int i = 0; i <= static_cast<int>(TypeLabel::AffG2t); ++i) {
    const auto t = static_cast<TypeLabel>(i);
    CHECK(parse_type_code(type_code(t)) == t);
  }
  CHECK(parse_type_code("A") == TypeLabel::AffA);
  CHECK(parse_type_code("fin:A") == TypeLabel::A);
  CHECK_THROWS_AS(parse_type_code("Q"), RangeError);
}

TEST_CASE("text dump lists every node")
{
  const std::string text = dump_text(build_diagram(TypeLabel::AffC, 3));
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}
