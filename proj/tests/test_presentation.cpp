#include "kmp/error.hpp"
#include "kmp/presentation.hpp"
#include "kmp/verify.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace kmp;
using kmp::test::w;

TEST_CASE("word helpers")
{
  CHECK(free_reduce(w("a b b^-1 a^-1 c")) == w("c"));
  CHECK(inverse(w("a b^-1")) == w("b a^-1"));
  CHECK(power(w("a b"), 2) == w("a b a b"));
  CHECK(power(w("a b"), -1) == w("b^-1 a^-1"));
  CHECK(substitute(w("a b a^-1"), "a", w("c^2")) == w("c^2 b c^-2"));
  CHECK(to_string(w("a a b^-1")) == "a^2 b^-1");
  CHECK(to_string(Word{}) == "1");
  CHECK(w("1").empty());
  CHECK(w("(a b)^-2") == w("b^-1 a^-1 b^-1 a^-1"));
  CHECK_THROWS_AS(parse_word("a ^"), PresentationError);
  CHECK_THROWS_AS(parse_word("(a b"), PresentationError);
}

TEST_CASE("presentation construction checks")
{
  CHECK_THROWS_AS(Presentation({"a", "a"}, {}), PresentationError);
  CHECK_THROWS_AS(Presentation({"a"}, {w("b")}), PresentationError);
}

TEST_CASE("single Tietze moves")
{
  const Presentation s3({"a", "b"}, {w("a^2"), w("b^3"), w("(a b)^2")});

  const Presentation added = tietze_add_generator(s3, "c", w("a b"));
  CHECK(added.generator_count() == 3);
  CHECK(added.relators().back() == w("c b^-1 a^-1"));
  CHECK_THROWS_AS(tietze_add_generator(s3, "a", w("b")), PresentationError);
  CHECK_THROWS_AS(tietze_add_generator(s3, "c", w("z")), PresentationError);

  const Presentation removed = tietze_remove_generator(added, "c", 3);
  CHECK(removed.same_content(s3));
  CHECK(removed.trace().size() == 2);
  // a occurs twice in a^2, so it cannot be eliminated through that relator.
  CHECK_THROWS_AS(tietze_remove_generator(s3, "a", 0), PresentationError);
  CHECK_THROWS_AS(tietze_remove_relator(s3, 7), PresentationError);

  const Presentation sub = tietze_substitute_all(added, "c", w("a b"));
  CHECK(sub.relators().back() == w("c b^-1 a^-1"));
  CHECK(sub.relators()[3].empty());
  CHECK_THROWS_AS(tietze_substitute_all(added, "c", w("c a")), PresentationError);

  CHECK(replay(s3, sub.trace()) == sub);
}

TEST_CASE("removing a generator through a leading or trailing occurrence")
{
  // b = a^2 written as a^-2 b, and as b^-1 a^2.
  const Presentation lead({"a", "b"}, {w("a^-2 b"), w("a^6"), w("b a b^-1 a")});
  const Presentation p1 = tietze_remove_generator(lead, "b", 0);
  CHECK(p1.generators() == std::vector<std::string>{"a"});
  CHECK(p1.relators()[1] == w("a^2"));

  const Presentation trail({"a", "b"}, {w("b^-1 a^2"), w("a^6")});
  CHECK(tietze_remove_generator(trail, "b", 0).relators() == std::vector<Word>{w("a^6")});
}

TEST_CASE("merge and rename")
{
  const Presentation p({"a", "b"}, {w("a^2"), w("b^3")});
  const Presentation q({"c", "d"}, {w("c^2"), w("d^2"), w("(c d)^3")});
  const Presentation m = merge_presentations(p, q, {{"c", w("a")}, {"d", w("b a")}});
  CHECK(m.generators() == std::vector<std::string>{"a", "b", "d"});
  // c^2 coincides with a^2 after identification and is dropped.
  CHECK(m.relator_count() == 5);
  CHECK_THROWS_AS(merge_presentations(p, Presentation({"a"}, {}), {}), PresentationError);
  CHECK_THROWS_AS(merge_presentations(p, q, {{"c", w("d")}, {"d", w("c")}}), PresentationError);

  const Presentation r = rename_generators(p, {{"a", "x"}});
  CHECK(r.relators().front() == w("x^2"));
  CHECK_THROWS_AS(rename_generators(p, {{"a", "b"}}), PresentationError);
}

TEST_CASE("random legal move sequences keep the group")
{
  std::mt19937 rng(20261014);
  int checked = 0;
  for (int round = 0; round < 60; ++round) {
    for (const auto& g : kmp::test::corpus()) {
      if (g.images.at(g.images.begin()->first).size() > 6 && round % 4 != 0)
        continue;
      kmp::test::LegalMoveWalk walk(g.presentation);
      for (int s = 0; s < 6; ++s)
        walk.step(rng);
      const VerifyResult r = tietze_equivalence_check(g.presentation, walk.current(), 200000);
      CAPTURE(g.name);
      CHECK(r.verdict == Verdict::Pass);
      CHECK(replay(g.presentation, walk.current().trace()).same_content(walk.current()));
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("reduction to a new generating set: relator count")
{
  std::mt19937 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto c = kmp::test::random_reduction_case(rng);
    const Presentation r = reduce_to_generating_set(c.presentation, c.generators, c.matching, c.old_in_new);
    CAPTURE(trial);
    CHECK(r.generator_count() == c.generators.size());
    CHECK(r.relator_count() == c.generators.size() + c.presentation.relator_count() - c.matching.size());
  }
}

TEST_CASE("reduction keeps the group")
{
  // S3 on a, b rewritten on x = a b, y = a.
  const Presentation s3({"a", "b"}, {w("a^2"), w("b^3"), w("(a b)^2")});
  const Presentation r = reduce_to_generating_set(s3, {{"x", w("a b")}, {"y", w("a")}}, {{"y", "a"}},
                                                  {{"b", w("y^-1 x")}});
  CHECK(r.relator_count() == 4);
  CHECK(tietze_equivalence_check(s3, r, 1000).verdict == Verdict::Pass);
  CHECK_THROWS_AS(reduce_to_generating_set(s3, {{"x", w("a b")}}, {}, {}), PresentationError);
}
