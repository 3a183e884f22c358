#pragma once

#include "kmp/json_io.hpp"
#include "kmp/matrix.hpp"
#include "kmp/presentation.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace kmp::test {

// Permutations act on {0..n-1}; a word acts letter by letter, left to right.
using Perm = std::vector<int>;

inline Perm identity_perm(std::size_t n)
{
  Perm p(n);
  for (std::size_t i = 0; i < n; ++i)
    p[i] = static_cast<int>(i);
  return p;
}

inline Perm then(const Perm& first, const Perm& second)
{
  Perm out(first.size());
  for (std::size_t i = 0; i < first.size(); ++i)
    out[i] = second[static_cast<std::size_t>(first[i])];
  return out;
}

inline Perm invert(const Perm& p)
{
  Perm out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    out[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return out;
}

inline Perm evaluate(const Word& w, const std::map<std::string, Perm>& images)
{
  Perm acc = identity_perm(images.begin()->second.size());
  for (const Letter& l : w) {
    const Perm& g = images.at(l.gen);
    acc = then(acc, l.exp > 0 ? g : invert(g));
  }
  return acc;
}

/// Size of the group generated by the images, by closing under right multiplication.
inline std::size_t closure_order(const std::map<std::string, Perm>& images)
{
  std::set<Perm> seen{identity_perm(images.begin()->second.size())};
  std::vector<Perm> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const Perm& p : frontier) {
      for (const auto& [name, g] : images) {
        Perm q = then(p, g);
        if (seen.insert(q).second)
          next.push_back(std::move(q));
      }
    }
    frontier = std::move(next);
  }
  return seen.size();
}

/// Permutation action of a 2x2 or 3x3 matrix over F_p on the nonzero vectors.
inline Perm matrix_action(const std::vector<std::vector<int>>& m, int p)
{
  const std::size_t dim = m.size();
  std::vector<std::vector<int>> vectors;
  std::vector<int> v(dim, 0);
  for (;;) {
    std::size_t i = 0;
    while (i < dim && ++v[i] == p)
      v[i++] = 0;
    if (i == dim)
      break;
    vectors.push_back(v);
  }
  auto index_of = [&](const std::vector<int>& x) {
    for (std::size_t k = 0; k < vectors.size(); ++k)
      if (vectors[k] == x)
        return static_cast<int>(k);
    return -1;
  };
  Perm out;
  for (const auto& x : vectors) {
    std::vector<int> y(dim, 0);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c)
        y[r] += m[r][c] * x[c];
      y[r] = ((y[r] % p) + p) % p;
    }
    out.push_back(index_of(y));
  }
  return out;
}

struct CorpusGroup {
  std::string name;
  Presentation presentation;
  std::map<std::string, Perm> images;
};

inline Word w(const std::string& text) { return parse_word(text); }

inline Presentation coxeter_a(int n)
{
  std::vector<std::string> gens;
  std::vector<Word> rels;
  for (int i = 1; i <= n; ++i)
    gens.push_back("s" + std::to_string(i));
  for (int i = 0; i < n; ++i) {
    rels.push_back(w("(" + gens[i] + ")^2"));
    for (int j = i + 1; j < n; ++j)
      rels.push_back(w("(" + gens[i] + " " + gens[j] + ")^" + (j == i + 1 ? "3" : "2")));
  }
  return {gens, rels};
}

inline std::map<std::string, Perm> transpositions(int n)
{
  std::map<std::string, Perm> out;
  for (int i = 1; i <= n; ++i) {
    Perm p = identity_perm(static_cast<std::size_t>(n + 1));
    std::swap(p[static_cast<std::size_t>(i - 1)], p[static_cast<std::size_t>(i)]);
    out["s" + std::to_string(i)] = p;
  }
  return out;
}

inline Presentation load_presentation(const std::string& path)
{
  std::ifstream in(path);
  return presentation_from_json(nlohmann::json::parse(in));
}

/// Finite groups with a faithful permutation representation, orders 6 to 168.
inline const std::vector<CorpusGroup>& corpus()
{
  static const std::vector<CorpusGroup> groups = [] {
    std::vector<CorpusGroup> g;
    g.push_back({"S3", coxeter_a(2), transpositions(2)});
    g.push_back({"A4",
                 Presentation({"a", "b"}, {w("a^2"), w("b^3"), w("(a b)^3")}),
                 {{"a", {2, 3, 0, 1}}, {"b", {2, 1, 3, 0}}}});
    g.push_back({"S4", coxeter_a(3), transpositions(3)});
    {
      const Perm u = matrix_action({{1, 1}, {0, 1}}, 3);
      const Perm t = matrix_action({{0, 1}, {2, 0}}, 3);
      g.push_back({"SL(2,3)", load_presentation(std::string(KMP_DATA_DIR) + "/sl2_3.json"),
                   {{"u", u}, {"t", t}, {"h", then(t, t)}}});
    }
    g.push_back({"A5",
                 Presentation({"a", "b"}, {w("a^2"), w("b^3"), w("(a b)^5")}),
                 {{"a", {4, 1, 3, 2, 0}}, {"b", {1, 3, 2, 0, 4}}}});
    g.push_back({"S5", coxeter_a(4), transpositions(4)});
    g.push_back({"PSL(2,7)",
                 Presentation({"a", "b"}, {w("a^2"), w("b^3"), w("(a b)^7"), w("(a b a^-1 b^-1)^4")}),
                 {{"a", {1, 0, 2, 3, 5, 4, 6}}, {"b", {0, 3, 5, 4, 1, 6, 2}}}});
    return g;
  }();
  return groups;
}

inline Word random_word(std::mt19937& rng, const std::vector<std::string>& gens, int max_len)
{
  std::uniform_int_distribution<int> len(1, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::bernoulli_distribution sign;
  Word out;
  for (int i = len(rng); i > 0; --i)
    out.push_back({gens[pick(rng)], sign(rng) ? 1 : -1});
  return free_reduce(out);
}

/// Random sequence of moves that keep the group unchanged: new generators
/// defined over the original ones, consequences of existing relators, removal
/// of relators known to be consequences, substitution of a defined generator
/// and removal of a defined generator through its defining relator.
class LegalMoveWalk {
public:
  explicit LegalMoveWalk(Presentation start)
      : p_(std::move(start)), originals_(p_.generators()), redundant_(p_.relator_count(), false)
  {
  }

  [[nodiscard]] const Presentation& current() const { return p_; }

  void step(std::mt19937& rng)
  {
    for (;;) {
      std::uniform_int_distribution<int> kind(0, 4);
      switch (kind(rng)) {
      case 0:
        add_generator(rng);
        return;
      case 1:
        if (add_consequence(rng))
          return;
        break;
      case 2:
        if (remove_redundant(rng))
          return;
        break;
      case 3:
        if (substitute(rng))
          return;
        break;
      default:
        if (remove_generator(rng))
          return;
        break;
      }
    }
  }

private:
  void apply(const TietzeMove& m) { p_ = apply_move(p_, m); }

  void erase_relator(std::size_t i)
  {
    redundant_.erase(redundant_.begin() + static_cast<std::ptrdiff_t>(i));
    for (auto& [g, idx] : def_index_)
      if (idx > i)
        --idx;
  }

  template <typename Map>
  std::string pick_key(const Map& m, std::mt19937& rng)
  {
    std::uniform_int_distribution<std::size_t> d(0, m.size() - 1);
    auto it = m.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(d(rng)));
    return it->first;
  }

  void add_generator(std::mt19937& rng)
  {
    const std::string name = "x" + std::to_string(counter_++);
    const Word def = random_word(rng, originals_, 4);
    apply({MoveKind::AddGenerator, name, def, 0});
    defs_[name] = def;
    def_index_[name] = p_.relator_count() - 1;
    redundant_.push_back(false);
  }

  bool add_consequence(std::mt19937& rng)
  {
    if (p_.relator_count() == 0)
      return false;
    std::uniform_int_distribution<std::size_t> pick(0, p_.relator_count() - 1);
    const Word& r = p_.relators()[pick(rng)];
    Word c;
    std::uniform_int_distribution<int> how(0, 2);
    switch (how(rng)) {
    case 0: {
      const Word conj = random_word(rng, p_.generators(), 2);
      c = free_reduce(concat(concat(conj, r), inverse(conj)));
      break;
    }
    case 1:
      c = free_reduce(concat(r, p_.relators()[pick(rng)]));
      break;
    default:
      c = inverse(r);
      break;
    }
    if (c.size() > 40)
      return false;
    apply({MoveKind::AddRelator, {}, c, 0});
    redundant_.push_back(true);
    return true;
  }

  bool remove_redundant(std::mt19937& rng)
  {
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < redundant_.size(); ++i)
      if (redundant_[i])
        candidates.push_back(i);
    if (candidates.empty())
      return false;
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    const std::size_t i = candidates[pick(rng)];
    apply({MoveKind::RemoveRelator, {}, {}, i});
    erase_relator(i);
    return true;
  }

  bool substitute(std::mt19937& rng)
  {
    if (defs_.empty())
      return false;
    const std::string x = pick_key(defs_, rng);
    apply({MoveKind::SubstituteAll, x, defs_[x], 0});
    redundant_[def_index_[x]] = true; // now the empty word
    def_index_[x] = p_.relator_count() - 1;
    redundant_.push_back(false);
    return true;
  }

  bool remove_generator(std::mt19937& rng)
  {
    if (defs_.empty())
      return false;
    const std::string x = pick_key(defs_, rng);
    const std::size_t i = def_index_[x];
    apply({MoveKind::RemoveGenerator, x, {}, i});
    defs_.erase(x);
    def_index_.erase(x);
    erase_relator(i);
    return true;
  }

  Presentation p_;
  std::vector<std::string> originals_;
  std::vector<bool> redundant_;
  std::map<std::string, Word> defs_;
  std::map<std::string, std::size_t> def_index_;
  int counter_ = 0;
};

// gcd of all k x k minors, computed by brute force over row/column subsets.
inline std::int64_t determinantal_divisor(const IntMatrix& a, int k)
{
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  std::int64_t g = 0;
  std::vector<int> rsel(static_cast<std::size_t>(rows), 0);
  std::vector<int> csel(static_cast<std::size_t>(cols), 0);
  std::fill(rsel.end() - k, rsel.end(), 1);
  do {
    std::fill(csel.begin(), csel.end(), 0);
    std::fill(csel.end() - k, csel.end(), 1);
    do {
      IntMatrix m(k, k);
      int ri = 0;
      for (int i = 0; i < rows; ++i) {
        if (!rsel[static_cast<std::size_t>(i)])
          continue;
        int ci = 0;
        for (int j = 0; j < cols; ++j)
          if (csel[static_cast<std::size_t>(j)])
            m(ri, ci++) = a(i, j);
        ++ri;
      }
      g = std::gcd(g, exact_determinant(m));
    } while (std::next_permutation(csel.begin(), csel.end()));
  } while (std::next_permutation(rsel.begin(), rsel.end()));
  return g;
}

// Invariant factors from the determinantal divisors d_k / d_{k-1}.
inline std::vector<std::int64_t> oracle_diagonal(const IntMatrix& a)
{
  std::vector<std::int64_t> out;
  std::int64_t prev = 1;
  const int n = static_cast<int>(std::min(a.rows(), a.cols()));
  for (int k = 1; k <= n; ++k) {
    const std::int64_t d = determinantal_divisor(a, k);
    if (d == 0) {
      out.resize(static_cast<std::size_t>(n), 0);
      return out;
    }
    out.push_back(d / prev);
    prev = d;
  }
  return out;
}

struct ReductionCase {
  Presentation presentation;
  std::vector<NewGenerator> generators;
  std::map<std::string, std::string> matching;
  std::map<std::string, Word> old_in_new;
};

/// Random sizes of old and new generating sets, relators and matched pairs.
inline ReductionCase random_reduction_case(std::mt19937& rng)
{
  std::uniform_int_distribution<int> count(1, 5);
  const int n_old = count(rng);
  const int n_rel = count(rng) - 1;
  const int n_new = count(rng);
  std::vector<std::string> old_names;
  std::vector<std::string> new_names;
  for (int i = 0; i < n_old; ++i)
    old_names.push_back("o" + std::to_string(i));
  for (int i = 0; i < n_new; ++i)
    new_names.push_back("n" + std::to_string(i));
  std::vector<Word> rels;
  for (int i = 0; i < n_rel; ++i)
    rels.push_back(random_word(rng, old_names, 5));

  ReductionCase c{Presentation(old_names, rels), {}, {}, {}};
  std::uniform_int_distribution<int> upto(0, std::min(n_old, n_new));
  const int n_match = upto(rng);
  for (int i = 0; i < n_new; ++i) {
    if (i < n_match) {
      c.matching[new_names[i]] = old_names[i];
      c.generators.push_back({new_names[i], w(old_names[i])});
    } else {
      c.generators.push_back({new_names[i], random_word(rng, old_names, 4)});
    }
  }
  for (int i = n_match; i < n_old; ++i)
    c.old_in_new[old_names[i]] = random_word(rng, new_names, 4);
  return c;
}

} // namespace kmp::test
