#include "kmp/rootdatum.hpp"

#include "kmp/error.hpp"

#include <algorithm>
#include <numeric>

namespace kmp {

int FundamentalGroup::free_rank() const
{
  return static_cast<int>(std::count(factors.begin(), factors.end(), 0));
}

std::vector<std::int64_t> FundamentalGroup::torsion() const
{
  std::vector<std::int64_t> out;
  std::copy_if(factors.begin(), factors.end(), std::back_inserter(out), [](std::int64_t f) { return f != 0; });
  return out;
}

std::string FundamentalGroup::notation() const
{
  std::string out = "(";
  bool first = true;
  auto put = [&](std::int64_t f) {
    if (!first)
      out += ',';
    out += std::to_string(f);
    first = false;
  };
  for (int i = 0; i < free_rank(); ++i)
    put(0);
  for (std::int64_t f : torsion())
    put(f);
  return out + ")";
}

FundamentalGroup cokernel(const IntMatrix& m)
{
  const auto snf = smith_normal_form(m);
  FundamentalGroup g;
  // Rows without a diagonal entry are free factors of the cokernel.
  int zeros = static_cast<int>(std::max<Eigen::Index>(m.rows() - m.cols(), 0));
  for (std::int64_t d : snf.diagonal()) {
    if (d == 0)
      ++zeros;
    else if (d != 1)
      g.factors.push_back(d);
  }
  g.factors.insert(g.factors.end(), static_cast<std::size_t>(zeros), 0);
  return g;
}

FundamentalGroup fundamental_group(TypeLabel label, int rank)
{
  return cokernel(cartan_matrix(build_diagram(label, rank)));
}

int a_symbol(std::int64_t k, std::int64_t q)
{
  make_field(q);
  if (k <= 1)
    return 0;
  return std::gcd(k, q - 1) > 1 ? 1 : 0;
}

int a_symbol_sup(std::int64_t k, Parity p)
{
  if (k <= 1)
    return 0;
  // Odd q: some prime q = 1 mod k exists. Even q = 2^a: 2^a - 1 meets every
  // odd prime (take a = its multiplicative order of 2), never 2.
  if (p == Parity::Odd)
    return 1;
  while (k % 2 == 0)
    k /= 2;
  return k > 1 ? 1 : 0;
}

int a_symbol_sup(std::int64_t k) { return std::max(a_symbol_sup(k, Parity::Odd), a_symbol_sup(k, Parity::Even)); }

TorusCounts counts_from(const FundamentalGroup& g, const std::function<int(std::int64_t)>& symbol)
{
  TorusCounts c;
  c.d1 = g.free_rank();
  for (std::int64_t f : g.torsion())
    c.d1 += symbol(f);
  c.d2 = c.d1;
  c.extra_rels = 4 * c.d1;
  return c;
}

TorusCounts torus_counts(TypeLabel label, int rank, std::int64_t q, bool maximal)
{
  const FundamentalGroup g = fundamental_group(label, rank);
  if (maximal)
    return counts_from(g, [](std::int64_t k) { return a_symbol_sup(k); });
  TorusCounts c = counts_from(g, [q](std::int64_t k) { return a_symbol(k, q); });
  c.generation_exception = label == TypeLabel::AffA && rank == 2 && (q == 2 || q == 3);
  return c;
}

TorusCounts torus_counts_sup(TypeLabel label, int rank, Parity p)
{
  return counts_from(fundamental_group(label, rank), [p](std::int64_t k) { return a_symbol_sup(k, p); });
}

PresentationBudget adjoint_quotient_sizes(const PresentationBudget& b, const TorusCounts& c)
{
  PresentationBudget out = b;
  out.add("kill the center generators", 0, c.d1);
  return out;
}

PresentationBudget adjoint_quotient_sizes(const PresentationBudget& b, TypeLabel label, int rank, std::int64_t q)
{
  return adjoint_quotient_sizes(b, torus_counts(label, rank, q, false));
}

PresentationBudget adjoint_group_sizes(const PresentationBudget& b, const TorusCounts& c)
{
  PresentationBudget out = b;
  out.add(c.generation_exception ? "extend by H(q) (3-generated case, flagged)" : "extend by H(q)", c.d2,
          c.extra_rels);
  return out;
}

PresentationBudget adjoint_group_sizes(const PresentationBudget& b, TypeLabel label, int rank, std::int64_t q)
{
  return adjoint_group_sizes(b, torus_counts(label, rank, q, false));
}

std::string_view to_string(ClassicalGroup g)
{
  switch (g) {
  case ClassicalGroup::PSL:
    return "PSL";
  case ClassicalGroup::PGL:
    return "PGL";
  case ClassicalGroup::SOOdd:
    return "SO_odd";
  case ClassicalGroup::SOEven:
    return "SO_even";
  }
  return "?";
}

namespace {

using Symbol = std::function<int(std::int64_t)>;
using AffineBudget = std::function<PresentationBudget(TypeLabel, int)>;

void check_range(ClassicalGroup g, int n)
{
  const int lo = g == ClassicalGroup::SOEven ? 4 : 3;
  if (n < lo)
    throw RangeError(std::string(to_string(g)) + " needs n >= " + std::to_string(lo) + ", got " + std::to_string(n));
}

PresentationBudget classical(ClassicalGroup g, int n, const AffineBudget& affine, const Symbol& symbol)
{
  check_range(g, n);
  switch (g) {
  case ClassicalGroup::PSL:
  case ClassicalGroup::PGL: {
    PresentationBudget b =
        adjoint_quotient_sizes(affine(TypeLabel::AffA, n - 1), counts_from(fundamental_group(TypeLabel::AffA, n - 1), symbol));
    if (g == ClassicalGroup::PGL) {
      const int a = symbol(n);
      b.add("extend by Ext(Z/" + std::to_string(n) + ", F_q^*)", a, 3 * a);
    }
    return b;
  }
  case ClassicalGroup::SOOdd: {
    PresentationBudget b =
        adjoint_quotient_sizes(affine(TypeLabel::AffB, n), counts_from(fundamental_group(TypeLabel::AffB, n), symbol));
    const int a = symbol(2);
    b.add("extend by Ext(Z/2, F_q^*)", a, 3 * a);
    return b;
  }
  case ClassicalGroup::SOEven: {
    PresentationBudget b = affine(TypeLabel::AffD, n);
    const int a = symbol(2);
    b.add("kill the loop center", 0, 1);
    b.add("kill hom(Z/2, F_q^*)", 0, a);
    b.add("extend by Ext(Z/2, F_q^*)", a, 3 * a);
    return b;
  }
  }
  throw RangeError("unknown classical group");
}

} // namespace

PresentationBudget classical_group_sizes(ClassicalGroup g, int n, std::int64_t q)
{
  make_field(q);
  return classical(
      g, n, [q](TypeLabel l, int r) { return execute_budget(plan_for(l, r, q), standard_catalog()); },
      [q](std::int64_t k) { return a_symbol(k, q); });
}

PresentationBudget classical_group_sup(ClassicalGroup g, const std::vector<int>& ns, Parity p)
{
  if (ns.empty())
    throw RangeError("empty rank list");
  const std::int64_t q = representative_q(p);
  std::optional<PresentationBudget> best;
  int most_gens = 0;
  for (int n : ns) {
    PresentationBudget b = classical(
        g, n, [q](TypeLabel l, int r) { return execute_budget(plan_for(l, r, q), standard_catalog()); },
        [p](std::int64_t k) { return a_symbol_sup(k, p); });
    most_gens = std::max(most_gens, b.gens);
    if (!best || std::pair(b.rels, b.gens) > std::pair(best->rels, best->gens))
      best = std::move(b);
  }
  if (most_gens > best->gens)
    best->add("largest generator count over the range", most_gens - best->gens, 0);
  return *best;
}

} // namespace kmp
