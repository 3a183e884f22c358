#include "kmp/assembly.hpp"

#include "kmp/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace kmp {

void PresentationBudget::add(std::string step, int dgens, int drels)
{
  gens += dgens;
  rels += drels;
  trace.push_back({std::move(step), dgens, drels});
}

bool PresentationBudget::consistent() const
{
  int g = 0;
  int r = 0;
  for (const BudgetTerm& t : trace) {
    g += t.gens;
    r += t.rels;
  }
  return g == gens && r == rels && gens >= 0 && rels >= 0;
}

const CatalogBlock& BlockRef::resolve(const Catalog& c, Parity p) const
{
  if (p == Parity::Even)
    return c.lookup(even_family.value_or(family), n, p, even_variant ? even_variant : variant);
  return c.lookup(family, n, p, variant);
}

Parity AssemblyPlan::parity() const { return make_field(q).parity(); }

namespace {

std::string ref_text(const BlockRef& r)
{
  std::string out = std::string(to_string(r.family)) + " n=" + std::to_string(r.n);
  if (r.variant)
    out += " variant " + std::to_string(*r.variant);
  return out;
}

BlockRef sl(int n, std::optional<int> variant = {}) { return {Family::SL, n, variant, {}, {}}; }
BlockRef sp(int n, std::optional<int> variant = {}) { return {Family::Sp, n, variant, {}, {}}; }
// Spin(2n+1, q) and Sp(2n, q) coincide for even q.
BlockRef spin_odd(int n, std::optional<int> variant = {}) { return {Family::SpinOdd, n, variant, Family::Sp, {}}; }
BlockRef spin_even(int n) { return {Family::SpinEven, n, {}, {}, {}}; }

AssemblyStep take(BlockRef r) { return TakeBlock{std::move(r), std::nullopt}; }
AssemblyStep eliminate(BlockRef shared, std::size_t contained_in, std::size_t expressed_in)
{
  return EliminateShared{std::move(shared), contained_in, expressed_in};
}

std::string regime_text(int lo, std::optional<int> hi)
{
  if (hi && *hi == lo)
    return "n=" + std::to_string(lo);
  if (hi)
    return std::to_string(lo) + "<=n<=" + std::to_string(*hi);
  return "n>=" + std::to_string(lo);
}

/// Two subdiagrams of rank n-1 and 2 meeting in an A1, joined by four commutators.
std::vector<AssemblyStep> big_plus_rank_two(BlockRef big, BlockRef small, bool small_contains_shared)
{
  return {take(std::move(big)), take(std::move(small)),
          small_contains_shared ? eliminate(sl(2), 1, 0) : eliminate(sl(2), 0, 1), BridgeCommutators{4}};
}

std::vector<AssemblyStep> affine_steps(TypeLabel label, int n, std::string& regime)
{
  using T = TypeLabel;
  switch (label) {
  case T::AffA:
    if (n == 2) {
      regime = regime_text(2, 2);
      return {take(sl(3)), take(sl(3)), eliminate(sl(2), 1, 0), TakeBlock{sl(3), "R3c"}, Identification{2}};
    }
    if (n == 3) {
      regime = regime_text(3, 3);
      return {take(sl(4, 0)), take(sl(4, 1)), eliminate(sl(3), 1, 0), TakeBlock{sl(3), "R3c"}, Identification{2}};
    }
    regime = n <= 7 ? regime_text(4, 7) : regime_text(8, {});
    return {take(sl(n + 1, 0)), take(sl(n + 1, 1)), eliminate(sl(3), 1, 0), BridgeCommutators{4}, Identification{2}};
  case T::AffB:
  case T::AffBt: {
    if (n == 3) {
      regime = regime_text(3, 3);
      return big_plus_rank_two(sl(4, 0), sp(2), false);
    }
    regime = n == 4 ? regime_text(4, 4) : n <= 8 ? regime_text(5, 8) : regime_text(9, {});
    return big_plus_rank_two(spin_even(n), sp(2), false);
  }
  case T::AffC:
  case T::AffCp:
  case T::AffCt: {
    regime = n <= 4 ? regime_text(n, n) : n <= 8 ? regime_text(5, 8) : regime_text(9, {});
    const bool twisted = label == T::AffCt;
    BlockRef last = twisted ? sp(2, 1) : sp(2);
    if (n == 2) {
      BlockRef first = twisted ? BlockRef{Family::Sp, 2, 0, {}, 1} : sp(2);
      return big_plus_rank_two(std::move(first), std::move(last), true);
    }
    BlockRef first = label == T::AffC ? sp(n) : spin_odd(n);
    return big_plus_rank_two(std::move(first), std::move(last), true);
  }
  case T::AffD:
    if (n <= 5) {
      regime = regime_text(n, n);
      return big_plus_rank_two(spin_even(n), sl(3), true);
    }
    regime = n <= 8 ? regime_text(6, 8) : regime_text(9, {});
    return {take(sl(n)),          take(sl(3)),    take(sl(3)),         eliminate(sl(2), 1, 0),
            eliminate(sl(2), 2, 0), ExtraBridge{3}, BridgeCommutators{4}};
  case T::AffE6:
    regime = "n=6";
    return big_plus_rank_two(sl(6), sl(4, 0), true);
  case T::AffE7:
    regime = "n=7";
    return big_plus_rank_two(sl(8), sl(3), true);
  case T::AffE8:
    regime = "n=8";
    return big_plus_rank_two(sl(9), sl(3), true);
  case T::AffF4:
  case T::AffF4t:
    regime = "n=4";
    return {take(sl(4, 0)), take(sp(2)), take(sl(3)), eliminate(sl(2), 0, 1), eliminate(sl(2), 2, 1), ExtraBridge{7}};
  case T::AffG2:
  case T::AffG2t:
    regime = "n=2";
    return big_plus_rank_two(sl(3), BlockRef{Family::G2, 2, {}, {}, {}}, false);
  default:
    break;
  }
  throw RangeError("no recipe for type " + std::string(type_name(label)));
}

std::vector<AssemblyStep> finite_steps(TypeLabel label, int n)
{
  switch (label) {
  case TypeLabel::A:
    return {take(sl(n + 1))};
  case TypeLabel::B:
    return {take(spin_odd(n))};
  case TypeLabel::C:
    return {take(sp(n))};
  case TypeLabel::D:
    return {take(spin_even(n))};
  case TypeLabel::G2:
    return {take(BlockRef{Family::G2, 2, {}, {}, {}})};
  default:
    break;
  }
  throw CatalogMiss("no catalog block for finite type " + to_string(TypeRank{label, n}));
}

const Catalog& given_catalog()
{
  static const Catalog c = make_catalog([](SpinKind, int, Parity) { return std::pair{1, 0}; });
  return c;
}

const CatalogBlock& taken_block(const std::vector<const CatalogBlock*>& taken, std::size_t at, std::size_t step)
{
  if (at >= step || !taken[at])
    throw PresentationError("step " + std::to_string(step) + " refers to step " + std::to_string(at) +
                            ", which is not an earlier whole block");
  return *taken[at];
}

} // namespace

std::string describe(const AssemblyStep& s)
{
  return std::visit(
      [](const auto& step) -> std::string {
        using S = std::decay_t<decltype(step)>;
        if constexpr (std::is_same_v<S, TakeBlock>)
          return "take " + ref_text(step.block) + (step.part ? " part " + *step.part : std::string());
        else if constexpr (std::is_same_v<S, EliminateShared>)
          return "eliminate shared " + ref_text(step.shared) + " (contained in step " +
                 std::to_string(step.contained_in) + ", expressed by step " + std::to_string(step.expressed_in) + ")";
        else if constexpr (std::is_same_v<S, BridgeCommutators>)
          return "bridge commutators x" + std::to_string(step.count);
        else if constexpr (std::is_same_v<S, Identification>)
          return "identification relations x" + std::to_string(step.count);
        else if constexpr (std::is_same_v<S, ExtraBridge>)
          return "extra bridge relations x" + std::to_string(step.count);
        else if constexpr (std::is_same_v<S, KillCenterGenerator>)
          return "kill a center generator";
        else
          return "reduce to 2 generators";
      },
      s);
}

const Catalog& standard_catalog()
{
  static const Catalog c =
      make_catalog([](SpinKind kind, int n, Parity p) { return spin_presentation(kind, n, p).sizes(); });
  return c;
}

AssemblyPlan plan_for(TypeLabel label, int rank, std::int64_t q)
{
  const AdmissibilityVerdict verdict = check_admissibility(label, rank, q);
  const std::string target = to_string(TypeRank{label, rank}) + "(" + std::to_string(q) + ")";
  if (verdict.kind == Admissibility::Excluded)
    throw AdmissibilityError(target + " is excluded: " + verdict.reason);

  AssemblyPlan plan{label, rank, q, {}, {}, std::nullopt, false};
  if (verdict.kind == Admissibility::SpecialA2Small) {
    plan.regime = "q in {2,3}";
    plan.stub = true;
    return plan;
  }
  if (!is_affine(label)) {
    plan.regime = "finite";
    plan.steps = finite_steps(label, rank);
  } else {
    plan.steps = affine_steps(label, rank, plan.regime);
  }
  return plan;
}

PresentationBudget execute_budget(const AssemblyPlan& plan, const Catalog& catalog)
{
  PresentationBudget budget;
  if (plan.stub) {
    budget.add("~A2 over a field with 2 or 3 elements (sizes only)", 3, 29);
    return budget;
  }
  const Parity parity = plan.parity();
  std::vector<const CatalogBlock*> taken(plan.steps.size(), nullptr);
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const std::string prefix = "step " + std::to_string(i) + ": ";
    try {
      std::visit(
          [&](const auto& step) {
            using S = std::decay_t<decltype(step)>;
            if constexpr (std::is_same_v<S, TakeBlock>) {
              const CatalogBlock& b = step.block.resolve(catalog, parity);
              if (step.part) {
                const auto it = b.parts.find(*step.part);
                if (it == b.parts.end())
                  throw CatalogMiss(b.name() + " has no part " + *step.part);
                budget.add("take part " + *step.part + " of " + b.name(), it->second.gens, it->second.rels);
              } else {
                taken[i] = &b;
                budget.add("take " + b.name(), b.gen_count, b.rel_count);
              }
            } else if constexpr (std::is_same_v<S, EliminateShared>) {
              const CatalogBlock& shared = step.shared.resolve(catalog, parity);
              const CatalogBlock& holder = taken_block(taken, step.contained_in, i);
              taken_block(taken, step.expressed_in, i);
              if (step.contained_in == step.expressed_in)
                throw PresentationError("shared block must be expressed through a different block");
              if (shared.label.empty() || !catalog.contains(holder, shared.label))
                throw PresentationError(shared.name() + " is not contained in " + holder.name());
              budget.add("eliminate shared " + shared.name(), -shared.gen_count, -shared.rel_count);
            } else if constexpr (std::is_same_v<S, BridgeCommutators>) {
              budget.add("bridge commutators", 0, step.count);
            } else if constexpr (std::is_same_v<S, Identification>) {
              budget.add("identification relations", 0, step.count);
            } else if constexpr (std::is_same_v<S, ExtraBridge>) {
              budget.add("extra bridge relations", 0, step.count);
            } else if constexpr (std::is_same_v<S, KillCenterGenerator>) {
              budget.add("kill a center generator", 0, 1);
            } else {
              budget.add("reduce to 2 generators", 2 - budget.gens, 2);
            }
          },
          plan.steps[i]);
    } catch (const CatalogMiss& e) {
      throw CatalogMiss(prefix + e.what());
    } catch (const PresentationError& e) {
      throw PresentationError(prefix + e.what());
    }
  }
  if (plan.expected && budget.sizes() != *plan.expected)
    throw SizeMismatch("plan for " + to_string(TypeRank{plan.label, plan.rank}) + " expected (" +
                       std::to_string(plan.expected->first) + ", " + std::to_string(plan.expected->second) +
                       ") but summed to (" + std::to_string(budget.gens) + ", " + std::to_string(budget.rels) + ")");
  return budget;
}

namespace {

struct TakenData {
  std::size_t step;
  const CatalogBlock* block;
  const BlockData* data;
  std::string prefix;
};

Word prefixed(const Word& w, const std::string& prefix)
{
  Word out;
  out.reserve(w.size());
  for (const Letter& l : w)
    out.push_back({prefix + l.gen, l.exp});
  return out;
}

const SubblockDecl& declared(const TakenData& t, const std::string& label)
{
  for (const SubblockDecl& s : t.data->subblocks) {
    if (s.label == label)
      return s;
  }
  throw ExplicitUnavailable("relator data for " + t.block->name() + " does not declare its " + label + " sub-block");
}

Word commutator(const Word& a, const Word& b) { return concat(concat(a, b), concat(inverse(a), inverse(b))); }

} // namespace

Presentation execute_explicit(const AssemblyPlan& plan, const Catalog& catalog)
{
  if (plan.stub)
    throw ExplicitUnavailable("the ~A2 plan for q in {2,3} has sizes only");
  const Parity parity = plan.parity();

  std::vector<TakenData> taken;
  std::vector<std::string> missing;
  std::size_t whole_blocks = 0;
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    if (const auto* t = std::get_if<TakeBlock>(&plan.steps[i])) {
      if (t->part)
        throw ExplicitUnavailable("step " + std::to_string(i) + " uses part " + *t->part +
                                  ", which has no explicit relator data");
      ++whole_blocks;
    } else if (std::holds_alternative<KillCenterGenerator>(plan.steps[i]) ||
               std::holds_alternative<TwoGeneratorReduce>(plan.steps[i])) {
      throw ExplicitUnavailable("step " + std::to_string(i) + " (" + describe(plan.steps[i]) +
                                ") needs elements the explicit path does not model");
    }
  }
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const auto* t = std::get_if<TakeBlock>(&plan.steps[i]);
    if (!t)
      continue;
    const CatalogBlock& b = t->block.resolve(catalog, parity);
    const auto it = b.data.find(plan.q);
    if (it == b.data.end()) {
      missing.push_back(b.name());
      continue;
    }
    const std::string prefix = whole_blocks > 1 ? "b" + std::to_string(i) + "." : std::string();
    taken.push_back({i, &b, &it->second, prefix});
  }
  if (!missing.empty()) {
    std::string list;
    for (const std::string& m : missing)
      list += (list.empty() ? "" : "; ") + m;
    throw ExplicitUnavailable("no relator data for q=" + std::to_string(plan.q) + ": " + list);
  }
  if (taken.size() == 1 && plan.steps.size() == 1)
    return taken.front().data->presentation;

  auto by_step = [&](std::size_t step) -> const TakenData& {
    for (const TakenData& t : taken) {
      if (t.step == step)
        return t;
    }
    throw PresentationError("step " + std::to_string(step) + " is not a block");
  };

  // Amalgam presentation: all blocks, one identification relator per shared
  // generator, then the bridge and identification relators.
  std::vector<std::string> gens;
  std::vector<Word> rels;
  std::vector<std::size_t> ids; // stable relator ids, parallel to rels
  std::map<std::size_t, std::size_t> block_rel_base;
  for (const TakenData& t : taken) {
    for (const std::string& g : t.data->presentation.generators())
      gens.push_back(t.prefix + g);
    block_rel_base[t.step] = rels.size();
    for (const Word& r : t.data->presentation.relators())
      rels.push_back(prefixed(r, t.prefix));
  }

  struct Elimination {
    std::vector<std::pair<std::string, std::size_t>> generators; // name, id of its defining relator
    std::vector<std::size_t> relators;                          // ids of the implied relators
  };
  std::vector<Elimination> eliminations;

  std::vector<Word> bridge_pool;
  for (std::size_t a = 0; a < taken.size(); ++a) {
    for (std::size_t b = a + 1; b < taken.size(); ++b) {
      if (!taken[a].data->pair || !taken[b].data->pair)
        continue;
      const auto& pa = *taken[a].data->pair;
      const auto& pb = *taken[b].data->pair;
      for (const Word* x : {&pa.first, &pa.second}) {
        for (const Word* y : {&pb.first, &pb.second})
          bridge_pool.push_back(commutator(prefixed(*x, taken[a].prefix), prefixed(*y, taken[b].prefix)));
      }
    }
  }
  std::size_t pool_next = 0;
  auto draw_bridges = [&](int count, std::size_t step) {
    for (int k = 0; k < count; ++k) {
      if (pool_next == bridge_pool.size())
        throw ExplicitUnavailable("step " + std::to_string(step) + " needs more bridge relators than the declared pairs give");
      rels.push_back(bridge_pool[pool_next++]);
    }
  };

  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    if (const auto* e = std::get_if<EliminateShared>(&plan.steps[i])) {
      const CatalogBlock& shared = e->shared.resolve(catalog, parity);
      const TakenData& holder = by_step(e->contained_in);
      const TakenData& source = by_step(e->expressed_in);
      const SubblockDecl& inner = declared(holder, shared.label);
      const SubblockDecl& outer = declared(source, shared.label);
      if (static_cast<int>(inner.generators.size()) != shared.gen_count ||
          static_cast<int>(inner.relators.size()) != shared.rel_count)
        throw SizeMismatch("sub-block " + shared.label + " declared in " + holder.block->name() + " has (" +
                           std::to_string(inner.generators.size()) + ", " + std::to_string(inner.relators.size()) +
                           ") but the catalog row has (" + std::to_string(shared.gen_count) + ", " +
                           std::to_string(shared.rel_count) + ")");
      Elimination elim;
      for (const auto& [name, word] : inner.generators) {
        if (word.size() != 1 || word.front().exp != 1)
          throw ExplicitUnavailable("sub-block generator " + name + " of " + holder.block->name() +
                                    " is not a generator of the block");
        const auto match = std::find_if(outer.generators.begin(), outer.generators.end(),
                                        [&](const auto& entry) { return entry.first == name; });
        if (match == outer.generators.end())
          throw PresentationError(source.block->name() + " does not express sub-block generator " + name);
        const std::string g = holder.prefix + word.front().gen;
        elim.generators.emplace_back(g, rels.size());
        rels.push_back(concat({{g, 1}}, inverse(prefixed(match->second, source.prefix))));
      }
      for (std::size_t idx : inner.relators)
        elim.relators.push_back(block_rel_base.at(holder.step) + idx);
      eliminations.push_back(std::move(elim));
    } else if (const auto* b = std::get_if<BridgeCommutators>(&plan.steps[i])) {
      draw_bridges(b->count, i);
    } else if (const auto* x = std::get_if<ExtraBridge>(&plan.steps[i])) {
      draw_bridges(x->count, i);
    } else if (const auto* id = std::get_if<Identification>(&plan.steps[i])) {
      const TakenData& first = taken.front();
      const TakenData& last = taken.back();
      if (!first.data->pair || !last.data->pair || id->count > 2)
        throw ExplicitUnavailable("step " + std::to_string(i) + " needs declared pairs on the outer blocks");
      const Word* fa[2] = {&first.data->pair->first, &first.data->pair->second};
      const Word* la[2] = {&last.data->pair->first, &last.data->pair->second};
      for (int k = 0; k < id->count; ++k)
        rels.push_back(concat(prefixed(*fa[k], first.prefix), inverse(prefixed(*la[k], last.prefix))));
    }
  }

  ids.resize(rels.size());
  std::iota(ids.begin(), ids.end(), 0);
  Presentation p(std::move(gens), std::move(rels));
  auto position = [&](std::size_t id) {
    const auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end())
      throw PresentationError("relator scheduled twice for removal");
    return static_cast<std::size_t>(it - ids.begin());
  };
  for (const Elimination& elim : eliminations) {
    for (const auto& [g, id] : elim.generators) {
      const std::size_t at = position(id);
      p = tietze_remove_generator(p, g, at);
      ids.erase(ids.begin() + static_cast<std::ptrdiff_t>(at));
    }
    std::vector<std::size_t> positions;
    for (std::size_t id : elim.relators)
      positions.push_back(position(id));
    std::sort(positions.rbegin(), positions.rend());
    for (std::size_t at : positions) {
      p = tietze_remove_relator(p, at);
      ids.erase(ids.begin() + static_cast<std::ptrdiff_t>(at));
    }
  }
  return p;
}

PresentationBudget spin_presentation(SpinKind kind, int n, Parity parity)
{
  const int min_n = kind == SpinKind::Even ? 4 : 3;
  if (n < min_n) {
    const char* what = kind == SpinKind::Even ? "Spin(2n)" : kind == SpinKind::OddDim ? "Spin(2n+1)" : "Sp(2n)";
    throw RangeError(std::string(what) + " recipe needs n >= " + std::to_string(min_n) + ", got " + std::to_string(n));
  }
  // Spin(2n): the A_{n-1} part and an A2 on the branch. Spin(2n+1), Sp(2n):
  // the A_{n-1} part and the rank-2 piece at the double bond.
  AssemblyPlan plan{kind == SpinKind::Even ? TypeLabel::D : kind == SpinKind::OddDim ? TypeLabel::B : TypeLabel::C,
                    n,
                    representative_q(parity),
                    "finite",
                    {},
                    std::nullopt,
                    false};
  if (kind == SpinKind::Even)
    plan.steps = big_plus_rank_two(sl(n), sl(3), true);
  else
    plan.steps = big_plus_rank_two(sl(n), sp(2), false);
  PresentationBudget b = execute_budget(plan, given_catalog());
  if (kind == SpinKind::OddDim && parity == Parity::Even)
    b.add("Spin(2n+1,q) = Sp(2n,q) for even q", 0, 0);
  return b;
}

TypeLabel affine_of(TypeLabel finite_label)
{
  switch (finite_label) {
  case TypeLabel::A:
    return TypeLabel::AffA;
  case TypeLabel::B:
    return TypeLabel::AffB;
  case TypeLabel::C:
    return TypeLabel::AffC;
  case TypeLabel::D:
    return TypeLabel::AffD;
  case TypeLabel::E6:
    return TypeLabel::AffE6;
  case TypeLabel::E7:
    return TypeLabel::AffE7;
  case TypeLabel::E8:
    return TypeLabel::AffE8;
  case TypeLabel::F4:
    return TypeLabel::AffF4;
  case TypeLabel::G2:
    return TypeLabel::AffG2;
  default:
    break;
  }
  throw RangeError("expected a finite type, got " + std::string(type_name(finite_label)));
}

PresentationBudget loop_group_sizes(TypeLabel finite_label, int rank, std::int64_t q)
{
  const TypeLabel affine = affine_of(finite_label);
  const RankRange fin = valid_ranks(finite_label);
  if (!fin.contains(rank))
    throw RangeError("rank " + std::to_string(rank) + " is out of range for type " +
                     std::string(type_name(finite_label)));
  if (!valid_ranks(affine).contains(rank))
    throw RangeError("no loop group recipe for " + to_string(TypeRank{finite_label, rank}));
  const std::string target = to_string(TypeRank{finite_label, rank}) + " over F_" + std::to_string(q) + "[t,1/t]";
  const AdmissibilityVerdict verdict = check_admissibility(affine, rank, q);
  if (verdict.kind == Admissibility::Excluded)
    throw AdmissibilityError(target + " is excluded: " + verdict.reason);
  AssemblyPlan plan = plan_for(affine, rank, q);
  if (plan.stub) {
    PresentationBudget b = execute_budget(plan, standard_catalog());
    b.add("kill a center generator", 0, 1);
    return b;
  }
  plan.steps.emplace_back(KillCenterGenerator{});
  plan.steps.emplace_back(TwoGeneratorReduce{});
  return execute_budget(plan, standard_catalog());
}

PresentationBudget profinite_sizes(TypeLabel finite_label, int rank, std::int64_t q)
{
  PresentationBudget b = loop_group_sizes(finite_label, rank, q);
  if (b.gens == 3)
    b.add("profinite completion: one more relation", 0, 1);
  else
    b.add("profinite presentation (derived-transfer of the loop group count)", 0, 0);
  return b;
}

PresentationBudget two_generator_sizes(TypeLabel affine_label, int rank, std::int64_t q)
{
  if (!is_affine(affine_label))
    throw RangeError("expected an affine type, got " + std::string(type_name(affine_label)));
  AssemblyPlan plan = plan_for(affine_label, rank, q);
  if (!plan.stub)
    plan.steps.emplace_back(TwoGeneratorReduce{});
  return execute_budget(plan, standard_catalog());
}

} // namespace kmp
