#pragma once

#include "kmp/catalog.hpp"
#include "kmp/dynkin.hpp"
#include "kmp/presentation.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace kmp {

struct BudgetTerm {
  std::string step;
  int gens = 0;
  int rels = 0;
  friend bool operator==(const BudgetTerm&, const BudgetTerm&) = default;
};

/// Generator and relation counts with the summands that produced them.
struct PresentationBudget {
  int gens = 0;
  int rels = 0;
  std::vector<BudgetTerm> trace;

  void add(std::string step, int dgens, int drels);
  /// True when the counts equal the sum of the trace.
  [[nodiscard]] bool consistent() const;
  [[nodiscard]] std::pair<int, int> sizes() const { return {gens, rels}; }
};

/// A catalog row reference resolved per parity. For even q the family and
/// variant may be overridden (blank even cells, isomorphic even-q groups).
struct BlockRef {
  Family family;
  int n;
  std::optional<int> variant;
  std::optional<Family> even_family;
  std::optional<int> even_variant;

  [[nodiscard]] const CatalogBlock& resolve(const Catalog& c, Parity p) const;
};

struct TakeBlock {
  BlockRef block;
  std::optional<std::string> part; // only a named part of the block, e.g. "R3c"
};

/// Remove a shared sub-block: its generators are expressed through step
/// `expressed_in` and its relations are implied by step `contained_in`.
struct EliminateShared {
  BlockRef shared;
  std::size_t contained_in;
  std::size_t expressed_in;
};

struct BridgeCommutators {
  int count = 4;
};
struct Identification {
  int count = 2;
};
struct ExtraBridge {
  int count;
};
struct KillCenterGenerator {};
struct TwoGeneratorReduce {};

using AssemblyStep = std::variant<TakeBlock, EliminateShared, BridgeCommutators, Identification, ExtraBridge,
                                  KillCenterGenerator, TwoGeneratorReduce>;

std::string describe(const AssemblyStep& s);

struct AssemblyPlan {
  TypeLabel label;
  int rank;
  std::int64_t q;
  std::string regime;
  std::vector<AssemblyStep> steps;
  std::optional<std::pair<int, int>> expected;
  /// Sizes-only plan for the ~A2 cases with q in {2, 3}.
  bool stub = false;

  [[nodiscard]] Parity parity() const;
};

/// Full block table, with derived rows computed by spin_presentation.
const Catalog& standard_catalog();

/// The recipe for (type, rank, q). Throws AdmissibilityError for excluded
/// combinations and CatalogMiss for finite types without a block.
AssemblyPlan plan_for(TypeLabel label, int rank, std::int64_t q);

/// Sum the plan over the catalog. Throws CatalogMiss naming the failing step.
PresentationBudget execute_budget(const AssemblyPlan& plan, const Catalog& catalog);

/// Materialize the plan from attached relator data for the plan's q. Throws
/// ExplicitUnavailable listing blocks without data.
Presentation execute_explicit(const AssemblyPlan& plan, const Catalog& catalog);

/// Budget of Spin(2n), Spin(2n+1) or Sp(2n) built from SL and Sp(4) blocks.
PresentationBudget spin_presentation(SpinKind kind, int n, Parity parity);

/// Group over F_q[t, 1/t] for a finite type: the affine budget with one
/// relation killing the center and two more for a 2-element generating set.
PresentationBudget loop_group_sizes(TypeLabel finite_label, int rank, std::int64_t q);

/// Profinite presentation of the group over F_q[[t]].
PresentationBudget profinite_sizes(TypeLabel finite_label, int rank, std::int64_t q);

/// Affine group itself on two generators (no center kill).
PresentationBudget two_generator_sizes(TypeLabel affine_label, int rank, std::int64_t q);

/// Affine type whose quotient by the center is the loop group of `finite_label`.
TypeLabel affine_of(TypeLabel finite_label);

} // namespace kmp
