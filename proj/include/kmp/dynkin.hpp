#pragma once

#include "kmp/field.hpp"
#include "kmp/matrix.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kmp {

/// Finite and affine (untwisted and twisted) Dynkin types.
enum class TypeLabel {
  A, B, C, D, E6, E7, E8, F4, G2,
  AffA, AffB, AffBt, AffC, AffCt, AffCp, AffD,
  AffE6, AffE7, AffE8, AffF4, AffF4t, AffG2, AffG2t,
};

bool is_affine(TypeLabel t);

/// Display name such as "A", "E6", "~A", "~Bt", "~Cp".
std::string_view type_name(TypeLabel t);

/// Short code used on the command line: "A", "Bt", "Cp", "E6", ... An
/// unadorned code names the affine family; prefixing "fin:" names the finite one.
std::string_view type_code(TypeLabel t);
TypeLabel parse_type_code(std::string_view code);

/// Inclusive rank range accepted by build_diagram; max_rank empty = unbounded.
struct RankRange {
  int min_rank;
  std::optional<int> max_rank;
  [[nodiscard]] bool contains(int r) const { return r >= min_rank && (!max_rank || r <= *max_rank); }
};
RankRange valid_ranks(TypeLabel t);

struct TypeRank {
  TypeLabel label;
  int rank;
  friend bool operator==(const TypeRank&, const TypeRank&) = default;
};

std::string to_string(const TypeRank& tr);

/// A bond between two nodes. For multiplicity 2 or 3 bonds, `arrow` is true
/// and the arrow points from `from` (long root) to `to` (short root).
struct Bond {
  int from;
  int to;
  int multiplicity;
  bool arrow;
};

class DynkinDiagram {
public:
  DynkinDiagram(std::vector<std::string> nodes, std::vector<Bond> bonds);

  [[nodiscard]] const std::vector<std::string>& nodes() const { return nodes_; }
  [[nodiscard]] const std::vector<Bond>& bonds() const { return bonds_; }
  [[nodiscard]] std::size_t size() const { return nodes_.size(); }
  [[nodiscard]] int index_of(std::string_view node) const;

  /// Classified components; one entry for a connected diagram.
  [[nodiscard]] const std::vector<TypeRank>& components() const { return components_; }
  [[nodiscard]] bool connected() const { return components_.size() == 1; }
  /// Label of a connected diagram; throws for disconnected ones.
  [[nodiscard]] TypeRank type() const;

  /// Set when the diagram is one of the tabulated rank-2 affine C-family cases.
  [[nodiscard]] bool rank_two_affine() const;

private:
  std::vector<std::string> nodes_;
  std::vector<Bond> bonds_;
  std::vector<TypeRank> components_;
};

DynkinDiagram build_diagram(TypeLabel label, int rank);

/// Generalized Cartan matrix: A(i,i) = 2; for a bond long -> short of
/// multiplicity m, A(long, short) = -1 and A(short, long) = -m.
IntMatrix cartan_matrix(const DynkinDiagram& d);

/// Induced subdiagram on the named nodes.
DynkinDiagram subdiagram(const DynkinDiagram& d, const std::vector<std::string>& nodes);

/// Components of a diagram as (label, rank), ordered by decreasing rank, then label.
std::vector<TypeRank> classify(const std::vector<std::string>& nodes, const std::vector<Bond>& bonds);
std::vector<TypeRank> classify(const DynkinDiagram& d);

enum class Admissibility { Admissible, SpecialA2Small, Excluded };

struct AdmissibilityVerdict {
  Admissibility kind;
  std::string reason;
};

AdmissibilityVerdict check_admissibility(TypeLabel label, int rank, std::int64_t q);

/// One line per node: `name: neighbor(mult,arrow) ...`, arrow one of '>', '<', '-'.
std::string dump_text(const DynkinDiagram& d);

} // namespace kmp
