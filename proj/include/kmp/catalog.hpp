#pragma once

#include "kmp/field.hpp"
#include "kmp/presentation.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kmp {

/// Block families. SL and Sp are indexed by n in SL(n) and Sp(2n); the two
/// Spin families by n in Spin(2n+1) and Spin(2n).
enum class Family { SL, Sp, SpinOdd, SpinEven, G2 };

std::string_view to_string(Family f);
Family parse_family(std::string_view s);

struct FamilyRange {
  Family family;
  int min_n;
  std::optional<int> max_n;
  [[nodiscard]] bool covers(Family f, int n) const
  {
    return f == family && n >= min_n && (!max_n || n <= *max_n);
  }
};

/// One entry of a block's contains column. Hidden entries are used by the
/// recipes but are not part of the printed table.
struct Containment {
  std::string label;
  std::string qualifier; // "", "short" or "twice"
  bool shown = true;
};

/// A named part of a block, e.g. the relations involving one generator.
struct BlockPart {
  int gens = 0;
  int rels = 0;
};

/// A sub-block living inside an explicit block: its generators as words in
/// the block's generators and the indices of the block relators it accounts for.
struct SubblockDecl {
  std::string label;
  std::vector<std::pair<std::string, Word>> generators;
  std::vector<std::size_t> relators;
};

/// Explicit relator data for one (block, q).
struct BlockData {
  std::int64_t q = 0;
  Presentation presentation;
  std::vector<SubblockDecl> subblocks;
  /// Two elements used when the recipe adds bridge or identification relators.
  std::optional<std::pair<Word, Word>> pair;
};

/// One parity cell of a catalog row.
struct CatalogBlock {
  std::size_t row = 0;
  std::string group;
  std::vector<FamilyRange> covers;
  Parity parity = Parity::Odd;
  std::string label; // "sigma_3", "rho_10" or empty
  int gen_count = 0;
  int rel_count = 0;
  std::vector<Containment> contains;
  std::map<std::string, BlockPart> parts;
  bool derived = false; // sizes computed by a recipe rather than given
  std::map<std::int64_t, BlockData> data;

  [[nodiscard]] std::string name() const;
};

enum class SpinKind { Even, OddDim, Symplectic };

/// Computes the sizes of a derived row from its kind, n and parity.
using DeriveSizes = std::function<std::pair<int, int>(SpinKind, int, Parity)>;

class Catalog {
public:
  /// Validates sizes, labels and acyclicity of the containment graph.
  explicit Catalog(std::vector<CatalogBlock> blocks);

  [[nodiscard]] const std::vector<CatalogBlock>& blocks() const { return blocks_; }
  [[nodiscard]] std::size_t row_count() const;

  /// Row cell for (family, n, parity). Without a variant the first covering
  /// row with a cell of that parity is used; variant k selects the k-th
  /// covering row. Throws CatalogMiss.
  [[nodiscard]] const CatalogBlock& lookup(Family f, int n, Parity p, std::optional<int> variant = {}) const;
  [[nodiscard]] const CatalogBlock& by_label(std::string_view label) const;
  [[nodiscard]] const CatalogBlock* find_label(std::string_view label) const;

  /// Transitive closure of the contains column, in first-visit order.
  [[nodiscard]] std::vector<const CatalogBlock*> containment_chain(const CatalogBlock& b) const;
  [[nodiscard]] bool contains(const CatalogBlock& outer, std::string_view label) const;

  /// CSV view: group,odd_gens,odd_rels,odd_label,odd_contains,even_...
  [[nodiscard]] std::string dump() const;

  /// Copy with the given relator data attached; sizes must match the cell.
  [[nodiscard]] Catalog with_data(std::size_t row, Parity p, BlockData data) const;

private:
  std::vector<CatalogBlock> blocks_;
};

/// Table of block rows; derived cells are filled by `derive`.
Catalog make_catalog(const DeriveSizes& derive);

CatalogBlock lookup_block(const Catalog& c, Family f, int n, Parity p, std::optional<int> variant = {});
std::vector<CatalogBlock> containment_chain(const Catalog& c, const CatalogBlock& b);

/// Parse a relator file (presentation JSON plus a "block" header) and attach it.
Catalog load_explicit_relators(const Catalog& c, const std::filesystem::path& path);
Catalog load_explicit_relators_text(const Catalog& c, const std::string& json_text);

} // namespace kmp
