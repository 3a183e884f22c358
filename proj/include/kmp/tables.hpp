#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace kmp {

enum class Format { Text, Csv, Json };

Format parse_format(std::string_view s);

/// A recomputed table: caption, column names and string cells.
struct Table {
  int number = 0;
  std::string caption;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// 1: affine groups, 2: loop groups on 2 generators, 3: finite blocks,
/// 4: torus corrections, 5: classical loop groups.
Table compute_table(int which);

std::string render(const Table& t, Format f);

/// One cell where the computed value differs from the printed one.
struct AuditFinding {
  int table = 0;
  std::string row;
  std::string column;
  std::string computed;
  std::string printed;

  /// "AUDIT_MISMATCH(computed 8, paper 9) table 5 row SO7 column gens_odd"
  [[nodiscard]] std::string line() const;
};

/// Compare a computed table against the printed fixture.
std::vector<AuditFinding> audit_table(int which);
/// Intermediate and final counts quoted alongside each recipe.
std::vector<AuditFinding> audit_recipe_arithmetic();
std::vector<AuditFinding> audit_all();

/// Printed block table in the catalog dump format.
const std::string& printed_catalog_dump();

} // namespace kmp
