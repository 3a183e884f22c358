#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kmp {

/// One letter of a free-group word: generator name and exponent +1 or -1.
struct Letter {
  std::string gen;
  int exp = 1;
  friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

Word free_reduce(const Word& w);
Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
Word power(const Word& w, int k);
/// Replace every occurrence of `gen` by `image` (inverted for gen^-1), then reduce.
Word substitute(const Word& w, const std::string& gen, const Word& image);
bool mentions(const Word& w, const std::string& gen);
std::string to_string(const Word& w);

enum class MoveKind { AddGenerator, RemoveGenerator, AddRelator, RemoveRelator, SubstituteAll };

std::string_view to_string(MoveKind k);

/// A recorded Tietze transformation. Fields used per kind:
///   AddGenerator     generator, word (its definition)
///   RemoveGenerator  generator, index (defining relator)
///   AddRelator       word
///   RemoveRelator    index
///   SubstituteAll    generator, word (replacement)
struct TietzeMove {
  MoveKind kind;
  std::string generator;
  Word word;
  std::size_t index = 0;
  friend bool operator==(const TietzeMove&, const TietzeMove&) = default;
};

class Presentation {
public:
  Presentation() = default;
  /// Validates that relators only mention listed generators and names are unique.
  Presentation(std::vector<std::string> generators, std::vector<Word> relators);

  [[nodiscard]] const std::vector<std::string>& generators() const { return generators_; }
  [[nodiscard]] const std::vector<Word>& relators() const { return relators_; }
  [[nodiscard]] const std::vector<TietzeMove>& trace() const { return trace_; }
  [[nodiscard]] std::size_t generator_count() const { return generators_.size(); }
  [[nodiscard]] std::size_t relator_count() const { return relators_.size(); }
  [[nodiscard]] bool has_generator(const std::string& g) const;

  /// Same generators and relators; traces are not compared.
  [[nodiscard]] bool same_content(const Presentation& other) const;

  /// Drop the audit trail, making this the starting point of a new one.
  [[nodiscard]] Presentation without_trace() const;

  friend bool operator==(const Presentation&, const Presentation&) = default;

private:
  friend Presentation apply_move(const Presentation&, const TietzeMove&);

  std::vector<std::string> generators_;
  std::vector<Word> relators_;
  std::vector<TietzeMove> trace_;
};

/// Apply one recorded move (with the same checks as the named operations).
Presentation apply_move(const Presentation& p, const TietzeMove& move);
Presentation replay(const Presentation& initial, const std::vector<TietzeMove>& moves);

Presentation tietze_add_generator(const Presentation& p, const std::string& name, const Word& definition);
Presentation tietze_remove_generator(const Presentation& p, const std::string& gen, std::size_t relator_index);
/// Add a relator the caller asserts is a consequence of the existing ones.
Presentation tietze_add_relator(const Presentation& p, const Word& relator);
/// Remove a relator the caller asserts is redundant.
Presentation tietze_remove_relator(const Presentation& p, std::size_t relator_index);
/// Rewrite every relator by gen -> replacement and append gen * replacement^-1;
/// the caller asserts gen = replacement holds.
Presentation tietze_substitute_all(const Presentation& p, const std::string& gen, const Word& replacement);

struct NewGenerator {
  std::string name;
  Word expression; // in the old generators
};

/// Change to the generating set `new_gens`. `matching` sends a new generator
/// to the old one it equals. Every unmatched old generator needs an entry in
/// `old_in_new` expressing it in the new generators. The result has
/// |new_gens| + |R| - |matching| relators.
Presentation reduce_to_generating_set(const Presentation& p, const std::vector<NewGenerator>& new_gens,
                                      const std::map<std::string, std::string>& matching,
                                      const std::map<std::string, Word>& old_in_new);

/// Combine two presentations. Each entry of `identify` maps a generator of
/// p2 to a word over the combined alphabet; single-generator images unify
/// the two generators, longer images keep the generator and add b = w.
/// Relators identical after reduction to an earlier one are dropped.
Presentation merge_presentations(const Presentation& p1, const Presentation& p2,
                                 const std::map<std::string, Word>& identify);

/// Rename generators (all relators rewritten); names must stay unique.
Presentation rename_generators(const Presentation& p, const std::map<std::string, std::string>& names);

/// Parse compact text such as "a b^-1 (a b)^3" into a word.
Word parse_word(const std::string& text);

} // namespace kmp
