#include "kmp/presentation.hpp"

#include "kmp/error.hpp"
#include "kmp/json_io.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace kmp {

Word free_reduce(const Word& w)
{
  Word out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word inverse(const Word& w)
{
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    out.push_back({it->gen, -it->exp});
  return out;
}

Word concat(const Word& a, const Word& b)
{
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word power(const Word& w, int k)
{
  const Word base = k < 0 ? inverse(w) : w;
  Word out;
  for (int i = 0; i < std::abs(k); ++i)
    out.insert(out.end(), base.begin(), base.end());
  return out;
}

Word substitute(const Word& w, const std::string& gen, const Word& image)
{
  const Word image_inv = inverse(image);
  Word out;
  for (const Letter& l : w) {
    if (l.gen != gen)
      out.push_back(l);
    else {
      const Word& piece = l.exp > 0 ? image : image_inv;
      out.insert(out.end(), piece.begin(), piece.end());
    }
  }
  return free_reduce(out);
}

bool mentions(const Word& w, const std::string& gen)
{
  return std::any_of(w.begin(), w.end(), [&](const Letter& l) { return l.gen == gen; });
}

std::string to_string(const Word& w)
{
  if (w.empty())
    return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i])
      ++j;
    if (!out.empty())
      out += ' ';
    out += w[i].gen;
    const long run = static_cast<long>(j - i) * w[i].exp;
    if (run != 1)
      out += '^' + std::to_string(run);
    i = j;
  }
  return out;
}

std::string_view to_string(MoveKind k)
{
  switch (k) {
  case MoveKind::AddGenerator:
    return "AddGenerator";
  case MoveKind::RemoveGenerator:
    return "RemoveGenerator";
  case MoveKind::AddRelator:
    return "AddRelator";
  case MoveKind::RemoveRelator:
    return "RemoveRelator";
  case MoveKind::SubstituteAll:
    return "SubstituteAll";
  }
  return "?";
}

namespace {

void check_word(const Word& w, const std::set<std::string>& alphabet, const std::string& what)
{
  for (const Letter& l : w) {
    if (l.exp != 1 && l.exp != -1)
      throw PresentationError(what + ": exponent must be +1 or -1");
    if (!alphabet.count(l.gen))
      throw PresentationError(what + ": unknown generator '" + l.gen + "'");
  }
}

std::set<std::string> alphabet_of(const std::vector<std::string>& gens) { return {gens.begin(), gens.end()}; }

} // namespace

Presentation::Presentation(std::vector<std::string> generators, std::vector<Word> relators)
    : generators_(std::move(generators)), relators_(std::move(relators))
{
  const std::set<std::string> alphabet = alphabet_of(generators_);
  if (alphabet.size() != generators_.size())
    throw PresentationError("duplicate generator name");
  for (const std::string& g : generators_) {
    if (g.empty())
      throw PresentationError("empty generator name");
  }
  for (const Word& r : relators_)
    check_word(r, alphabet, "relator");
}

bool Presentation::has_generator(const std::string& g) const
{
  return std::find(generators_.begin(), generators_.end(), g) != generators_.end();
}

bool Presentation::same_content(const Presentation& other) const
{
  return generators_ == other.generators_ && relators_ == other.relators_;
}

Presentation Presentation::without_trace() const { return Presentation(generators_, relators_); }

Presentation apply_move(const Presentation& p, const TietzeMove& move)
{
  Presentation out = p;
  const std::set<std::string> alphabet = alphabet_of(p.generators_);
  switch (move.kind) {
  case MoveKind::AddGenerator: {
    if (alphabet.count(move.generator))
      throw PresentationError("generator '" + move.generator + "' already exists");
    if (move.generator.empty())
      throw PresentationError("empty generator name");
    check_word(move.word, alphabet, "definition");
    out.generators_.push_back(move.generator);
    out.relators_.push_back(concat({{move.generator, 1}}, inverse(move.word)));
    break;
  }
  case MoveKind::RemoveGenerator: {
    if (!alphabet.count(move.generator))
      throw PresentationError("unknown generator '" + move.generator + "'");
    if (move.index >= p.relators_.size())
      throw PresentationError("relator index out of range");
    const Word& r = p.relators_[move.index];
    const auto hits = std::count_if(r.begin(), r.end(), [&](const Letter& l) { return l.gen == move.generator; });
    Word image;
    bool ok = hits == 1;
    if (ok && r.front().gen == move.generator) {
      // g^e w = 1  =>  g = w^-e
      const Word rest(r.begin() + 1, r.end());
      image = r.front().exp > 0 ? inverse(rest) : rest;
    } else if (ok && r.back().gen == move.generator) {
      // w g^e = 1  =>  g = w^-e
      const Word rest(r.begin(), r.end() - 1);
      image = r.back().exp < 0 ? rest : inverse(rest);
    } else {
      ok = false;
    }
    if (!ok)
      throw PresentationError("relator " + std::to_string(move.index) + " is not of the form " + move.generator +
                              " w^-1 or w " + move.generator + "^-1 with w free of " + move.generator);
    out.relators_.erase(out.relators_.begin() + static_cast<std::ptrdiff_t>(move.index));
    for (Word& other : out.relators_)
      other = substitute(other, move.generator, image);
    out.generators_.erase(std::find(out.generators_.begin(), out.generators_.end(), move.generator));
    break;
  }
  case MoveKind::AddRelator:
    check_word(move.word, alphabet, "relator");
    out.relators_.push_back(move.word);
    break;
  case MoveKind::RemoveRelator:
    if (move.index >= p.relators_.size())
      throw PresentationError("relator index out of range");
    out.relators_.erase(out.relators_.begin() + static_cast<std::ptrdiff_t>(move.index));
    break;
  case MoveKind::SubstituteAll:
    if (!alphabet.count(move.generator))
      throw PresentationError("unknown generator '" + move.generator + "'");
    check_word(move.word, alphabet, "replacement");
    if (mentions(move.word, move.generator))
      throw PresentationError("replacement for '" + move.generator + "' mentions it");
    for (Word& r : out.relators_)
      r = substitute(r, move.generator, move.word);
    out.relators_.push_back(free_reduce(concat({{move.generator, 1}}, inverse(move.word))));
    break;
  }
  out.trace_.push_back(move);
  return out;
}

Presentation replay(const Presentation& initial, const std::vector<TietzeMove>& moves)
{
  Presentation p = initial;
  for (const TietzeMove& m : moves)
    p = apply_move(p, m);
  return p;
}

Presentation tietze_add_generator(const Presentation& p, const std::string& name, const Word& definition)
{
  return apply_move(p, {MoveKind::AddGenerator, name, definition, 0});
}

Presentation tietze_remove_generator(const Presentation& p, const std::string& gen, std::size_t relator_index)
{
  return apply_move(p, {MoveKind::RemoveGenerator, gen, {}, relator_index});
}

Presentation tietze_add_relator(const Presentation& p, const Word& relator)
{
  return apply_move(p, {MoveKind::AddRelator, "", relator, 0});
}

Presentation tietze_remove_relator(const Presentation& p, std::size_t relator_index)
{
  return apply_move(p, {MoveKind::RemoveRelator, "", {}, relator_index});
}

Presentation tietze_substitute_all(const Presentation& p, const std::string& gen, const Word& replacement)
{
  return apply_move(p, {MoveKind::SubstituteAll, gen, replacement, 0});
}

Presentation reduce_to_generating_set(const Presentation& p, const std::vector<NewGenerator>& new_gens,
                                      const std::map<std::string, std::string>& matching,
                                      const std::map<std::string, Word>& old_in_new)
{
  const std::set<std::string> old_names = alphabet_of(p.generators());
  std::set<std::string> new_names;
  for (const NewGenerator& d : new_gens) {
    if (!new_names.insert(d.name).second)
      throw PresentationError("new generator '" + d.name + "' listed twice");
  }

  std::map<std::string, std::string> matched_old; // old -> new
  for (const auto& [d, x] : matching) {
    if (!new_names.count(d))
      throw PresentationError("matching names unknown new generator '" + d + "'");
    if (!old_names.count(x))
      throw PresentationError("matching names unknown generator '" + x + "'");
    if (!matched_old.emplace(x, d).second)
      throw PresentationError("generator '" + x + "' matched twice");
  }

  Presentation out = p;
  for (const NewGenerator& d : new_gens) {
    Word definition = d.expression;
    if (auto it = matching.find(d.name); it != matching.end()) {
      const Word image{{it->second, 1}};
      if (!definition.empty() && free_reduce(definition) != image)
        throw PresentationError("matched generator '" + d.name + "' must be defined as '" + it->second + "'");
      definition = image;
    }
    check_word(definition, old_names, "expression of '" + d.name + "'");
    out = tietze_add_generator(out, d.name, definition);
  }

  for (const std::string& x : p.generators()) {
    if (matched_old.count(x))
      continue;
    const auto it = old_in_new.find(x);
    if (it == old_in_new.end())
      throw PresentationError("no expression of '" + x + "' in the new generators");
    check_word(it->second, new_names, "expression of '" + x + "'");
    out = tietze_add_relator(out, concat({{x, 1}}, inverse(it->second)));
  }

  for (const std::string& x : p.generators()) {
    const auto m = matched_old.find(x);
    const Word defining = m != matched_old.end() ? Word{{m->second, 1}, {x, -1}}
                                                 : concat({{x, 1}}, inverse(old_in_new.at(x)));
    const auto& rels = out.relators();
    const auto pos = std::find(rels.begin(), rels.end(), defining);
    out = tietze_remove_generator(out, x, static_cast<std::size_t>(pos - rels.begin()));
  }
  return out;
}

Presentation merge_presentations(const Presentation& p1, const Presentation& p2,
                                 const std::map<std::string, Word>& identify)
{
  const std::set<std::string> names1 = alphabet_of(p1.generators());
  const std::set<std::string> names2 = alphabet_of(p2.generators());
  for (const auto& [b, w] : identify) {
    if (!names2.count(b))
      throw PresentationError("identification names unknown generator '" + b + "'");
  }
  for (const std::string& b : p2.generators()) {
    if (names1.count(b) && !identify.count(b))
      throw PresentationError("generator '" + b + "' occurs in both presentations without an identification");
  }

  auto unify_target = [&](const std::string& b) -> std::optional<std::string> {
    const auto it = identify.find(b);
    if (it == identify.end() || it->second.size() != 1 || it->second.front().exp != 1)
      return std::nullopt;
    return it->second.front().gen;
  };

  // Follow single-generator identifications to their final name.
  std::map<std::string, std::string> resolved;
  for (const std::string& b : p2.generators()) {
    std::string cur = b;
    std::set<std::string> seen{b};
    while (auto next = unify_target(cur)) {
      if (*next == cur || !seen.insert(*next).second)
        throw PresentationError("cyclic identification involving '" + b + "'");
      if (!names1.count(*next) && !names2.count(*next))
        throw PresentationError("identification target '" + *next + "' is not a generator");
      cur = *next;
      if (names1.count(cur) && !names2.count(cur))
        break;
    }
    resolved[b] = cur;
  }

  auto rewrite = [&](const Word& w) {
    Word out;
    for (const Letter& l : w) {
      const auto it = resolved.find(l.gen);
      out.push_back({it != resolved.end() ? it->second : l.gen, l.exp});
    }
    return out;
  };

  std::vector<std::string> gens = p1.generators();
  for (const std::string& b : p2.generators()) {
    if (resolved[b] == b && !names1.count(b))
      gens.push_back(b);
  }
  const std::set<std::string> alphabet = alphabet_of(gens);

  std::vector<Word> rels = p1.relators();
  auto word_less = [](const Word& a, const Word& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](const Letter& x, const Letter& y) {
      return x.gen != y.gen ? x.gen < y.gen : x.exp < y.exp;
    });
  };
  std::set<Word, decltype(word_less)> present(word_less);
  for (const Word& r : rels)
    present.insert(free_reduce(r));
  auto add = [&](const Word& r) {
    check_word(r, alphabet, "merged relator");
    if (present.insert(free_reduce(r)).second)
      rels.push_back(r);
  };
  for (const Word& r : p2.relators())
    add(rewrite(r));
  for (const std::string& b : p2.generators()) {
    const auto it = identify.find(b);
    if (it == identify.end() || unify_target(b))
      continue;
    add(free_reduce(concat({{rewrite({{b, 1}}).front().gen, 1}}, inverse(rewrite(it->second)))));
  }
  return Presentation(std::move(gens), std::move(rels));
}

Presentation rename_generators(const Presentation& p, const std::map<std::string, std::string>& names)
{
  auto name_of = [&](const std::string& g) {
    const auto it = names.find(g);
    return it == names.end() ? g : it->second;
  };
  std::vector<std::string> gens;
  for (const std::string& g : p.generators())
    gens.push_back(name_of(g));
  std::vector<Word> rels;
  for (const Word& r : p.relators()) {
    Word w;
    for (const Letter& l : r)
      w.push_back({name_of(l.gen), l.exp});
    rels.push_back(std::move(w));
  }
  return Presentation(std::move(gens), std::move(rels));
}

namespace {

class WordParser {
public:
  explicit WordParser(const std::string& text) : s_(text) {}

  Word parse()
  {
    Word w = sequence();
    skip();
    if (pos_ != s_.size())
      fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return w;
  }

private:
  [[noreturn]] void fail(const std::string& why) const
  {
    throw PresentationError("cannot parse word '" + s_ + "': " + why);
  }

  void skip()
  {
    while (pos_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '*'))
      ++pos_;
  }

  Word sequence()
  {
    Word w;
    for (;;) {
      skip();
      if (pos_ == s_.size() || s_[pos_] == ')')
        return w;
      Word atom = factor();
      w.insert(w.end(), atom.begin(), atom.end());
    }
  }

  Word factor()
  {
    Word base;
    if (s_[pos_] == '(') {
      ++pos_;
      base = sequence();
      if (pos_ == s_.size() || s_[pos_] != ')')
        fail("missing ')'");
      ++pos_;
    } else if (s_[pos_] == '1') {
      ++pos_;
    } else if (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                                  s_[pos_] == '.'))
        ++pos_;
      base.push_back({s_.substr(start, pos_ - start), 1});
    } else {
      fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    }
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      const std::size_t start = pos_;
      if (pos_ < s_.size() && s_[pos_] == '-')
        ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      if (pos_ == start || (pos_ == start + 1 && s_[start] == '-'))
        fail("missing exponent");
      return power(base, std::stoi(s_.substr(start, pos_ - start)));
    }
    return base;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

} // namespace

Word parse_word(const std::string& text) { return WordParser(text).parse(); }

nlohmann::json word_to_json(const Word& w)
{
  nlohmann::json j = nlohmann::json::array();
  for (const Letter& l : w)
    j.push_back(nlohmann::json::array({l.gen, l.exp}));
  return j;
}

Word word_from_json(const nlohmann::json& j)
{
  if (!j.is_array())
    throw PresentationError("word must be a list of [generator, exponent] pairs");
  Word w;
  for (const auto& letter : j) {
    if (!letter.is_array() || letter.size() != 2 || !letter[0].is_string() || !letter[1].is_number_integer())
      throw PresentationError("letter must be [generator, +1 or -1]");
    const int exp = letter[1].get<int>();
    if (exp != 1 && exp != -1)
      throw PresentationError("letter exponent must be +1 or -1");
    w.push_back({letter[0].get<std::string>(), exp});
  }
  return w;
}

nlohmann::json presentation_to_json(const Presentation& p)
{
  nlohmann::json rels = nlohmann::json::array();
  for (const Word& r : p.relators())
    rels.push_back(word_to_json(r));
  return {{"generators", p.generators()}, {"relators", rels}};
}

Presentation presentation_from_json(const nlohmann::json& j)
{
  if (!j.is_object() || !j.contains("generators") || !j.contains("relators"))
    throw PresentationError("presentation needs 'generators' and 'relators'");
  std::vector<std::string> gens;
  for (const auto& g : j.at("generators")) {
    if (!g.is_string())
      throw PresentationError("generator names must be strings");
    gens.push_back(g.get<std::string>());
  }
  std::vector<Word> rels;
  for (const auto& r : j.at("relators"))
    rels.push_back(word_from_json(r));
  return Presentation(std::move(gens), std::move(rels));
}

} // namespace kmp
