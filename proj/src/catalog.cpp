#include "kmp/catalog.hpp"

#include "kmp/error.hpp"
#include "kmp/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace kmp {

std::string_view to_string(Family f)
{
  switch (f) {
  case Family::SL:
    return "SL";
  case Family::Sp:
    return "Sp";
  case Family::SpinOdd:
    return "SpinOdd";
  case Family::SpinEven:
    return "SpinEven";
  case Family::G2:
    return "G2";
  }
  return "?";
}

Family parse_family(std::string_view s)
{
  for (Family f : {Family::SL, Family::Sp, Family::SpinOdd, Family::SpinEven, Family::G2}) {
    if (s == to_string(f))
      return f;
  }
  throw RangeError("unknown block family '" + std::string(s) + "'");
}

std::string CatalogBlock::name() const
{
  std::string out = group + " (" + std::string(to_string(parity)) + " q)";
  if (!label.empty())
    out += " " + label;
  return out;
}

namespace {

struct CellSpec {
  int gens = 0;
  int rels = 0;
  std::string label;
  std::vector<Containment> contains;
  std::map<std::string, BlockPart> parts;
  std::optional<SpinKind> derive;
};

struct RowSpec {
  std::string group;
  std::vector<FamilyRange> covers;
  std::optional<CellSpec> odd;
  std::optional<CellSpec> even;
};

CellSpec given(int gens, int rels, std::string label, std::vector<Containment> contains = {})
{
  return {gens, rels, std::move(label), std::move(contains), {}, std::nullopt};
}

CellSpec derived(SpinKind kind, std::string label = {}, std::vector<Containment> contains = {})
{
  return {0, 0, std::move(label), std::move(contains), {}, kind};
}

Containment shown(std::string label, std::string qualifier = {}) { return {std::move(label), std::move(qualifier), true}; }
Containment hidden(std::string label) { return {std::move(label), {}, false}; }

std::vector<RowSpec> row_specs()
{
  using F = Family;
  const std::map<std::string, BlockPart> r3c{{"R3c", {0, 5}}};
  std::vector<RowSpec> rows = {
      {"SL2", {{F::SL, 2, 2}}, given(3, 9, "sigma_1"), given(3, 5, "rho_1")},
      {"SL3", {{F::SL, 3, 3}}, given(4, 14, "sigma_2", {shown("sigma_1")}), given(4, 10, "rho_2", {shown("rho_1")})},
      {"SL4", {{F::SL, 4, 4}}, given(5, 20, "sigma_3", {shown("sigma_1")}), given(5, 16, "rho_3", {shown("rho_1")})},
      {"SL4",
       {{F::SL, 4, 4}},
       given(6, 21, "sigma_4", {shown("sigma_1"), shown("sigma_2")}),
       given(6, 17, "rho_4", {shown("rho_1"), shown("rho_2")})},
      {"SLn 5<=n<=8", {{F::SL, 5, 8}}, given(5, 21, "sigma_5", {shown("sigma_1")}), given(5, 17, "rho_5", {shown("rho_1")})},
      {"SLn 5<=n<=8",
       {{F::SL, 5, 8}},
       given(6, 22, "sigma_6", {shown("sigma_1"), shown("sigma_2")}),
       given(6, 18, "rho_6", {shown("rho_1"), shown("rho_2")})},
      {"SLn n>=9", {{F::SL, 9, {}}}, given(6, 25, "sigma_7", {shown("sigma_1")}), given(6, 21, "rho_7", {shown("rho_1")})},
      {"SLn n>=9",
       {{F::SL, 9, {}}},
       given(7, 26, "sigma_8", {shown("sigma_1"), shown("sigma_2")}),
       given(7, 22, "rho_8", {shown("rho_1"), shown("rho_2")})},
      {"Sp4", {{F::Sp, 2, 2}}, given(5, 27, "sigma_9", {shown("sigma_1", "short")}), std::nullopt},
      {"Sp4",
       {{F::Sp, 2, 2}},
       given(6, 28, "sigma_10", {shown("sigma_1", "twice")}),
       given(6, 20, "rho_10", {shown("rho_1", "twice")})},
      {"Sp6 Spin7",
       {{F::Sp, 3, 3}, {F::SpinOdd, 3, 3}},
       derived(SpinKind::Symplectic, {}, {hidden("sigma_1")}),
       derived(SpinKind::Symplectic, {}, {hidden("rho_1")})},
      {"Sp8 Spin9",
       {{F::Sp, 4, 4}, {F::SpinOdd, 4, 4}},
       derived(SpinKind::Symplectic, {}, {hidden("sigma_1")}),
       derived(SpinKind::Symplectic, {}, {hidden("rho_1")})},
      {"Sp2n 5<=n<=8",
       {{F::Sp, 5, 8}},
       derived(SpinKind::Symplectic, {}, {hidden("sigma_1")}),
       derived(SpinKind::Symplectic, {}, {hidden("rho_1")})},
      {"Spin2n+1 5<=n<=8", {{F::SpinOdd, 5, 8}}, derived(SpinKind::OddDim, {}, {hidden("sigma_1")}), std::nullopt},
      {"Sp2n n>=9",
       {{F::Sp, 9, {}}},
       derived(SpinKind::Symplectic, "sigma_11", {hidden("sigma_1")}),
       derived(SpinKind::Symplectic, "rho_11", {hidden("rho_1")})},
      {"Spin2n+1 n>=9", {{F::SpinOdd, 9, {}}}, derived(SpinKind::OddDim, "sigma_12", {hidden("sigma_1")}), std::nullopt},
      {"Spin8",
       {{F::SpinEven, 4, 4}},
       derived(SpinKind::Even, {}, {hidden("sigma_1")}),
       derived(SpinKind::Even, {}, {hidden("rho_1")})},
      {"Spin2n 5<=n<=8",
       {{F::SpinEven, 5, 8}},
       derived(SpinKind::Even, {}, {hidden("sigma_1")}),
       derived(SpinKind::Even, {}, {hidden("rho_1")})},
      {"Spin2n n>=9",
       {{F::SpinEven, 9, {}}},
       derived(SpinKind::Even, "sigma_13", {shown("sigma_1")}),
       derived(SpinKind::Even, "rho_13", {shown("rho_1")})},
      {"G2", {{F::G2, 2, 2}}, given(6, 31, "sigma_14", {shown("sigma_1", "twice")}),
       given(6, 23, "rho_14", {shown("rho_1", "twice")})},
  };
  rows[1].odd->parts = r3c;
  rows[1].even->parts = r3c;
  return rows;
}

std::string contains_text(const CatalogBlock& b)
{
  std::string out;
  for (const Containment& c : b.contains) {
    if (!c.shown)
      continue;
    if (!out.empty())
      out += ';';
    out += c.label;
    if (!c.qualifier.empty())
      out += " (" + c.qualifier + ")";
  }
  return out;
}

} // namespace

Catalog make_catalog(const DeriveSizes& derive)
{
  std::vector<CatalogBlock> blocks;
  const std::vector<RowSpec> rows = row_specs();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (Parity p : {Parity::Odd, Parity::Even}) {
      const auto& cell = p == Parity::Odd ? rows[r].odd : rows[r].even;
      if (!cell)
        continue;
      CatalogBlock b;
      b.row = r;
      b.group = rows[r].group;
      b.covers = rows[r].covers;
      b.parity = p;
      b.label = cell->label;
      b.contains = cell->contains;
      b.parts = cell->parts;
      if (cell->derive) {
        std::tie(b.gen_count, b.rel_count) = derive(*cell->derive, rows[r].covers.front().min_n, p);
        b.derived = true;
      } else {
        b.gen_count = cell->gens;
        b.rel_count = cell->rels;
      }
      blocks.push_back(std::move(b));
    }
  }
  return Catalog(std::move(blocks));
}

Catalog::Catalog(std::vector<CatalogBlock> blocks) : blocks_(std::move(blocks))
{
  std::set<std::string> labels;
  for (const CatalogBlock& b : blocks_) {
    if (b.gen_count <= 0 || b.rel_count < 0)
      throw PresentationError("catalog row " + b.group + " has invalid sizes");
    if (!b.label.empty() && !labels.insert(b.label).second)
      throw PresentationError("catalog label " + b.label + " used twice");
  }
  // A block may only contain labels of its own parity, and the graph must be acyclic.
  std::map<std::string, int> state; // 1 = on stack, 2 = done
  std::function<void(const CatalogBlock&)> visit = [&](const CatalogBlock& b) {
    if (!b.label.empty())
      state[b.label] = 1;
    for (const Containment& c : b.contains) {
      const CatalogBlock* inner = find_label(c.label);
      if (!inner)
        throw PresentationError("catalog row " + b.group + " contains unknown " + c.label);
      if (inner->parity != b.parity)
        throw PresentationError("catalog row " + b.group + " mixes parities");
      if (state[c.label] == 1)
        throw PresentationError("containment cycle through " + c.label);
      if (state[c.label] == 0)
        visit(*inner);
    }
    if (!b.label.empty())
      state[b.label] = 2;
  };
  for (const CatalogBlock& b : blocks_)
    visit(b);
}

std::size_t Catalog::row_count() const { return blocks_.empty() ? 0 : blocks_.back().row + 1; }

const CatalogBlock& Catalog::lookup(Family f, int n, Parity p, std::optional<int> variant) const
{
  auto covered = [&](const CatalogBlock& b) {
    return std::any_of(b.covers.begin(), b.covers.end(), [&](const FamilyRange& r) { return r.covers(f, n); });
  };
  std::vector<std::size_t> rows;
  for (const CatalogBlock& b : blocks_) {
    if (covered(b) && (rows.empty() || rows.back() != b.row))
      rows.push_back(b.row);
  }
  auto cell = [&](std::size_t row) -> const CatalogBlock* {
    for (const CatalogBlock& b : blocks_) {
      if (b.row == row && b.parity == p)
        return &b;
    }
    return nullptr;
  };
  const std::string what = std::string(to_string(f)) + " n=" + std::to_string(n) + " (" +
                           std::string(to_string(p)) + " q" +
                           (variant ? ", variant " + std::to_string(*variant) : std::string()) + ")";
  if (variant) {
    if (*variant < 0 || static_cast<std::size_t>(*variant) >= rows.size())
      throw CatalogMiss("no catalog row for " + what);
    if (const CatalogBlock* b = cell(rows[static_cast<std::size_t>(*variant)]))
      return *b;
    throw CatalogMiss("catalog cell is blank for " + what);
  }
  for (std::size_t row : rows) {
    if (const CatalogBlock* b = cell(row))
      return *b;
  }
  throw CatalogMiss(rows.empty() ? "no catalog row for " + what : "catalog cell is blank for " + what);
}

const CatalogBlock* Catalog::find_label(std::string_view label) const
{
  for (const CatalogBlock& b : blocks_) {
    if (!b.label.empty() && b.label == label)
      return &b;
  }
  return nullptr;
}

const CatalogBlock& Catalog::by_label(std::string_view label) const
{
  if (const CatalogBlock* b = find_label(label))
    return *b;
  throw CatalogMiss("no catalog block labelled " + std::string(label));
}

std::vector<const CatalogBlock*> Catalog::containment_chain(const CatalogBlock& b) const
{
  std::vector<const CatalogBlock*> out;
  std::function<void(const CatalogBlock&)> walk = [&](const CatalogBlock& outer) {
    for (const Containment& c : outer.contains) {
      const CatalogBlock& inner = by_label(c.label);
      if (std::find(out.begin(), out.end(), &inner) != out.end())
        continue;
      out.push_back(&inner);
      walk(inner);
    }
  };
  walk(b);
  return out;
}

bool Catalog::contains(const CatalogBlock& outer, std::string_view label) const
{
  const auto chain = containment_chain(outer);
  return std::any_of(chain.begin(), chain.end(), [&](const CatalogBlock* b) { return b->label == label; });
}

std::string Catalog::dump() const
{
  std::ostringstream out;
  out << "group,odd_gens,odd_rels,odd_label,odd_contains,even_gens,even_rels,even_label,even_contains\n";
  for (std::size_t r = 0; r < row_count(); ++r) {
    std::string group;
    std::string cells[2] = {",,,", ",,,"};
    for (const CatalogBlock& b : blocks_) {
      if (b.row != r)
        continue;
      group = b.group;
      cells[b.parity == Parity::Odd ? 0 : 1] = std::to_string(b.gen_count) + ',' + std::to_string(b.rel_count) + ',' +
                                               b.label + ',' + contains_text(b);
    }
    out << group << ',' << cells[0] << ',' << cells[1] << '\n';
  }
  return out.str();
}

Catalog Catalog::with_data(std::size_t row, Parity p, BlockData data) const
{
  std::vector<CatalogBlock> blocks = blocks_;
  for (CatalogBlock& b : blocks) {
    if (b.row != row || b.parity != p)
      continue;
    const auto gens = static_cast<int>(data.presentation.generator_count());
    const auto rels = static_cast<int>(data.presentation.relator_count());
    if (gens != b.gen_count || rels != b.rel_count)
      throw SizeMismatch("relator data for " + b.name() + " has (" + std::to_string(gens) + ", " +
                         std::to_string(rels) + ") but the catalog row has (" + std::to_string(b.gen_count) + ", " +
                         std::to_string(b.rel_count) + ")");
    if (make_field(data.q).parity() != p)
      throw RangeError("relator data for " + b.name() + " uses q=" + std::to_string(data.q) + " of the wrong parity");
    for (const SubblockDecl& s : data.subblocks) {
      const CatalogBlock* inner = find_label(s.label);
      if (!inner || !contains(b, s.label))
        throw PresentationError("relator data for " + b.name() + " declares " + s.label + ", which it does not contain");
      for (const auto& [name, word] : s.generators) {
        for (const Letter& l : word) {
          if (!data.presentation.has_generator(l.gen))
            throw PresentationError("sub-block " + s.label + " uses unknown generator '" + l.gen + "'");
        }
      }
      for (std::size_t idx : s.relators) {
        if (idx >= data.presentation.relator_count())
          throw PresentationError("sub-block " + s.label + " names relator " + std::to_string(idx) + " out of range");
      }
    }
    if (data.pair) {
      for (const Word* w : {&data.pair->first, &data.pair->second}) {
        for (const Letter& l : *w) {
          if (!data.presentation.has_generator(l.gen))
            throw PresentationError("pair uses unknown generator '" + l.gen + "'");
        }
      }
    }
    b.data[data.q] = std::move(data);
    return Catalog(std::move(blocks));
  }
  throw CatalogMiss("no catalog cell at row " + std::to_string(row) + " for " + std::string(to_string(p)) + " q");
}

CatalogBlock lookup_block(const Catalog& c, Family f, int n, Parity p, std::optional<int> variant)
{
  return c.lookup(f, n, p, variant);
}

std::vector<CatalogBlock> containment_chain(const Catalog& c, const CatalogBlock& b)
{
  std::vector<CatalogBlock> out;
  for (const CatalogBlock* inner : c.containment_chain(b))
    out.push_back(*inner);
  return out;
}

Catalog load_explicit_relators_text(const Catalog& c, const std::string& json_text)
{
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw PresentationError(std::string("relator file is not valid JSON: ") + e.what());
  }
  try {
    const auto& head = j.at("block");
    const Family f = parse_family(head.at("family").get<std::string>());
    const int n = head.at("n").get<int>();
    const Parity p = parse_parity(head.at("parity").get<std::string>());
    const std::string label = head.value("label", std::string());
    const std::optional<int> variant =
        head.contains("variant") ? std::optional<int>(head.at("variant").get<int>()) : std::nullopt;

    const CatalogBlock* target = nullptr;
    if (!label.empty()) {
      target = &c.by_label(label);
      if (target->parity != p ||
          std::none_of(target->covers.begin(), target->covers.end(),
                       [&](const FamilyRange& r) { return r.covers(f, n); }))
        throw CatalogMiss("header names " + label + " but that block does not cover " + std::string(to_string(f)) +
                          " n=" + std::to_string(n) + " for " + std::string(to_string(p)) + " q");
    } else {
      target = &c.lookup(f, n, p, variant);
    }

    BlockData data;
    data.q = head.at("q").get<std::int64_t>();
    data.presentation = presentation_from_json(j);
    if (j.contains("pair")) {
      const auto& pair = j.at("pair");
      if (!pair.is_array() || pair.size() != 2)
        throw PresentationError("'pair' must hold two words");
      data.pair = std::make_pair(word_from_json(pair[0]), word_from_json(pair[1]));
    }
    for (const auto& s : j.value("subblocks", nlohmann::json::array())) {
      SubblockDecl decl;
      decl.label = s.at("label").get<std::string>();
      for (const auto& [name, word] : s.at("generators").items())
        decl.generators.emplace_back(name, word_from_json(word));
      decl.relators = s.at("relators").get<std::vector<std::size_t>>();
      data.subblocks.push_back(std::move(decl));
    }
    return c.with_data(target->row, p, std::move(data));
  } catch (const nlohmann::json::exception& e) {
    throw PresentationError(std::string("malformed relator file: ") + e.what());
  }
}

Catalog load_explicit_relators(const Catalog& c, const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw PresentationError("cannot open relator file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return load_explicit_relators_text(c, text.str());
}

} // namespace kmp
