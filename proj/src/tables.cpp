#include "kmp/tables.hpp"

#include "kmp/assembly.hpp"
#include "kmp/error.hpp"
#include "kmp/rootdatum.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace kmp {

Format parse_format(std::string_view s)
{
  if (s == "text")
    return Format::Text;
  if (s == "csv")
    return Format::Csv;
  if (s == "json")
    return Format::Json;
  throw RangeError("format must be text, csv or json, got '" + std::string(s) + "'");
}

namespace {

using T = TypeLabel;

// Members of a table row: a type with an inclusive rank range. Open ranges
// are sampled over a fixed window above the lower bound.
struct Member {
  TypeLabel label;
  int lo;
  std::optional<int> hi;
};

constexpr int open_window = 8;

std::vector<int> ranks_of(const Member& m)
{
  std::vector<int> out;
  const int hi = m.hi.value_or(m.lo + open_window);
  for (int r = m.lo; r <= hi; ++r)
    out.push_back(r);
  return out;
}

Member only(TypeLabel l, int r) { return {l, r, r}; }

std::string same_or_varies(const std::set<std::string>& values)
{
  return values.size() == 1 ? *values.begin() : "varies";
}

// ---- table1: affine groups ---------------------------------------------

struct AffineRow {
  std::string name;
  std::vector<Member> members;
};

const std::vector<AffineRow>& affine_rows()
{
  static const std::vector<AffineRow> rows = {
      {"~A2", {only(T::AffA, 2)}},
      {"~A3", {only(T::AffA, 3)}},
      {"~An 4<=n<=7", {{T::AffA, 4, 7}}},
      {"~An n>=8", {{T::AffA, 8, {}}}},
      {"~D4", {only(T::AffD, 4)}},
      {"~D5", {only(T::AffD, 5)}},
      {"~Dn 6<=n<=8", {{T::AffD, 6, 8}}},
      {"~Dn n>=9", {{T::AffD, 9, {}}}},
      {"~E6", {only(T::AffE6, 6)}},
      {"~E7", {only(T::AffE7, 7)}},
      {"~E8", {only(T::AffE8, 8)}},
      {"~G2 ~G2t", {only(T::AffG2, 2), only(T::AffG2t, 2)}},
      {"~B3 ~B3t", {only(T::AffB, 3), only(T::AffBt, 3)}},
      {"~B4 ~B4t", {only(T::AffB, 4), only(T::AffBt, 4)}},
      {"~Bn ~Bnt 5<=n<=8", {{T::AffB, 5, 8}, {T::AffBt, 5, 8}}},
      {"~Bn ~Bnt n>=9", {{T::AffB, 9, {}}, {T::AffBt, 9, {}}}},
      {"~C2 ~C'2", {only(T::AffC, 2), only(T::AffCp, 2)}},
      {"~Ct2", {only(T::AffCt, 2)}},
      {"~C3 ~C'3", {only(T::AffC, 3), only(T::AffCp, 3)}},
      {"~Ct3", {only(T::AffCt, 3)}},
      {"~C4 ~C'4", {only(T::AffC, 4), only(T::AffCp, 4)}},
      {"~Ct4", {only(T::AffCt, 4)}},
      {"~Cn ~C'n 5<=n<=8", {{T::AffC, 5, 8}, {T::AffCp, 5, 8}}},
      {"~Ctn 5<=n<=8", {{T::AffCt, 5, 8}}},
      {"~Cn ~C'n n>=9", {{T::AffC, 9, {}}, {T::AffCp, 9, {}}}},
      {"~Ctn n>=9", {{T::AffCt, 9, {}}}},
      {"~F4 ~F4t", {only(T::AffF4, 4), only(T::AffF4t, 4)}},
  };
  return rows;
}

Table table1()
{
  Table t{1, "Generators and relations of affine groups over F_q", {"group", "gens_odd", "rels_odd", "gens_even", "rels_even"}, {}};
  for (const AffineRow& row : affine_rows()) {
    std::vector<std::string> cells{row.name};
    for (Parity p : {Parity::Odd, Parity::Even}) {
      std::set<std::string> gens;
      std::set<std::string> rels;
      for (const Member& m : row.members) {
        for (int r : ranks_of(m)) {
          const auto b = execute_budget(plan_for(m.label, r, representative_q(p)), standard_catalog());
          gens.insert(std::to_string(b.gens));
          rels.insert(std::to_string(b.rels));
        }
      }
      cells.push_back(same_or_varies(gens));
      cells.push_back(same_or_varies(rels));
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

// ---- table2: loop groups on two generators -----------------------------

struct LoopRow {
  std::string name;
  std::string family;
  Member member; // finite type
};

const std::vector<LoopRow>& loop_rows()
{
  static const std::vector<LoopRow> rows = {
      {"SL3", "A_n-1", only(T::A, 2)},
      {"SL4", "A_n-1", only(T::A, 3)},
      {"SLn 5<=n<=8", "A_n-1", {T::A, 4, 7}},
      {"SLn n>=9", "A_n-1", {T::A, 8, {}}},
      {"Spin8", "D_n", only(T::D, 4)},
      {"Spin10", "D_n", only(T::D, 5)},
      {"Spin2n 6<=n<=8", "D_n", {T::D, 6, 8}},
      {"Spin2n n>=9", "D_n", {T::D, 9, {}}},
      {"E6", "E_n", only(T::E6, 6)},
      {"E7", "E_n", only(T::E7, 7)},
      {"E8", "E_n", only(T::E8, 8)},
      {"Spin7", "B_n", only(T::B, 3)},
      {"Spin9", "B_n", only(T::B, 4)},
      {"Spin2n+1 5<=n<=8", "B_n", {T::B, 5, 8}},
      {"Spin2n+1 n>=9", "B_n", {T::B, 9, {}}},
      {"Sp4", "C_n", only(T::C, 2)},
      {"Sp6", "C_n", only(T::C, 3)},
      {"Sp8", "C_n", only(T::C, 4)},
      {"Sp2n 5<=n<=8", "C_n", {T::C, 5, 8}},
      {"Sp2n n>=9", "C_n", {T::C, 9, {}}},
      {"F4", "F_4", only(T::F4, 4)},
      {"G2", "G_2", only(T::G2, 2)},
  };
  return rows;
}

Table table2()
{
  Table t{2, "Relations of loop groups G(F_q[t,1/t]) on 2 generators", {"type", "group", "rels_odd", "rels_even"}, {}};
  for (const LoopRow& row : loop_rows()) {
    std::vector<std::string> cells{row.family, row.name};
    for (Parity p : {Parity::Odd, Parity::Even}) {
      std::set<std::string> rels;
      for (int r : ranks_of(row.member)) {
        const auto b = loop_group_sizes(row.member.label, r, representative_q(p));
        rels.insert(b.gens == 2 ? std::to_string(b.rels) : "gens " + std::to_string(b.gens));
      }
      cells.push_back(same_or_varies(rels));
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

// ---- table3: finite blocks ---------------------------------------------

std::vector<std::string> split(const std::string& line, char sep)
{
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep))
    out.push_back(cell);
  if (!line.empty() && line.back() == sep)
    out.emplace_back();
  return out;
}

Table table_from_dump(const std::string& dump)
{
  Table t{3, "Presentations of finite groups G(F_q)", {}, {}};
  std::istringstream in(dump);
  std::string line;
  while (std::getline(in, line)) {
    if (t.columns.empty())
      t.columns = split(line, ',');
    else
      t.rows.push_back(split(line, ','));
  }
  return t;
}

// ---- table4: torus corrections -----------------------------------------

struct TorusRow {
  std::string name;
  std::vector<Member> members;
  /// For rank-dependent rows: displayed notation and its value at a rank.
  std::optional<std::pair<std::string, std::function<std::vector<std::int64_t>(int)>>> symbolic;
};

const std::vector<TorusRow>& torus_rows()
{
  auto even_d = [](TypeLabel l) {
    std::vector<Member> out;
    for (int r = 4; r <= 12; r += 2)
      out.push_back(only(l, r));
    return out;
  };
  auto odd_d = [](TypeLabel l) {
    std::vector<Member> out;
    for (int r = 5; r <= 11; r += 2)
      out.push_back(only(l, r));
    return out;
  };
  static const std::vector<TorusRow> rows = {
      {"A_n", {{T::A, 1, 10}}, std::pair{std::string("(n+1)"), [](int r) { return std::vector<std::int64_t>{r + 1}; }}},
      {"B_n C_n E_7", {{T::B, 2, 10}, {T::C, 3, 10}, only(T::E7, 7)}, std::nullopt},
      {"D_2n", even_d(T::D), std::nullopt},
      {"D_2n+1", odd_d(T::D), std::nullopt},
      {"G_2 F_4 E_8", {only(T::G2, 2), only(T::F4, 4), only(T::E8, 8)}, std::nullopt},
      {"E_6", {only(T::E6, 6)}, std::nullopt},
      {"~A_n-1",
       {{T::AffA, 2, 10}},
       std::pair{std::string("(0,n)"), [](int r) { return std::vector<std::int64_t>{0, r + 1}; }}},
      {"~B_n ~C_n ~E_7 ~Bt_n ~Ct_n",
       {{T::AffB, 3, 10}, {T::AffC, 2, 10}, only(T::AffE7, 7), {T::AffBt, 3, 10}, {T::AffCt, 2, 10}},
       std::nullopt},
      {"~D_2n", even_d(T::AffD), std::nullopt},
      {"~D_2n+1", odd_d(T::AffD), std::nullopt},
      {"~G_2 ~F_4 ~E_8 ~C'_n ~Ft_4 ~Gt_2",
       {only(T::AffG2, 2), only(T::AffF4, 4), only(T::AffE8, 8), {T::AffCp, 2, 10}, only(T::AffF4t, 4),
        only(T::AffG2t, 2)},
       std::nullopt},
      {"~E_6", {only(T::AffE6, 6)}, std::nullopt},
  };
  return rows;
}

std::string notation_of(const std::vector<std::int64_t>& zeros_first)
{
  std::string out = "(";
  for (std::size_t i = 0; i < zeros_first.size(); ++i)
    out += (i ? "," : "") + std::to_string(zeros_first[i]);
  return out + ")";
}

bool is_prime_power_of(std::int64_t k, std::int64_t& prime)
{
  for (std::int64_t p = 2; p * p <= k; ++p) {
    if (k % p == 0) {
      while (k % p == 0)
        k /= p;
      prime = p;
      return k == 1;
    }
  }
  prime = k;
  return k > 1;
}

// "1+2A(2)" from "(0,2,2)": one per infinite factor, A(k) per finite factor
// k (written with the prime when k is a prime power).
std::string symbol_formula(const std::string& notation)
{
  const std::string inner = notation.substr(1, notation.size() - 2);
  int zeros = 0;
  std::vector<std::string> order;
  std::map<std::string, int> counts;
  for (const std::string& token : split(inner, ',')) {
    if (token.empty())
      continue;
    if (token == "0") {
      ++zeros;
      continue;
    }
    std::string key = token;
    if (std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      std::int64_t prime = 0;
      if (is_prime_power_of(std::stoll(token), prime))
        key = std::to_string(prime);
    }
    if (counts[key]++ == 0)
      order.push_back(key);
  }
  std::string out = zeros ? std::to_string(zeros) : "";
  for (const std::string& key : order)
    out += (out.empty() ? "" : "+") + (counts[key] > 1 ? std::to_string(counts[key]) : "") + "A(" + key + ")";
  return out.empty() ? "0" : out;
}

Table table4()
{
  Table t{4,
          "Extra generators and relations for adjoint quotients and adjoint groups",
          {"type", "P/Q", "d1=d2", "max_d1", "max_extra_rels"},
          {}};
  for (const TorusRow& row : torus_rows()) {
    std::set<std::string> notations;
    bool symbolic_ok = true;
    int max_d1 = 0;
    for (const Member& m : row.members) {
      for (int r : ranks_of(m)) {
        const FundamentalGroup g = fundamental_group(m.label, r);
        notations.insert(g.notation());
        if (row.symbolic)
          symbolic_ok = symbolic_ok && notation_of(row.symbolic->second(r)) == g.notation();
        max_d1 = std::max(max_d1, torus_counts(m.label, r, 2, true).d1);
      }
    }
    std::string pq = row.symbolic ? (symbolic_ok ? row.symbolic->first : "inconsistent") : same_or_varies(notations);
    t.rows.push_back({row.name, pq, symbol_formula(pq), std::to_string(max_d1), std::to_string(4 * max_d1)});
  }
  return t;
}

// ---- table5: classical loop groups -------------------------------------

struct ClassicalRow {
  std::string name;
  ClassicalGroup group;
  std::vector<int> ns;
};

std::vector<int> from(int lo, std::optional<int> hi)
{
  std::vector<int> out;
  for (int n = lo; n <= hi.value_or(lo + open_window); ++n)
    out.push_back(n);
  return out;
}

const std::vector<ClassicalRow>& classical_rows()
{
  using G = ClassicalGroup;
  static const std::vector<ClassicalRow> rows = {
      {"PSL3", G::PSL, {3}},
      {"PSLn 4<=n<=8", G::PSL, from(4, 8)},
      {"PSLn n>=9", G::PSL, from(9, {})},
      {"PGL3", G::PGL, {3}},
      {"PGLn 4<=n<=8", G::PGL, from(4, 8)},
      {"PGLn n>=9", G::PGL, from(9, {})},
      {"SO7", G::SOOdd, {3}},
      {"SO9", G::SOOdd, {4}},
      {"SO2n+1 5<=n<=8", G::SOOdd, from(5, 8)},
      {"SO2n+1 n>=9", G::SOOdd, from(9, {})},
      {"SO8 or SO2n 6<=n<=8", G::SOEven, {4, 6, 7, 8}},
      {"SO10", G::SOEven, {5}},
      {"SO2n n>=9", G::SOEven, from(9, {})},
  };
  return rows;
}

Table table5()
{
  Table t{5,
          "Generators and relations of classical loop groups G(F_q[t,1/t])",
          {"group", "gens_odd", "rels_odd", "gens_even", "rels_even"},
          {}};
  for (const ClassicalRow& row : classical_rows()) {
    std::vector<std::string> cells{row.name};
    for (Parity p : {Parity::Odd, Parity::Even}) {
      const PresentationBudget b = classical_group_sup(row.group, row.ns, p);
      cells.push_back(std::to_string(b.gens));
      cells.push_back(std::to_string(b.rels));
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

// ---- Printed values ---------------------------------------------------

using Fixture = std::vector<std::vector<std::string>>;

// Left half of the printed table has one generator column for both parities.
const Fixture& printed_table1()
{
  static const Fixture f = {
      {"5", "26", "5", "22"},  {"7", "34", "7", "30"},  {"7", "35", "7", "31"},  {"9", "43", "9", "39"},
      {"7", "38", "7", "34"},  {"7", "39", "7", "35"},  {"7", "38", "7", "34"},  {"8", "42", "8", "38"},
      {"7", "36", "7", "32"},  {"6", "30", "6", "26"},  {"7", "34", "7", "30"},  {"7", "40", "7", "32"},
      {"7", "42", "8", "35"},  {"8", "51", "9", "44"},  {"8", "52", "9", "45"},  {"9", "56", "10", "49"},
      {"7", "49", "9", "39"},  {"8", "50", "9", "39"},  {"8", "58", "10", "48"}, {"9", "59", "10", "48"},
      {"9", "64", "11", "54"}, {"10", "65", "11", "54"}, {"9", "65", "11", "55"}, {"10", "66", "11", "55"},
      {"10", "69", "12", "59"}, {"11", "70", "12", "59"}, {"8", "50", "9", "43"},
  };
  return f;
}

const Fixture& printed_table2()
{
  static const Fixture f = {
      {"29", "25"}, {"37", "33"}, {"38", "34"}, {"46", "42"}, {"41", "37"}, {"42", "38"}, {"41", "37"}, {"45", "41"},
      {"39", "35"}, {"33", "29"}, {"37", "33"}, {"45", "38"}, {"54", "47"}, {"55", "48"}, {"59", "52"}, {"52", "42"},
      {"61", "51"}, {"67", "57"}, {"68", "58"}, {"72", "62"}, {"53", "46"}, {"43", "35"},
  };
  return f;
}

const Fixture& printed_table4()
{
  static const Fixture f = {
      {"(n+1)", "A(n+1)", "1", "4"},   {"(2)", "A(2)", "1", "4"},       {"(2,2)", "2A(2)", "2", "8"},
      {"(4)", "A(2)", "1", "4"},       {"()", "0", "0", "0"},           {"(3)", "A(3)", "1", "4"},
      {"(0,n)", "1+A(n)", "2", "8"},   {"(0,2)", "1+A(2)", "2", "8"},   {"(0,2,2)", "1+2A(2)", "3", "12"},
      {"(0,4)", "1+A(2)", "2", "8"},   {"(0)", "1", "1", "4"},          {"(0,3)", "1+A(3)", "2", "8"},
  };
  return f;
}

const Fixture& printed_table5()
{
  static const Fixture f = {
      {"5", "28", "5", "24"},  {"7", "37", "7", "33"},  {"9", "45", "9", "41"},  {"6", "31", "6", "27"},
      {"8", "40", "8", "36"},  {"10", "48", "10", "44"}, {"9", "47", "8", "36"},  {"9", "56", "9", "45"},
      {"9", "57", "9", "46"},  {"10", "61", "10", "50"}, {"8", "43", "7", "35"},  {"8", "44", "7", "36"},
      {"9", "47", "8", "39"},
  };
  return f;
}

const Fixture& printed(int which)
{
  switch (which) {
  case 1:
    return printed_table1();
  case 2:
    return printed_table2();
  case 4:
    return printed_table4();
  case 5:
    return printed_table5();
  default:
    break;
  }
  throw RangeError("no printed fixture for table " + std::to_string(which));
}

// Value columns compared against the fixture, per table.
std::size_t first_value_column(int which) { return which == 2 ? 2 : 1; }

std::string csv_cell(std::string s)
{
  std::replace(s.begin(), s.end(), ',', ';');
  return s;
}

bool numeric(const std::string& s)
{
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

} // namespace

const std::string& printed_catalog_dump()
{
  static const std::string text =
      "group,odd_gens,odd_rels,odd_label,odd_contains,even_gens,even_rels,even_label,even_contains\n"
      "SL2,3,9,sigma_1,,3,5,rho_1,\n"
      "SL3,4,14,sigma_2,sigma_1,4,10,rho_2,rho_1\n"
      "SL4,5,20,sigma_3,sigma_1,5,16,rho_3,rho_1\n"
      "SL4,6,21,sigma_4,sigma_1;sigma_2,6,17,rho_4,rho_1;rho_2\n"
      "SLn 5<=n<=8,5,21,sigma_5,sigma_1,5,17,rho_5,rho_1\n"
      "SLn 5<=n<=8,6,22,sigma_6,sigma_1;sigma_2,6,18,rho_6,rho_1;rho_2\n"
      "SLn n>=9,6,25,sigma_7,sigma_1,6,21,rho_7,rho_1\n"
      "SLn n>=9,7,26,sigma_8,sigma_1;sigma_2,7,22,rho_8,rho_1;rho_2\n"
      "Sp4,5,27,sigma_9,sigma_1 (short),,,,\n"
      "Sp4,6,28,sigma_10,sigma_1 (twice),6,20,rho_10,rho_1 (twice)\n"
      "Sp6 Spin7,6,36,,,7,29,,\n"
      "Sp8 Spin9,7,42,,,8,35,,\n"
      "Sp2n 5<=n<=8,7,43,,,8,36,,\n"
      "Spin2n+1 5<=n<=8,7,43,,,,,,\n"
      "Sp2n n>=9,8,47,sigma_11,,9,40,rho_11,\n"
      "Spin2n+1 n>=9,8,47,sigma_12,,,,,\n"
      "Spin8,6,29,,,6,25,,\n"
      "Spin2n 5<=n<=8,6,30,,,6,26,,\n"
      "Spin2n n>=9,7,34,sigma_13,sigma_1,7,30,rho_13,rho_1\n"
      "G2,6,31,sigma_14,sigma_1 (twice),6,23,rho_14,rho_1 (twice)\n";
  return text;
}

Table compute_table(int which)
{
  switch (which) {
  case 1:
    return table1();
  case 2:
    return table2();
  case 3:
    return table_from_dump(standard_catalog().dump());
  case 4:
    return table4();
  case 5:
    return table5();
  default:
    break;
  }
  throw RangeError("table number must be 1..5, got " + std::to_string(which));
}

std::string render(const Table& t, Format f)
{
  std::ostringstream out;
  switch (f) {
  case Format::Csv: {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i)
        out << (i ? "," : "") << (t.number == 3 ? cells[i] : csv_cell(cells[i]));
      out << '\n';
    };
    line(t.columns);
    for (const auto& r : t.rows)
      line(r);
    break;
  }
  case Format::Json: {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : t.rows) {
      nlohmann::ordered_json obj;
      for (std::size_t i = 0; i < t.columns.size(); ++i) {
        const std::string cell = i < r.size() ? r[i] : std::string();
        if (numeric(cell))
          obj[t.columns[i]] = std::stoll(cell);
        else
          obj[t.columns[i]] = cell;
      }
      rows.push_back(std::move(obj));
    }
    nlohmann::ordered_json doc;
    doc["table"] = t.number;
    doc["caption"] = t.caption;
    doc["columns"] = t.columns;
    doc["rows"] = rows;
    out << doc.dump(2) << '\n';
    break;
  }
  case Format::Text: {
    std::vector<std::size_t> width(t.columns.size(), 0);
    auto widen = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size() && i < width.size(); ++i)
        width[i] = std::max(width[i], cells[i].size());
    };
    widen(t.columns);
    for (const auto& r : t.rows)
      widen(r);
    auto line = [&](const std::vector<std::string>& cells) {
      std::string text;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        text += cells[i];
        if (i + 1 < cells.size())
          text += std::string(width[i] - cells[i].size() + 2, ' ');
      }
      while (!text.empty() && text.back() == ' ')
        text.pop_back();
      out << text << '\n';
    };
    out << "Table " << t.number << ": " << t.caption << '\n';
    line(t.columns);
    for (const auto& r : t.rows)
      line(r);
    break;
  }
  }
  return out.str();
}

std::string AuditFinding::line() const
{
  return "AUDIT_MISMATCH(computed " + computed + ", paper " + printed + ") table " + std::to_string(table) + " row " +
         row + " column " + column;
}

std::vector<AuditFinding> audit_table(int which)
{
  std::vector<AuditFinding> out;
  const Table t = compute_table(which);
  if (which == 3) {
    const Table expected = table_from_dump(printed_catalog_dump());
    const std::size_t n = std::max(t.rows.size(), expected.rows.size());
    for (std::size_t r = 0; r < n; ++r) {
      const auto got = r < t.rows.size() ? t.rows[r] : std::vector<std::string>{};
      const auto want = r < expected.rows.size() ? expected.rows[r] : std::vector<std::string>{};
      for (std::size_t c = 0; c < t.columns.size(); ++c) {
        const std::string a = c < got.size() ? got[c] : "<missing>";
        const std::string b = c < want.size() ? want[c] : "<missing>";
        if (a != b)
          out.push_back({3, std::to_string(r + 1), t.columns[c], a, b});
      }
    }
    return out;
  }
  const Fixture& fixture = printed(which);
  if (fixture.size() != t.rows.size())
    out.push_back({which, "*", "row count", std::to_string(t.rows.size()), std::to_string(fixture.size())});
  const std::size_t first = first_value_column(which);
  for (std::size_t r = 0; r < std::min(fixture.size(), t.rows.size()); ++r) {
    for (std::size_t c = 0; c < fixture[r].size(); ++c) {
      const std::string& got = t.rows[r].at(first + c);
      if (got != fixture[r][c])
        out.push_back({which, t.rows[r][which == 2 ? 1 : 0], t.columns[first + c], got, fixture[r][c]});
    }
  }
  return out;
}

std::vector<AuditFinding> audit_recipe_arithmetic()
{
  // Counts quoted with each recipe: after the eliminations (before bridge
  // and identification relations) and the final sizes.
  struct Claim {
    TypeLabel label;
    int rank;
    Parity parity;
    bool combined;
    int gens;
    int rels;
  };
  const Parity o = Parity::Odd;
  const Parity e = Parity::Even;
  const std::vector<Claim> claims = {
      {T::AffA, 8, o, false, 9, 43},  {T::AffB, 9, o, true, 9, 52},    {T::AffB, 9, e, true, 10, 45},
      {T::AffB, 9, o, false, 9, 56},  {T::AffB, 9, e, false, 10, 49},  {T::AffB, 3, o, false, 7, 42},
      {T::AffB, 3, e, false, 8, 35},  {T::AffB, 4, o, false, 8, 51},   {T::AffB, 4, e, false, 9, 44},
      {T::AffB, 5, o, false, 8, 52},  {T::AffB, 5, e, false, 9, 45},   {T::AffC, 9, o, true, 10, 65},
      {T::AffC, 9, e, true, 12, 55},  {T::AffC, 9, o, false, 10, 69},  {T::AffC, 9, e, false, 12, 59},
      {T::AffCp, 9, o, false, 10, 69}, {T::AffCp, 9, e, false, 12, 59}, {T::AffCt, 9, o, false, 11, 70},
      {T::AffCt, 9, e, false, 12, 59}, {T::AffD, 9, e, false, 8, 38},
  };
  std::vector<AuditFinding> out;
  for (const Claim& c : claims) {
    const PresentationBudget b = execute_budget(plan_for(c.label, c.rank, representative_q(c.parity)), standard_catalog());
    int gens = b.gens;
    int rels = b.rels;
    if (c.combined) {
      gens = 0;
      rels = 0;
      for (const BudgetTerm& term : b.trace) {
        if (term.step.rfind("take", 0) == 0 || term.step.rfind("eliminate", 0) == 0) {
          gens += term.gens;
          rels += term.rels;
        }
      }
    }
    const std::string row = to_string(TypeRank{c.label, c.rank}) + " " + std::string(to_string(c.parity)) + " q" +
                            (c.combined ? " after eliminations" : "");
    if (gens != c.gens)
      out.push_back({0, row, "gens", std::to_string(gens), std::to_string(c.gens)});
    if (rels != c.rels)
      out.push_back({0, row, "rels", std::to_string(rels), std::to_string(c.rels)});
  }
  return out;
}

std::vector<AuditFinding> audit_all()
{
  std::vector<AuditFinding> out;
  for (int which = 1; which <= 5; ++which) {
    const auto found = audit_table(which);
    out.insert(out.end(), found.begin(), found.end());
  }
  const auto recipes = audit_recipe_arithmetic();
  out.insert(out.end(), recipes.begin(), recipes.end());
  return out;
}

} // namespace kmp
