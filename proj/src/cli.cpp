#include "kmp/cli.hpp"

#include "kmp/assembly.hpp"
#include "kmp/catalog.hpp"
#include "kmp/error.hpp"
#include "kmp/json_io.hpp"
#include "kmp/rootdatum.hpp"
#include "kmp/tables.hpp"
#include "kmp/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace kmp::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_domain = 1;
constexpr int exit_usage = 2;
constexpr int exit_audit = 3;

/// Bad option values detected before dispatch.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string type;
  int rank = 0;
  std::optional<std::int64_t> q;
  std::optional<std::string> parity;
  std::string format;
  std::vector<std::string> relators;
  std::size_t limit = 1'000'000;
  std::string out;
  std::string target = "affine";
  std::optional<std::uint64_t> expect;
  std::string matrix;
};

// Validated (type, rank, q) triple. Without --q, q is the representative of
// the parity and `exact_q` is false.
struct Target {
  TypeLabel label;
  int rank;
  std::int64_t q;
  bool exact_q;
};

std::string one_line(std::string s)
{
  for (char& c : s)
    if (c == '\n' || c == '\r')
      c = ' ';
  return s;
}

Target resolve_target(const Options& o)
{
  if (o.type.empty())
    throw UsageError("--type is required");
  TypeLabel label{};
  try {
    label = parse_type_code(o.type);
  } catch (const RangeError& e) {
    throw UsageError(e.what());
  }
  const RankRange range = valid_ranks(label);
  if (o.rank < range.min_rank || (range.max_rank && o.rank > *range.max_rank))
    throw UsageError("rank " + std::to_string(o.rank) + " is outside the range of type " + o.type);
  if (o.q) {
    FieldParameter f;
    try {
      f = make_field(*o.q);
    } catch (const RangeError& e) {
      throw UsageError(e.what());
    }
    if (o.parity && parse_parity(*o.parity) != f.parity())
      throw UsageError("--parity " + *o.parity + " contradicts q = " + std::to_string(*o.q));
    return {label, o.rank, *o.q, true};
  }
  if (!o.parity)
    throw UsageError("one of --q or --parity is required");
  return {label, o.rank, representative_q(parse_parity(*o.parity)), false};
}

Json trace_json(const PresentationBudget& b)
{
  Json trace = Json::array();
  for (const BudgetTerm& t : b.trace)
    trace.push_back(Json{{"step", t.step}, {"gens", t.gens}, {"rels", t.rels}});
  return trace;
}

TorusCounts counts_for(const Target& t)
{
  return t.exact_q ? torus_counts(t.label, t.rank, t.q, false)
                   : torus_counts_sup(t.label, t.rank, make_field(t.q).parity());
}

std::string cmd_size(const Options& o)
{
  const Target t = resolve_target(o);
  const bool finite_target = o.target == "loop" || o.target == "profinite";
  if (finite_target == is_affine(t.label))
    throw UsageError("target " + o.target + " needs " + (finite_target ? "a finite (fin:) type" : "an affine type"));

  PresentationBudget b;
  std::string regime;
  if (o.target == "loop") {
    b = loop_group_sizes(t.label, t.rank, t.q);
  } else if (o.target == "profinite") {
    b = profinite_sizes(t.label, t.rank, t.q);
  } else {
    const AssemblyPlan plan = plan_for(t.label, t.rank, t.q);
    regime = plan.regime;
    if (o.target == "two-gen")
      b = two_generator_sizes(t.label, t.rank, t.q);
    else
      b = execute_budget(plan, standard_catalog());
    if (o.target == "adjoint-quotient")
      b = adjoint_quotient_sizes(b, counts_for(t));
    else if (o.target == "adjoint")
      b = adjoint_group_sizes(b, counts_for(t));
  }

  Json doc;
  doc["type"] = o.type;
  doc["rank"] = t.rank;
  doc["q"] = t.exact_q ? Json(t.q) : Json(nullptr);
  doc["generators"] = b.gens;
  doc["relations"] = b.rels;
  doc["trace"] = trace_json(b);
  doc["parity"] = std::string(to_string(make_field(t.q).parity()));
  doc["target"] = o.target;
  if (!regime.empty())
    doc["regime"] = regime;

  if (o.format == "text") {
    std::ostringstream out;
    out << to_string(TypeRank{t.label, t.rank}) << " " << o.target << ": " << b.gens << " generators, " << b.rels
        << " relations\n";
    for (const BudgetTerm& term : b.trace)
      out << "  " << term.step << ": " << term.gens << " " << term.rels << '\n';
    return out.str();
  }
  return doc.dump() + '\n';
}

Catalog catalog_with(const std::vector<std::string>& paths)
{
  Catalog c = standard_catalog();
  for (const std::string& path : paths) {
    std::ifstream in(path);
    if (!in)
      throw UsageError("cannot read " + path);
    c = load_explicit_relators(c, path);
  }
  return c;
}

std::string cmd_assemble(const Options& o)
{
  const Target t = resolve_target(o);
  if (!t.exact_q)
    throw UsageError("assemble needs an explicit --q");
  const Catalog catalog = catalog_with(o.relators);
  const AssemblyPlan plan = plan_for(t.label, t.rank, t.q);
  const Presentation p = execute_explicit(plan, catalog);

  Json steps = Json::array();
  for (const AssemblyStep& s : plan.steps)
    steps.push_back(describe(s));
  Json doc;
  doc["type"] = o.type;
  doc["rank"] = t.rank;
  doc["q"] = t.q;
  doc["regime"] = plan.regime;
  doc["steps"] = steps;
  doc["generators"] = p.generator_count();
  doc["relations"] = p.relator_count();
  doc["presentation"] = presentation_to_json(p);
  return doc.dump(o.format == "text" ? 2 : -1) + '\n';
}

std::string cmd_table(int which, const Options& o, int& code)
{
  const Format f = parse_format(o.format.empty() ? "text" : o.format);
  const std::string text = render(compute_table(which), f);
  for (const AuditFinding& finding : audit_table(which)) {
    std::cerr << finding.line() << '\n';
    code = exit_audit;
  }
  return text;
}

Json matrix_json(const IntMatrix& m)
{
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

IntMatrix parse_matrix(const std::string& text)
{
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("matrix is not valid JSON: ") + e.what());
  }
  if (!j.is_array() || j.empty() || !j.front().is_array())
    throw UsageError("matrix must be a nonempty JSON list of rows");
  const std::size_t cols = j.front().size();
  IntMatrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw UsageError("matrix rows must have equal length");
    for (std::size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_number_integer())
        throw UsageError("matrix entries must be integers");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = j[i][k].get<std::int64_t>();
    }
  }
  return m;
}

std::string cmd_snf(const Options& o)
{
  IntMatrix a;
  if (!o.matrix.empty()) {
    if (o.matrix == "-") {
      std::ostringstream buf;
      buf << std::cin.rdbuf();
      a = parse_matrix(buf.str());
    } else {
      a = parse_matrix(o.matrix);
    }
  } else if (!o.type.empty()) {
    Options typed = o;
    typed.parity = typed.parity.value_or("odd");
    const Target t = resolve_target(typed);
    a = cartan_matrix(build_diagram(t.label, t.rank));
  } else {
    throw UsageError("snf needs a matrix argument or --type and --rank");
  }
  const SmithDecomposition<std::int64_t> d = smith_normal_form(a);
  Json diag = Json::array();
  for (std::int64_t x : d.diagonal())
    diag.push_back(x);
  Json doc;
  doc["U"] = matrix_json(d.U);
  doc["S"] = matrix_json(d.S);
  doc["V"] = matrix_json(d.V);
  doc["diagonal"] = diag;
  doc["cokernel"] = cokernel(a).notation();
  return doc.dump() + '\n';
}

std::string lower(std::string_view s)
{
  std::string out(s);
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string cmd_verify(const Options& o, int& code)
{
  if (o.relators.size() != 1)
    throw UsageError("verify needs exactly one presentation file");
  std::ifstream in(o.relators.front());
  if (!in)
    throw UsageError("cannot read " + o.relators.front());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("presentation is not valid JSON: ") + e.what());
  }
  const Presentation p = presentation_from_json(j.contains("presentation") ? j.at("presentation") : j);
  Json doc;
  if (o.expect) {
    const VerifyResult r = verify_block_order(p, *o.expect, o.limit);
    doc["status"] = lower(to_string(r.before.status));
    doc["verdict"] = lower(to_string(r.verdict));
    if (r.before.status == EnumerationStatus::Completed)
      doc["index"] = r.before.index;
    doc["cosets_defined"] = r.before.cosets_defined;
    doc["expected"] = *o.expect;
    if (r.verdict == Verdict::Fail)
      code = exit_domain;
  } else {
    const EnumerationOutcome r = coset_enumerate(p, {}, o.limit);
    doc["status"] = lower(to_string(r.status));
    if (r.status == EnumerationStatus::Completed)
      doc["index"] = r.index;
    doc["cosets_defined"] = r.cosets_defined;
  }
  return doc.dump() + '\n';
}

std::string cmd_audit(int& code)
{
  std::ostringstream out;
  const auto findings = audit_all();
  for (const AuditFinding& f : findings)
    out << f.line() << '\n';
  if (findings.empty())
    out << "no mismatches\n";
  else
    code = exit_audit;
  return out.str();
}

void emit(const std::string& text, const std::string& out_path)
{
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out)
    throw UsageError("cannot write " + out_path);
  out << text;
}

} // namespace

int run(int argc, char** argv)
{
  CLI::App app{"Presentation sizes of affine Kac-Moody groups over finite fields"};
  app.name("kmp");
  app.require_subcommand(1, 1);

  Options o;
  auto add_target = [&](CLI::App* sub) {
    sub->add_option("--type", o.type, "Type code: A, B, Bt, C, Ct, Cp, D, E6.., F4, F4t, G2, G2t; fin:X for finite");
    sub->add_option("--rank", o.rank, "Rank")->check(CLI::NonNegativeNumber);
    sub->add_option("--q", o.q, "Field size (a prime power)");
    sub->add_option("--parity", o.parity, "odd or even, when no q is given")->check(CLI::IsMember({"odd", "even"}));
  };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", o.out, "Write output to this file"); };

  auto* size = app.add_subcommand("size", "Generator and relation counts");
  add_target(size);
  size->add_option("--target", o.target, "affine, two-gen, loop, profinite, adjoint-quotient or adjoint")
      ->check(CLI::IsMember({"affine", "two-gen", "loop", "profinite", "adjoint-quotient", "adjoint"}));
  size->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  add_out(size);

  auto* assemble = app.add_subcommand("assemble", "Explicit presentation from relator data files");
  add_target(assemble);
  assemble->add_option("--relators", o.relators, "Relator data files")->expected(0, -1);
  assemble->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  add_out(assemble);

  const std::vector<std::string> table_help = {
      "Affine groups: generators and relations per type and regime",
      "Loop groups G(F_q[t,1/t]) on two generators",
      "Finite blocks G(F_q) of the catalog",
      "Fundamental groups and torus corrections for adjoint forms",
      "Classical loop groups PSL, PGL and SO",
  };
  std::vector<CLI::App*> tables;
  for (int i = 1; i <= 5; ++i) {
    auto* t = app.add_subcommand("table" + std::to_string(i), table_help[static_cast<std::size_t>(i - 1)]);
    t->add_option("--format", o.format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
    add_out(t);
    tables.push_back(t);
  }

  auto* snf = app.add_subcommand("snf", "Smith normal form of a JSON matrix or a Cartan matrix");
  snf->add_option("matrix", o.matrix, "Matrix as JSON rows, or - for stdin");
  add_target(snf);
  add_out(snf);

  auto* verify = app.add_subcommand("verify", "Coset enumeration of a presentation file");
  verify->add_option("--relators,presentation", o.relators, "Presentation JSON file")->expected(1);
  verify->add_option("--limit", o.limit, "Maximum live cosets")->check(CLI::PositiveNumber);
  verify->add_option("--expect", o.expect, "Expected group order");
  add_out(verify);

  auto* audit = app.add_subcommand("audit", "Compare recomputed values with the printed ones");
  add_out(audit);

  auto* dump = app.add_subcommand("catalog-dump", "Block catalog as CSV");
  add_out(dump);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    std::cerr << "kmp: usage: " << one_line(e.what()) << '\n';
    return exit_usage;
  }

  int code = exit_ok;
  try {
    std::string text;
    if (size->parsed())
      text = cmd_size(o);
    else if (assemble->parsed())
      text = cmd_assemble(o);
    else if (snf->parsed())
      text = cmd_snf(o);
    else if (verify->parsed())
      text = cmd_verify(o, code);
    else if (audit->parsed())
      text = cmd_audit(code);
    else if (dump->parsed())
      text = standard_catalog().dump();
    for (int i = 0; i < 5; ++i)
      if (tables[static_cast<std::size_t>(i)]->parsed())
        text = cmd_table(i + 1, o, code);
    emit(text, o.out);
  } catch (const UsageError& e) {
    std::cerr << "kmp: usage: " << one_line(e.what()) << '\n';
    return exit_usage;
  } catch (const Error& e) {
    std::cerr << "kmp: error: " << one_line(e.what()) << '\n';
    return exit_domain;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "kmp: usage: " << one_line(e.what()) << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "kmp: error: " << one_line(e.what()) << '\n';
    return exit_domain;
  }
  return code;
}

} // namespace kmp::cli
