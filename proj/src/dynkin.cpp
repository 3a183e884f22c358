#include "kmp/dynkin.hpp"

#include "kmp/error.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <sstream>

namespace kmp {

namespace {

struct TypeInfo {
  TypeLabel label;
  std::string_view name;
  std::string_view code;
  bool affine;
  RankRange ranks;
};

const std::array<TypeInfo, 23>& type_table()
{
  static const std::array<TypeInfo, 23> table{{
      {TypeLabel::A, "A", "fin:A", false, {1, std::nullopt}},
      {TypeLabel::B, "B", "fin:B", false, {2, std::nullopt}},
      {TypeLabel::C, "C", "fin:C", false, {2, std::nullopt}},
      {TypeLabel::D, "D", "fin:D", false, {4, std::nullopt}},
      {TypeLabel::E6, "E6", "fin:E6", false, {6, 6}},
      {TypeLabel::E7, "E7", "fin:E7", false, {7, 7}},
      {TypeLabel::E8, "E8", "fin:E8", false, {8, 8}},
      {TypeLabel::F4, "F4", "fin:F4", false, {4, 4}},
      {TypeLabel::G2, "G2", "fin:G2", false, {2, 2}},
      {TypeLabel::AffA, "~A", "A", true, {2, std::nullopt}},
      {TypeLabel::AffB, "~B", "B", true, {3, std::nullopt}},
      {TypeLabel::AffBt, "~Bt", "Bt", true, {3, std::nullopt}},
      {TypeLabel::AffC, "~C", "C", true, {2, std::nullopt}},
      {TypeLabel::AffCt, "~Ct", "Ct", true, {2, std::nullopt}},
      {TypeLabel::AffCp, "~Cp", "Cp", true, {2, std::nullopt}},
      {TypeLabel::AffD, "~D", "D", true, {4, std::nullopt}},
      {TypeLabel::AffE6, "~E6", "E6", true, {6, 6}},
      {TypeLabel::AffE7, "~E7", "E7", true, {7, 7}},
      {TypeLabel::AffE8, "~E8", "E8", true, {8, 8}},
      {TypeLabel::AffF4, "~F4", "F4", true, {4, 4}},
      {TypeLabel::AffF4t, "~F4t", "F4t", true, {4, 4}},
      {TypeLabel::AffG2, "~G2", "G2", true, {2, 2}},
      {TypeLabel::AffG2t, "~G2t", "G2t", true, {2, 2}},
  }};
  return table;
}

const TypeInfo& info(TypeLabel t) { return type_table()[static_cast<std::size_t>(t)]; }

struct RawDiagram {
  std::vector<std::string> nodes;
  std::vector<Bond> bonds;
};

void path(std::vector<Bond>& bonds, const std::vector<int>& order)
{
  for (std::size_t i = 0; i + 1 < order.size(); ++i)
    bonds.push_back({order[i], order[i + 1], 1, false});
}

std::vector<int> iota(int first, int last)
{
  std::vector<int> v;
  for (int i = first; i <= last; ++i)
    v.push_back(i);
  return v;
}

// Finite diagrams use nodes a1..an stored at indices 0..n-1; affine diagrams
// use a0..an stored at indices 0..n.
RawDiagram raw_diagram(TypeLabel label, int n)
{
  RawDiagram d;
  const bool aff = is_affine(label);
  const int count = aff ? n + 1 : n;
  for (int i = 0; i < count; ++i)
    d.nodes.push_back("a" + std::to_string(aff ? i : i + 1));
  auto& b = d.bonds;
  // finite index of node a_k
  auto f = [](int k) { return k - 1; };
  switch (label) {
  case TypeLabel::A:
    path(b, iota(0, n - 1));
    break;
  case TypeLabel::B:
    path(b, iota(0, n - 2));
    b.push_back({f(n - 1), f(n), 2, true});
    break;
  case TypeLabel::C:
    path(b, iota(0, n - 2));
    b.push_back({f(n), f(n - 1), 2, true});
    break;
  case TypeLabel::D:
    path(b, iota(0, n - 2));
    b.push_back({f(n - 2), f(n), 1, false});
    break;
  case TypeLabel::E6:
  case TypeLabel::E7:
  case TypeLabel::E8: {
    std::vector<int> spine{f(1)};
    for (int k = 3; k <= n; ++k)
      spine.push_back(f(k));
    path(b, spine);
    b.push_back({f(2), f(4), 1, false});
    break;
  }
  case TypeLabel::F4:
    b.push_back({f(1), f(2), 1, false});
    b.push_back({f(2), f(3), 2, true});
    b.push_back({f(3), f(4), 1, false});
    break;
  case TypeLabel::G2:
    b.push_back({f(2), f(1), 3, true});
    break;
  case TypeLabel::AffA:
    path(b, iota(0, n));
    b.push_back({n, 0, 1, false});
    break;
  case TypeLabel::AffB:
  case TypeLabel::AffBt:
    b.push_back({0, 2, 1, false});
    path(b, iota(1, n - 1));
    if (label == TypeLabel::AffB)
      b.push_back({n - 1, n, 2, true});
    else
      b.push_back({n, n - 1, 2, true});
    break;
  case TypeLabel::AffC:
  case TypeLabel::AffCt:
  case TypeLabel::AffCp: {
    const bool left_in = label == TypeLabel::AffC;
    const bool right_in = label != TypeLabel::AffCt;
    b.push_back(left_in ? Bond{0, 1, 2, true} : Bond{1, 0, 2, true});
    path(b, iota(1, n - 1));
    b.push_back(right_in ? Bond{n, n - 1, 2, true} : Bond{n - 1, n, 2, true});
    break;
  }
  case TypeLabel::AffD:
    path(b, iota(1, n - 1));
    b.push_back({0, 2, 1, false});
    b.push_back({n - 2, n, 1, false});
    break;
  case TypeLabel::AffE6:
    path(b, {1, 2, 3, 5, 6});
    path(b, {3, 4, 0});
    break;
  case TypeLabel::AffE7:
    path(b, {1, 2, 3, 4, 6, 7, 0});
    b.push_back({4, 5, 1, false});
    break;
  case TypeLabel::AffE8:
    path(b, {0, 1, 2, 3, 4, 5, 7, 8});
    b.push_back({5, 6, 1, false});
    break;
  case TypeLabel::AffF4:
  case TypeLabel::AffF4t:
    path(b, {0, 1, 2});
    if (label == TypeLabel::AffF4)
      b.push_back({2, 3, 2, true});
    else
      b.push_back({3, 2, 2, true});
    b.push_back({3, 4, 1, false});
    break;
  case TypeLabel::AffG2:
  case TypeLabel::AffG2t:
    b.push_back({0, 1, 1, false});
    if (label == TypeLabel::AffG2)
      b.push_back({1, 2, 3, true});
    else
      b.push_back({2, 1, 3, true});
    break;
  }
  return d;
}

IntMatrix cartan_of(std::size_t n, const std::vector<Bond>& bonds)
{
  IntMatrix m = IntMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    m(i, i) = 2;
  for (const Bond& b : bonds) {
    m(b.from, b.to) = -1;
    m(b.to, b.from) = -b.multiplicity;
  }
  return m;
}

void require_valid(TypeLabel label, int rank)
{
  const RankRange r = valid_ranks(label);
  if (r.contains(rank))
    return;
  std::ostringstream msg;
  msg << "rank " << rank << " is out of range for type " << type_name(label) << " (valid: ";
  if (r.max_rank && *r.max_rank == r.min_rank)
    msg << "rank " << r.min_rank;
  else if (r.max_rank)
    msg << r.min_rank << ".." << *r.max_rank;
  else
    msg << "rank >= " << r.min_rank;
  msg << ")";
  throw RangeError(msg.str());
}

// Backtracking search for a permutation p with a(p(i), p(j)) == b(i, j).
class Matcher {
public:
  Matcher(const IntMatrix& a, const IntMatrix& b) : a_(a), b_(b), n_(a.rows())
  {
    sig_a_ = signatures(a_);
    sig_b_ = signatures(b_);
  }

  bool isomorphic()
  {
    if (a_.rows() != b_.rows())
      return false;
    auto sa = sig_a_, sb = sig_b_;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb)
      return false;
    image_.assign(static_cast<std::size_t>(n_), -1);
    used_.assign(static_cast<std::size_t>(n_), false);
    return extend(0);
  }

private:
  using Signature = std::vector<std::int64_t>;

  static std::vector<Signature> signatures(const IntMatrix& m)
  {
    std::vector<Signature> out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      Signature s;
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (i != j && (m(i, j) != 0 || m(j, i) != 0))
          s.push_back(m(i, j) * 8 + m(j, i));
      }
      std::sort(s.begin(), s.end());
      out.push_back(std::move(s));
    }
    return out;
  }

  bool extend(Eigen::Index i)
  {
    if (i == n_)
      return true;
    for (Eigen::Index c = 0; c < n_; ++c) {
      if (used_[static_cast<std::size_t>(c)] || sig_a_[static_cast<std::size_t>(c)] != sig_b_[static_cast<std::size_t>(i)])
        continue;
      bool ok = true;
      for (Eigen::Index j = 0; j < i && ok; ++j) {
        const Eigen::Index pj = image_[static_cast<std::size_t>(j)];
        ok = a_(c, pj) == b_(i, j) && a_(pj, c) == b_(j, i);
      }
      if (!ok)
        continue;
      image_[static_cast<std::size_t>(i)] = c;
      used_[static_cast<std::size_t>(c)] = true;
      if (extend(i + 1))
        return true;
      used_[static_cast<std::size_t>(c)] = false;
    }
    image_[static_cast<std::size_t>(i)] = -1;
    return false;
  }

  const IntMatrix& a_;
  const IntMatrix& b_;
  Eigen::Index n_;
  std::vector<Signature> sig_a_, sig_b_;
  std::vector<Eigen::Index> image_;
  std::vector<bool> used_;
};

std::vector<TypeRank> candidates(int node_count)
{
  std::vector<TypeRank> out;
  for (const TypeInfo& t : type_table()) {
    const int rank = t.affine ? node_count - 1 : node_count;
    if (rank >= 1 && t.ranks.contains(rank))
      out.push_back({t.label, rank});
  }
  return out;
}

TypeRank classify_connected(const IntMatrix& m)
{
  const int n = static_cast<int>(m.rows());
  for (const TypeRank& cand : candidates(n)) {
    const RawDiagram raw = raw_diagram(cand.label, cand.rank);
    const IntMatrix c = cartan_of(raw.nodes.size(), raw.bonds);
    Matcher matcher(m, c);
    if (matcher.isomorphic())
      return cand;
  }
  throw ClassificationError("component with " + std::to_string(n) +
                            " nodes is neither of finite nor of affine type");
}

} // namespace

bool is_affine(TypeLabel t) { return info(t).affine; }

std::string_view type_name(TypeLabel t) { return info(t).name; }

std::string_view type_code(TypeLabel t) { return info(t).code; }

TypeLabel parse_type_code(std::string_view code)
{
  for (const TypeInfo& t : type_table()) {
    if (t.code == code)
      return t.label;
  }
  for (const TypeInfo& t : type_table()) {
    if (t.name == code)
      return t.label;
  }
  static const std::map<std::string_view, TypeLabel> aliases{
      {"E", TypeLabel::AffE6}, {"F", TypeLabel::AffF4}, {"Ft", TypeLabel::AffF4t},
      {"G", TypeLabel::AffG2}, {"Gt", TypeLabel::AffG2t}};
  if (auto it = aliases.find(code); it != aliases.end())
    return it->second;
  throw RangeError("unknown type code '" + std::string(code) + "'");
}

RankRange valid_ranks(TypeLabel t) { return info(t).ranks; }

std::string to_string(const TypeRank& tr)
{
  const std::string_view name = type_name(tr.label);
  const char last = name.back();
  const bool fixed = last >= '0' && last <= '9';
  if (fixed)
    return std::string(name);
  // twisted suffix goes after the rank: ~Bt3 reads better as ~B3t
  std::string base(name);
  std::string suffix;
  if (base.size() > 2 && (base.back() == 't' || base.back() == 'p')) {
    suffix = base.back();
    base.pop_back();
  }
  return base + std::to_string(tr.rank) + suffix;
}

DynkinDiagram::DynkinDiagram(std::vector<std::string> nodes, std::vector<Bond> bonds)
    : nodes_(std::move(nodes)), bonds_(std::move(bonds))
{
  for (const Bond& b : bonds_) {
    const auto n = static_cast<int>(nodes_.size());
    if (b.from < 0 || b.to < 0 || b.from >= n || b.to >= n || b.from == b.to)
      throw RangeError("bond references an invalid node");
    if (b.multiplicity < 1 || b.multiplicity > 3 || (b.multiplicity > 1) != b.arrow)
      throw RangeError("bond multiplicity must be 1 (no arrow) or 2/3 (with arrow)");
  }
  components_ = classify(nodes_, bonds_);
}

int DynkinDiagram::index_of(std::string_view node) const
{
  const auto it = std::find(nodes_.begin(), nodes_.end(), node);
  if (it == nodes_.end())
    throw RangeError("node '" + std::string(node) + "' is not in the diagram");
  return static_cast<int>(it - nodes_.begin());
}

TypeRank DynkinDiagram::type() const
{
  if (!connected())
    throw ClassificationError("diagram has " + std::to_string(components_.size()) + " components");
  return components_.front();
}

bool DynkinDiagram::rank_two_affine() const
{
  if (!connected())
    return false;
  const TypeRank t = type();
  const bool c_family =
      t.label == TypeLabel::AffC || t.label == TypeLabel::AffCt || t.label == TypeLabel::AffCp;
  return c_family && t.rank == 2;
}

DynkinDiagram build_diagram(TypeLabel label, int rank)
{
  require_valid(label, rank);
  RawDiagram raw = raw_diagram(label, rank);
  return DynkinDiagram(std::move(raw.nodes), std::move(raw.bonds));
}

IntMatrix cartan_matrix(const DynkinDiagram& d) { return cartan_of(d.size(), d.bonds()); }

DynkinDiagram subdiagram(const DynkinDiagram& d, const std::vector<std::string>& nodes)
{
  if (nodes.empty())
    throw RangeError("subdiagram needs at least one node");
  std::vector<int> keep;
  for (const std::string& name : nodes) {
    const int idx = d.index_of(name);
    if (std::find(keep.begin(), keep.end(), idx) != keep.end())
      throw RangeError("node '" + name + "' listed twice");
    keep.push_back(idx);
  }
  std::sort(keep.begin(), keep.end());
  std::map<int, int> remap;
  std::vector<std::string> names;
  for (int idx : keep) {
    remap[idx] = static_cast<int>(names.size());
    names.push_back(d.nodes()[static_cast<std::size_t>(idx)]);
  }
  std::vector<Bond> bonds;
  for (const Bond& b : d.bonds()) {
    if (remap.count(b.from) && remap.count(b.to))
      bonds.push_back({remap[b.from], remap[b.to], b.multiplicity, b.arrow});
  }
  return DynkinDiagram(std::move(names), std::move(bonds));
}

std::vector<TypeRank> classify(const std::vector<std::string>& nodes, const std::vector<Bond>& bonds)
{
  const int n = static_cast<int>(nodes.size());
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x)
      x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (const Bond& b : bonds)
    parent[static_cast<std::size_t>(find(b.from))] = find(b.to);

  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i)
    groups[find(i)].push_back(i);

  const IntMatrix full = cartan_of(nodes.size(), bonds);
  std::vector<TypeRank> out;
  for (const auto& [root, members] : groups) {
    const auto k = static_cast<Eigen::Index>(members.size());
    IntMatrix m(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j)
        m(i, j) = full(members[static_cast<std::size_t>(i)], members[static_cast<std::size_t>(j)]);
    out.push_back(classify_connected(m));
  }
  std::stable_sort(out.begin(), out.end(), [](const TypeRank& x, const TypeRank& y) {
    if (x.rank != y.rank)
      return x.rank > y.rank;
    return static_cast<int>(x.label) < static_cast<int>(y.label);
  });
  return out;
}

std::vector<TypeRank> classify(const DynkinDiagram& d) { return classify(d.nodes(), d.bonds()); }

AdmissibilityVerdict check_admissibility(TypeLabel label, int rank, std::int64_t q)
{
  const FieldParameter field = make_field(q);
  const DynkinDiagram d = build_diagram(label, rank);
  if (label == TypeLabel::AffA && rank == 2 && (q == 2 || q == 3))
    return {Admissibility::SpecialA2Small, "~A2 over a field with 2 or 3 elements"};
  bool has_double = false;
  bool has_triple = false;
  for (const Bond& b : d.bonds()) {
    has_double = has_double || b.multiplicity == 2;
    has_triple = has_triple || b.multiplicity == 3;
  }
  if (field.q == 2 && has_double)
    return {Admissibility::Excluded, "contains a B2 subdiagram and q = 2"};
  if (field.q == 2 && has_triple)
    return {Admissibility::Excluded, "contains a G2 subdiagram and q = 2"};
  if (field.q == 3 && has_triple)
    return {Admissibility::Excluded, "contains a G2 subdiagram and q = 3"};
  return {Admissibility::Admissible, ""};
}

std::string dump_text(const DynkinDiagram& d)
{
  std::ostringstream out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    out << d.nodes()[i] << ":";
    for (const Bond& b : d.bonds()) {
      const auto self = static_cast<int>(i);
      if (b.from != self && b.to != self)
        continue;
      const int other = b.from == self ? b.to : b.from;
      char arrow = '-';
      if (b.arrow)
        arrow = b.from == self ? '>' : '<';
      out << ' ' << d.nodes()[static_cast<std::size_t>(other)] << '(' << b.multiplicity << ',' << arrow << ')';
    }
    out << '\n';
  }
  return out.str();
}

} // namespace kmp
