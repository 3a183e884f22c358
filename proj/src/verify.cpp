#include "kmp/verify.hpp"

#include "kmp/error.hpp"

#include <map>

namespace kmp {

std::string_view to_string(EnumerationStatus s)
{
  switch (s) {
  case EnumerationStatus::Completed:
    return "completed";
  case EnumerationStatus::Overflow:
    return "overflow";
  case EnumerationStatus::Aborted:
    return "aborted";
  }
  return "?";
}

std::string_view to_string(Verdict v)
{
  switch (v) {
  case Verdict::Pass:
    return "PASS";
  case Verdict::Fail:
    return "FAIL";
  case Verdict::Inconclusive:
    return "INCONCLUSIVE";
  }
  return "?";
}

namespace {

constexpr int undefined = -1;

struct Stop {
  EnumerationStatus status;
};

// Column 2i acts by generator i, column 2i+1 by its inverse.
class CosetTable {
public:
  CosetTable(int columns, std::size_t max_live, std::size_t cap, const EnumerationOptions& options)
      : columns_(columns), max_live_(max_live), cap_(cap), options_(options)
  {
    add_row();
    live_ = 1;
  }

  [[nodiscard]] std::size_t rows() const { return parent_.size(); }
  [[nodiscard]] bool alive(int c) const { return parent_[static_cast<std::size_t>(c)] == c; }
  [[nodiscard]] std::size_t live() const { return live_; }
  [[nodiscard]] std::size_t defined() const { return defined_; }
  [[nodiscard]] std::size_t collapses() const { return collapses_; }

  int& at(int c, int x) { return table_[static_cast<std::size_t>(c) * static_cast<std::size_t>(columns_) + static_cast<std::size_t>(x)]; }

  static int inverse(int x) { return x ^ 1; }

  int define(int c, int x)
  {
    if (live_ >= max_live_ || rows() >= cap_)
      throw Stop{EnumerationStatus::Overflow};
    const int d = add_row();
    ++live_;
    ++defined_;
    at(c, x) = d;
    at(d, inverse(x)) = c;
    if (options_.check_interval && defined_ % options_.check_interval == 0 && options_.stop.stop_requested())
      throw Stop{EnumerationStatus::Aborted};
    return d;
  }

  void scan_and_fill(int c, const std::vector<int>& w)
  {
    if (w.empty())
      return;
    int f = c;
    int b = c;
    int i = 0;
    int j = static_cast<int>(w.size()) - 1;
    for (;;) {
      while (i <= j && at(f, w[static_cast<std::size_t>(i)]) != undefined)
        f = at(f, w[static_cast<std::size_t>(i++)]);
      if (i > j) {
        if (f != b)
          coincidence(f, b);
        return;
      }
      while (j >= i && at(b, inverse(w[static_cast<std::size_t>(j)])) != undefined)
        b = at(b, inverse(w[static_cast<std::size_t>(j--)]));
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        const int x = w[static_cast<std::size_t>(i)];
        at(f, x) = b;
        at(b, inverse(x)) = f;
        return;
      }
      define(f, w[static_cast<std::size_t>(i)]);
    }
  }

  void fill_row(int c)
  {
    for (int x = 0; x < columns_ && alive(c); ++x) {
      if (at(c, x) == undefined)
        define(c, x);
    }
  }

private:
  int add_row()
  {
    const int id = static_cast<int>(parent_.size());
    parent_.push_back(id);
    table_.insert(table_.end(), static_cast<std::size_t>(columns_), undefined);
    return id;
  }

  int rep(int k)
  {
    int root = k;
    while (parent_[static_cast<std::size_t>(root)] != root)
      root = parent_[static_cast<std::size_t>(root)];
    while (parent_[static_cast<std::size_t>(k)] != root) {
      const int next = parent_[static_cast<std::size_t>(k)];
      parent_[static_cast<std::size_t>(k)] = root;
      k = next;
    }
    return root;
  }

  void merge(int k, int l)
  {
    k = rep(k);
    l = rep(l);
    if (k == l)
      return;
    if (l < k)
      std::swap(k, l);
    parent_[static_cast<std::size_t>(l)] = k;
    queue_.push_back(l);
    --live_;
    ++collapses_;
  }

  void coincidence(int a, int b)
  {
    merge(a, b);
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const int e = queue_[head];
      for (int x = 0; x < columns_; ++x) {
        const int f = at(e, x);
        if (f == undefined)
          continue;
        at(f, inverse(x)) = undefined;
        const int e1 = rep(e);
        const int f1 = rep(f);
        if (at(e1, x) != undefined) {
          merge(f1, at(e1, x));
        } else if (at(f1, inverse(x)) != undefined) {
          merge(e1, at(f1, inverse(x)));
        } else {
          at(e1, x) = f1;
          at(f1, inverse(x)) = e1;
        }
      }
    }
    queue_.clear();
  }

  int columns_;
  std::size_t max_live_;
  std::size_t cap_;
  const EnumerationOptions& options_;
  std::vector<int> table_;
  std::vector<int> parent_;
  std::vector<int> queue_;
  std::size_t live_ = 0;
  std::size_t defined_ = 1;
  std::size_t collapses_ = 0;
};

std::vector<int> to_columns(const Word& w, const std::map<std::string, int>& index)
{
  std::vector<int> out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    const auto it = index.find(l.gen);
    if (it == index.end())
      throw PresentationError("word mentions unknown generator '" + l.gen + "'");
    if (l.exp != 1 && l.exp != -1)
      throw PresentationError("letter exponent must be +1 or -1");
    out.push_back(2 * it->second + (l.exp > 0 ? 0 : 1));
  }
  return out;
}

} // namespace

EnumerationOutcome coset_enumerate(const Presentation& p, const std::vector<Word>& subgroup, std::size_t max_cosets,
                                   const EnumerationOptions& options)
{
  if (p.generator_count() == 0)
    throw RangeError("coset enumeration needs at least one generator");
  if (max_cosets == 0)
    throw RangeError("coset limit must be at least 1");
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < p.generator_count(); ++i)
    index[p.generators()[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> relators;
  for (const Word& r : p.relators())
    relators.push_back(to_columns(free_reduce(r), index));
  std::vector<std::vector<int>> subgroup_words;
  for (const Word& w : subgroup)
    subgroup_words.push_back(to_columns(free_reduce(w), index));

  const std::size_t cap = options.allocation_cap ? options.allocation_cap : 8 * max_cosets + 1024;
  CosetTable table(static_cast<int>(2 * p.generator_count()), max_cosets, cap, options);
  EnumerationOutcome out;
  out.limit = max_cosets;
  try {
    for (const auto& w : subgroup_words)
      table.scan_and_fill(0, w);
    for (int c = 0; static_cast<std::size_t>(c) < table.rows(); ++c) {
      for (const auto& r : relators) {
        if (!table.alive(c))
          break;
        table.scan_and_fill(c, r);
      }
      if (table.alive(c))
        table.fill_row(c);
    }
    out.status = EnumerationStatus::Completed;
    out.index = table.live();
  } catch (const Stop& s) {
    out.status = s.status;
  }
  out.cosets_defined = table.defined();
  out.collapses = table.collapses();
  return out;
}

VerifyResult verify_block_order(const Presentation& p, std::uint64_t expected_order, std::size_t limit)
{
  VerifyResult r{Verdict::Inconclusive, coset_enumerate(p, {}, limit), {}};
  if (r.before.status == EnumerationStatus::Completed)
    r.verdict = r.before.index == expected_order ? Verdict::Pass : Verdict::Fail;
  return r;
}

VerifyResult tietze_equivalence_check(const Presentation& before, const Presentation& after, std::size_t limit)
{
  VerifyResult r{Verdict::Inconclusive, coset_enumerate(before, {}, limit), coset_enumerate(after, {}, limit)};
  if (r.before.status == EnumerationStatus::Completed && r.after.status == EnumerationStatus::Completed)
    r.verdict = r.before.index == r.after.index ? Verdict::Pass : Verdict::Fail;
  return r;
}

std::uint64_t sl_order(int n, std::uint64_t q)
{
  std::uint64_t order = 1;
  for (int i = 0; i < n * (n - 1) / 2; ++i)
    order *= q;
  for (int i = 2; i <= n; ++i) {
    std::uint64_t qi = 1;
    for (int k = 0; k < i; ++k)
      qi *= q;
    order *= qi - 1;
  }
  return order;
}

} // namespace kmp
