#pragma once

#include "kmp/presentation.hpp"

#include <cstddef>
#include <cstdint>
#include <stop_token>
#include <string_view>
#include <vector>

namespace kmp {

enum class EnumerationStatus { Completed, Overflow, Aborted };

std::string_view to_string(EnumerationStatus s);

struct EnumerationOutcome {
  EnumerationStatus status = EnumerationStatus::Aborted;
  std::size_t index = 0; // valid when Completed
  std::size_t limit = 0;
  std::size_t cosets_defined = 0;
  std::size_t collapses = 0;
};

struct EnumerationOptions {
  /// Cancellation is polled every this many coset definitions.
  std::size_t check_interval = 1024;
  std::stop_token stop;
  /// Table rows ever allocated, live or dead; 0 means 8 * max_cosets + 1024.
  std::size_t allocation_cap = 0;
};

/// HLT coset enumeration of the subgroup generated by `subgroup` (words in
/// the presentation's generators). Deterministic: definitions are made in
/// coset order, relators scanned in their given order.
EnumerationOutcome coset_enumerate(const Presentation& p, const std::vector<Word>& subgroup, std::size_t max_cosets,
                                   const EnumerationOptions& options = {});

enum class Verdict { Pass, Fail, Inconclusive };

std::string_view to_string(Verdict v);

struct VerifyResult {
  Verdict verdict;
  EnumerationOutcome before; // the only outcome for single-presentation checks
  EnumerationOutcome after;
};

/// PASS iff the order (index of the trivial subgroup) equals expected_order.
VerifyResult verify_block_order(const Presentation& p, std::uint64_t expected_order, std::size_t limit);

/// PASS iff both presentations enumerate to the same finite order.
VerifyResult tietze_equivalence_check(const Presentation& before, const Presentation& after, std::size_t limit);

/// |SL(n, q)| = q^(n(n-1)/2) * prod_{i=2..n} (q^i - 1).
std::uint64_t sl_order(int n, std::uint64_t q);

} // namespace kmp
