#pragma once

#include <cstdint>
#include <string_view>

namespace kmp {

enum class Parity { Odd, Even };

std::string_view to_string(Parity p);
Parity parse_parity(std::string_view s);

/// A finite field size q = p^a.
struct FieldParameter {
  std::int64_t q = 0;
  std::int64_t p = 0;
  int a = 0;

  [[nodiscard]] Parity parity() const { return p == 2 ? Parity::Even : Parity::Odd; }
};

/// Factor q as a prime power; throws RangeError if it is not one.
FieldParameter make_field(std::int64_t q);

/// True if q is a prime power >= 2.
bool is_prime_power(std::int64_t q);

/// Smallest q >= 4 of the given parity, used when only a parity is known.
std::int64_t representative_q(Parity p);

} // namespace kmp
