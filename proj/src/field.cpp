#include "kmp/field.hpp"

#include "kmp/error.hpp"

#include <string>

namespace kmp {

std::string_view to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

Parity parse_parity(std::string_view s)
{
  if (s == "odd")
    return Parity::Odd;
  if (s == "even")
    return Parity::Even;
  throw RangeError("parity must be 'odd' or 'even', got '" + std::string(s) + "'");
}

FieldParameter make_field(std::int64_t q)
{
  if (q < 2)
    throw RangeError("q must be a prime power >= 2, got " + std::to_string(q));
  std::int64_t p = 0;
  for (std::int64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0)
    p = q;
  std::int64_t rest = q;
  int a = 0;
  while (rest % p == 0) {
    rest /= p;
    ++a;
  }
  if (rest != 1)
    throw RangeError("q must be a prime power, got " + std::to_string(q));
  return {q, p, a};
}

bool is_prime_power(std::int64_t q)
{
  try {
    make_field(q);
    return true;
  } catch (const RangeError&) {
    return false;
  }
}

std::int64_t representative_q(Parity p) { return p == Parity::Even ? 4 : 5; }

} // namespace kmp
