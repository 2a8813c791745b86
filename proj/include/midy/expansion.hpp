#pragma once

// Long division of x/N in base B: the purely periodic expansion together with
// its remainder sequence.
//
// Indices in the public interface are 1-based (a_1 ... a_e, x_1 ... x_e); the
// vectors below store a_i at position i-1.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "midy/core_arith.hpp"

namespace midy {

inline constexpr u64 kDefaultMaxPeriod = 10'000'000;

struct ExpandOptions {
  /// Refuse periods longer than this; the period can approach N.
  u64 max_period = kDefaultMaxPeriod;
};

struct Expansion {
  u64 base = 0;          // B
  u64 denominator = 0;   // N
  u64 numerator = 0;     // x = x_1
  u64 period_length = 0; // e = ord(B, N)
  std::vector<u64> digits;     // a_1 ... a_e
  std::vector<u64> remainders; // x_1 ... x_e

  bool operator==(const Expansion &) const = default;
};

namespace detail {

inline void validate_fraction(u64 x, u64 n, u64 b) {
  if (b < 2)
    throw domain_error("base must be at least 2");
  if (n < 2)
    throw domain_error("denominator must be at least 2");
  if (gcd(n, b) != 1)
    throw domain_error("denominator shares factor with base");
  if (x < 1 || x >= n)
    throw domain_error("numerator must satisfy 1 <= x < N");
  if (gcd(x, n) != 1)
    throw domain_error("fraction not reduced");
}


// Long division with ord(B, N) already known; the loop still stops on the
// returning remainder and the two lengths are cross-checked.
inline Expansion long_division(u64 x, u64 n, u64 b, u64 order) {
  Expansion out{b, n, x, 0, {}, {}};
  out.digits.reserve(order);
  out.remainders.reserve(order);
  u64 remainder = x;
  do {
    const u128 scaled = static_cast<u128>(b) * remainder;
    out.remainders.push_back(remainder);
    out.digits.push_back(static_cast<u64>(scaled / n));
    remainder = static_cast<u64>(scaled % n);
  } while (remainder != x && out.digits.size() <= order);

  out.period_length = out.digits.size();
  if (out.period_length != order)
    throw property_violation("long division cycle length " +
                             std::to_string(out.period_length) +
                             " disagrees with ord(B, N) = " +
                             std::to_string(order));
  return out;
}

} // namespace detail

/// Runs B x_i = a_i N + x_{i+1} until the remainder returns to x_1.
inline Expansion expand(u64 x, u64 n, u64 b, const ExpandOptions &options = {}) {
  detail::validate_fraction(x, n, b);
  const u64 order = multiplicative_order(b, n);
  if (order > options.max_period)
    throw domain_error("period too long: " + std::to_string(order) +
                       " digits exceeds limit " +
                       std::to_string(options.max_period));
  return detail::long_division(x, n, b, order);
}

/// x_i for any i >= 1, using x_{i+e} = x_i.
inline u64 remainder_at(const Expansion &exp, u64 i) {
  if (i < 1)
    throw domain_error("remainder index is 1-based");
  return exp.remainders[(i - 1) % exp.period_length];
}

/// a_i for any i >= 1.
inline u64 digit_at(const Expansion &exp, u64 i) {
  if (i < 1)
    throw domain_error("digit index is 1-based");
  return exp.digits[(i - 1) % exp.period_length];
}

/// Value of the numeral [a_first ... a_last]_B over a digit span.
inline Integer numeral_value(std::span<const u64> digits, u64 base) {
  // Balanced split keeps operand sizes even for long periods.
  if (digits.size() <= 32) {
    Integer v = 0;
    for (u64 a : digits) {
      v *= base;
      v += a;
    }
    return v;
  }
  const std::size_t half = digits.size() / 2;
  const std::size_t tail = digits.size() - half;
  return numeral_value(digits.first(half), base) *
             boost::multiprecision::pow(Integer(base),
                                        static_cast<unsigned>(tail)) +
         numeral_value(digits.last(tail), base);
}

/// A = [a_1 ... a_e]_B, so that x/N = A/(B^e - 1).
inline Integer period_value(const Expansion &exp) {
  return numeral_value(exp.digits, exp.base);
}

inline constexpr std::string_view kDefaultAlphabet =
    "0123456789abcdefghijklmnopqrstuvwxyz";

/// "0.(a_1...a_e)_B". Bases above 36 with no alphabet use "[12],[40],..".
inline std::string render_digits(std::span<const u64> digits, u64 base,
                                 std::optional<std::string_view> alphabet = {}) {
  std::string body;
  if (alphabet || base <= kDefaultAlphabet.size()) {
    const std::string_view symbols = alphabet.value_or(kDefaultAlphabet);
    if (symbols.size() < base)
      throw domain_error("alphabet has " + std::to_string(symbols.size()) +
                         " symbols, base " + std::to_string(base) +
                         " needs more");
    body.reserve(digits.size());
    for (u64 a : digits)
      body.push_back(symbols[a]);
  } else {
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (i != 0)
        body += ',';
      body += '[' + std::to_string(digits[i]) + ']';
    }
  }
  return "0.(" + body + ")_" + std::to_string(base);
}

inline std::string render_digits(const Expansion &exp,
                                 std::optional<std::string_view> alphabet = {}) {
  return render_digits(exp.digits, exp.base, alphabet);
}

} // namespace midy
