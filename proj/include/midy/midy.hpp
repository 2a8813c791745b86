#pragma once

// Block decomposition of a period and membership in M_d(B).
//
// For e = ord(B, N) and d | e with k = e/d, the period a_1 ... a_e splits into
// d blocks A_1 ... A_d of k digits. With S_d = sum of A_j and R_d the sum of
// the stride-k remainders x_1, x_{k+1}, ..., x_{(d-1)k+1}:
//
//     N * S_d(x) = R_d(x) * (B^k - 1)
//
// and N is in M_d(B) iff 1 + B^k + ... + B^{k(d-1)} = 0 (mod N).

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "midy/core_arith.hpp"
#include "midy/expansion.hpp"

namespace midy {

/// Exact rational in lowest terms, positive denominator.
struct Rational {
  Integer num = 0;
  Integer den = 1;

  static Rational reduced(Integer num, Integer den) {
    if (den == 0)
      throw domain_error("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const Integer g = gcd(abs(num), den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    return {std::move(num), std::move(den)};
  }

  [[nodiscard]] bool is_integer() const { return den == 1; }
  [[nodiscard]] std::string str() const {
    return is_integer() ? num.str() : num.str() + "/" + den.str();
  }

  bool operator==(const Rational &) const = default;
  std::strong_ordering operator<=>(const Rational &other) const {
    const Integer lhs = num * other.den;
    const Integer rhs = other.num * den;
    return lhs < rhs ? std::strong_ordering::less
           : rhs < lhs ? std::strong_ordering::greater
                       : std::strong_ordering::equal;
  }
};

struct BlockDecomposition {
  // Identity of the underlying expansion.
  u64 base = 0;
  u64 denominator = 0;
  u64 numerator = 0;
  u64 period_length = 0;

  u64 d = 0;
  u64 k = 0;
  std::vector<Integer> blocks; // A_1 ... A_d, each < B^k
  Integer block_sum;           // S_d(x)
  Integer remainder_sum;       // R_d(x)
  Rational multiplier;         // R_d(x) / N
};

enum class Route { modular_criterion, gcd_sufficiency, digit_sum_witness };

inline std::string_view to_string(Route route) {
  switch (route) {
  case Route::modular_criterion:
    return "modular-criterion";
  case Route::gcd_sufficiency:
    return "gcd-sufficiency";
  case Route::digit_sum_witness:
    return "digit-sum-witness";
  }
  return "unknown";
}

struct MidyVerdict {
  u64 denominator = 0;
  u64 base = 0;
  u64 d = 0;
  bool member = false;
  Route route = Route::modular_criterion;
  u64 f_d_residue = 0; // F_d(B^k) mod N
  u64 gcd_value = 0;   // gcd(B^k - 1, N)
};

namespace detail {

inline void require_divides(u64 d, u64 e) {
  if (d == 0 || e % d != 0)
    throw domain_error("d must divide period length (d = " + std::to_string(d) +
                       ", e = " + std::to_string(e) + ")");
}

inline void validate_pair(u64 n, u64 b) {
  if (b < 2)
    throw domain_error("base must be at least 2");
  if (n < 2)
    throw domain_error("denominator must be at least 2");
  if (gcd(n, b) != 1)
    throw domain_error("denominator shares factor with base");
}

inline Integer base_power_minus_one(u64 b, u64 k) {
  return boost::multiprecision::pow(Integer(b), static_cast<unsigned>(k)) - 1;
}

} // namespace detail

// ---------------------------------------------------------------------------
// membership, modular route

/// Verdict when ord(B, N) is already known. The caller guarantees `order`.
inline MidyVerdict midy_verdict(u64 n, u64 b, u64 d, u64 order) {
  detail::require_divides(d, order);
  const u64 k = order / d;
  const u64 t = mod_pow(b, k, n);
  const u64 residue = geometric_sum_mod(t, d, n);
  const u64 g = gcd((t + n - 1) % n, n);

  MidyVerdict v{n, b, d, residue == 0, Route::modular_criterion, residue, g};
  if (g == 1) {
    if (!v.member)
      throw property_violation("gcd(B^k - 1, N) = 1 but F_d(B^k) != 0 mod N "
                               "for N = " + std::to_string(n));
    v.route = Route::gcd_sufficiency;
  }
  return v;
}

/// Membership of N in M_d(B) from F_d(B^k) mod N; B^k is never formed.
inline MidyVerdict is_midy(u64 n, u64 b, u64 d) {
  detail::validate_pair(n, b);
  return midy_verdict(n, b, d, multiplicative_order(b, n));
}

// ---------------------------------------------------------------------------
// blocks

/// R_d for the d-cycle starting at x_start (1-based start in [1, k]).
inline Integer cycle_remainder_sum(const Expansion &exp, u64 d, u64 start) {
  // d * N < 2^88 under the period guard, so 128 bits cannot overflow.
  const u64 k = exp.period_length / d;
  u128 acc = 0;
  for (u64 j = 0; j < d; ++j)
    acc += exp.remainders[start - 1 + j * k];
  Integer r = static_cast<u64>(acc >> 64U);
  r <<= 64;
  r += static_cast<u64>(acc);
  return r;
}

inline BlockDecomposition block_decompose(const Expansion &exp, u64 d) {
  detail::require_divides(d, exp.period_length);
  const u64 k = exp.period_length / d;
  const std::span<const u64> digits(exp.digits);

  BlockDecomposition out;
  out.base = exp.base;
  out.denominator = exp.denominator;
  out.numerator = exp.numerator;
  out.period_length = exp.period_length;
  out.d = d;
  out.k = k;
  out.blocks.reserve(d);
  out.block_sum = 0;
  for (u64 j = 0; j < d; ++j) {
    out.blocks.push_back(numeral_value(digits.subspan(j * k, k), exp.base));
    out.block_sum += out.blocks.back();
  }
  out.remainder_sum = cycle_remainder_sum(exp, d, 1);
  out.multiplier = Rational::reduced(out.remainder_sum, Integer(exp.denominator));

  const Integer modulus = detail::base_power_minus_one(exp.base, k);
  if (out.block_sum * exp.denominator != out.remainder_sum * modulus)
    throw property_violation("N * S_d != R_d * (B^k - 1) for " +
                             std::to_string(exp.numerator) + "/" +
                             std::to_string(exp.denominator));
  if (out.remainder_sum <= 0 ||
      out.remainder_sum >= Integer(d) * exp.denominator)
    throw property_violation("R_d outside (0, dN)");
  return out;
}

/// Verdict decided by the digit sums of a single numerator's expansion.
inline MidyVerdict verdict_from_decomposition(const BlockDecomposition &dec) {
  MidyVerdict v = midy_verdict(dec.denominator, dec.base, dec.d, dec.period_length);
  const bool witnessed =
      dec.block_sum % detail::base_power_minus_one(dec.base, dec.k) == 0;
  if (witnessed != v.member)
    throw property_violation("digit-sum witness disagrees with F_d(B^k) mod N "
                             "for N = " + std::to_string(dec.denominator));
  v.route = Route::digit_sum_witness;
  return v;
}

/// m_d(x) = R_d(x) / N in lowest terms.
inline Rational multiplier(const Expansion &exp, u64 d) {
  detail::require_divides(d, exp.period_length);
  return Rational::reduced(cycle_remainder_sum(exp, d, 1),
                           Integer(exp.denominator));
}

/// a_i + a_{k+i} = B - 1 for all i <= k = e/2.
inline bool digit_complement_check(const Expansion &exp) {
  if (exp.period_length % 2 != 0)
    throw domain_error("digit complement check needs an even period length");
  const u64 k = exp.period_length / 2;
  for (u64 i = 0; i < k; ++i) {
    if (exp.digits[i] + exp.digits[k + i] != exp.base - 1)
      return false;
  }
  return true;
}

/// Column sums a_i + a_{i+k} + ... + a_{i+(d-1)k} for i = 1..k.
inline std::vector<u64> column_sums(const Expansion &exp, u64 d) {
  detail::require_divides(d, exp.period_length);
  const u64 k = exp.period_length / d;
  std::vector<u64> sums(k, 0);
  for (u64 i = 0; i < exp.period_length; ++i)
    sums[i % k] += exp.digits[i];
  return sums;
}

// ---------------------------------------------------------------------------
// membership, brute-force route

namespace detail {

// S_d from column sums by Horner in base B: sum_t c_t B^{k-t}.
inline Integer block_sum_by_columns(const Expansion &exp, u64 d) {
  Integer s = 0;
  for (u64 c : column_sums(exp, d)) {
    s *= exp.base;
    s += c;
  }
  return s;
}

} // namespace detail

/// For each d in `ds`, whether S_d(x) = 0 mod (B^k - 1) for every x in N*.
/// Expands every numerator; throws property_violation if some x agree and
/// others do not.
inline std::vector<bool> is_midy_brute_all(u64 n, u64 b, std::span<const u64> ds) {
  detail::validate_pair(n, b);
  const u64 order = multiplicative_order(b, n);
  std::vector<Integer> moduli;
  moduli.reserve(ds.size());
  for (u64 d : ds) {
    detail::require_divides(d, order);
    moduli.push_back(detail::base_power_minus_one(b, order / d));
  }

  std::vector<bool> result(ds.size(), false);
  bool first = true;
  for (u64 x = 1; x < n; ++x) {
    if (gcd(x, n) != 1)
      continue;
    const Expansion exp = detail::long_division(x, n, b, order);
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const bool divisible =
          detail::block_sum_by_columns(exp, ds[i]) % moduli[i] == 0;
      if (first) {
        result[i] = divisible;
      } else if (result[i] != divisible) {
        throw property_violation(
            "S_d divisibility differs between numerators: N = " +
            std::to_string(n) + ", B = " + std::to_string(b) +
            ", d = " + std::to_string(ds[i]) + ", x = " + std::to_string(x));
      }
    }
    first = false;
  }
  return result;
}

inline bool is_midy_brute(u64 n, u64 b, u64 d) {
  const u64 ds[] = {d};
  return is_midy_brute_all(n, b, ds).front();
}

} // namespace midy
