#pragma once

// Exact integer kernels: gcd, modular exponentiation, primality, factorization,
// multiplicative order, and the multiplicity / lcm / Q-part machinery.
//
// Two integer domains are used throughout:
//   std::uint64_t  - moduli, bases, numerators; products go through 128 bits.
//   midy::Integer  - unbounded values (B^k - 1, block sums, lcm chains).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace midy {

using Integer = boost::multiprecision::cpp_int;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Precondition violated by the caller (bad argument, unmet hypothesis).
class domain_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A checked mathematical property failed on a concrete instance.
class property_violation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Prime -> multiplicity, keys strictly increasing.
struct FactorMap {
  std::map<Integer, unsigned> factors;

  [[nodiscard]] Integer product() const {
    Integer n = 1;
    for (const auto &[p, m] : factors)
      n *= boost::multiprecision::pow(p, m);
    return n;
  }

  bool operator==(const FactorMap &) const = default;
};

/// Word-sized factorization, ascending primes.
using PrimePowers = std::vector<std::pair<u64, unsigned>>;

// ---------------------------------------------------------------------------
// gcd / modular arithmetic

inline u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

inline Integer gcd(const Integer &a, const Integer &b) {
  return boost::multiprecision::gcd(a, b);
}

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 add_mod(u64 a, u64 b, u64 m) {
  // a, b < m
  return a >= m - b ? a - (m - b) : a + b;
}

/// base^exponent mod modulus by square-and-multiply.
inline u64 mod_pow(u64 base, u64 exponent, u64 modulus) {
  if (modulus < 2)
    throw domain_error("modulus must be at least 2");
  u64 result = 1;
  base %= modulus;
  while (exponent != 0) {
    if (exponent & 1U)
      result = mul_mod(result, base, modulus);
    base = mul_mod(base, base, modulus);
    exponent >>= 1U;
  }
  return result;
}

inline Integer mod_pow(const Integer &base, const Integer &exponent,
                       const Integer &modulus) {
  if (modulus < 2)
    throw domain_error("modulus must be at least 2");
  if (base < 0 || exponent < 0)
    throw domain_error("mod_pow expects non-negative base and exponent");
  return boost::multiprecision::powm(base, exponent, modulus);
}

/// 1 + t + t^2 + ... + t^(terms-1) mod m, in O(log terms) multiplications.
inline u64 geometric_sum_mod(u64 t, u64 terms, u64 m) {
  if (m < 2)
    throw domain_error("modulus must be at least 2");
  t %= m;
  // Walk the bits of `terms` from the top, maintaining
  //   sum = F(t, n) and power = t^n for the prefix n read so far.
  u64 sum = 0;
  u64 power = 1;
  for (int bit = 63; bit >= 0; --bit) {
    // n -> 2n: F(2n) = F(n) (1 + t^n)
    sum = mul_mod(sum, add_mod(1, power, m), m);
    power = mul_mod(power, power, m);
    if ((terms >> bit) & 1U) {
      // n -> n+1: F(n+1) = F(n) + t^n
      sum = add_mod(sum, power, m);
      power = mul_mod(power, t, m);
    }
  }
  return sum;
}

// ---------------------------------------------------------------------------
// primality

namespace detail {

inline bool strong_probable_prime(u64 n, u64 a) {
  a %= n;
  if (a == 0)
    return true;
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  u64 x = mod_pow(a, d, n);
  if (x == 1 || x == n - 1)
    return true;
  for (unsigned r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1)
      return true;
  }
  return false;
}

inline bool strong_probable_prime(const Integer &n, unsigned a) {
  Integer d = n - 1;
  unsigned s = 0;
  while (!boost::multiprecision::bit_test(d, 0)) {
    d >>= 1;
    ++s;
  }
  Integer x = boost::multiprecision::powm(Integer(a), d, n);
  if (x == 1 || x == n - 1)
    return true;
  for (unsigned r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n - 1)
      return true;
  }
  return false;
}

// The first 13 primes form a deterministic witness set below 3.3e24.
inline constexpr unsigned kWitnesses[] = {2,  3,  5,  7,  11, 13, 17,
                                          19, 23, 29, 31, 37, 41};
// Extra fixed bases for inputs past that bound (strong probable primes).
inline constexpr unsigned kExtraWitnesses[] = {43, 47, 53, 59, 61, 67,
                                               71, 73, 79, 83, 89, 97};

inline const Integer &witness_bound() {
  static const Integer bound("3317044064679887385961981");
  return bound;
}

} // namespace detail

inline bool is_prime(u64 n) {
  if (n < 2)
    return false;
  for (u64 p : {2U, 3U, 5U, 7U, 11U, 13U, 17U, 19U, 23U, 29U, 31U, 37U}) {
    if (n % p == 0)
      return n == p;
  }
  if (n < 37 * 37)
    return true;
  for (u64 a : {2U, 3U, 5U, 7U, 11U, 13U, 17U, 19U, 23U, 29U, 31U, 37U}) {
    if (!detail::strong_probable_prime(n, a))
      return false;
  }
  return true;
}

inline bool is_prime(const Integer &n) {
  if (n < 2)
    return false;
  if (n <= std::numeric_limits<u64>::max())
    return is_prime(n.convert_to<u64>());
  for (unsigned p : detail::kWitnesses) {
    if (n % p == 0)
      return false;
  }
  for (unsigned a : detail::kWitnesses) {
    if (!detail::strong_probable_prime(n, a))
      return false;
  }
  if (n >= detail::witness_bound()) {
    for (unsigned a : detail::kExtraWitnesses) {
      if (!detail::strong_probable_prime(n, a))
        return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// factorization

namespace detail {

inline constexpr u64 kTrialBound = 1'000'000;

inline const std::vector<std::uint32_t> &small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialBound, false);
    std::vector<std::uint32_t> out;
    for (u64 i = 2; i < kTrialBound; ++i) {
      if (composite[i])
        continue;
      out.push_back(static_cast<std::uint32_t>(i));
      for (u64 j = i * i; j < kTrialBound; j += i)
        composite[j] = true;
    }
    return out;
  }();
  return primes;
}

// Brent's variant of Pollard rho with polynomial x^2 + c; n odd composite.
inline u64 pollard_brent(u64 n, u64 c) {
  constexpr u64 kBatch = 128;
  u64 y = 2, x = 2, ys = 2, q = 1, g = 1;
  for (u64 r = 1; g == 1; r <<= 1U) {
    x = y;
    for (u64 i = 0; i < r; ++i)
      y = add_mod(mul_mod(y, y, n), c, n);
    for (u64 k = 0; k < r && g == 1; k += kBatch) {
      ys = y;
      for (u64 i = 0; i < std::min(kBatch, r - k); ++i) {
        y = add_mod(mul_mod(y, y, n), c, n);
        q = mul_mod(q, x > y ? x - y : y - x, n);
      }
      g = gcd(q, n);
    }
  }
  if (g == n) {
    do {
      ys = add_mod(mul_mod(ys, ys, n), c, n);
      g = gcd(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g;
}

inline void split_u64(u64 n, std::map<u64, unsigned> &out) {
  if (n == 1)
    return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  for (u64 c = 1;; ++c) {
    u64 f = pollard_brent(n, c);
    if (f != n) {
      split_u64(f, out);
      split_u64(n / f, out);
      return;
    }
  }
}

inline Integer pollard_brent(const Integer &n, unsigned c) {
  constexpr unsigned kBatch = 64;
  Integer y = 2, x = 2, ys = 2, q = 1, g = 1;
  auto step = [&](const Integer &v) { return (v * v + c) % n; };
  auto diff = [](const Integer &a, const Integer &b) {
    return a > b ? Integer(a - b) : Integer(b - a);
  };
  for (unsigned long long r = 1; g == 1; r <<= 1U) {
    x = y;
    for (unsigned long long i = 0; i < r; ++i)
      y = step(y);
    for (unsigned long long k = 0; k < r && g == 1; k += kBatch) {
      ys = y;
      for (unsigned long long i = 0; i < std::min<unsigned long long>(kBatch, r - k);
           ++i) {
        y = step(y);
        q = q * diff(x, y) % n;
      }
      g = gcd(q, n);
    }
  }
  if (g == n) {
    do {
      ys = step(ys);
      g = gcd(diff(x, ys), n);
    } while (g == 1);
  }
  return g;
}

inline void split_big(const Integer &n, std::map<Integer, unsigned> &out) {
  if (n == 1)
    return;
  if (n <= std::numeric_limits<u64>::max()) {
    std::map<u64, unsigned> small;
    split_u64(n.convert_to<u64>(), small);
    for (const auto &[p, m] : small)
      out[Integer(p)] += m;
    return;
  }
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  for (unsigned c = 1;; ++c) {
    Integer f = pollard_brent(n, c);
    if (f != n) {
      split_big(f, out);
      split_big(n / f, out);
      return;
    }
  }
}

} // namespace detail

/// Complete factorization of a machine word; empty for n = 1.
inline PrimePowers factorize_u64(u64 n) {
  if (n == 0)
    throw domain_error("cannot factor zero");
  PrimePowers out;
  for (std::uint32_t p : detail::small_primes()) {
    if (static_cast<u64>(p) * p > n)
      break;
    if (n % p != 0)
      continue;
    unsigned m = 0;
    do {
      n /= p;
      ++m;
    } while (n % p == 0);
    out.emplace_back(p, m);
  }
  if (n == 1)
    return out;
  if (n < detail::kTrialBound * detail::kTrialBound || is_prime(n)) {
    out.emplace_back(n, 1);
    return out;
  }
  std::map<u64, unsigned> rest;
  detail::split_u64(n, rest);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

inline FactorMap factorize(const Integer &n) {
  if (n < 2)
    throw domain_error("factorize requires n >= 2");
  FactorMap result;
  if (n <= std::numeric_limits<u64>::max()) {
    for (const auto &[p, m] : factorize_u64(n.convert_to<u64>()))
      result.factors.emplace(Integer(p), m);
    return result;
  }
  Integer rest = n;
  for (std::uint32_t p : detail::small_primes()) {
    if (Integer(p) * p > rest)
      break;
    if (rest % p != 0)
      continue;
    unsigned m = 0;
    do {
      rest /= p;
      ++m;
    } while (rest % p == 0);
    result.factors.emplace(Integer(p), m);
  }
  detail::split_big(rest, result.factors);
  return result;
}

/// Sorted list of all positive divisors.
inline std::vector<u64> divisors(u64 n) {
  if (n == 0)
    throw domain_error("divisors of zero");
  std::vector<u64> out{1};
  for (const auto &[p, m] : factorize_u64(n)) {
    const std::size_t count = out.size();
    u64 pk = 1;
    for (unsigned i = 0; i < m; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < count; ++j)
        out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// multiplicative order

/// Smallest e >= 1 with B^e = 1 (mod N), given its factorization of N.
inline u64 multiplicative_order(u64 base, u64 modulus,
                                const PrimePowers &modulus_factors) {
  if (modulus < 2)
    throw domain_error("modulus must be at least 2");
  if (gcd(base % modulus, modulus) != 1)
    throw domain_error("base not coprime to modulus");

  // Exponent candidate: lcm of phi(p^h) over the prime powers of N, kept in
  // factored form so the stripping loop needs no further factoring.
  std::map<u64, unsigned> candidate;
  for (const auto &[p, h] : modulus_factors) {
    if (h > 1) {
      unsigned &slot = candidate[p];
      slot = std::max(slot, h - 1);
    }
    for (const auto &[q, m] : factorize_u64(p - 1)) {
      unsigned &slot = candidate[q];
      slot = std::max(slot, m);
    }
  }
  u64 order = 1;
  for (const auto &[q, m] : candidate) {
    for (unsigned i = 0; i < m; ++i)
      order *= q;
  }
  for (const auto &[q, m] : candidate) {
    for (unsigned i = 0; i < m; ++i) {
      if (mod_pow(base, order / q, modulus) != 1)
        break;
      order /= q;
    }
  }
  return order;
}

inline u64 multiplicative_order(u64 base, u64 modulus) {
  if (modulus < 2)
    throw domain_error("modulus must be at least 2");
  if (gcd(base % modulus, modulus) != 1)
    throw domain_error("base not coprime to modulus");
  return multiplicative_order(base, modulus, factorize_u64(modulus));
}

// ---------------------------------------------------------------------------
// multiplicity, lcm, Q parts

/// Largest m with q^m | w, by repeated exact division.
inline unsigned multiplicity(const Integer &q, Integer w) {
  if (!is_prime(q))
    throw domain_error("multiplicity requires a prime q");
  if (w < 1)
    throw domain_error("multiplicity requires w >= 1");
  unsigned m = 0;
  Integer quotient, remainder;
  for (;;) {
    boost::multiprecision::divide_qr(w, q, quotient, remainder);
    if (remainder != 0)
      return m;
    w = quotient;
    ++m;
  }
}

/// lcm as the product of q^max(v_q(w_i)) over the primes of the inputs.
inline Integer lcm_many(std::span<const Integer> ws) {
  if (ws.empty())
    throw domain_error("lcm of an empty list");
  std::map<Integer, unsigned> exponents;
  for (const Integer &w : ws) {
    if (w < 1)
      throw domain_error("lcm entries must be positive");
    if (w == 1)
      continue;
    for (const auto &[q, m] : factorize(w).factors) {
      unsigned &slot = exponents[q];
      slot = std::max(slot, m);
    }
  }
  FactorMap merged{std::move(exponents)};
  return merged.product();
}

inline Integer lcm_many(std::initializer_list<Integer> ws) {
  return lcm_many(std::span<const Integer>(ws.begin(), ws.size()));
}

struct QPartSplit {
  Integer u; // Q part
  Integer y; // Q' part
  bool operator==(const QPartSplit &) const = default;
};

/// Splits w = u*y where u collects exactly the primes in `primes`.
inline QPartSplit q_part_split(std::span<const Integer> primes, const Integer &w) {
  if (w < 1)
    throw domain_error("q_part_split requires w >= 1");
  QPartSplit out{1, w};
  for (const Integer &q : primes) {
    if (!is_prime(q))
      throw domain_error("Q must contain only primes, got " + q.str());
    const unsigned v = multiplicity(q, out.y);
    const Integer qv = boost::multiprecision::pow(q, v);
    out.u *= qv;
    out.y /= qv;
  }
  return out;
}

inline QPartSplit q_part_split(std::initializer_list<Integer> primes,
                               const Integer &w) {
  return q_part_split(std::span<const Integer>(primes.begin(), primes.size()),
                      w);
}

} // namespace midy
