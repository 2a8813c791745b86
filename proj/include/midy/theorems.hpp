#pragma once

// Statement checkers. Each takes a concrete instance, decides whether the
// statement's hypothesis holds, and checks the conclusion against direct
// computation. A failed conclusion throws property_violation or is reported
// through the returned record, never silently dropped.

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "midy/core_arith.hpp"
#include "midy/expansion.hpp"
#include "midy/midy.hpp"

namespace midy {

struct PrimePower {
  u64 p = 0;
  unsigned h = 1;
};

// ---------------------------------------------------------------------------
// products of primes in M_d(B): the lcm / Q-part ledger

struct PrimeLedger {
  u64 p = 0;
  unsigned h = 0;
  u64 e = 0;       // ord(B, p) = d k
  u64 k = 0;
  unsigned g = 0;  // ord(B, p^h) = e p^g
  u64 E = 0;       // ord(B, p^h)
  u64 K = 0;       // E / d = k p^g
  unsigned c = 0;  // largest c with d^c | k
  u64 w = 0;       // k / d^c
  u64 u = 0;       // Q part of w
  u64 y = 0;       // Q' part of w
  bool condition = false; // U / (d^c u) != 0 mod d
};

struct Theorem4Analysis {
  u64 base = 0;
  u64 d = 0;
  std::vector<u64> q_primes; // primes dividing d
  std::vector<PrimeLedger> per_prime;
  Integer U, Y, K, E;
  bool member = false;
  /// Modular verdict on the product itself, when it fits in 64 bits.
  std::optional<bool> direct_member;
};

namespace detail {

inline u64 checked_power(u64 p, unsigned h) {
  u64 out = 1;
  for (unsigned i = 0; i < h; ++i) {
    if (out > std::numeric_limits<u64>::max() / p)
      throw domain_error("prime power " + std::to_string(p) + "^" +
                         std::to_string(h) + " exceeds 64 bits");
    out *= p;
  }
  return out;
}

// Product of prime powers, or nullopt when it leaves 64 bits.
inline std::optional<u64> product_of(std::span<const PrimePower> pps) {
  u128 n = 1;
  for (const PrimePower &pp : pps) {
    for (unsigned i = 0; i < pp.h; ++i) {
      n *= pp.p;
      if (n > std::numeric_limits<u64>::max())
        return std::nullopt;
    }
  }
  return static_cast<u64>(n);
}

// Distinct primes coprime to B, each with d | ord(B, p). Returns ord(B, p_i).
inline std::vector<u64> validate_prime_family(std::span<const PrimePower> pps,
                                              u64 b, u64 d) {
  if (pps.empty())
    throw domain_error("need at least one prime");
  if (b < 2)
    throw domain_error("base must be at least 2");
  if (d < 2)
    throw domain_error("d must be at least 2");
  std::set<u64> seen;
  std::vector<u64> orders;
  for (const PrimePower &pp : pps) {
    if (!is_prime(pp.p))
      throw domain_error(std::to_string(pp.p) + " is not prime");
    if (pp.h < 1)
      throw domain_error("prime exponents must be positive");
    if (!seen.insert(pp.p).second)
      throw domain_error("repeated prime " + std::to_string(pp.p));
    if (b % pp.p == 0)
      throw domain_error("prime " + std::to_string(pp.p) + " divides the base");
    const u64 e = multiplicative_order(b, pp.p, {{pp.p, 1U}});
    if (e % d != 0)
      throw domain_error("prime not in M_d(B): " + std::to_string(pp.p) +
                         " has ord " + std::to_string(e) + ", d = " +
                         std::to_string(d));
    orders.push_back(e);
  }
  return orders;
}

} // namespace detail

/// Fills the lcm / Q-part ledger for N = prod p_i^{h_i} and decides
/// membership from U / (d^{c_i} u_i) != 0 (mod d) for every i.
inline Theorem4Analysis theorem4_analyze(std::span<const PrimePower> prime_powers,
                                         u64 b, u64 d) {
  const std::vector<u64> orders =
      detail::validate_prime_family(prime_powers, b, d);

  Theorem4Analysis out;
  out.base = b;
  out.d = d;
  for (const auto &[q, m] : factorize_u64(d))
    out.q_primes.push_back(q);
  const std::vector<Integer> q_set(out.q_primes.begin(), out.q_primes.end());

  std::vector<Integer> q_parts, q_prime_parts, full_orders, reduced_orders;
  for (std::size_t i = 0; i < prime_powers.size(); ++i) {
    const PrimePower &pp = prime_powers[i];
    PrimeLedger row;
    row.p = pp.p;
    row.h = pp.h;
    row.e = orders[i];
    row.k = row.e / d;
    row.E = multiplicative_order(b, detail::checked_power(pp.p, pp.h),
                                 {{pp.p, pp.h}});
    if (row.E % row.e != 0)
      throw property_violation("ord(B, p) does not divide ord(B, p^h)");
    row.g = multiplicity(Integer(pp.p), Integer(row.E / row.e));
    const u64 lift = detail::checked_power(pp.p, row.g);
    if (row.E != row.e * lift)
      throw property_violation("ord(B, p^h) / ord(B, p) is not a power of p "
                               "for p = " + std::to_string(pp.p));
    row.K = row.k * lift;

    row.w = row.k;
    u64 d_power = 1;
    while (row.w % d == 0) {
      row.w /= d;
      d_power *= d;
      ++row.c;
    }
    const QPartSplit split = q_part_split(q_set, Integer(row.w));
    row.u = split.u.convert_to<u64>();
    row.y = split.y.convert_to<u64>();

    q_parts.emplace_back(Integer(d_power) * row.u);
    q_prime_parts.emplace_back(Integer(row.y) * lift);
    full_orders.emplace_back(row.E);
    reduced_orders.emplace_back(row.K);
    out.per_prime.push_back(row);
  }

  out.U = lcm_many(q_parts);
  out.Y = lcm_many(q_prime_parts);
  out.K = out.U * out.Y;
  out.E = lcm_many(full_orders);
  if (out.E != out.K * d || out.K != lcm_many(reduced_orders))
    throw property_violation("lcm ledger inconsistent: E != d U Y");

  out.member = true;
  for (std::size_t i = 0; i < out.per_prime.size(); ++i) {
    PrimeLedger &row = out.per_prime[i];
    row.condition = (out.U / q_parts[i]) % d != 0;
    out.member = out.member && row.condition;
  }

  if (const auto n = detail::product_of(prime_powers)) {
    const MidyVerdict direct = midy_verdict(*n, b, d, out.E.convert_to<u64>());
    out.direct_member = direct.member;
    if (direct.member != out.member)
      throw property_violation("ledger verdict disagrees with F_d(B^k) mod N "
                               "for N = " + std::to_string(*n));
  }
  return out;
}

inline Theorem4Analysis theorem4_analyze(std::initializer_list<PrimePower> pps,
                                         u64 b, u64 d) {
  return theorem4_analyze(std::span<const PrimePower>(pps.begin(), pps.size()),
                          b, d);
}

/// Prime-d shortcut: N in M_q(B) iff v_q(e_i) is the same for every i.
inline bool theorem4_prime_d_check(std::span<const PrimePower> prime_powers,
                                   u64 b, u64 q) {
  if (!is_prime(q))
    throw domain_error("equal-multiplicity criterion needs a prime d, got " +
                       std::to_string(q));
  const std::vector<u64> orders =
      detail::validate_prime_family(prime_powers, b, q);
  const unsigned first = multiplicity(Integer(q), Integer(orders.front()));
  for (u64 e : orders) {
    if (multiplicity(Integer(q), Integer(e)) != first)
      return false;
  }
  return true;
}

inline bool theorem4_prime_d_check(std::initializer_list<PrimePower> pps, u64 b,
                                   u64 q) {
  return theorem4_prime_d_check(
      std::span<const PrimePower>(pps.begin(), pps.size()), b, q);
}

// ---------------------------------------------------------------------------
// prime powers

/// If d | ord(B, p), checks p^h in M_d(B) and returns true; false when the
/// hypothesis is unmet (always the case for p = 2).
inline bool theorem3_check(u64 p, unsigned h, u64 b, u64 d) {
  if (!is_prime(p))
    throw domain_error(std::to_string(p) + " is not prime");
  if (b < 2)
    throw domain_error("base must be at least 2");
  if (b % p == 0)
    throw domain_error("prime divides the base");
  if (d < 2)
    throw domain_error("d must be at least 2");
  if (h < 1)
    throw domain_error("exponent must be positive");
  const u64 e = multiplicative_order(b, p, {{p, 1U}});
  if (e % d != 0)
    return false;
  const u64 n = detail::checked_power(p, h);
  const u64 order = multiplicative_order(b, n, {{p, h}});
  if (!midy_verdict(n, b, d, order).member)
    throw property_violation(std::to_string(p) + "^" + std::to_string(h) +
                             " not in M_" + std::to_string(d) + "(" +
                             std::to_string(b) + ")");
  return true;
}

// ---------------------------------------------------------------------------
// divisor monotonicity

/// Whether N in M_{d1}(B) => N in M_{d2}(B) held on this instance.
inline bool theorem5_check(u64 n, u64 b, u64 d1, u64 d2) {
  detail::validate_pair(n, b);
  const u64 e = multiplicative_order(b, n);
  if (d1 == 0 || d2 % d1 != 0 || e % d2 != 0)
    throw domain_error("need d1 | d2 | ord(B, N)");
  if (!midy_verdict(n, b, d1, e).member)
    return true;
  return midy_verdict(n, b, d2, e).member;
}

// ---------------------------------------------------------------------------
// multipliers

struct MultiplierObservation {
  u64 d = 0;
  u64 numerator = 0; // representative x of the d-cycle
  Rational multiplier;
  Rational expected;
  bool holds = false;
};

struct Theorem6Report {
  u64 denominator = 0;
  u64 base = 0;
  u64 period_length = 0;
  bool applicable = false; // N in M_2(B)
  std::vector<MultiplierObservation> checks;   // every even d, every cycle
  std::vector<MultiplierObservation> recorded; // m_d(1) when not applicable
  u64 complement_failures = 0;                 // x_{k+1} != N - x_1
  bool passed = true;
};

/// For N in M_2(B): m_d(x) = d/2 for every even d | e and every x in N*, and
/// x_{e/2+1} = N - x_1.
inline Theorem6Report theorem6_check(u64 n, u64 b) {
  detail::validate_pair(n, b);
  const u64 e = multiplicative_order(b, n);
  if (e % 2 != 0)
    throw domain_error("period length is odd");

  Theorem6Report report;
  report.denominator = n;
  report.base = b;
  report.period_length = e;
  report.applicable = midy_verdict(n, b, 2, e).member;

  std::vector<u64> even_divisors;
  for (u64 d : divisors(e)) {
    if (d % 2 == 0)
      even_divisors.push_back(d);
  }

  if (!report.applicable) {
    const Expansion exp = detail::long_division(1, n, b, e);
    for (u64 d : even_divisors) {
      report.recorded.push_back({d, 1, multiplier(exp, d),
                                 Rational::reduced(d, 2), false});
      report.recorded.back().holds =
          report.recorded.back().multiplier == report.recorded.back().expected;
    }
    return report;
  }

  // Every x in N* lies on exactly one orbit x, Bx, B^2x, ... of length e.
  std::vector<bool> seen(n, false);
  const u64 half = e / 2;
  for (u64 x = 1; x < n; ++x) {
    if (seen[x] || gcd(x, n) != 1)
      continue;
    const Expansion exp = detail::long_division(x, n, b, e);
    for (u64 i = 0; i < e; ++i) {
      seen[exp.remainders[i]] = true;
      if (exp.remainders[(i + half) % e] != n - exp.remainders[i])
        ++report.complement_failures;
    }
    for (u64 d : even_divisors) {
      const u64 k = e / d;
      const Rational expected = Rational::reduced(d, 2);
      for (u64 start = 1; start <= k; ++start) {
        MultiplierObservation obs{
            d, exp.remainders[start - 1],
            Rational::reduced(cycle_remainder_sum(exp, d, start), Integer(n)),
            expected, false};
        obs.holds = obs.multiplier == expected;
        report.passed = report.passed && obs.holds;
        report.checks.push_back(std::move(obs));
      }
    }
  }
  report.passed = report.passed && report.complement_failures == 0;
  return report;
}

struct Theorem7Entry {
  u64 numerator = 0;
  Rational multiplier;
  bool asserted = false; // the statement claims m_3(x) = 1 here
  bool holds = false;    // m_3(x) = 1
};

struct Theorem7Report {
  u64 denominator = 0;
  u64 base = 0;
  u64 period_length = 0;
  std::vector<Theorem7Entry> entries;
  /// 3 does not divide N yet m_3(3) != 1 (only N = 7 may do this).
  bool exceptional = false;
  bool passed = true;
};

/// m_3(1) = 1; m_3(2) = 1 for odd N; m_3(3) = 1 when 3 does not divide N and
/// N != 7. Numerators sharing a factor with N are skipped.
inline Theorem7Report theorem7_check(u64 n, u64 b) {
  detail::validate_pair(n, b);
  const u64 e = multiplicative_order(b, n);
  if (e % 3 != 0 || !midy_verdict(n, b, 3, e).member)
    throw domain_error("N not in M_3(B)");

  Theorem7Report report{n, b, e, {}, false, true};
  const Rational one = Rational::reduced(1, 1);
  for (u64 x : {1U, 2U, 3U}) {
    if (x >= n || gcd(x, n) != 1)
      continue;
    const Expansion exp = detail::long_division(x, n, b, e);
    Theorem7Entry entry{x, multiplier(exp, 3), false, false};
    entry.holds = entry.multiplier == one;
    if (x == 1)
      entry.asserted = true;
    else if (x == 2)
      entry.asserted = n % 2 == 1;
    else
      entry.asserted = n % 3 != 0 && n != 7;
    if (x == 3 && !entry.holds)
      report.exceptional = true;
    if (entry.asserted && !entry.holds)
      report.passed = false;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

} // namespace midy
