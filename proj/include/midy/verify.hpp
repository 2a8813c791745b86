#pragma once

// Exhaustive property suites, one per statement id 1..7, over every applicable
// (B, N, d, x) within a bound. Instances are visited in ascending (B, N, ...)
// order so the first counterexample reported is the smallest one.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "midy/core_arith.hpp"
#include "midy/expansion.hpp"
#include "midy/midy.hpp"
#include "midy/theorems.hpp"

namespace midy {

struct VerifySummary {
  int theorem = 0;
  u64 instances = 0;
  u64 violations = 0;
  std::optional<std::string> counterexample;
  /// Statement 7: denominators with 3 not dividing N and m_3(3) != 1.
  std::vector<u64> exceptions;

  void record(bool ok, const std::string &where) {
    ++instances;
    if (!ok) {
      ++violations;
      if (!counterexample)
        counterexample = where;
    }
  }
};

namespace detail {

inline std::string where(u64 b, u64 n) {
  return "B=" + std::to_string(b) + " N=" + std::to_string(n);
}

inline std::vector<u64> sorted_bases(std::span<const u64> bases) {
  std::vector<u64> out(bases.begin(), bases.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (u64 b : out) {
    if (b < 2)
      throw domain_error("bases must be at least 2");
  }
  return out;
}

inline std::vector<u64> primes_below(u64 bound) {
  std::vector<u64> out;
  for (u64 p = 2; p < bound; ++p) {
    if (is_prime(p))
      out.push_back(p);
  }
  return out;
}

// Block identity and period-value identity for every x in N*, d | e.
inline void verify_block_identity(VerifySummary &s, u64 b, u64 n) {
  const u64 e = multiplicative_order(b, n);
  const Integer full = base_power_minus_one(b, e);
  const std::vector<u64> ds = divisors(e);
  for (u64 x = 1; x < n; ++x) {
    if (gcd(x, n) != 1)
      continue;
    const Expansion exp = long_division(x, n, b, e);
    const std::string at = where(b, n) + " x=" + std::to_string(x);
    s.record(period_value(exp) * n == full * x, at + " period value");
    for (u64 d : ds) {
      bool ok = true;
      try {
        const BlockDecomposition dec = block_decompose(exp, d);
        ok = dec.block_sum * n ==
             dec.remainder_sum * base_power_minus_one(b, e / d);
      } catch (const property_violation &) {
        ok = false;
      }
      s.record(ok, at + " d=" + std::to_string(d));
    }
  }
}

inline void verify_oracle(VerifySummary &s, u64 b, u64 n) {
  const u64 e = multiplicative_order(b, n);
  const std::vector<u64> ds = divisors(e);
  std::vector<bool> brute;
  try {
    brute = is_midy_brute_all(n, b, ds);
  } catch (const property_violation &ex) {
    s.record(false, where(b, n) + " " + ex.what());
    return;
  }
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const MidyVerdict v = midy_verdict(n, b, ds[i], e);
    bool ok = v.member == brute[i];
    ok = ok && (ds[i] != 1 || !v.member);
    ok = ok && (v.gcd_value != 1 || v.member);
    s.record(ok, where(b, n) + " d=" + std::to_string(ds[i]));
  }
}

inline void verify_monotone(VerifySummary &s, u64 b, u64 n) {
  const u64 e = multiplicative_order(b, n);
  const std::vector<u64> ds = divisors(e);
  std::vector<bool> member;
  for (u64 d : ds)
    member.push_back(midy_verdict(n, b, d, e).member);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j = i; j < ds.size(); ++j) {
      if (ds[j] % ds[i] != 0)
        continue;
      s.record(!member[i] || member[j], where(b, n) + " d1=" +
                                            std::to_string(ds[i]) + " d2=" +
                                            std::to_string(ds[j]));
    }
  }
}

inline void verify_prime_products(VerifySummary &s, u64 b,
                                  const std::vector<u64> &primes) {
  std::vector<u64> orders;
  for (u64 p : primes)
    orders.push_back(multiplicative_order(b, p, {{p, 1U}}));
  std::vector<u64> ds;
  for (u64 e : orders) {
    for (u64 d : divisors(e)) {
      if (d >= 2)
        ds.push_back(d);
    }
  }
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());

  for (u64 d : ds) {
    std::vector<u64> family;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (orders[i] % d == 0)
        family.push_back(primes[i]);
    }
    const std::size_t m = family.size();
    auto check_tuple = [&](std::vector<u64> tuple) {
      std::string at = "B=" + std::to_string(b) + " d=" + std::to_string(d) + " p=";
      for (u64 p : tuple)
        at += std::to_string(p) + ",";
      at.pop_back();
      std::optional<bool> verdict;
      bool ok = true;
      for (unsigned mask = 0; mask < (1U << tuple.size()); ++mask) {
        std::vector<PrimePower> pps;
        for (std::size_t i = 0; i < tuple.size(); ++i)
          pps.push_back({tuple[i], (mask >> i) & 1U ? 2U : 1U});
        try {
          const Theorem4Analysis a = theorem4_analyze(pps, b, d);
          if (verdict && *verdict != a.member)
            ok = false;
          verdict = a.member;
          if (is_prime(d) && theorem4_prime_d_check(pps, b, d) != a.member)
            ok = false;
        } catch (const property_violation &) {
          ok = false;
        }
      }
      s.record(ok, at);
    };
    for (std::size_t i = 0; i < m; ++i) {
      check_tuple({family[i]});
      for (std::size_t j = i + 1; j < m; ++j) {
        check_tuple({family[i], family[j]});
        for (std::size_t l = j + 1; l < m; ++l)
          check_tuple({family[i], family[j], family[l]});
      }
    }
  }
}

} // namespace detail

/// Runs suite `theorem` over 2 <= N <= bound (primes below bound for 3, 4).
inline VerifySummary verify_theorem(int theorem, u64 bound,
                                    std::span<const u64> base_list) {
  if (theorem < 1 || theorem > 7)
    throw domain_error("theorem id must be in 1..7");
  if (bound < 2)
    throw domain_error("bound must be at least 2");
  const std::vector<u64> bases = detail::sorted_bases(base_list);
  VerifySummary s;
  s.theorem = theorem;

  for (u64 b : bases) {
    if (theorem == 3) {
      for (u64 p : detail::primes_below(bound + 1)) {
        if (b % p == 0)
          continue;
        const u64 e = multiplicative_order(b, p, {{p, 1U}});
        for (unsigned h = 1; h <= 3; ++h) {
          for (u64 d : divisors(e)) {
            if (d < 2)
              continue;
            bool ok = true;
            try {
              ok = theorem3_check(p, h, b, d);
            } catch (const property_violation &) {
              ok = false;
            } catch (const domain_error &) {
              continue; // p^h past 64 bits
            }
            s.record(ok, detail::where(b, p) + " h=" + std::to_string(h) +
                             " d=" + std::to_string(d));
          }
        }
      }
      continue;
    }
    if (theorem == 4) {
      std::vector<u64> primes;
      for (u64 p : detail::primes_below(bound)) {
        if (p != 2 && b % p != 0)
          primes.push_back(p);
      }
      for (u64 p : {7U, 19U, 9901U}) {
        if (b % p != 0 && std::find(primes.begin(), primes.end(), p) == primes.end())
          primes.push_back(p);
      }
      std::sort(primes.begin(), primes.end());
      detail::verify_prime_products(s, b, primes);
      continue;
    }

    for (u64 n = 2; n <= bound; ++n) {
      if (gcd(n, b) != 1)
        continue;
      switch (theorem) {
      case 1:
        detail::verify_block_identity(s, b, n);
        break;
      case 2:
        detail::verify_oracle(s, b, n);
        break;
      case 5:
        detail::verify_monotone(s, b, n);
        break;
      case 6: {
        const u64 e = multiplicative_order(b, n);
        if (e % 2 != 0 || !midy_verdict(n, b, 2, e).member)
          break;
        const Theorem6Report r = theorem6_check(n, b);
        for (const MultiplierObservation &obs : r.checks)
          s.record(obs.holds, detail::where(b, n) + " d=" + std::to_string(obs.d) +
                                  " x=" + std::to_string(obs.numerator));
        s.record(r.complement_failures == 0,
                 detail::where(b, n) + " x_{k+1} = N - x_1");
        break;
      }
      case 7: {
        const u64 e = multiplicative_order(b, n);
        if (e % 3 != 0 || !midy_verdict(n, b, 3, e).member)
          break;
        const Theorem7Report r = theorem7_check(n, b);
        for (const Theorem7Entry &entry : r.entries) {
          if (entry.asserted)
            s.record(entry.holds, detail::where(b, n) + " x=" +
                                      std::to_string(entry.numerator));
        }
        if (r.exceptional &&
            std::find(s.exceptions.begin(), s.exceptions.end(), n) ==
                s.exceptions.end())
          s.exceptions.push_back(n);
        break;
      }
      default:
        break;
      }
    }
  }
  std::sort(s.exceptions.begin(), s.exceptions.end());
  return s;
}

} // namespace midy
