#pragma once

// Range scan over (B, N) pairs: one record per coprime pair, emitted as JSON
// lines in (B, N) order whatever the number of worker threads.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "midy/core_arith.hpp"
#include "midy/expansion.hpp"
#include "midy/midy.hpp"
#include "midy/serialize.hpp"

namespace midy {

class io_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct DivisorRecord {
  u64 d = 0;
  bool member = false;
  bool gcd_sufficient = false;
  std::vector<Rational> multipliers; // distinct m_d over the cycles of 1/N
};

struct ScanRecord {
  u64 base = 0;
  u64 denominator = 0;
  u64 period_length = 0;
  std::vector<DivisorRecord> divisors;
  std::vector<u64> gcd_sufficient_members; // gcd(B^k - 1, N) = 1
  std::vector<u64> members_without_gcd;    // member although gcd != 1
};

struct ScanOptions {
  u64 first = 2;
  u64 last = 2;
  std::vector<u64> bases{10};
  std::vector<u64> divisor_filter; // empty: every d >= 2 dividing e
  bool oracle = false;
  unsigned jobs = 1;
  u64 max_period = kDefaultMaxPeriod;
  std::size_t batch_size = 2048;
};

/// Builds the record for one coprime pair. Throws property_violation if
/// membership is not closed under multiples, if the multipliers disagree with
/// the verdict, or (with `oracle`) if the brute-force route disagrees.
inline ScanRecord scan_one(u64 n, u64 b, const ScanOptions &options) {
  detail::validate_pair(n, b);
  const PrimePowers factors = factorize_u64(n);
  const u64 e = multiplicative_order(b, n, factors);
  if (e > options.max_period)
    throw domain_error("period too long: N = " + std::to_string(n) +
                       " has period " + std::to_string(e));

  ScanRecord rec{b, n, e, {}, {}, {}};
  std::vector<u64> ds;
  for (u64 d : divisors(e)) {
    if (d < 2)
      continue;
    if (!options.divisor_filter.empty() &&
        std::find(options.divisor_filter.begin(), options.divisor_filter.end(),
                  d) == options.divisor_filter.end())
      continue;
    ds.push_back(d);
  }

  const Expansion exp = detail::long_division(1, n, b, e);
  std::vector<u128> sums;
  for (u64 d : ds) {
    const MidyVerdict v = midy_verdict(n, b, d, e);
    DivisorRecord dr{d, v.member, v.gcd_value == 1, {}};

    const u64 k = e / d;
    sums.assign(k, 0);
    for (u64 i = 0; i < e; ++i)
      sums[i % k] += exp.remainders[i];
    std::sort(sums.begin(), sums.end());
    sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
    for (u128 r : sums) {
      Integer value = static_cast<u64>(r >> 64U);
      value <<= 64;
      value += static_cast<u64>(r);
      dr.multipliers.push_back(Rational::reduced(std::move(value), Integer(n)));
      if (dr.multipliers.back().is_integer() != v.member)
        throw property_violation("cycle multiplier integrality disagrees with "
                                 "membership: N = " + std::to_string(n) +
                                 ", B = " + std::to_string(b) +
                                 ", d = " + std::to_string(d));
    }

    if (dr.gcd_sufficient)
      rec.gcd_sufficient_members.push_back(d);
    else if (dr.member)
      rec.members_without_gcd.push_back(d);
    rec.divisors.push_back(std::move(dr));
  }

  for (const DivisorRecord &lo : rec.divisors) {
    if (!lo.member)
      continue;
    for (const DivisorRecord &hi : rec.divisors) {
      if (hi.d % lo.d == 0 && !hi.member)
        throw property_violation("membership not closed under multiples: N = " +
                                 std::to_string(n) + ", d1 = " +
                                 std::to_string(lo.d) + ", d2 = " +
                                 std::to_string(hi.d));
    }
  }

  if (options.oracle && !ds.empty()) {
    const std::vector<bool> brute = is_midy_brute_all(n, b, ds);
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (brute[i] != rec.divisors[i].member)
        throw property_violation("oracle mismatch: N = " + std::to_string(n) +
                                 ", B = " + std::to_string(b) +
                                 ", d = " + std::to_string(ds[i]));
    }
  }
  return rec;
}

inline Json to_json(const ScanRecord &rec) {
  Json obj = Json::object();
  put_integer(obj, "base", rec.base);
  put_integer(obj, "denominator", rec.denominator);
  put_integer(obj, "period_length", rec.period_length);
  Json divs = Json::array();
  for (const DivisorRecord &dr : rec.divisors) {
    Json d = Json::object();
    put_integer(d, "divisor", dr.d);
    d["member"] = dr.member;
    d["gcd_sufficient"] = dr.gcd_sufficient;
    Json ms = Json::array();
    for (const Rational &m : dr.multipliers)
      ms.push_back(to_json(m));
    d["multipliers"] = std::move(ms);
    divs.push_back(std::move(d));
  }
  obj["divisors"] = std::move(divs);
  put_integer_array<u64>(obj, "gcd_sufficient_members", rec.gcd_sufficient_members);
  put_integer_array<u64>(obj, "members_without_gcd", rec.members_without_gcd);
  return obj;
}

/// Streams one JSON line per coprime (B, N), B ascending then N ascending.
/// Returns the number of records written.
inline u64 run_scan(const ScanOptions &options, std::ostream &out) {
  if (options.first > options.last)
    throw domain_error("empty range");
  if (options.first < 2)
    throw domain_error("range must start at 2 or above");
  std::vector<u64> bases = options.bases;
  std::sort(bases.begin(), bases.end());
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
  for (u64 b : bases) {
    if (b < 2)
      throw domain_error("bases must be at least 2");
  }

  struct Pair {
    u64 b, n;
  };
  const unsigned jobs = std::max(1U, options.jobs);
  const std::size_t batch = std::max<std::size_t>(1, options.batch_size);
  std::vector<Pair> pending;
  std::vector<std::string> lines;
  u64 written = 0;

  auto flush = [&] {
    lines.assign(pending.size(), {});
    std::vector<std::exception_ptr> errors(pending.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i = next++; i < pending.size(); i = next++) {
        try {
          lines[i] = to_json(scan_one(pending[i].n, pending[i].b, options)).dump();
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    if (jobs == 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < jobs; ++t)
        pool.emplace_back(work);
    }
    for (std::size_t i = 0; i < pending.size(); ++i) {
      if (errors[i])
        std::rethrow_exception(errors[i]);
      out << lines[i] << '\n';
      if (!out)
        throw io_error("failed writing scan output");
      ++written;
    }
    pending.clear();
  };

  for (u64 b : bases) {
    for (u64 n = options.first;; ++n) {
      if (gcd(n, b) == 1) {
        pending.push_back({b, n});
        if (pending.size() == batch)
          flush();
      }
      if (n == options.last)
        break;
    }
  }
  flush();
  out.flush();
  if (!out)
    throw io_error("failed writing scan output");
  return written;
}

} // namespace midy
