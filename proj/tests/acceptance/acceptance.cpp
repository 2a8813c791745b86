// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <streambuf>
#include <string>
#include <thread>
#include <vector>

#include "midy/scan.hpp"
#include "midy/theorems.hpp"
#include "midy/verify.hpp"

using namespace midy;

namespace {

struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string &what) {
    if (!ok)
      failures.push_back(what);
  }
};

std::vector<u64> digits_of(const std::string &s) {
  std::vector<u64> out;
  for (char c : s)
    out.push_back(static_cast<u64>(c - '0'));
  return out;
}

Integer pow_minus_one(u64 b, u64 k) {
  return boost::multiprecision::pow(Integer(b), static_cast<unsigned>(k)) - 1;
}

void published_examples(Check &c) {
  struct Row {
    u64 x, n;
    const char *period;
    bool halves_to_nines;
  };
  const std::vector<Row> rows{
      {1, 3, "3", false},          {1, 7, "142857", true},
      {2, 11, "18", true},         {1, 13, "076923", true},
      {2, 13, "153846", true},     {1, 17, "0588235294117647", true},
      {1, 37, "027", false},       {1, 73, "01369863", true},
      {1, 77, "012987", true},     {1, 803, "00124533", false},
      {1, 121, "0082644628099173553719", true},
  };
  for (const Row &r : rows) {
    const std::string at = std::to_string(r.x) + "/" + std::to_string(r.n);
    const Expansion e = expand(r.x, r.n, 10);
    c.expect(e.digits == digits_of(r.period), at + " digits");
    if (e.period_length % 2 == 0) {
      const BlockDecomposition half = block_decompose(e, 2);
      const Integer nines = pow_minus_one(10, half.k);
      c.expect((half.block_sum == nines) == r.halves_to_nines, at + " half-sum");
      c.expect(digit_complement_check(e) == r.halves_to_nines, at + " nines");
    }
  }
  c.expect(block_decompose(expand(1, 803, 10), 2).block_sum == 4545, "1/803 half-sum");

  const Expansion e14 = expand(1, 14, 5);
  c.expect(e14.digits == std::vector<u64>{0, 1, 3, 4, 3, 1}, "1/14 base 5 digits");
  c.expect(e14.remainders == std::vector<u64>{1, 5, 11, 13, 9, 3},
           "1/14 base 5 remainders");
  const BlockDecomposition two = block_decompose(e14, 2);
  c.expect(two.block_sum == 124 && render_digits(std::vector<u64>{4, 4, 4}, 5) ==
                                       "0.(444)_5",
           "S_2(1) = [444]_5");
  c.expect(two.remainder_sum == 14, "R_2(1) = 14");
  const BlockDecomposition three = block_decompose(e14, 3);
  c.expect(three.block_sum == 36, "S_3(1) = 36");
  c.expect(three.remainder_sum == 21, "R_3(1) = 21");

  c.expect(!is_midy(69307, 10, 2).member, "69307 not in M_2");
  c.expect(is_midy(69307, 10, 3).member, "69307 in M_3");
  c.expect(is_midy(69307, 10, 6).member, "69307 in M_6");
  const Expansion e69307 = expand(1, 69307, 10);
  c.expect(block_decompose(e69307, 6).block_sum == 198, "69307 S_6 = 198");
  c.expect(block_decompose(e69307, 4).block_sum == 999, "69307 S_4 = 999");

  const u64 big = 1316833;
  std::vector<u64> members;
  for (u64 d : divisors(multiplicative_order(10, big))) {
    if (d >= 2 && is_midy(big, 10, d).member)
      members.push_back(d);
  }
  c.expect(members == std::vector<u64>{4, 9, 12, 18, 36}, "1316833 members");
  const BlockDecomposition six = block_decompose(expand(1, big, 10), 6);
  c.expect(six.block_sum == 3857139, "1316833 S_6 = 3857139");
  c.expect(six.multiplier == Rational::reduced(27, 7), "1316833 ratio 27/7");

  c.expect(block_decompose(expand(1, 19, 10), 6).block_sum == 2997, "19 S_6 = 2997");
  c.expect(multiplier(expand(3, 7, 10), 3) == Rational::reduced(2, 1), "m_3(3) = 2 for 7");
}

void oracle_equivalence(Check &c) {
  for (u64 b : {2U, 3U, 5U, 10U, 16U}) {
    for (u64 n = 2; n <= 500; ++n) {
      if (gcd(n, b) != 1)
        continue;
      const u64 e = multiplicative_order(b, n);
      std::vector<u64> ds;
      for (u64 d : divisors(e)) {
        if (d >= 2)
          ds.push_back(d);
      }
      if (ds.empty())
        continue;
      const std::vector<bool> brute = is_midy_brute_all(n, b, ds);
      for (std::size_t i = 0; i < ds.size(); ++i) {
        c.expect(is_midy(n, b, ds[i]).member == brute[i],
                 "B=" + std::to_string(b) + " N=" + std::to_string(n) +
                     " d=" + std::to_string(ds[i]));
      }
    }
  }
}

void summary_clean(Check &c, int id, u64 bound, const std::vector<u64> &bases) {
  const VerifySummary s = verify_theorem(id, bound, bases);
  c.expect(s.instances > 0, "suite " + std::to_string(id) + " checked nothing");
  c.expect(s.violations == 0, "suite " + std::to_string(id) + ": " +
                                  s.counterexample.value_or(""));
}

void identity_suite(Check &c) {
  summary_clean(c, 1, 200, {2, 3, 5, 10, 16});
}

void theorem_suites(Check &c) {
  const std::vector<u64> bases{2, 3, 5, 10, 16};
  summary_clean(c, 5, 500, bases);
  summary_clean(c, 6, 500, bases);
  const VerifySummary seven = verify_theorem(7, 500, std::vector<u64>{10});
  c.expect(seven.violations == 0, "m_3 statements: " + seven.counterexample.value_or(""));
  c.expect(seven.exceptions == std::vector<u64>{7}, "m_3(3) exceptions are exactly {7}");
  summary_clean(c, 4, 100, {10});
}

void counterexamples(Check &c) {
  const MidyVerdict v = is_midy(21, 10, 3);
  c.expect(v.member, "21 in M_3(10)");
  c.expect(v.gcd_value == 3, "gcd(99, 21) = 3");
  const Theorem4Analysis a = theorem4_analyze({{7, 1}, {9901, 1}, {19, 1}}, 10, 6);
  c.expect(!a.member, "7 * 9901 * 19 not in M_6(10)");
  for (const PrimeLedger &row : a.per_prime)
    c.expect(row.c == 0, "c_i = 0 for p = " + std::to_string(row.p));
  c.expect(a.direct_member == std::optional<bool>(false), "direct verdict agrees");
}

// Streams output through FNV-1a without keeping it.
class HashBuf : public std::streambuf {
public:
  std::uint64_t hash = 1469598103934665603ULL;
  std::uint64_t bytes = 0;

protected:
  int_type overflow(int_type ch) override {
    if (ch != traits_type::eof())
      add(static_cast<char>(ch));
    return ch;
  }
  std::streamsize xsputn(const char *s, std::streamsize n) override {
    for (std::streamsize i = 0; i < n; ++i)
      add(s[i]);
    return n;
  }

private:
  void add(char ch) {
    hash = (hash ^ static_cast<unsigned char>(ch)) * 1099511628211ULL;
    ++bytes;
  }
};

struct ScanDigest {
  std::uint64_t hash, bytes;
  u64 records;
};

ScanDigest digest_scan(u64 first, u64 last, unsigned jobs) {
  ScanOptions options;
  options.first = first;
  options.last = last;
  options.jobs = jobs;
  HashBuf buf;
  std::ostream out(&buf);
  const u64 records = run_scan(options, out);
  return {buf.hash, buf.bytes, records};
}

std::string full_scan_note;

void scan_floor(Check &c) {
  const unsigned jobs = std::max(4U, std::thread::hardware_concurrency());
  const auto start = std::chrono::steady_clock::now();
  const ScanDigest full = digest_scan(2, 100000, jobs);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(full.records == 39999, "record count " + std::to_string(full.records));
  c.expect(seconds < 300.0, "scan took " + std::to_string(seconds) + " s");

  const ScanDigest a = digest_scan(2, 20000, 1);
  const ScanDigest b = digest_scan(2, 20000, jobs);
  c.expect(a.hash == b.hash && a.bytes == b.bytes, "output differs between job counts");

  char note[160];
  std::snprintf(note, sizeof note, "scan %.1f s with %u jobs, %llu records, %llu bytes",
                seconds, jobs, static_cast<unsigned long long>(full.records),
                static_cast<unsigned long long>(full.bytes));
  full_scan_note = note;
}

} // namespace

int main() {
  struct Criterion {
    int id;
    const char *name;
    std::function<void(Check &)> run;
    double budget; // seconds, 0 for none
  };
  const std::vector<Criterion> criteria{
      {1, "published worked examples", published_examples, 5.0},
      {2, "oracle equivalence N <= 500", oracle_equivalence, 60.0},
      {3, "block and period identities N <= 200", identity_suite, 0.0},
      {4, "theorem suites", theorem_suites, 0.0},
      {5, "counterexample pinning", counterexamples, 0.0},
      {6, "scan 2..100000 base 10 all divisors", scan_floor, 0.0},
  };

  bool all = true;
  for (const Criterion &cr : criteria) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception &ex) {
      c.failures.push_back(std::string("exception: ") + ex.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.budget > 0 && seconds >= cr.budget)
      c.failures.push_back("over budget");
    const bool ok = c.failures.empty();
    all = all && ok;
    std::printf("%s criterion %d: %s (%.2f s)", ok ? "PASS" : "FAIL", cr.id, cr.name,
                seconds);
    if (cr.id == 6 && !full_scan_note.empty())
      std::printf(" [%s]", full_scan_note.c_str());
    if (!ok) {
      std::printf(" -- %zu failure(s), first: %s", c.failures.size(),
                  c.failures.front().c_str());
    }
    std::printf("\n");
    std::fflush(stdout);
  }
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
