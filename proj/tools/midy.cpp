// midy: periodic base-B expansions and the generalized Midy property.
//
//   midy expand X N [--base B] [-d D] [--json]
//   midy check N [--base B] (-d D | --all-divisors) [--explain] [--json]
//   midy scan FIRST..LAST [--base B,...] [-d D,...] [--oracle] [--jobs J] [--out PATH]
//   midy verify ID [--bound M] [--bases B,...]
//
// Exit codes: 0 success / member, 1 non-member, 2 usage or domain error,
// 3 property violation, 4 I/O failure.

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "midy/core_arith.hpp"
#include "midy/expansion.hpp"
#include "midy/midy.hpp"
#include "midy/scan.hpp"
#include "midy/serialize.hpp"
#include "midy/theorems.hpp"
#include "midy/verify.hpp"

namespace {

using midy::u64;

enum Exit : int {
  kOk = 0,
  kNonMember = 1,
  kUsage = 2,
  kViolation = 3,
  kIo = 4,
};

std::string join(const std::vector<u64> &values, const char *sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != 0)
      out += sep;
    out += std::to_string(values[i]);
  }
  return out;
}

std::string join(const std::vector<midy::Integer> &values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != 0)
      out += ", ";
    out += values[i].str();
  }
  return out;
}

u64 parse_u64(const std::string &text) {
  u64 value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw midy::domain_error("not a non-negative integer: '" + text + "'");
  return value;
}

std::pair<u64, u64> parse_range(const std::string &text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos)
    throw midy::domain_error("range must look like FIRST..LAST, got '" + text + "'");
  return {parse_u64(text.substr(0, dots)), parse_u64(text.substr(dots + 2))};
}

// --- expand ----------------------------------------------------------------

struct ExpandArgs {
  u64 x = 0, n = 0, base = 10;
  std::optional<u64> d;
  std::optional<std::string> alphabet;
  bool json = false;
  u64 max_period = midy::kDefaultMaxPeriod;
};

int run_expand(const ExpandArgs &a) {
  const midy::Expansion exp = midy::expand(a.x, a.n, a.base, {a.max_period});
  std::optional<std::string_view> alphabet;
  if (a.alphabet)
    alphabet = *a.alphabet;
  const std::string rendered = midy::render_digits(exp, alphabet);

  if (!a.d) {
    if (a.json)
      std::cout << midy::to_json(exp).dump() << '\n';
    else
      std::cout << rendered << '\n'
                << "period length: " << exp.period_length << '\n'
                << "remainders: " << join(exp.remainders) << '\n';
    return kOk;
  }

  const midy::BlockDecomposition dec = midy::block_decompose(exp, *a.d);
  const midy::MidyVerdict verdict =
      midy::midy_verdict(exp.denominator, exp.base, *a.d, exp.period_length);
  if (a.json) {
    std::cout << midy::to_json(exp, dec, verdict).dump() << '\n';
    return kOk;
  }
  std::cout << rendered << '\n'
            << "period length: " << exp.period_length << '\n'
            << "remainders: " << join(exp.remainders) << '\n'
            << "d = " << dec.d << ", k = " << dec.k << '\n'
            << "blocks: " << join(dec.blocks) << '\n'
            << "S_d = " << dec.block_sum << '\n'
            << "R_d = " << dec.remainder_sum << '\n'
            << "multiplier = " << dec.multiplier.str() << '\n'
            << (verdict.member ? "member" : "non-member") << " (route "
            << midy::to_string(verdict.route) << ")\n";
  return kOk;
}

// --- check -----------------------------------------------------------------

struct CheckArgs {
  u64 n = 0, base = 10;
  std::optional<u64> d;
  bool all_divisors = false;
  bool explain = false;
  bool json = false;
};

// Primes of N meeting the ledger hypothesis for d, or nullopt.
std::optional<midy::Theorem4Analysis> try_ledger(u64 n, u64 b, u64 d) {
  if (d < 2)
    return std::nullopt;
  std::vector<midy::PrimePower> pps;
  for (const auto &[p, h] : midy::factorize_u64(n)) {
    if (midy::multiplicative_order(b, p, {{p, 1U}}) % d != 0)
      return std::nullopt;
    pps.push_back({p, h});
  }
  return midy::theorem4_analyze(pps, b, d);
}

void print_verdict(const midy::MidyVerdict &v) {
  std::cout << "N = " << v.denominator << ", B = " << v.base << ", d = " << v.d
            << ": " << (v.member ? "member" : "non-member") << " (route "
            << midy::to_string(v.route) << ", F_d(B^k) mod N = "
            << v.f_d_residue << ")\n";
}

void print_explain(const midy::MidyVerdict &v,
                   const std::optional<midy::Theorem4Analysis> &ledger) {
  std::cout << "  gcd(B^k - 1, N) = " << v.gcd_value
            << (v.gcd_value == 1 ? " (gcd route applies)\n"
                                 : " (gcd route inapplicable)\n");
  if (!ledger) {
    std::cout << "  prime-ledger hypothesis not met\n";
    return;
  }
  std::cout << "  Q = {" << join(ledger->q_primes) << "}\n";
  for (const midy::PrimeLedger &row : ledger->per_prime)
    std::cout << "  p = " << row.p << "^" << row.h << ": e = " << row.e
              << ", k = " << row.k << ", g = " << row.g << ", E = " << row.E
              << ", K = " << row.K << ", c = " << row.c << ", u = " << row.u
              << ", y = " << row.y << ", condition "
              << (row.condition ? "holds" : "fails") << '\n';
  std::cout << "  U = " << ledger->U << ", Y = " << ledger->Y
            << ", K = " << ledger->K << ", E = " << ledger->E << " -> "
            << (ledger->member ? "member" : "non-member") << '\n';
}

int run_check(const CheckArgs &a) {
  if (a.d.has_value() == a.all_divisors)
    throw midy::domain_error("give exactly one of -d/--divisor or --all-divisors");
  midy::detail::validate_pair(a.n, a.base);
  const u64 e = midy::multiplicative_order(a.base, a.n);

  std::vector<u64> ds;
  if (a.d) {
    ds.push_back(*a.d);
  } else {
    for (u64 d : midy::divisors(e)) {
      if (d >= 2)
        ds.push_back(d);
    }
  }

  midy::Json doc = midy::Json::array();
  bool member = false;
  for (u64 d : ds) {
    const midy::MidyVerdict v = midy::midy_verdict(a.n, a.base, d, e);
    member = v.member;
    std::optional<midy::Theorem4Analysis> ledger;
    if (a.explain)
      ledger = try_ledger(a.n, a.base, d);
    if (a.json) {
      midy::Json item = midy::to_json(v);
      if (a.explain) {
        item["gcd_route_applies"] = v.gcd_value == 1;
        item["analysis"] = ledger ? midy::to_json(*ledger) : midy::Json(nullptr);
      }
      doc.push_back(std::move(item));
    } else {
      print_verdict(v);
      if (a.explain)
        print_explain(v, ledger);
    }
  }

  if (a.json) {
    if (a.d) {
      std::cout << doc.front().dump() << '\n';
    } else {
      midy::Json out = midy::Json::object();
      midy::put_integer(out, "denominator", a.n);
      midy::put_integer(out, "base", a.base);
      midy::put_integer(out, "period_length", e);
      out["verdicts"] = std::move(doc);
      std::cout << out.dump() << '\n';
    }
  } else if (a.all_divisors) {
    std::vector<u64> members;
    for (u64 d : ds) {
      if (midy::midy_verdict(a.n, a.base, d, e).member)
        members.push_back(d);
    }
    std::cout << "members: {" << join(members) << "}\n";
  }
  if (a.d)
    return member ? kOk : kNonMember;
  return kOk;
}

// --- scan ------------------------------------------------------------------

struct ScanArgs {
  std::string range;
  std::vector<u64> bases{10};
  std::vector<u64> divisors;
  bool all_divisors = false;
  bool oracle = false;
  unsigned jobs = 0;
  std::string out;
  u64 max_period = midy::kDefaultMaxPeriod;
};

int run_scan(const ScanArgs &a) {
  midy::ScanOptions options;
  std::tie(options.first, options.last) = parse_range(a.range);
  options.bases = a.bases;
  options.divisor_filter = a.all_divisors ? std::vector<u64>{} : a.divisors;
  options.oracle = a.oracle;
  options.jobs = a.jobs != 0 ? a.jobs : std::max(1U, std::thread::hardware_concurrency());
  options.max_period = a.max_period;

  if (a.out.empty()) {
    midy::run_scan(options, std::cout);
    return kOk;
  }
  std::ofstream file(a.out, std::ios::binary | std::ios::trunc);
  if (!file)
    throw midy::io_error("cannot open " + a.out + " for writing");
  midy::run_scan(options, file);
  return kOk;
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
  int theorem = 0;
  u64 bound = 200;
  std::vector<u64> bases{10};
};

int run_verify(const VerifyArgs &a) {
  const midy::VerifySummary s = midy::verify_theorem(a.theorem, a.bound, a.bases);
  std::cout << "theorem " << s.theorem << ": " << s.instances
            << " instances checked, " << s.violations << " violations\n";
  if (a.theorem == 7)
    std::cout << "exceptions (3 does not divide N, m_3(3) != 1): {"
              << join(s.exceptions) << "}\n";
  if (s.violations != 0) {
    std::cout << "counterexample: " << *s.counterexample << '\n';
    return kViolation;
  }
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Periodic base-B expansions and the generalized Midy property"};
  app.require_subcommand(1);

  ExpandArgs ex;
  auto *expand = app.add_subcommand("expand", "Expand x/N in base B");
  expand->add_option("x", ex.x, "Numerator, 1 <= x < N")->required();
  expand->add_option("N", ex.n, "Denominator, coprime to the base")->required();
  expand->add_option("--base,-b", ex.base, "Base (default 10)");
  expand->add_option("-d,--divisor", ex.d, "Split the period into d blocks");
  expand->add_option("--alphabet", ex.alphabet, "Digit symbols for rendering");
  expand->add_option("--max-period", ex.max_period, "Longest period to expand");
  expand->add_flag("--json", ex.json, "Emit JSON");

  CheckArgs ck;
  auto *check = app.add_subcommand("check", "Decide membership of N in M_d(B)");
  check->add_option("N", ck.n, "Denominator")->required();
  check->add_option("--base,-b", ck.base, "Base (default 10)");
  check->add_option("-d,--divisor", ck.d, "Divisor of the period length");
  check->add_flag("--all-divisors", ck.all_divisors, "Every divisor d >= 2");
  check->add_flag("--explain", ck.explain, "Show gcd route and prime ledger");
  check->add_flag("--json", ck.json, "Emit JSON");

  ScanArgs sc;
  auto *scan = app.add_subcommand("scan", "Scan a range of denominators");
  scan->add_option("range", sc.range, "FIRST..LAST")->required();
  scan->add_option("--base,--bases,-b", sc.bases, "Bases (comma separated)")
      ->delimiter(',');
  scan->add_option("-d,--divisor", sc.divisors, "Only these divisors")
      ->delimiter(',');
  scan->add_flag("--all-divisors", sc.all_divisors, "Every divisor d >= 2 (default)");
  scan->add_flag("--oracle", sc.oracle, "Cross-check against brute force");
  scan->add_option("--jobs,-j", sc.jobs, "Worker threads (default: all cores)");
  scan->add_option("--out,-o", sc.out, "Write JSON lines here");
  scan->add_option("--max-period", sc.max_period, "Longest period to expand");

  VerifyArgs vf;
  auto *verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("theorem", vf.theorem, "Statement id 1..7")
      ->required()
      ->check(CLI::Range(1, 7));
  verify->add_option("--bound", vf.bound, "Largest N (or prime bound)");
  verify->add_option("--bases,--base,-b", vf.bases, "Bases (comma separated)")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*expand)
      return run_expand(ex);
    if (*check)
      return run_check(ck);
    if (*scan)
      return run_scan(sc);
    if (*verify)
      return run_verify(vf);
  } catch (const midy::domain_error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const midy::property_violation &e) {
    std::cerr << "property violation: " << e.what() << '\n';
    return kViolation;
  } catch (const midy::io_error &e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  }
  return kUsage;
}
