#pragma once

// JSON encoding with a fixed key order and no floating point. Integers above
// 2^53 - 1 are written as decimal strings under a sibling "<key>_str" key so
// that every JSON consumer reads them exactly.

#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "json.hpp"

#include "midy/core_arith.hpp"
#include "midy/expansion.hpp"
#include "midy/midy.hpp"
#include "midy/theorems.hpp"

namespace midy {

using Json = nlohmann::ordered_json;

inline constexpr u64 kMaxSafeJsonInteger = (u64{1} << 53U) - 1;

inline void put_integer(Json &obj, const std::string &key, const Integer &value) {
  if (value >= 0 && value <= kMaxSafeJsonInteger)
    obj[key] = value.convert_to<u64>();
  else
    obj[key + "_str"] = value.str();
}

inline void put_integer(Json &obj, const std::string &key, u64 value) {
  if (value <= kMaxSafeJsonInteger)
    obj[key] = value;
  else
    obj[key + "_str"] = std::to_string(value);
}

template <typename T>
void put_integer_array(Json &obj, const std::string &key, std::span<const T> values) {
  bool safe = true;
  for (const T &v : values) {
    if constexpr (std::is_same_v<T, Integer>)
      safe = safe && v >= 0;
    safe = safe && v <= kMaxSafeJsonInteger;
  }
  Json arr = Json::array();
  for (const T &v : values) {
    if (safe)
      arr.push_back(static_cast<u64>(v));
    else if constexpr (std::is_same_v<T, Integer>)
      arr.push_back(v.str());
    else
      arr.push_back(std::to_string(v));
  }
  obj[safe ? key : key + "_str"] = std::move(arr);
}

inline Json to_json(const Rational &r) {
  Json obj = Json::object();
  put_integer(obj, "num", r.num);
  put_integer(obj, "den", r.den);
  return obj;
}

inline void append_expansion(Json &obj, const Expansion &exp) {
  put_integer(obj, "base", exp.base);
  put_integer(obj, "denominator", exp.denominator);
  put_integer(obj, "numerator", exp.numerator);
  put_integer(obj, "period_length", exp.period_length);
  put_integer_array<u64>(obj, "digits", exp.digits);
  put_integer_array<u64>(obj, "remainders", exp.remainders);
}

inline Json to_json(const Expansion &exp) {
  Json obj = Json::object();
  append_expansion(obj, exp);
  return obj;
}

/// Expansion plus its blocks for one divisor, and the verdict for that d.
inline Json to_json(const Expansion &exp, const BlockDecomposition &dec,
                    const MidyVerdict &verdict) {
  Json obj = Json::object();
  append_expansion(obj, exp);
  put_integer(obj, "divisor", dec.d);
  put_integer_array<Integer>(obj, "blocks", dec.blocks);
  put_integer(obj, "block_sum", dec.block_sum);
  put_integer(obj, "remainder_sum", dec.remainder_sum);
  obj["multiplier"] = to_json(dec.multiplier);
  obj["member"] = verdict.member;
  obj["route"] = std::string(to_string(verdict.route));
  return obj;
}

inline Json to_json(const MidyVerdict &v) {
  Json obj = Json::object();
  put_integer(obj, "denominator", v.denominator);
  put_integer(obj, "base", v.base);
  put_integer(obj, "divisor", v.d);
  obj["member"] = v.member;
  obj["route"] = std::string(to_string(v.route));
  put_integer(obj, "f_d_residue", v.f_d_residue);
  put_integer(obj, "gcd", v.gcd_value);
  return obj;
}

inline Json to_json(const Theorem4Analysis &a) {
  Json obj = Json::object();
  put_integer(obj, "base", a.base);
  put_integer(obj, "divisor", a.d);
  put_integer_array<u64>(obj, "q_primes", a.q_primes);
  Json rows = Json::array();
  for (const PrimeLedger &row : a.per_prime) {
    Json r = Json::object();
    put_integer(r, "p", row.p);
    put_integer(r, "h", u64{row.h});
    put_integer(r, "e", row.e);
    put_integer(r, "k", row.k);
    put_integer(r, "g", u64{row.g});
    put_integer(r, "E", row.E);
    put_integer(r, "K", row.K);
    put_integer(r, "c", u64{row.c});
    put_integer(r, "w", row.w);
    put_integer(r, "u", row.u);
    put_integer(r, "y", row.y);
    r["condition"] = row.condition;
    rows.push_back(std::move(r));
  }
  obj["primes"] = std::move(rows);
  put_integer(obj, "U", a.U);
  put_integer(obj, "Y", a.Y);
  put_integer(obj, "K", a.K);
  put_integer(obj, "E", a.E);
  obj["member"] = a.member;
  if (a.direct_member)
    obj["direct_member"] = *a.direct_member;
  return obj;
}

} // namespace midy
