#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>

#include "depbound/errors.hpp"

namespace depbound {

// Exact rational with int64 storage. Arithmetic goes through __int128 and
// returns nullopt on overflow so callers can degrade to double gracefully.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static std::optional<Rational> make(__int128 n, __int128 d) {
    if (d == 0) return std::nullopt;
    if (d < 0) { n = -n; d = -d; }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) return std::nullopt;
    return Rational{static_cast<std::int64_t>(n), static_cast<std::int64_t>(d)};
  }

  static std::optional<Rational> add(Rational a, Rational b) {
    return make(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                static_cast<__int128>(a.den) * b.den);
  }
  static std::optional<Rational> sub(Rational a, Rational b) {
    return add(a, Rational{-b.num, b.den});
  }
  static std::optional<Rational> mul(Rational a, Rational b) {
    return make(static_cast<__int128>(a.num) * b.num, static_cast<__int128>(a.den) * b.den);
  }
  static std::optional<Rational> div(Rational a, Rational b) {
    if (b.num == 0) return std::nullopt;
    return make(static_cast<__int128>(a.num) * b.den, static_cast<__int128>(a.den) * b.num);
  }
  static std::optional<Rational> pow_u(Rational a, unsigned e) {
    Rational acc{1, 1};
    while (e > 0) {
      if (e & 1u) {
        auto r = mul(acc, a);
        if (!r) return std::nullopt;
        acc = *r;
      }
      e >>= 1u;
      if (e == 0) break;
      auto s = mul(a, a);
      if (!s) return std::nullopt;
      a = *s;
    }
    return acc;
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  double log() const {
    if (num == 0) return -std::numeric_limits<double>::infinity();
    return std::log(static_cast<double>(num)) - std::log(static_cast<double>(den));
  }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

 private:
  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
  }
};

// Parses "a/b", a plain integer, or a decimal string. Exact rationals come
// back in .first; decimals only fill .second.
struct ParsedProb {
  std::optional<Rational> exact;
  double value = 0.0;
};

inline ParsedProb parse_prob(const std::string& s) {
  if (s.empty()) fail(Err::InvalidConfig, "empty probability literal");
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      std::int64_t a = std::stoll(s.substr(0, slash));
      std::int64_t b = std::stoll(s.substr(slash + 1));
      auto r = Rational::make(a, b);
      if (!r) fail(Err::InvalidConfig, "bad rational literal '" + s + "'");
      return {r, r->value()};
    }
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find('E') == std::string::npos) {
      std::int64_t a = std::stoll(s);
      return {Rational{a, 1}, static_cast<double>(a)};
    }
    return {std::nullopt, std::stod(s)};
  } catch (const std::logic_error&) {
    fail(Err::InvalidConfig, "bad probability literal '" + s + "'");
  }
}

}  // namespace depbound
