#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

#include "hrl/util.hpp"

namespace hrl {

// Exact rational with a +infinity point (den == 0, num == 1). All exponent
// arithmetic runs through this type so threshold identities hold with zero
// tolerance.
struct Rat {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rat() = default;
  Rat(std::int64_t n) : num(n), den(1) {}
  Rat(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  static Rat infinity() {
    Rat r;
    r.num = 1;
    r.den = 0;
    return r;
  }
  bool is_infinite() const { return den == 0; }

  void normalize() {
    if (den == 0) {
      num = 1;
      return;
    }
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  double value() const {
    if (is_infinite()) return std::numeric_limits<double>::infinity();
    return static_cast<double>(num) / static_cast<double>(den);
  }

  std::string str() const {
    if (is_infinite()) return "inf";
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  friend Rat operator+(Rat a, Rat b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return Rat(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rat operator-(Rat a, Rat b) {
    if (a.is_infinite()) return infinity();
    if (b.is_infinite()) throw DomainError("rational: inf subtrahend");
    return Rat(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rat operator*(Rat a, Rat b) {
    if (a.is_infinite() || b.is_infinite()) {
      if (a.num == 0 || b.num == 0) return Rat(0);
      return infinity();
    }
    return Rat(a.num * b.num, a.den * b.den);
  }
  friend Rat operator/(Rat a, Rat b) {
    if (b.is_infinite()) return Rat(0);
    if (b.num == 0) throw DomainError("rational: division by zero");
    if (a.is_infinite()) return infinity();
    return Rat(a.num * b.den, a.den * b.num);
  }
  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rat& a, const Rat& b) {
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator<=(const Rat& a, const Rat& b) { return a < b || a == b; }
};

inline Rat rat_abs(Rat a) {
  if (!a.is_infinite() && a.num < 0) a.num = -a.num;
  return a;
}
inline Rat rat_max(Rat a, Rat b) { return a < b ? b : a; }

// Accepts "inf", "a/b", or "a".
inline Rat rat_parse(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "INF") return Rat::infinity();
  auto parse_int = [&](const std::string& part) {
    std::size_t used = 0;
    long long v = std::stoll(part, &used);
    if (used != part.size()) throw DomainError("rational: cannot parse '" + s + "'");
    return v;
  };
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(parse_int(s));
    return Rat(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
  } catch (const DomainError&) {
    throw;
  } catch (const std::exception&) {
    throw DomainError("rational: cannot parse '" + s + "'");
  }
}

// 1/p with 1/inf = 0.
inline Rat rat_reciprocal(const Rat& p) {
  if (p.is_infinite()) return Rat(0);
  if (p.num == 0) throw DomainError("rational: reciprocal of zero");
  return Rat(p.den, p.num);
}

}  // namespace hrl
