// Copyright (c) 2026 The symcover authors
// SPDX-License-Identifier: Apache-2.0
#include "symcover/rational.hpp"

#include <boost/multiprecision/integer.hpp>

namespace symcover {

std::string rat_to_string(const Rat& r) {
  std::string s = num(r).str();
  if (den(r) != 1) {
    s += "/";
    s += den(r).str();
  }
  return s;
}

Rat rat_from_string(const std::string& s) {
  auto bad = [&]() { throw std::invalid_argument("bad rational literal: '" + s + "'"); };
  if (s.empty()) bad();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      // Accept plain integers and decimal literals such as "0.25".
      auto dot = s.find('.');
      if (dot == std::string::npos) return Rat(BigInt(s));
      std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
      if (frac.empty()) bad();
      bool neg = !whole.empty() && whole[0] == '-';
      if (whole.empty() || whole == "-" || whole == "+") whole += "0";
      BigInt scale = 1;
      for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
      BigInt n = BigInt(whole) * scale;
      BigInt f(frac);
      if (neg) n -= f; else n += f;
      return Rat(n, scale);
    }
    BigInt n(s.substr(0, slash));
    BigInt d(s.substr(slash + 1));
    if (d == 0) bad();
    return Rat(n, d);
  } catch (const std::runtime_error&) {
    bad();
  }
  return Rat();  // unreachable
}

namespace {

// floor(sqrt(n)) for n >= 0.
BigInt isqrt_floor(const BigInt& n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  if (n == 0) return 0;
  BigInt x = boost::multiprecision::sqrt(n);  // floor sqrt for cpp_int
  while (x * x > n) --x;
  while ((x + 1) * (x + 1) <= n) ++x;
  return x;
}

}  // namespace

Rat rat_sqrt_lower(const Rat& x, const BigInt& max_den) {
  if (x < 0) throw std::domain_error("sqrt of negative rational");
  if (x == 0) return Rat(0);
  // largest t/D with (t/D)^2 <= x; the denominator always divides D, so the
  // result lives on a coarse grid no matter how wild den(x) is
  const BigInt& D = max_den;
  BigInt t = isqrt_floor(num(x) * D * D / den(x));
  while (Rat(t, D) * Rat(t, D) > x) --t;
  while (Rat(t + 1, D) * Rat(t + 1, D) <= x) ++t;
  return Rat(t, D);
}

Rat rat_sqrt_upper(const Rat& x, const BigInt& max_den) {
  if (x < 0) throw std::domain_error("sqrt of negative rational");
  if (x == 0) return Rat(0);
  Rat lo = rat_sqrt_lower(x, max_den);
  if (lo * lo == x) return lo;
  return lo + Rat(1, max_den);
}

std::optional<Rat> rat_sqrt_exact(const Rat& x) {
  if (x < 0) return std::nullopt;
  BigInt rn = isqrt_floor(num(x));
  BigInt rd = isqrt_floor(den(x));
  if (rn * rn == num(x) && rd * rd == den(x)) return Rat(rn, rd);
  return std::nullopt;
}

BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace symcover
