// Copyright (c) 2026 The symcover authors
// SPDX-License-Identifier: Apache-2.0
//
// Exact rational scalar type and helpers shared by every geometric module.
// All geometry in this project is exact: no floating point outside the
// numeric flow kernels in hamiltonian.hpp.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace symcover {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline BigInt num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Rat rat(long long n, long long d = 1) {
  if (d == 0) throw std::invalid_argument("rational with zero denominator");
  return Rat(BigInt(n), BigInt(d));
}

// floor(r) as a big integer (works for negative values).
inline BigInt rat_floor(const Rat& r) {
  BigInt n = num(r), d = den(r);  // d > 0 by cpp_rational invariant
  BigInt q = n / d;
  if (n < 0 && q * d != n) --q;
  return q;
}

inline BigInt rat_ceil(const Rat& r) { return -rat_floor(-r); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }
inline Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat rat_max(const Rat& a, const Rat& b) { return a > b ? a : b; }

// Serialized form is always "p/q" (or "p" when q == 1); never a float.
std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);

// Largest rational p/q with p/q <= sqrt(x) and q <= max_den, via integer
// square roots; used to pick disc radii below an exact area. Requires x >= 0.
Rat rat_sqrt_lower(const Rat& x, const BigInt& max_den = BigInt(1) << 32);
// Smallest convenient rational >= sqrt(x).
Rat rat_sqrt_upper(const Rat& x, const BigInt& max_den = BigInt(1) << 32);

// Exact square root when x is a perfect square of a rational.
std::optional<Rat> rat_sqrt_exact(const Rat& x);

inline double rat_to_double(const Rat& r) { return static_cast<double>(r); }

// n! as an exact integer.
BigInt factorial(unsigned n);

// Conservative rational bounds on pi used whenever a true disc area has to
// be compared against an exact rational budget.
inline Rat pi_lower() { return Rat(BigInt(3141592653589793ll), BigInt(1000000000000000ll)); }
inline Rat pi_upper() { return Rat(BigInt(3141592653589794ll), BigInt(1000000000000000ll)); }

}  // namespace symcover
