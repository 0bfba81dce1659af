#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cubik {

// Exact rational on int64 with __int128 intermediates. Always normalized:
// den > 0, gcd(|num|, den) == 1.
struct Rat {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rat() = default;
  Rat(std::int64_t n) : num(n), den(1) {}
  Rat(std::int64_t n, std::int64_t d);

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  bool is_zero() const { return num == 0; }

  Rat operator-() const { return Rat(-num, den); }
  Rat& operator+=(const Rat& o) { *this = *this + o; return *this; }
  Rat& operator-=(const Rat& o) { *this = *this - o; return *this; }
  Rat& operator*=(const Rat& o) { *this = *this * o; return *this; }
  Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

  friend Rat operator+(const Rat& a, const Rat& b);
  friend Rat operator-(const Rat& a, const Rat& b);
  friend Rat operator*(const Rat& a, const Rat& b);
  friend Rat operator/(const Rat& a, const Rat& b);
  friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b);
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }
};

Rat rat_min(const Rat& a, const Rat& b);
Rat rat_max(const Rat& a, const Rat& b);

// Parses "n", "n/d", or a plain decimal like "0.25" / "-1.5e-2" is NOT
// accepted (no exponent); decimals convert exactly to num/den.
Rat parse_rat(const std::string& s);

struct RatOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cubik
