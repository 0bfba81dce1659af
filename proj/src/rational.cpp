#include "cubik/rational.h"

#include <cstdlib>
#include <numeric>

namespace cubik {

namespace {

using I128 = __int128;

std::int64_t checked_narrow(I128 v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN) throw RatOverflow(std::string("rational overflow in ") + what);
  return static_cast<std::int64_t>(v);
}

I128 gcd128(I128 a, I128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    I128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rat make(I128 n, I128 d, const char* what) {
  if (d == 0) throw RatOverflow("rational division by zero");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  I128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Rat r;
  r.num = checked_narrow(n, what);
  r.den = checked_narrow(d, what);
  return r;
}

}  // namespace

Rat::Rat(std::int64_t n, std::int64_t d) { *this = make(n, d, "construction"); }

Rat operator+(const Rat& a, const Rat& b) {
  return make(I128(a.num) * b.den + I128(b.num) * a.den, I128(a.den) * b.den, "addition");
}

Rat operator-(const Rat& a, const Rat& b) {
  return make(I128(a.num) * b.den - I128(b.num) * a.den, I128(a.den) * b.den, "subtraction");
}

Rat operator*(const Rat& a, const Rat& b) {
  return make(I128(a.num) * b.num, I128(a.den) * b.den, "multiplication");
}

Rat operator/(const Rat& a, const Rat& b) {
  return make(I128(a.num) * b.den, I128(a.den) * b.num, "division");
}

bool operator<(const Rat& a, const Rat& b) {
  return I128(a.num) * b.den < I128(b.num) * a.den;
}

Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
Rat rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

std::string Rat::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::size_t p1 = 0, p2 = 0;
    std::int64_t n = std::stoll(s.substr(0, slash), &p1);
    std::int64_t d = std::stoll(s.substr(slash + 1), &p2);
    if (p1 != slash || p2 != s.size() - slash - 1)
      throw std::invalid_argument("bad rational literal: " + s);
    return Rat(n, d);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) {
    std::size_t p = 0;
    std::int64_t n = std::stoll(s, &p);
    if (p != s.size()) throw std::invalid_argument("bad rational literal: " + s);
    return Rat(n);
  }
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  std::size_t frac_len = s.size() - dot - 1;
  if (frac_len == 0 || frac_len > 18) throw std::invalid_argument("bad decimal literal: " + s);
  std::size_t p = 0;
  std::int64_t n = std::stoll(digits, &p);
  if (p != digits.size()) throw std::invalid_argument("bad decimal literal: " + s);
  std::int64_t d = 1;
  for (std::size_t i = 0; i < frac_len; ++i) d *= 10;
  return Rat(n, d);
}

}  // namespace cubik
