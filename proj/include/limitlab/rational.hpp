#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "limitlab/error.hpp"

namespace limitlab {

/// Exact rational number. Every coordinate, length and distance in the
/// library is one of these; there is no floating point in the core.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// 2^-n as an exact dyadic rational.
inline Rational dyadic(unsigned long n) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, n);
  Rational r(mpz_class(1), den);
  return r;
}

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Always `p/q`, including integers (`1/1`).
inline std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double to_double(const Rational& r) { return r.get_d(); }

/// Accepts `p/q`, a bare integer `p`, or a terminating decimal `0.25`.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw Error(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();
  const std::string s(text);
  auto valid_int = [](std::string_view v) {
    if (v.empty()) return false;
    std::size_t i = (v[0] == '-' || v[0] == '+') ? 1 : 0;
    if (i == v.size()) return false;
    for (; i < v.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(v[i]))) return false;
    return true;
  };
  auto strip_plus = [](std::string v) { return (!v.empty() && v[0] == '+') ? v.substr(1) : v; };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') return fail();
    mpz_class d(den);
    if (d == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + s + "'");
    Rational r(mpz_class(strip_plus(num)), d);
    r.canonicalize();
    return r;
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (whole == "-" || whole == "+" || whole.empty()) whole += "0";
    if (!valid_int(whole) || frac.empty()) return fail();
    for (char c : frac)
      if (!std::isdigit(static_cast<unsigned char>(c))) return fail();
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class w(strip_plus(whole));
    mpz_class f(frac);
    mpz_class magnitude = (w < 0 ? mpz_class(-w) : w);
    mpz_class num = negative ? mpz_class(-(magnitude * scale + f)) : mpz_class(w * scale + f);
    Rational r(num, scale);
    r.canonicalize();
    return r;
  }
  if (!valid_int(s)) return fail();
  return Rational(mpz_class(strip_plus(s)));
}

inline std::size_t hash_mpz(const mpz_class& z) {
  const auto* raw = z.get_mpz_t();
  std::size_t h = static_cast<std::size_t>(raw->_mp_size) * 0x9e3779b97f4a7c15ULL;
  const std::size_t limbs = mpz_size(raw);
  for (std::size_t i = 0; i < limbs; ++i)
    h ^= static_cast<std::size_t>(mpz_getlimbn(raw, i)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

inline std::size_t hash_rational(const Rational& r) {
  return hash_mpz(r.get_num()) * 31 + hash_mpz(r.get_den());
}

inline void hash_combine(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace limitlab
