#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "limitlab/error.hpp"
#include "limitlab/rational.hpp"

namespace limitlab {

/// Coordinate n (1-based) of Z = (10 100 1000 ...): the ones sit exactly at
/// the triangular numbers 1, 3, 6, 10, ...
inline int z_coordinate(std::uint64_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "symbolic coordinates are 1-based");
  // n is triangular iff 8n+1 is a perfect square
  mpz_class disc = mpz_class(8) * mpz_class(static_cast<unsigned long>(n)) + 1;
  return mpz_perfect_square_p(disc.get_mpz_t()) ? 1 : 0;
}

/// A binary sequence from one of three finitely described families:
///   EventuallyZero(prefix)  prefix followed by zeros (T_i lives here)
///   ShiftedZ(k)             sigma^k(Z)
///   ZeroPaddedZ(i)          i zeros followed by Z, i >= 1
class SymbolicPoint {
 public:
  enum class Form { EventuallyZero = 0, ShiftedZ = 1, ZeroPaddedZ = 2 };

  static SymbolicPoint eventually_zero(std::vector<bool> prefix) {
    while (!prefix.empty() && !prefix.back()) prefix.pop_back();
    SymbolicPoint p;
    p.form_ = Form::EventuallyZero;
    p.prefix_ = std::move(prefix);
    return p;
  }

  /// T_0 is the zero sequence; T_i (i >= 1) has its only one at position i.
  static SymbolicPoint landmark(std::uint64_t i) {
    std::vector<bool> bits;
    if (i > 0) {
      bits.assign(i, false);
      bits.back() = true;
    }
    return eventually_zero(std::move(bits));
  }

  static SymbolicPoint shifted_z(std::uint64_t k) {
    SymbolicPoint p;
    p.form_ = Form::ShiftedZ;
    p.index_ = k;
    return p;
  }

  static SymbolicPoint zero_padded_z(std::uint64_t i) {
    if (i == 0) throw Error(ErrorKind::InvalidArgument, "zero-padded Z needs at least one leading zero");
    SymbolicPoint p;
    p.form_ = Form::ZeroPaddedZ;
    p.index_ = i;
    return p;
  }

  Form form() const { return form_; }
  std::uint64_t index() const { return index_; }
  const std::vector<bool>& prefix() const { return prefix_; }

  int coordinate(std::uint64_t n) const {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "symbolic coordinates are 1-based");
    switch (form_) {
      case Form::EventuallyZero: return n <= prefix_.size() && prefix_[n - 1] ? 1 : 0;
      case Form::ShiftedZ: return z_coordinate(n + index_);
      case Form::ZeroPaddedZ: return n <= index_ ? 0 : z_coordinate(n - index_);
    }
    return 0;
  }

  SymbolicPoint shift() const {
    switch (form_) {
      case Form::EventuallyZero:
        return prefix_.empty() ? *this : eventually_zero(std::vector<bool>(prefix_.begin() + 1, prefix_.end()));
      case Form::ShiftedZ: return shifted_z(index_ + 1);
      case Form::ZeroPaddedZ: return index_ == 1 ? shifted_z(0) : zero_padded_z(index_ - 1);
    }
    return *this;
  }

  /// i when this is T_i.
  std::optional<std::uint64_t> landmark_index() const {
    if (form_ != Form::EventuallyZero) return std::nullopt;
    std::uint64_t ones = 0;
    for (bool b : prefix_) ones += b ? 1 : 0;
    if (ones == 0) return 0;
    if (ones == 1) return prefix_.size();
    return std::nullopt;
  }

  /// The first `m` coordinates followed by zeros.
  SymbolicPoint truncated(std::uint64_t m) const {
    std::vector<bool> bits(m);
    for (std::uint64_t n = 1; n <= m; ++n) bits[n - 1] = coordinate(n) == 1;
    return eventually_zero(std::move(bits));
  }

  /// `T3`, `Z`, `Z+5` (sigma^5 Z), `Z-2` (two zeros then Z), `b:0110`.
  std::string to_string() const {
    switch (form_) {
      case Form::EventuallyZero: {
        if (auto i = landmark_index()) return "T" + std::to_string(*i);
        std::string s = "b:";
        for (bool b : prefix_) s += b ? '1' : '0';
        return s;
      }
      case Form::ShiftedZ: return index_ == 0 ? "Z" : "Z+" + std::to_string(index_);
      case Form::ZeroPaddedZ: return "Z-" + std::to_string(index_);
    }
    return "?";
  }

  static SymbolicPoint parse(std::string_view s) {
    auto number = [&](std::string_view digits) -> std::uint64_t {
      if (digits.empty()) throw Error(ErrorKind::Parse, "malformed symbolic point '" + std::string(s) + "'");
      std::uint64_t v = 0;
      for (char c : digits) {
        if (c < '0' || c > '9') throw Error(ErrorKind::Parse, "malformed symbolic point '" + std::string(s) + "'");
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
      }
      return v;
    };
    if (s == "Z") return shifted_z(0);
    if (s.starts_with("Z+")) return shifted_z(number(s.substr(2)));
    if (s.starts_with("Z-")) return zero_padded_z(number(s.substr(2)));
    if (s.starts_with("T")) return landmark(number(s.substr(1)));
    if (s.starts_with("b:")) {
      std::vector<bool> bits;
      for (char c : s.substr(2)) {
        if (c != '0' && c != '1') throw Error(ErrorKind::Parse, "malformed symbolic point '" + std::string(s) + "'");
        bits.push_back(c == '1');
      }
      return eventually_zero(std::move(bits));
    }
    throw Error(ErrorKind::Parse, "malformed symbolic point '" + std::string(s) + "'");
  }

  friend bool operator==(const SymbolicPoint& a, const SymbolicPoint& b) {
    return a.form_ == b.form_ && a.index_ == b.index_ && a.prefix_ == b.prefix_;
  }
  friend bool operator<(const SymbolicPoint& a, const SymbolicPoint& b) {
    if (a.form_ != b.form_) return a.form_ < b.form_;
    if (a.form_ != Form::EventuallyZero) return a.index_ < b.index_;
    if (a.prefix_.size() != b.prefix_.size()) return a.prefix_.size() < b.prefix_.size();
    return a.prefix_ < b.prefix_;
  }

 private:
  Form form_ = Form::EventuallyZero;
  std::uint64_t index_ = 0;
  std::vector<bool> prefix_;
};

/// N(x, y): first 1-based position where the sequences differ; nullopt when
/// equal. The three families never represent the same sequence twice, so
/// structural inequality guarantees the scan stops.
inline std::optional<std::uint64_t> first_difference(const SymbolicPoint& x, const SymbolicPoint& y) {
  if (x == y) return std::nullopt;
  for (std::uint64_t n = 1;; ++n) {
    if (x.coordinate(n) != y.coordinate(n)) return n;
    if (n > (std::uint64_t{1} << 40)) throw Error(ErrorKind::InvalidArgument, "symbolic comparison diverged");
  }
}

/// d(x, y) = 2^-N(x,y), exact.
inline Rational symbolic_distance(const SymbolicPoint& x, const SymbolicPoint& y) {
  auto n = first_difference(x, y);
  return n ? dyadic(*n) : Rational(0);
}

/// The shift restricted to L = orbit(Z) u {T_i} u {0^i Z}.
class ShiftSystem {
 public:
  bool contains(const SymbolicPoint& x) const {
    if (x.form() == SymbolicPoint::Form::EventuallyZero) return x.landmark_index().has_value();
    return true;
  }

  SymbolicPoint apply(const SymbolicPoint& x) const {
    if (!contains(x)) throw Error(ErrorKind::MalformedPoint, x.to_string() + " is not in L");
    return x.shift();
  }
};

}  // namespace limitlab
