#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "gdet/error.hpp"

namespace gdet {

/// Ground field tag: the rationals, or GF(p) for an odd prime p < 2^32.
///
/// Characteristic 2 is rejected at construction because the even/odd split
/// of the permanent/determinant pair divides by 2.
class Field {
 public:
  static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 32;

  constexpr Field() = default;

  static constexpr Field rationals() { return Field(); }

  static Field prime(std::uint64_t p) {
    if (p == 2) throw Error(ErrorCode::InvalidField, "characteristic 2 is not supported");
    if (p >= kMaxModulus) throw Error(ErrorCode::InvalidField, "modulus must be below 2^32");
    if (!is_prime(p)) throw Error(ErrorCode::InvalidField, std::to_string(p) + " is not prime");
    Field f;
    f.p_ = p;
    return f;
  }

  constexpr bool is_rational() const { return p_ == 0; }
  constexpr bool is_prime_field() const { return p_ != 0; }
  /// 0 for Q.
  constexpr std::uint64_t modulus() const { return p_; }
  constexpr std::uint64_t characteristic() const { return p_; }

  std::string to_string() const { return is_rational() ? "Q" : "GF(" + std::to_string(p_) + ")"; }

  constexpr bool operator==(const Field&) const = default;

  static constexpr bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (std::uint64_t d = 3; d * d <= p; d += 2) {
      if (p % d == 0) return false;
    }
    return true;
  }

 private:
  std::uint64_t p_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const Field& f) { return os << f.to_string(); }

/// Exact field element. Residues are kept reduced in [0, p); rationals are
/// kept canonical by GMP.
class Scalar {
 public:
  Scalar() : value_(mpq_class(0)) {}

  Scalar(Field field, long long v) : field_(field) {
    if (field.is_rational()) {
      value_ = mpq_class(static_cast<long>(v));
    } else {
      value_ = reduce_signed(v, field.modulus());
    }
  }

  Scalar(Field field, const mpq_class& q) : field_(field) {
    if (field.is_rational()) {
      value_ = q;
    } else {
      Scalar num = from_mpz(field, q.get_num());
      Scalar den = from_mpz(field, q.get_den());
      *this = num / den;
    }
  }

  static Scalar zero(Field field) { return Scalar(field, 0); }
  static Scalar one(Field field) { return Scalar(field, 1); }

  static Scalar from_mpz(Field field, const mpz_class& z) {
    if (field.is_rational()) return Scalar(field, mpq_class(z));
    mpz_class r = z % static_cast<unsigned long>(field.modulus());
    if (r < 0) r += static_cast<unsigned long>(field.modulus());
    Scalar s;
    s.field_ = field;
    s.value_ = static_cast<std::uint64_t>(r.get_ui());
    return s;
  }

  /// Accepts "n", "-n", "n/d" in either field. Over GF(p) a fraction is read
  /// as n * d^{-1}.
  static Scalar parse(Field field, std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) {
        check_integer_text(s);
        return from_mpz(field, mpz_class(s, 10));
      }
      std::string num = s.substr(0, slash);
      std::string den = s.substr(slash + 1);
      check_integer_text(num);
      check_integer_text(den);
      mpz_class d(den, 10);
      if (d == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator in '" + s + "'");
      if (field.is_rational()) {
        mpq_class q(mpz_class(num, 10), d);
        q.canonicalize();
        return Scalar(field, q);
      }
      return from_mpz(field, mpz_class(num, 10)) / from_mpz(field, d);
    } catch (const std::invalid_argument&) {
      throw Error(ErrorCode::ParseError, "not an exact scalar: '" + s + "'");
    }
  }

  Field field() const { return field_; }

  bool is_zero() const {
    if (auto r = std::get_if<std::uint64_t>(&value_)) return *r == 0;
    return sgn(std::get<mpq_class>(value_)) == 0;
  }

  bool is_one() const {
    if (auto r = std::get_if<std::uint64_t>(&value_)) return *r == 1;
    return std::get<mpq_class>(value_) == 1;
  }

  const mpq_class& rational() const { return std::get<mpq_class>(value_); }
  std::uint64_t residue() const { return std::get<std::uint64_t>(value_); }

  std::string to_string() const {
    if (auto r = std::get_if<std::uint64_t>(&value_)) return std::to_string(*r);
    return std::get<mpq_class>(value_).get_str();
  }

  /// True when the canonical text form would start with '-' (rationals only).
  bool is_negative() const {
    if (field_.is_prime_field()) return false;
    return sgn(rational()) < 0;
  }

  Scalar inverse() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    Scalar out;
    out.field_ = field_;
    if (field_.is_rational()) {
      out.value_ = mpq_class(1) / rational();
    } else {
      out.value_ = pow_mod(residue(), field_.modulus() - 2, field_.modulus());
    }
    return out;
  }

  Scalar pow(std::uint64_t e) const {
    Scalar base = *this;
    Scalar acc = one(field_);
    while (e) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  Scalar operator-() const {
    Scalar out = *this;
    if (auto r = std::get_if<std::uint64_t>(&out.value_)) {
      if (*r) *r = field_.modulus() - *r;
    } else {
      std::get<mpq_class>(out.value_) = -std::get<mpq_class>(out.value_);
    }
    return out;
  }

  Scalar& operator+=(const Scalar& o) {
    same_field(o);
    if (auto r = std::get_if<std::uint64_t>(&value_)) {
      std::uint64_t s = *r + o.residue();
      if (s >= field_.modulus()) s -= field_.modulus();
      *r = s;
    } else {
      std::get<mpq_class>(value_) += o.rational();
    }
    return *this;
  }

  Scalar& operator-=(const Scalar& o) {
    same_field(o);
    if (auto r = std::get_if<std::uint64_t>(&value_)) {
      std::uint64_t b = o.residue();
      *r = *r >= b ? *r - b : *r + field_.modulus() - b;
    } else {
      std::get<mpq_class>(value_) -= o.rational();
    }
    return *this;
  }

  Scalar& operator*=(const Scalar& o) {
    same_field(o);
    if (auto r = std::get_if<std::uint64_t>(&value_)) {
      *r = (*r * o.residue()) % field_.modulus();
    } else {
      std::get<mpq_class>(value_) *= o.rational();
    }
    return *this;
  }

  Scalar& operator/=(const Scalar& o) {
    same_field(o);
    if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
    if (field_.is_rational()) {
      std::get<mpq_class>(value_) /= o.rational();
      return *this;
    }
    return *this *= o.inverse();
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

  /// Total order within a field (numeric for Q, residue for GF(p)); used only
  /// for deterministic container ordering.
  friend bool operator<(const Scalar& a, const Scalar& b) {
    a.same_field(b);
    if (a.field_.is_rational()) return a.rational() < b.rational();
    return a.residue() < b.residue();
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

 private:
  void same_field(const Scalar& o) const {
    if (!(field_ == o.field_)) {
      throw Error(ErrorCode::FieldMismatch, field_.to_string() + " vs " + o.field_.to_string());
    }
  }

  static std::uint64_t reduce_signed(long long v, std::uint64_t p) {
    long long m = static_cast<long long>(p);
    long long r = v % m;
    if (r < 0) r += m;
    return static_cast<std::uint64_t>(r);
  }

  static std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t acc = 1 % p;
    b %= p;
    while (e) {
      if (e & 1) acc = acc * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return acc;
  }

  static void check_integer_text(const std::string& s) {
    std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("empty");
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("digit");
    }
  }

  Field field_;
  std::variant<std::uint64_t, mpq_class> value_;
};

}  // namespace gdet
