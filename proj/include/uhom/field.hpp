#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace uhom {

/// The base field: the rationals or a prime field F_p with p < 2^31.
class Field {
 public:
  Field() = default;
  static Field rationals() { return Field(); }
  /// Throws ScopeError("unsupported field") unless p is a prime below 2^31.
  static Field prime(std::uint64_t p);

  std::uint32_t characteristic() const noexcept { return p_; }
  bool is_rational() const noexcept { return p_ == 0; }
  std::string to_string() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

/// An exact field element. Rationals are kept in lowest terms with a
/// positive denominator; residues live in [0, p).
class Coefficient {
 public:
  Coefficient() = default;  // rational zero

  static Coefficient zero(const Field& k);
  static Coefficient one(const Field& k);
  static Coefficient from_integer(const Field& k, long v);
  static Coefficient from_integer(const Field& k, const mpz_class& v);
  /// Throws ScopeError when the denominator vanishes in F_p.
  static Coefficient from_rational(const Field& k, const mpq_class& v);

  Field field() const;
  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  /// Sign used by the text rendering; residues are never negative.
  bool is_negative() const;
  bool is_integer() const;

  const mpq_class& rational() const { return std::get<mpq_class>(v_); }
  std::uint32_t residue() const { return std::get<std::uint32_t>(v_); }

  Coefficient operator-() const;
  Coefficient operator+(const Coefficient& o) const;
  Coefficient operator-(const Coefficient& o) const;
  Coefficient operator*(const Coefficient& o) const;
  Coefficient operator/(const Coefficient& o) const;
  Coefficient& operator+=(const Coefficient& o) { return *this = *this + o; }
  Coefficient& operator-=(const Coefficient& o) { return *this = *this - o; }
  Coefficient& operator*=(const Coefficient& o) { return *this = *this * o; }
  Coefficient inverse() const;
  Coefficient abs() const;

  friend bool operator==(const Coefficient& a, const Coefficient& b);

  std::string to_string() const;

 private:
  std::uint32_t p_ = 0;
  std::variant<std::uint32_t, mpq_class> v_ = mpq_class(0);
};

}  // namespace uhom
