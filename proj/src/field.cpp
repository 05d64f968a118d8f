#include "uhom/field.hpp"

#include "uhom/errors.hpp"

namespace uhom {

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

std::uint32_t reduce_mpz(const mpz_class& v, std::uint32_t p) {
  mpz_class r = v % p;
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r.get_ui());
}

Field field_from(std::uint32_t p) { return p == 0 ? Field::rationals() : Field::prime(p); }

}  // namespace

Field Field::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 31) || !is_prime(p))
    throw ScopeError("unsupported field: F " + std::to_string(p) + " (prime fields F_p, p < 2^31, only)");
  return Field(static_cast<std::uint32_t>(p));
}

std::string Field::to_string() const { return p_ == 0 ? "Q" : "F " + std::to_string(p_); }

Coefficient Coefficient::zero(const Field& k) { return from_integer(k, 0); }
Coefficient Coefficient::one(const Field& k) { return from_integer(k, 1); }

Coefficient Coefficient::from_integer(const Field& k, long v) { return from_integer(k, mpz_class(v)); }

Coefficient Coefficient::from_integer(const Field& k, const mpz_class& v) {
  Coefficient c;
  c.p_ = k.characteristic();
  if (c.p_ == 0)
    c.v_ = mpq_class(v);
  else
    c.v_ = reduce_mpz(v, c.p_);
  return c;
}

Coefficient Coefficient::from_rational(const Field& k, const mpq_class& v) {
  if (k.is_rational()) {
    Coefficient c;
    mpq_class q = v;
    q.canonicalize();
    c.v_ = q;
    return c;
  }
  const std::uint32_t p = k.characteristic();
  std::uint32_t den = reduce_mpz(v.get_den(), p);
  if (den == 0) throw ScopeError("denominator " + v.get_den().get_str() + " vanishes in " + k.to_string());
  Coefficient c;
  c.p_ = p;
  std::uint64_t num = reduce_mpz(v.get_num(), p);
  c.v_ = static_cast<std::uint32_t>(num * mod_inverse(den, p) % p);
  return c;
}

Field Coefficient::field() const { return field_from(p_); }

bool Coefficient::is_zero() const noexcept {
  if (p_ != 0) return std::get<std::uint32_t>(v_) == 0;
  return sgn(std::get<mpq_class>(v_)) == 0;
}

bool Coefficient::is_one() const noexcept {
  if (p_ != 0) return std::get<std::uint32_t>(v_) == 1;
  return std::get<mpq_class>(v_) == 1;
}

bool Coefficient::is_negative() const { return p_ == 0 && sgn(rational()) < 0; }

bool Coefficient::is_integer() const { return p_ != 0 || rational().get_den() == 1; }

Coefficient Coefficient::operator-() const {
  Coefficient c = *this;
  if (p_ != 0) {
    std::uint32_t v = residue();
    c.v_ = v == 0 ? 0u : p_ - v;
  } else {
    c.v_ = mpq_class(-rational());
  }
  return c;
}

Coefficient Coefficient::operator+(const Coefficient& o) const {
  Coefficient c;
  c.p_ = p_;
  if (p_ != 0)
    c.v_ = static_cast<std::uint32_t>((std::uint64_t{residue()} + o.residue()) % p_);
  else
    c.v_ = mpq_class(rational() + o.rational());
  return c;
}

Coefficient Coefficient::operator-(const Coefficient& o) const {
  Coefficient c;
  c.p_ = p_;
  if (p_ != 0)
    c.v_ = static_cast<std::uint32_t>((std::uint64_t{residue()} + p_ - o.residue()) % p_);
  else
    c.v_ = mpq_class(rational() - o.rational());
  return c;
}

Coefficient Coefficient::operator*(const Coefficient& o) const {
  Coefficient c;
  c.p_ = p_;
  if (p_ != 0)
    c.v_ = static_cast<std::uint32_t>(std::uint64_t{residue()} * o.residue() % p_);
  else
    c.v_ = mpq_class(rational() * o.rational());
  return c;
}

Coefficient Coefficient::inverse() const {
  if (is_zero()) throw ScopeError("division by zero coefficient");
  Coefficient c;
  c.p_ = p_;
  if (p_ != 0)
    c.v_ = mod_inverse(residue(), p_);
  else
    c.v_ = mpq_class(1 / rational());
  return c;
}

Coefficient Coefficient::operator/(const Coefficient& o) const { return *this * o.inverse(); }

Coefficient Coefficient::abs() const { return is_negative() ? -*this : *this; }

bool operator==(const Coefficient& a, const Coefficient& b) { return a.p_ == b.p_ && a.v_ == b.v_; }

std::string Coefficient::to_string() const {
  if (p_ != 0) return std::to_string(residue());
  return rational().get_str();
}

}  // namespace uhom
