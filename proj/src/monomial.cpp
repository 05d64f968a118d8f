#include "uhom/monomial.hpp"

#include <algorithm>
#include <numeric>

#include "uhom/errors.hpp"

namespace uhom {

Monomial::Monomial(std::vector<std::uint32_t> exps) : exp_(std::move(exps)) {
  degree_ = std::accumulate(exp_.begin(), exp_.end(), std::uint64_t{0});
}

void Monomial::set(std::size_t i, std::uint32_t e) {
  degree_ = degree_ - exp_[i] + e;
  exp_[i] = e;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial m = *this;
  for (std::size_t i = 0; i < exp_.size(); ++i) {
    std::uint64_t e = std::uint64_t{exp_[i]} + o.exp_[i];
    if (e > UINT32_MAX) throw CapExceeded("exponent overflow");
    m.exp_[i] = static_cast<std::uint32_t>(e);
  }
  m.degree_ = degree_ + o.degree_;
  return m;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial m = *this;
  for (std::size_t i = 0; i < exp_.size(); ++i) m.exp_[i] -= o.exp_[i];
  m.degree_ = degree_ - o.degree_;
  return m;
}

bool Monomial::divides(const Monomial& o) const {
  if (degree_ > o.degree_) return false;
  for (std::size_t i = 0; i < exp_.size(); ++i)
    if (exp_[i] > o.exp_[i]) return false;
  return true;
}

Monomial Monomial::lcm(const Monomial& o) const {
  std::vector<std::uint32_t> e(exp_.size());
  for (std::size_t i = 0; i < exp_.size(); ++i) e[i] = std::max(exp_[i], o.exp_[i]);
  return Monomial(std::move(e));
}

bool Monomial::coprime(const Monomial& o) const {
  for (std::size_t i = 0; i < exp_.size(); ++i)
    if (exp_[i] != 0 && o.exp_[i] != 0) return false;
  return true;
}

Monomial Monomial::pow(std::uint64_t e) const {
  Monomial m = *this;
  for (auto& x : m.exp_) {
    std::uint64_t v = std::uint64_t{x} * e;
    if (v > UINT32_MAX) throw CapExceeded("exponent overflow");
    x = static_cast<std::uint32_t>(v);
  }
  m.degree_ = degree_ * e;
  return m;
}

MonomialOrder MonomialOrder::elimination(std::size_t front, std::size_t total) {
  if (front == 0 || front == total) return grevlex();
  return block({front, total - front});
}

namespace {

int grevlex_range(const Monomial& a, const Monomial& b, std::size_t s, std::size_t e) {
  std::uint64_t da = 0, db = 0;
  for (std::size_t i = s; i < e; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = e; i > s; --i) {
    if (a[i - 1] != b[i - 1]) return a[i - 1] < b[i - 1] ? 1 : -1;
  }
  return 0;
}

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind_) {
    case Kind::Lex:
      for (std::size_t i = 0; i < a.arity(); ++i)
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
      return 0;
    case Kind::GRevLex:
      if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
      for (std::size_t i = a.arity(); i > 0; --i)
        if (a[i - 1] != b[i - 1]) return a[i - 1] < b[i - 1] ? 1 : -1;
      return 0;
    case Kind::Block: {
      std::size_t s = 0;
      for (std::size_t len : blocks_) {
        if (int c = grevlex_range(a, b, s, s + len); c != 0) return c;
        s += len;
      }
      return 0;
    }
  }
  return 0;
}

std::string MonomialOrder::to_string() const {
  switch (kind_) {
    case Kind::Lex:
      return "lex";
    case Kind::GRevLex:
      return "grevlex";
    case Kind::Block: {
      std::string s = "block(";
      for (std::size_t i = 0; i < blocks_.size(); ++i) s += (i ? "," : "") + std::to_string(blocks_[i]);
      return s + ")";
    }
  }
  return "?";
}

}  // namespace uhom
