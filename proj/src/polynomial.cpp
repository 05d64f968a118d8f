#include "uhom/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "uhom/errors.hpp"

namespace uhom {

Ring::Ring(Field field, std::vector<std::string> variables, MonomialOrder order)
    : field_(field), vars_(std::move(variables)), order_(std::move(order)) {
  std::set<std::string> seen;
  for (const auto& v : vars_)
    if (!seen.insert(v).second) throw ScopeError("duplicate variable name '" + v + "'");
  if (order_.kind() == MonomialOrder::Kind::Block) {
    std::size_t total = 0;
    for (auto b : order_.blocks()) total += b;
    if (total != vars_.size()) throw ScopeError("block order does not cover the ring variables");
  }
}

RingPtr Ring::make(Field field, std::vector<std::string> variables, MonomialOrder order) {
  return std::make_shared<const Ring>(field, std::move(variables), std::move(order));
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::nullopt;
}

RingPtr Ring::with_order(MonomialOrder order) const { return make(field_, vars_, std::move(order)); }

bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

namespace {

void require_same(const RingPtr& a, const RingPtr& b) {
  if (!same_ring(a, b)) throw ScopeError("polynomial ring context mismatch");
}

}  // namespace

Polynomial::Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

Polynomial::Polynomial(RingPtr ring, std::vector<Term> sorted_terms)
    : ring_(std::move(ring)), terms_(std::move(sorted_terms)) {}

Polynomial Polynomial::constant(RingPtr ring, const Coefficient& c) {
  Polynomial p(ring);
  if (!c.is_zero()) p.terms_.push_back({Monomial(ring->arity()), c});
  return p;
}

Polynomial Polynomial::constant(RingPtr ring, long c) {
  return constant(ring, Coefficient::from_integer(ring->field(), c));
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  Monomial m(ring->arity());
  m.set(index, 1);
  return term(ring, std::move(m), Coefficient::one(ring->field()));
}

Polynomial Polynomial::variable(RingPtr ring, std::string_view name) {
  auto i = ring->index_of(name);
  if (!i) throw ScopeError("unknown variable '" + std::string(name) + "'");
  return variable(ring, *i);
}

Polynomial Polynomial::term(RingPtr ring, Monomial m, const Coefficient& c) {
  Polynomial p(ring);
  if (!c.is_zero()) p.terms_.push_back({std::move(m), c});
  return p;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  const auto& ord = ring->order();
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return ord.compare(a.monomial, b.monomial) > 0; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().monomial == t.monomial) {
      out.back().coefficient += t.coefficient;
      if (out.back().coefficient.is_zero()) out.pop_back();
    } else if (!t.coefficient.is_zero()) {
      out.push_back(std::move(t));
    }
  }
  return Polynomial(std::move(ring), std::move(out));
}

bool Polynomial::is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }

bool Polynomial::is_one() const noexcept {
  return terms_.size() == 1 && terms_[0].monomial.is_one() && terms_[0].coefficient.is_one();
}

std::uint64_t Polynomial::total_degree() const noexcept {
  std::uint64_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.degree());
  return d;
}

std::uint32_t Polynomial::degree_in(std::size_t var) const noexcept {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial[var]);
  return d;
}

bool Polynomial::uses_variable(std::size_t var) const noexcept { return degree_in(var) > 0; }

Coefficient Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().monomial.is_one()) return terms_.back().coefficient;
  return Coefficient::zero(ring_->field());
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coefficient = -t.coefficient;
  return p;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  require_same(ring_, o.ring_);
  const auto& ord = ring_->order();
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = ord.compare(terms_[i].monomial, o.terms_[j].monomial);
    if (c > 0) {
      out.push_back(terms_[i++]);
    } else if (c < 0) {
      out.push_back(o.terms_[j++]);
    } else {
      Coefficient s = terms_[i].coefficient + o.terms_[j].coefficient;
      if (!s.is_zero()) out.push_back({terms_[i].monomial, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) out.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) out.push_back(o.terms_[j]);
  return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  require_same(ring_, o.ring_);
  if (is_zero() || o.is_zero()) return Polynomial(ring_);
  std::vector<Term> all;
  all.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) all.push_back({a.monomial * b.monomial, a.coefficient * b.coefficient});
  return from_terms(ring_, std::move(all));
}

Polynomial Polynomial::scale(const Coefficient& c) const {
  if (c.is_zero()) return Polynomial(ring_);
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coefficient *= c;
  return p;
}

Polynomial Polynomial::mul_term(const Monomial& m, const Coefficient& c) const {
  if (c.is_zero()) return Polynomial(ring_);
  Polynomial p = *this;
  for (auto& t : p.terms_) {
    t.monomial = t.monomial * m;
    t.coefficient *= c;
  }
  return p;
}

Polynomial Polynomial::pow(std::uint64_t e) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (is_zero() || leading_coefficient().is_one()) return *this;
  return scale(leading_coefficient().inverse());
}

Polynomial Polynomial::derivative(std::size_t var) const {
  std::vector<Term> out;
  const Field& k = ring_->field();
  for (const auto& t : terms_) {
    std::uint32_t e = t.monomial[var];
    if (e == 0) continue;
    Coefficient c = t.coefficient * Coefficient::from_integer(k, static_cast<long>(e));
    if (c.is_zero()) continue;
    Monomial m = t.monomial;
    m.set(var, e - 1);
    out.push_back({std::move(m), std::move(c)});
  }
  // Lowering one exponent can break strict descent under graded orders.
  return from_terms(ring_, std::move(out));
}

Polynomial Polynomial::substitute(const RingPtr& target, std::span<const Polynomial> images) const {
  if (images.size() != ring_->arity()) throw ScopeError("substitution arity mismatch");
  if (!(target->field() == ring_->field())) throw ScopeError("substitution across fields");
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power = [&](std::size_t i, std::uint32_t e) -> Polynomial {
    if (e >= 64) return images[i].pow(e);
    auto& cache = powers[i];
    if (cache.empty()) {
      cache.push_back(constant(target, 1));
      cache.push_back(images[i]);
    }
    while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
    return cache[e];
  };
  Polynomial result(target);
  for (const auto& t : terms_) {
    Polynomial acc = constant(target, t.coefficient);
    for (std::size_t i = 0; i < images.size() && !acc.is_zero(); ++i) {
      std::uint32_t e = t.monomial[i];
      if (e == 0) continue;
      acc *= power(i, e);
    }
    result += acc;
  }
  return result;
}

Polynomial Polynomial::embed(const RingPtr& target, std::span<const std::size_t> index_map) const {
  if (index_map.size() != ring_->arity()) throw ScopeError("embedding arity mismatch");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m(target->arity());
    for (std::size_t i = 0; i < index_map.size(); ++i)
      if (t.monomial[i]) m.set(index_map[i], m[index_map[i]] + t.monomial[i]);
    out.push_back({std::move(m), t.coefficient});
  }
  return from_terms(target, std::move(out));
}

Polynomial Polynomial::reorder(const RingPtr& target) const {
  if (target->variables() != ring_->variables() || !(target->field() == ring_->field()))
    throw ScopeError("reorder requires identical variables");
  std::vector<Term> out = terms_;
  return from_terms(target, std::move(out));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!same_ring(a.ring_, b.ring_)) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].monomial == b.terms_[i].monomial) || !(a.terms_[i].coefficient == b.terms_[i].coefficient))
      return false;
  return true;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  const auto& vars = ring_->variables();
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const auto& t = terms_[k];
    bool neg = t.coefficient.is_negative();
    Coefficient mag = t.coefficient.abs();
    if (k == 0)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    std::string mono;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      std::uint32_t e = t.monomial[i];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars[i];
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty())
      out += mag.to_string();
    else if (mag.is_one())
      out += mono;
    else
      out += mag.to_string() + "*" + mono;
  }
  return out;
}

std::vector<std::size_t> index_map_by_name(const Ring& from, const Ring& to) {
  std::vector<std::size_t> map;
  map.reserve(from.arity());
  for (const auto& v : from.variables()) {
    auto j = to.index_of(v);
    if (!j) throw ScopeError("variable '" + v + "' missing from the target ring");
    map.push_back(*j);
  }
  return map;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class PolyParser {
 public:
  PolyParser(RingPtr ring, std::string_view text) : ring_(std::move(ring)), s_(text) {}

  Polynomial parse() {
    skip();
    if (pos_ == s_.size()) fail("empty polynomial");
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " in polynomial '" + std::string(s_) + "'", 0, pos_ + 1);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc(ring_);
    bool first = true;
    for (;;) {
      skip();
      bool neg = false;
      if (accept('+')) {
      } else if (accept('-')) {
        neg = true;
      } else if (!first) {
        break;
      }
      Polynomial t = product();
      acc += neg ? -t : t;
      first = false;
    }
    return acc;
  }

  Polynomial product() {
    Polynomial acc = power();
    for (;;) {
      if (accept('*')) {
        acc *= power();
      } else if (accept('/')) {
        Polynomial d = power();
        if (!d.is_constant() || d.is_zero()) fail("division only by nonzero constants");
        acc = acc.scale(d.leading_coefficient().inverse());
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial power() {
    Polynomial base = atom();
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      std::uint64_t e = std::stoull(std::string(s_.substr(start, pos_ - start)));
      base = base.pow(e);
    }
    return base;
  }

  Polynomial atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      mpz_class v(std::string(s_.substr(start, pos_ - start)));
      return Polynomial::constant(ring_, Coefficient::from_integer(ring_->field(), v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
        ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      auto idx = ring_->index_of(name);
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return Polynomial::variable(ring_, *idx);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  RingPtr ring_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(RingPtr ring, std::string_view text) { return PolyParser(std::move(ring), text).parse(); }

}  // namespace uhom
