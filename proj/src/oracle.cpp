#include "uhom/oracle.hpp"

#include <algorithm>
#include <set>

#include "uhom/errors.hpp"

namespace uhom {

FiniteRing::FiniteRing(const PresentedAlgebra& a, const Limits& limits) : source_(a), p_(a.field().characteristic()) {
  if (a.field().is_rational()) throw ScopeError("oracle: finite rings need a prime field");
  auto b = zero_dim_basis(a.ideal(), limits);
  if (!b) throw ScopeError("oracle: algebra is not zero-dimensional");
  basis_ = std::move(*b);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    size_ *= p_;
    if (size_ > limits.enum_cap) throw CapExceeded("oracle: ring has more than " + std::to_string(limits.enum_cap) + " elements");
  }
  const auto& k = a.field();
  table_.assign(dim(), std::vector<Element>(dim()));
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i; j < dim(); ++j) {
      Polynomial prod = a.normal_form(Polynomial::term(a.ring(), basis_[i] * basis_[j], Coefficient::one(k)));
      table_[i][j] = table_[j][i] = from_polynomial(prod);
    }
  one_ = from_polynomial(Polynomial::constant(a.ring(), 1));
  // Laws on the basis; commutativity holds by construction of the table.
  for (std::size_t i = 0; i < dim(); ++i) {
    Element ei(dim(), 0);
    ei[i] = 1;
    if (mul(one_, ei) != ei) throw Error("oracle: unit law fails");
    for (std::size_t j = 0; j < dim(); ++j) {
      Element ej(dim(), 0);
      ej[j] = 1;
      if (mul(ei, ej) != mul(ej, ei)) throw Error("oracle: commutativity fails");
      for (std::size_t l = 0; l < dim(); ++l) {
        Element el(dim(), 0);
        el[l] = 1;
        if (mul(mul(ei, ej), el) != mul(ei, mul(ej, el))) throw Error("oracle: associativity fails");
      }
    }
  }
}

FiniteRing::Element FiniteRing::add(const Element& a, const Element& b) const {
  Element out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = static_cast<std::uint32_t>((std::uint64_t{a[i]} + b[i]) % p_);
  return out;
}

FiniteRing::Element FiniteRing::neg(const Element& a) const {
  Element out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = a[i] ? p_ - a[i] : 0;
  return out;
}

FiniteRing::Element FiniteRing::scale(std::uint32_t c, const Element& a) const {
  Element out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = static_cast<std::uint32_t>(std::uint64_t{c} * a[i] % p_);
  return out;
}

FiniteRing::Element FiniteRing::mul(const Element& a, const Element& b) const {
  std::vector<std::uint64_t> acc(dim(), 0);
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (!b[j]) continue;
      const std::uint64_t c = std::uint64_t{a[i]} * b[j] % p_;
      const Element& t = table_[i][j];
      for (std::size_t k = 0; k < dim(); ++k)
        if (t[k]) acc[k] = (acc[k] + c * t[k]) % p_;
    }
  }
  return Element(acc.begin(), acc.end());
}

FiniteRing::Element FiniteRing::pow(Element a, std::uint64_t e) const {
  Element r = one_;
  while (e) {
    if (e & 1) r = mul(r, a);
    e >>= 1;
    if (e) a = mul(a, a);
  }
  return r;
}

bool FiniteRing::is_zero(const Element& a) const {
  return std::all_of(a.begin(), a.end(), [](std::uint32_t x) { return x == 0; });
}

FiniteRing::Element FiniteRing::element(std::uint64_t code) const {
  Element out(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    out[i] = static_cast<std::uint32_t>(code % p_);
    code /= p_;
  }
  return out;
}

std::uint64_t FiniteRing::code(const Element& a) const {
  std::uint64_t c = 0;
  for (std::size_t i = dim(); i-- > 0;) c = c * p_ + a[i];
  return c;
}

FiniteRing::Element FiniteRing::from_polynomial(const Polynomial& p) const {
  Polynomial nf = source_.normal_form(p);
  Element out(dim(), 0);
  for (const auto& t : nf.terms()) {
    auto it = std::find(basis_.begin(), basis_.end(), t.monomial);
    if (it == basis_.end()) throw Error("oracle: normal form outside the standard basis");
    out[static_cast<std::size_t>(it - basis_.begin())] = t.coefficient.residue();
  }
  return out;
}

Polynomial FiniteRing::to_polynomial(const Element& a) const {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < dim(); ++i)
    if (a[i]) terms.push_back({basis_[i], Coefficient::from_integer(source_.field(), static_cast<long>(a[i]))});
  return Polynomial::from_terms(source_.ring(), std::move(terms));
}

FiniteRing::Element FiniteRing::evaluate(const Polynomial& p, const std::vector<Element>& point) const {
  Element acc = zero();
  for (const auto& t : p.terms()) {
    Element m = scale(t.coefficient.residue(), one_);
    for (std::size_t v = 0; v < point.size(); ++v)
      if (t.monomial[v]) m = mul(m, pow(point[v], t.monomial[v]));
    acc = add(acc, m);
  }
  return acc;
}

std::vector<std::uint64_t> brute_nilpotents(const FiniteRing& r) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t c = 0; c < r.size(); ++c) {
    auto a = r.element(c);
    for (std::uint64_t k = 1; k < r.size() * 2; k *= 2) a = r.mul(a, a);
    if (r.is_zero(a)) out.push_back(c);
  }
  return out;
}

RootCount brute_roots(const Polynomial& g, const FiniteRing& r) {
  if (g.ring()->arity() != 1) throw ScopeError("brute_roots: polynomial must be univariate");
  if (g.ring()->field() != r.presentation().field()) throw ScopeError("brute_roots: field mismatch");
  RootCount out;
  for (std::uint64_t c = 0; c < r.size(); ++c) {
    if (r.is_zero(r.evaluate(g, {r.element(c)}))) {
      ++out.count;
      out.roots.push_back(c);
    }
  }
  return out;
}

std::uint64_t brute_homs(const FiniteRing& r, const FiniteRing& s, const Limits& limits) {
  const auto& A = r.presentation();
  const std::size_t n = A.arity();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= s.size();
    if (total > limits.enum_cap) throw CapExceeded("brute_homs: too many generator assignments");
  }
  std::uint64_t count = 0;
  std::vector<FiniteRing::Element> point(n);
  for (std::uint64_t c = 0; c < total; ++c) {
    std::uint64_t rest = c;
    for (std::size_t i = 0; i < n; ++i) {
      point[i] = s.element(rest % s.size());
      rest /= s.size();
    }
    bool ok = true;
    for (const auto& rel : A.relations()) {
      if (!s.is_zero(s.evaluate(rel, point))) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
  }
  return count;
}

std::uint64_t separable_rank(const FiniteRing& r) {
  const auto nil = brute_nilpotents(r);
  std::vector<FiniteRing::Element> idem;
  for (std::uint64_t c = 1; c < r.size(); ++c) {
    auto e = r.element(c);
    if (r.mul(e, e) == e) idem.push_back(e);
  }
  std::uint64_t rank = 0;
  for (const auto& e : idem) {
    bool primitive = true;
    for (const auto& g : idem)
      if (g != e && r.mul(g, e) == g) primitive = false;
    if (!primitive) continue;
    std::set<std::uint64_t> re, ne;
    for (std::uint64_t c = 0; c < r.size(); ++c) re.insert(r.code(r.mul(r.element(c), e)));
    for (auto c : nil) ne.insert(r.code(r.mul(r.element(c), e)));
    std::uint64_t residue = re.size() / ne.size();
    std::uint64_t deg = 0;
    while (residue > 1) {
      residue /= r.characteristic();
      ++deg;
    }
    rank += deg;
  }
  return rank;
}

}  // namespace uhom
