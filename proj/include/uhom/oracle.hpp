#pragma once

#include <cstdint>
#include <vector>

#include "uhom/algebra.hpp"

namespace uhom {

/// A finite F_p-algebra as coordinates over its standard-monomial basis.
/// Elements are coordinate vectors; `code` enumerates them in base p.
class FiniteRing {
 public:
  using Element = std::vector<std::uint32_t>;

  /// Throws ScopeError (characteristic 0, not zero-dimensional) or
  /// CapExceeded (more than limits.enum_cap elements).
  explicit FiniteRing(const PresentedAlgebra& a, const Limits& limits = {});

  std::uint32_t characteristic() const noexcept { return p_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  std::uint64_t size() const noexcept { return size_; }
  const std::vector<Monomial>& basis() const noexcept { return basis_; }
  const PresentedAlgebra& presentation() const noexcept { return source_; }

  Element zero() const { return Element(dim(), 0); }
  const Element& one() const { return one_; }
  Element add(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element scale(std::uint32_t c, const Element& a) const;
  Element mul(const Element& a, const Element& b) const;
  Element pow(Element a, std::uint64_t e) const;
  bool is_zero(const Element& a) const;

  Element element(std::uint64_t code) const;
  std::uint64_t code(const Element& a) const;
  Element from_polynomial(const Polynomial& p) const;
  Polynomial to_polynomial(const Element& a) const;
  /// Value of a polynomial in the presentation's variables at given elements.
  Element evaluate(const Polynomial& p, const std::vector<Element>& point) const;

 private:
  PresentedAlgebra source_;
  std::uint32_t p_;
  std::vector<Monomial> basis_;
  std::uint64_t size_ = 1;
  std::vector<std::vector<Element>> table_;  // basis_i * basis_j
  Element one_;
};

/// Codes of nilpotent elements: a^(2^k) = 0 with 2^k >= |R|.
std::vector<std::uint64_t> brute_nilpotents(const FiniteRing& r);

struct RootCount {
  std::uint64_t count = 0;
  std::vector<std::uint64_t> roots;  // codes
};
/// Roots in R of a univariate polynomial g (one-variable ring over F_p).
RootCount brute_roots(const Polynomial& g, const FiniteRing& r);

/// Number of unital F_p-algebra maps R -> S, by assigning R's generators.
std::uint64_t brute_homs(const FiniteRing& r, const FiniteRing& s, const Limits& limits = {});

/// Σ [κ(m) : F_p] over the maximal ideals of R.
std::uint64_t separable_rank(const FiniteRing& r);

}  // namespace uhom
