#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uhom/field.hpp"
#include "uhom/monomial.hpp"

namespace uhom {

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Polynomial ring context: base field, ordered variable names and term order.
class Ring {
 public:
  Ring(Field field, std::vector<std::string> variables, MonomialOrder order);
  static RingPtr make(Field field, std::vector<std::string> variables,
                      MonomialOrder order = MonomialOrder::grevlex());

  const Field& field() const noexcept { return field_; }
  const std::vector<std::string>& variables() const noexcept { return vars_; }
  std::size_t arity() const noexcept { return vars_.size(); }
  const MonomialOrder& order() const noexcept { return order_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  /// Same variables and field, a different order.
  RingPtr with_order(MonomialOrder order) const;

  friend bool operator==(const Ring&, const Ring&) = default;

 private:
  Field field_;
  std::vector<std::string> vars_;
  MonomialOrder order_;
};

/// True when both contexts describe the same ring (pointer or value equality).
bool same_ring(const RingPtr& a, const RingPtr& b);

struct Term {
  Monomial monomial;
  Coefficient coefficient;
};

/// Sparse multivariate polynomial. Terms are kept strictly descending in the
/// ring's order with no zero coefficients, so equality is structural.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring);

  static Polynomial constant(RingPtr ring, const Coefficient& c);
  static Polynomial constant(RingPtr ring, long c);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial variable(RingPtr ring, std::string_view name);
  static Polynomial term(RingPtr ring, Monomial m, const Coefficient& c);
  /// Builds from arbitrary terms: sorts, merges, drops zeros.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);
  /// Parses the canonical syntax (`+ - * ^`, rational constants, parentheses).
  static Polynomial parse(RingPtr ring, std::string_view text);

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  bool is_one() const noexcept;
  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().monomial; }
  const Coefficient& leading_coefficient() const { return terms_.front().coefficient; }
  std::uint64_t total_degree() const noexcept;
  std::uint32_t degree_in(std::size_t var) const noexcept;
  bool uses_variable(std::size_t var) const noexcept;
  /// Constant term (zero when absent).
  Coefficient constant_term() const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial scale(const Coefficient& c) const;
  Polynomial mul_term(const Monomial& m, const Coefficient& c) const;
  Polynomial pow(std::uint64_t e) const;

  /// Leading coefficient one (zero stays zero).
  Polynomial monic() const;
  Polynomial derivative(std::size_t var) const;

  /// Ring homomorphism: variable i goes to images[i] (all in `target`).
  Polynomial substitute(const RingPtr& target, std::span<const Polynomial> images) const;
  /// Renaming: variable i goes to variable index_map[i] of `target` (same field).
  Polynomial embed(const RingPtr& target, std::span<const std::size_t> index_map) const;
  /// Same variables, possibly a different order.
  Polynomial reorder(const RingPtr& target) const;

  /// Canonical rendering: descending terms, `*` explicit, `^` for powers.
  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  Polynomial(RingPtr ring, std::vector<Term> sorted_terms);
  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Embeds the variables of `from` into `to` by name. Throws ScopeError when a name is missing.
std::vector<std::size_t> index_map_by_name(const Ring& from, const Ring& to);

}  // namespace uhom
