#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uhom/groebner.hpp"

namespace uhom {

struct RadicalMembership {
  bool member = false;
  /// Least e with p^e in I, when requested and found under the cap.
  std::optional<std::uint32_t> exponent;
  bool cap_exceeded = false;
};

/// Rabinowitsch test: p is in rad(I) iff 1 lies in I + (1 - t*p). With
/// `want_exponent`, also finds the least e <= limits.nilpotency_cap with
/// p^e in I (doubling, then binary search).
RadicalMembership radical_member(const Polynomial& p, const Ideal& ideal, const Limits& limits = {},
                                 bool want_exponent = true);

/// Least e <= cap with p^e in I by normal forms of powers; nullopt past the cap.
std::optional<std::uint32_t> nilpotency_exponent(const Polynomial& p, const Ideal& ideal, std::uint32_t cap,
                                                 const Limits& limits = {});

/// I intersected with k[remaining variables]; the result lives in the ring
/// of the remaining variables (grevlex) with its basis.
Ideal eliminate(const Ideal& ideal, const std::vector<std::size_t>& front_vars, const Limits& limits = {});
Ideal eliminate(const Ideal& ideal, const std::vector<std::string>& front_names, const Limits& limits = {});

Ideal intersect(const Ideal& a, const Ideal& b, const Limits& limits = {});
/// (I : J) = { p : p*J in I }.
Ideal ideal_quotient(const Ideal& i, const Ideal& j, const Limits& limits = {});
Ideal ideal_quotient(const Ideal& i, const Polynomial& g, const Limits& limits = {});
/// I : J^infinity, iterating quotients to stabilization.
Ideal saturate(const Ideal& i, const Ideal& j, const Limits& limits = {});
/// I : g^infinity via one extra variable.
Ideal saturate(const Ideal& i, const Polynomial& g, const Limits& limits = {});

/// Radical. Zero-dimensional ideals: Seidenberg (squarefree parts of the
/// variable eliminants). Positive dimension: independent-set localization and
/// recursion. Throws NotCertified for inseparable generic fibres in char p.
Ideal radical(const Ideal& ideal, const Limits& limits = {});

/// Standard monomials of a zero-dimensional ideal (ascending); nullopt otherwise.
std::optional<std::vector<Monomial>> zero_dim_basis(const Ideal& ideal, const Limits& limits = {});

/// Krull dimension of k[x]/I from the leading-term ideal (-1 for the unit ideal).
int dimension(const Ideal& ideal, const Limits& limits = {});

// Polynomial helpers built on the above.
/// Exact division; throws ScopeError when g does not divide f.
Polynomial divide_exact(const Polynomial& f, const Polynomial& g);
/// Monic greatest common divisor (zero when both inputs are zero).
Polynomial polynomial_gcd(const Polynomial& f, const Polynomial& g, const Limits& limits = {});
/// Product of the distinct irreducible factors.
Polynomial squarefree_part(const Polynomial& f, const Limits& limits = {});

}  // namespace uhom
