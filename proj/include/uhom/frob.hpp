#pragma once

#include <optional>
#include <vector>

#include "uhom/algebra.hpp"

namespace uhom {

/// q = p^r; throws CapExceeded past 2^31.
std::uint64_t frobenius_power(const Field& k, std::uint32_t r);

/// Absolute q-power Frobenius a -> a^q on a presented F_p-algebra.
AlgebraMap absolute_frobenius(const PresentedAlgebra& a, std::uint64_t q);

/// For f: A -> B, the twist B^(q) = B ⊗_{A, φ} A along the q-power Frobenius φ of A.
struct FrobeniusTwistData {
  std::uint32_t r = 0;
  std::uint64_t q = 1;
  PresentedAlgebra twisted;  // B^(q), variables y_l (from B) and a_r (from A)
  AlgebraMap base_change;    // B -> B^(q)
  AlgebraMap structure;      // A -> B^(q)
  AlgebraMap relative;       // Φ: B^(q) -> B, y_l -> y^q, a_r -> f(a)
};
/// Requires characteristic p and r >= 1; verifies both triangles and the square.
FrobeniusTwistData frobenius_twist(const AlgebraMap& f, std::uint32_t r, const Limits& limits = {});

/// A -> A, x -> x^(p^n), for reduced A over F_p.
AlgebraMap perfection_truncation(const PresentedAlgebra& a, std::uint32_t n, const Limits& limits = {});

struct KollarFactor {
  std::uint32_t r = 0;
  std::uint64_t q = 1;
  std::uint64_t nil_exponent = 1;       // least p-power v with K^[v] ⊆ I_A
  std::uint64_t dominant_exponent = 1;  // least p-power with y_j^that in the image
  FrobeniusTwistData twist;
  AlgebraMap section;  // f^(-q): B^(q) -> A, with f ∘ section = Φ
  std::vector<Polynomial> witnesses;  // section image of each y_l
};

/// Prime-power factorization of a finite universal homeomorphism through
/// Frobenius. nullopt when no q = p^r with r <= max_r works.
std::optional<KollarFactor> kollar_factor(const AlgebraMap& f, std::uint32_t max_r = 16, const Limits& limits = {});
/// Same, at a prescribed r (nullopt when the witnesses do not exist there).
std::optional<KollarFactor> kollar_factor_at(const AlgebraMap& f, std::uint32_t r, const Limits& limits = {});

/// Commutative square  A --f--> B,  A' --g--> B'  with verticals α: A -> A', β: B -> B'.
struct FunctorialKollar {
  std::uint32_t r = 0;
  KollarFactor top, bottom;
  AlgebraMap twisted_vertical;  // β^(q): B^(q) -> B'^(q)
  bool prism_commutes = false;
};
FunctorialKollar functorial_kollar(const AlgebraMap& f, const AlgebraMap& g, const AlgebraMap& alpha,
                                   const AlgebraMap& beta, std::uint32_t max_r = 16, const Limits& limits = {});

}  // namespace uhom
