#pragma once

// Corpus algebras and maps shared by the unit, property and acceptance tests.

#include "uhom/algebra.hpp"

namespace corpus {

using uhom::AlgebraMap;
using uhom::Field;
using uhom::PresentedAlgebra;

inline PresentedAlgebra alg(Field k, std::vector<std::string> vars, std::vector<std::string> rels = {}) {
  return PresentedAlgebra(k, std::move(vars), rels);
}
inline AlgebraMap map(const PresentedAlgebra& a, const PresentedAlgebra& b, std::vector<std::string> images) {
  return AlgebraMap(a, b, images);
}

inline Field Q() { return Field::rationals(); }
inline Field F(unsigned p) { return Field::prime(p); }

/// Q[a,b]/(b^2 - a^3) -> Q[t], a -> t^2, b -> t^3 (or over another field).
inline AlgebraMap cusp(Field k = Q()) {
  return map(alg(k, {"a", "b"}, {"b^2 - a^3"}), alg(k, {"t"}), {"t^2", "t^3"});
}

/// F_2[a,b,c]/(b^2 - a*c^2) -> F_2[x,y], the subring k[x^2, x*y, y].
inline AlgebraMap frobenius_subring() {
  return map(alg(F(2), {"a", "b", "c"}, {"b^2 - a*c^2"}), alg(F(2), {"x", "y"}), {"x^2", "x*y", "y"});
}

/// Q[u,v]/(u^2 + v^2) -> Q[i,x]/(i^2 + 1), u -> x, v -> i*x.
inline AlgebraMap gaussian_lines() {
  return map(alg(Q(), {"u", "v"}, {"u^2 + v^2"}), alg(Q(), {"i", "x"}, {"i^2 + 1"}), {"x", "i*x"});
}

/// Two lines as a product ring: e idempotent, u on e = 1, w on e = 0.
inline PresentedAlgebra two_lines(const char* s = "u", const char* w = "w", Field k = Q()) {
  return alg(k, {s, w, "e"}, {"e^2 - e", std::string(s) + " - " + s + "*e", std::string(w) + "*e"});
}

/// Q[x,y]/(x*y) -> two lines.
inline AlgebraMap node(Field k = Q()) {
  return map(alg(k, {"x", "y"}, {"x*y"}), two_lines("u", "w", k), {"u", "w"});
}

/// Q[x,y]/(y^2 - x^4) -> two lines, x -> (s, s'), y -> (s^2, -s'^2).
inline AlgebraMap tacnode() {
  return map(alg(Q(), {"x", "y"}, {"y^2 - x^4"}), two_lines("s", "s'"), {"s + s'", "s^2 - s'^2"});
}

/// Tacnode with x inverted on both sides (fresh z with x*z = 1).
inline AlgebraMap tacnode_localized() {
  return map(alg(Q(), {"x", "y", "z"}, {"y^2 - x^4", "x*z - 1"}),
             alg(Q(), {"s", "s'", "e", "z"}, {"e^2 - e", "s - s*e", "s'*e", "(s + s')*z - 1"}),
             {"s + s'", "s^2 - s'^2", "z"});
}

/// Transverse lines Q[p,q]/(p*q).
inline PresentedAlgebra crossing() { return alg(Q(), {"p", "q"}, {"p*q"}); }

/// Q[x,z]/(x*z - 1) -> adjoin y with y^2 = x: finite étale of degree 2, not uh.
inline AlgebraMap etale_double_cover() {
  return map(alg(Q(), {"x", "z"}, {"x*z - 1"}), alg(Q(), {"x", "z", "y"}, {"x*z - 1", "y^2 - x"}), {"x", "z"});
}

}  // namespace corpus
