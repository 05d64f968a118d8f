#pragma once

#include <vector>

#include "uhom/algebra.hpp"

namespace uhom {

/// A -> A'' -> B with A'' = { b in B : b⊗1 - 1⊗b nilpotent in B ⊗_A B }.
struct WeakNormalizationResult {
  PresentedAlgebra algebra;       // A'' on variables w0..wk
  AlgebraMap from_source;         // A -> A''
  AlgebraMap into_target;         // A'' -> B
  PresentedAlgebra tensor;        // B ⊗_A B
  Ideal nilradical;               // radical of the tensor's ideal
  std::vector<Polynomial> module_elements;  // A-module generators of A'' inside B
};

/// Requires A and B reduced, f injective and module-finite (ScopeError
/// otherwise); propagates NotCertified from the radical of B ⊗_A B.
WeakNormalizationResult weak_normalize(const AlgebraMap& f, const Limits& limits = {});

bool is_weakly_normal_under(const AlgebraMap& f, const Limits& limits = {});

/// b², b³ ∈ f(A) but b ∉ f(A). Requires b integral over A.
bool traverso_obstruction(const AlgebraMap& f, const Polynomial& b, const Limits& limits = {});

}  // namespace uhom
