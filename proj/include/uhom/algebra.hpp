#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "uhom/groebner.hpp"
#include "uhom/ideal_ops.hpp"

namespace uhom {

/// k[x_1..x_n]/I. The ideal always carries its grevlex basis; the reduced
/// flag is set only by reduce()/certify_reduced().
class PresentedAlgebra {
 public:
  PresentedAlgebra(Field field, std::vector<std::string> variables, const std::vector<std::string>& relations,
                   const Limits& limits = {});
  /// The ideal's ring must use grevlex; its basis is computed when missing.
  explicit PresentedAlgebra(const Ideal& ideal, const Limits& limits = {});

  const Field& field() const { return d_->ideal.ring()->field(); }
  const RingPtr& ring() const { return d_->ideal.ring(); }
  const std::vector<std::string>& variables() const { return ring()->variables(); }
  std::size_t arity() const { return ring()->arity(); }
  const Ideal& ideal() const { return d_->ideal; }
  const std::vector<Polynomial>& relations() const { return d_->ideal.basis(); }
  bool reduced_certified() const { return d_->reduced; }
  bool is_zero_ring() const { return d_->ideal.is_unit(); }

  Polynomial variable(std::size_t i) const { return Polynomial::variable(ring(), i); }
  Polynomial variable(std::string_view name) const { return Polynomial::variable(ring(), name); }
  Polynomial parse(std::string_view text) const { return Polynomial::parse(ring(), text); }
  Polynomial normal_form(const Polynomial& p) const;
  bool is_zero(const Polynomial& p) const { return normal_form(p).is_zero(); }
  bool equal(const Polynomial& a, const Polynomial& b) const { return is_zero(a - b); }

  /// Same presentation with the reduced flag set (caller has certified it).
  PresentedAlgebra with_reduced_flag() const;

  /// `[x, y] / (rel; rel)` using the basis.
  std::string to_string() const;

 private:
  struct Data {
    Ideal ideal;
    bool reduced = false;
  };
  explicit PresentedAlgebra(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

/// k-algebra map A -> B given by normal-form images of A's variables.
/// Well-definedness is checked at construction.
class AlgebraMap {
 public:
  AlgebraMap(PresentedAlgebra source, PresentedAlgebra target, std::vector<Polynomial> images);
  AlgebraMap(PresentedAlgebra source, PresentedAlgebra target, const std::vector<std::string>& images);

  static AlgebraMap identity(const PresentedAlgebra& a);

  const PresentedAlgebra& source() const { return source_; }
  const PresentedAlgebra& target() const { return target_; }
  const std::vector<Polynomial>& images() const { return images_; }
  const Polynomial& image(std::size_t i) const { return images_[i]; }

  /// f(p) in normal form; p lives in the source's ring.
  Polynomial apply(const Polynomial& p) const;
  /// this ∘ first.
  AlgebraMap after(const AlgebraMap& first) const;

  /// Same images on every generator (targets compared as normal forms).
  bool same_as(const AlgebraMap& other) const;
  std::string to_string() const;

 private:
  PresentedAlgebra source_, target_;
  std::vector<Polynomial> images_;
};

/// g ∘ f.
inline AlgebraMap compose(const AlgebraMap& g, const AlgebraMap& f) { return g.after(f); }

struct TensorProduct {
  PresentedAlgebra algebra;
  AlgebraMap left;   // B -> B ⊗_A C, variables suffixed _l
  AlgebraMap right;  // C -> B ⊗_A C, variables suffixed _r
};

/// B ⊗_A C for f: A -> B and g: A -> C.
TensorProduct tensor_over(const AlgebraMap& f, const AlgebraMap& g, const Limits& limits = {});

/// ker(k[A vars] -> B) as an ideal of A's polynomial ring; contains A's ideal.
Ideal map_kernel(const AlgebraMap& f, const Limits& limits = {});
/// Kernel generators that are nonzero in A (the kernel modulo A's ideal).
std::vector<Polynomial> kernel_generators(const AlgebraMap& f, const Limits& limits = {});

struct Reduction {
  PresentedAlgebra reduced;
  AlgebraMap quotient;
};
/// A -> A/rad(0). Propagates NotCertified.
Reduction reduce(const PresentedAlgebra& a, const Limits& limits = {});
/// A with the reduced flag when rad(I) = I; throws ScopeError("not reduced") otherwise.
PresentedAlgebra certify_reduced(const PresentedAlgebra& a, const Limits& limits = {});

/// Decides membership in the image subalgebra f(A) ⊆ B. The graph-ideal basis
/// is computed once and shared across queries.
class ImageMembership {
 public:
  explicit ImageMembership(const AlgebraMap& f, const Limits& limits = {});
  /// A preimage (normal form in A) when p ∈ f(A).
  std::optional<Polynomial> preimage(const Polynomial& p) const;

 private:
  AlgebraMap f_;
  RingPtr graph_;  // B variables ≫ A variables
  std::vector<Polynomial> basis_;
};

std::optional<Polynomial> subalgebra_member(const Polynomial& p, const AlgebraMap& f, const Limits& limits = {});

/// B ≅ A[y_1..y_m]/K with y_j ↦ j-th generator of B.
struct RelativePresentation {
  RingPtr ring;  // y_1..y_m then A's variables; block order (y ≫ A), grevlex within
  std::vector<std::string> fiber_names;
  Ideal relations;  // K with its basis in `ring`
  std::size_t fiber_count() const { return fiber_names.size(); }
  std::size_t base_offset() const { return fiber_names.size(); }
};
RelativePresentation relative_presentation(const AlgebraMap& f, const Limits& limits = {});

struct MonicRelation {
  Polynomial element;   // in B
  RingPtr ring;         // T then A's variables
  Polynomial relation;  // monic in T, coefficients polynomials in A's variables
  std::uint32_t degree = 0;
};

struct ModuleStructure {
  std::vector<Polynomial> generators;  // in B, as normal forms; first is 1
  std::vector<Monomial> fiber_monomials;  // exponents in y for each generator
  std::vector<MonicRelation> relations;   // one per generator
};

/// Module generators of B over A with a monic relation for each, or nullopt
/// when B is not module-finite.
std::optional<ModuleStructure> module_generators(const AlgebraMap& f, const Limits& limits = {});
/// Monic relation of a single element b ∈ B, or nullopt when b is not integral.
/// Requires B module-finite only for termination guarantees.
std::optional<MonicRelation> monic_relation(const AlgebraMap& f, const Polynomial& b, const Limits& limits = {});

/// Generators (vectors over A's polynomial ring) of the A-module of
/// (c_1..c_k) with Σ f(c_i)·h_i = 0 in B.
std::vector<std::vector<Polynomial>> linear_syzygies(const AlgebraMap& f, const std::vector<Polynomial>& h,
                                                     const Limits& limits = {});

struct Conductor {
  Ideal in_target;    // ideal of B's polynomial ring (contains B's ideal)
  Ideal contraction;  // ideal of A's polynomial ring (contains A's ideal)
};
/// Largest B-ideal inside f(A). Requires f injective and module-finite.
Conductor conductor(const AlgebraMap& f, const Limits& limits = {});

/// u^{-1} in B when u is a unit.
std::optional<Polynomial> unit_inverse(const PresentedAlgebra& b, const Polynomial& u, const Limits& limits = {});

/// Appends "_" to `base` until it is not among `taken`.
std::string unique_name(std::string base, const std::vector<std::string>& taken);

}  // namespace uhom
