#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uhom/algebra.hpp"

namespace uhom {

enum class Verdict { False, True, Unknown };

std::string to_string(Verdict v);
inline Verdict verdict(bool b) { return b ? Verdict::True : Verdict::False; }
/// Tri-state conjunction: any False wins, then any Unknown.
Verdict all_of(std::initializer_list<Verdict> vs);

struct NilpotencyWitness {
  Polynomial element;
  std::optional<std::uint32_t> exponent;  // least e with element^e = 0, under the cap
  bool nilpotent = false;
  bool cap_exceeded = false;
};

struct RadicialResult {
  Verdict verdict = Verdict::Unknown;
  std::vector<NilpotencyWitness> diagonal;  // b_l - b_r in B ⊗_A B, per generator b of B
};
/// Nilpotency of b⊗1 - 1⊗b for every generator b of B.
RadicialResult is_radicial(const AlgebraMap& f, const Limits& limits = {});

struct IsomorphismResult {
  bool isomorphism = false;
  std::optional<AlgebraMap> inverse;
  std::string reason;
};
IsomorphismResult is_isomorphism(const AlgebraMap& f, const Limits& limits = {});

/// Relative presentation with linear fiber variables substituted away.
struct SimplePresentation {
  RingPtr ring;                        // fiber variables then A's variables (grevlex)
  std::size_t fiber_count = 0;
  std::vector<Polynomial> fiber_images;  // image in B of each remaining fiber variable
  std::vector<Polynomial> relations;     // generators of K together with A's ideal
  std::vector<Polynomial> fiber_relations;  // those involving a fiber variable
};
SimplePresentation simplified_presentation(const AlgebraMap& f, const Limits& limits = {});

struct JacobianWitness {
  std::vector<std::size_t> rows;  // indices into SimplePresentation::fiber_relations
  Polynomial minor;               // in B
  std::optional<Polynomial> inverse;  // in B, when this single minor is a unit
};

struct UnramifiedResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<JacobianWitness> witness;
  std::size_t minors = 0;
};
/// Fitting ideal of maximal Jacobian minors is the unit ideal of B.
UnramifiedResult is_unramified(const AlgebraMap& f, const Limits& limits = {});

struct EtaleResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<JacobianWitness> witness;  // square subsystem with unit determinant
  std::string reason;
};
EtaleResult is_etale(const AlgebraMap& f, const Limits& limits = {});

struct MorphismReport {
  Verdict schematically_dominant = Verdict::Unknown;
  Verdict nilimmersion = Verdict::Unknown;
  Verdict integral = Verdict::Unknown;
  Verdict surjective = Verdict::Unknown;
  Verdict radicial = Verdict::Unknown;
  Verdict universal_homeomorphism = Verdict::Unknown;
  Verdict unramified = Verdict::Unknown;
  Verdict etale = Verdict::Unknown;
  Verdict isomorphism = Verdict::Unknown;

  std::vector<Polynomial> kernel;                  // nonzero kernel generators in A
  std::vector<NilpotencyWitness> kernel_nilpotency;
  std::vector<std::optional<Polynomial>> preimages;  // per generator of B
  std::optional<ModuleStructure> module;
  std::vector<NilpotencyWitness> diagonal;
  std::optional<JacobianWitness> unramified_witness;
  std::optional<JacobianWitness> etale_witness;
  std::optional<AlgebraMap> inverse;
  std::map<std::string, std::string> reasons;  // property name -> why it is unknown or false
};

/// Property names accepted by Classifier::verdict and the CLI.
const std::vector<std::string>& property_names();

/// Memoizing classifier; each property computes only what it needs.
class Classifier {
 public:
  explicit Classifier(AlgebraMap f, Limits limits = {});

  Verdict schematically_dominant();
  Verdict algebra_surjective();
  Verdict nilimmersion();
  Verdict integral();
  Verdict surjective();
  Verdict radicial();
  Verdict universal_homeomorphism();
  Verdict unramified();
  Verdict etale();
  Verdict isomorphism();
  /// Throws ScopeError for an unknown name.
  Verdict verdict(const std::string& property);

  /// Certificates gathered so far.
  const MorphismReport& report() const { return r_; }
  /// Computes every property.
  MorphismReport classify();

 private:
  const std::vector<Polynomial>& kernel();
  void note(const std::string& prop, const std::string& why);

  AlgebraMap f_;
  Limits limits_;
  MorphismReport r_;
  std::optional<std::vector<Polynomial>> kernel_;
  std::optional<Verdict> dom_, alg_surj_, nil_, int_, surj_, rad_, uh_, unr_, et_, iso_, kernel_nil_;
};

MorphismReport classify(const AlgebraMap& f, const Limits& limits = {});

struct SchematicImage {
  Ideal kernel;                // in A's polynomial ring
  PresentedAlgebra image;      // A/K
  AlgebraMap nilimmersion;     // A -> A/K
  AlgebraMap dominant;         // A/K -> B
};
SchematicImage factor_schematic_image(const AlgebraMap& f, const Limits& limits = {});

}  // namespace uhom
