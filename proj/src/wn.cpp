#include "uhom/wn.hpp"

#include "uhom/errors.hpp"
#include "uhom/morphisms.hpp"

namespace uhom {

namespace {

std::optional<Polynomial> member_of_generated(const PresentedAlgebra& B, const std::vector<Polynomial>& gens,
                                              const Polynomial& p, const Limits& limits) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < gens.size(); ++i) names.push_back("w" + std::to_string(i));
  PresentedAlgebra free(B.field(), names, {}, limits);
  return subalgebra_member(p, AlgebraMap(free, B, gens), limits);
}

}  // namespace

WeakNormalizationResult weak_normalize(const AlgebraMap& f, const Limits& limits) {
  certify_reduced(f.source(), limits);
  certify_reduced(f.target(), limits);
  if (!kernel_generators(f, limits).empty()) throw ScopeError("not injective: weak normalization needs an injective map");
  auto ms = module_generators(f, limits);
  if (!ms) throw ScopeError("not finite: target is not a finite module over the source");
  const auto& B = f.target();

  TensorProduct t = tensor_over(f, f, limits);
  Ideal nil = radical(t.algebra.ideal(), limits);
  PresentedAlgebra tred(nil, limits);
  // A -> (B ⊗_A B)_red through the left factor.
  std::vector<Polynomial> im;
  AlgebraMap diag = t.left.after(f);
  for (const auto& p : diag.images()) im.push_back(tred.normal_form(p.reorder(tred.ring())));
  AlgebraMap g(f.source(), tred, std::move(im));
  std::vector<Polynomial> deltas;
  for (const auto& e : ms->generators) {
    Polynomial d = t.left.apply(e) - t.right.apply(e);
    deltas.push_back(tred.normal_form(d.reorder(tred.ring())));
  }
  auto syz = linear_syzygies(g, deltas, limits);

  std::vector<Polynomial> elements;
  for (const auto& c : syz) {
    Polynomial s(B.ring());
    for (std::size_t i = 0; i < c.size(); ++i) s += f.apply(c[i]) * ms->generators[i];
    s = B.normal_form(s);
    if (s.is_zero()) continue;
    if (std::find(elements.begin(), elements.end(), s) == elements.end()) elements.push_back(s);
  }

  std::vector<Polynomial> candidates;
  for (const auto& e : elements)
    if (!e.is_constant()) candidates.push_back(e);
  for (const auto& p : f.images()) candidates.push_back(p);
  std::vector<Polynomial> gens;
  for (const auto& c : candidates) {
    if (c.is_constant()) continue;
    if (!gens.empty() && member_of_generated(B, gens, c, limits)) continue;
    gens.push_back(c);
  }

  std::vector<std::string> names;
  for (std::size_t i = 0; i < gens.size(); ++i) names.push_back("w" + std::to_string(i));
  PresentedAlgebra free(B.field(), names, {}, limits);
  AlgebraMap onto(free, B, gens);
  PresentedAlgebra wn(map_kernel(onto, limits), limits);
  AlgebraMap into(wn, B, gens);
  ImageMembership members(into, limits);
  std::vector<Polynomial> from;
  for (const auto& p : f.images()) {
    auto w = members.preimage(p);
    if (!w) throw Error("weak_normalize: image of the source is not inside the equalizer");
    from.push_back(*w);
  }
  AlgebraMap from_source(f.source(), wn, std::move(from));
  if (!into.after(from_source).same_as(f)) throw Error("weak_normalize: factorization does not compose to f");
  return WeakNormalizationResult{wn, from_source, into, t.algebra, nil, elements};
}

bool is_weakly_normal_under(const AlgebraMap& f, const Limits& limits) {
  return is_isomorphism(weak_normalize(f, limits).from_source, limits).isomorphism;
}

bool traverso_obstruction(const AlgebraMap& f, const Polynomial& b, const Limits& limits) {
  if (!monic_relation(f, b, limits)) throw ScopeError("traverso_obstruction: element is not integral over the source");
  ImageMembership im(f, limits);
  const auto& B = f.target();
  if (im.preimage(b)) return false;
  return im.preimage(B.normal_form(b * b)).has_value() && im.preimage(B.normal_form(b * b * b)).has_value();
}

}  // namespace uhom
