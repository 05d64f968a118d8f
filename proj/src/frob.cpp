#include "uhom/frob.hpp"

#include "uhom/errors.hpp"
#include "uhom/morphisms.hpp"

namespace uhom {

namespace {

void require_char_p(const Field& k, const char* what) {
  if (k.is_rational()) throw ScopeError(std::string(what) + ": requires positive characteristic");
}

std::uint32_t log_p(std::uint64_t q, std::uint32_t p) {
  std::uint32_t r = 0;
  while (q > 1) {
    q /= p;
    ++r;
  }
  return r;
}

}  // namespace

std::uint64_t frobenius_power(const Field& k, std::uint32_t r) {
  require_char_p(k, "frobenius");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < r; ++i) {
    q *= k.characteristic();
    if (q > (1ull << 31)) throw CapExceeded("frobenius: p^r exceeds 2^31");
  }
  return q;
}

AlgebraMap absolute_frobenius(const PresentedAlgebra& a, std::uint64_t q) {
  require_char_p(a.field(), "absolute_frobenius");
  std::vector<Polynomial> im;
  for (std::size_t i = 0; i < a.arity(); ++i) im.push_back(a.variable(i).pow(q));
  return AlgebraMap(a, a, std::move(im));
}

FrobeniusTwistData frobenius_twist(const AlgebraMap& f, std::uint32_t r, const Limits& limits) {
  require_char_p(f.source().field(), "frobenius_twist");
  if (r == 0) throw ScopeError("frobenius_twist: r must be at least 1");
  const std::uint64_t q = frobenius_power(f.source().field(), r);
  const auto& A = f.source();
  const auto& B = f.target();
  AlgebraMap phiA = absolute_frobenius(A, q);
  TensorProduct t = tensor_over(f, phiA, limits);
  std::vector<Polynomial> im;
  for (std::size_t j = 0; j < B.arity(); ++j) im.push_back(B.variable(j).pow(q));
  for (const auto& p : f.images()) im.push_back(p);
  AlgebraMap rel(t.algebra, B, std::move(im));
  // Φ ∘ base_change = φ_B, Φ ∘ structure = f, base_change ∘ f = structure ∘ φ_A.
  if (!rel.after(t.left).same_as(absolute_frobenius(B, q)) || !rel.after(t.right).same_as(f) ||
      !t.left.after(f).same_as(t.right.after(phiA)))
    throw Error("frobenius_twist: pullback square does not commute");
  return FrobeniusTwistData{r, q, t.algebra, t.left, t.right, rel};
}

AlgebraMap perfection_truncation(const PresentedAlgebra& a, std::uint32_t n, const Limits& limits) {
  require_char_p(a.field(), "perfection_truncation");
  PresentedAlgebra red = certify_reduced(a, limits);
  return absolute_frobenius(red, frobenius_power(a.field(), n));
}

std::optional<KollarFactor> kollar_factor_at(const AlgebraMap& f, std::uint32_t r, const Limits& limits) {
  const auto& A = f.source();
  const auto& B = f.target();
  require_char_p(A.field(), "kollar_factor");
  const std::uint32_t p = A.field().characteristic();
  const std::uint64_t q = frobenius_power(A.field(), r);

  SchematicImage si = factor_schematic_image(f, limits);
  // Nil branch: least p-power v with k^v ∈ I_A for every kernel generator.
  std::uint64_t v = 1;
  for (const auto& k : kernel_generators(f, limits)) {
    auto e = nilpotency_exponent(k, A.ideal(), limits.nilpotency_cap, limits);
    if (!e) throw CapExceeded("kollar_factor: kernel nilpotency exponent exceeds the cap");
    std::uint64_t w = 1;
    while (w < *e) w *= p;
    v = std::max(v, w);
  }
  if (v > q) return std::nullopt;
  // Dominant branch at exponent q / v: witnesses of y_j^(q/v) in A/K.
  const std::uint64_t qd = q / v;
  ImageMembership im(si.dominant, limits);
  std::vector<Polynomial> alphas;
  for (std::size_t j = 0; j < B.arity(); ++j) {
    auto w = im.preimage(B.normal_form(B.variable(j).pow(qd)));
    if (!w) return std::nullopt;
    alphas.push_back(*w);
  }
  FrobeniusTwistData tw = frobenius_twist(f, r, limits);
  std::vector<Polynomial> sec;
  for (const auto& a : alphas) sec.push_back(A.normal_form(a.reorder(A.ring()).pow(v)));
  std::vector<Polynomial> witnesses = sec;
  for (std::size_t i = 0; i < A.arity(); ++i) sec.push_back(A.variable(i));
  AlgebraMap section(tw.twisted, A, std::move(sec));
  if (!f.after(section).same_as(tw.relative)) throw Error("kollar_factor: triangle does not commute");

  // Least dominant exponent, for the certificate.
  std::uint64_t dom = 1;
  for (; dom < qd; dom *= p) {
    bool all = true;
    for (std::size_t j = 0; j < B.arity() && all; ++j)
      all = im.preimage(B.normal_form(B.variable(j).pow(dom))).has_value();
    if (all) break;
  }
  return KollarFactor{r, q, v, dom, tw, section, witnesses};
}

std::optional<KollarFactor> kollar_factor(const AlgebraMap& f, std::uint32_t max_r, const Limits& limits) {
  require_char_p(f.source().field(), "kollar_factor");
  Classifier c(f, limits);
  if (c.integral() != Verdict::True) throw ScopeError("kollar_factor: map is not finite");
  if (c.universal_homeomorphism() != Verdict::True)
    throw ScopeError("kollar_factor: map is not a universal homeomorphism");
  const std::uint32_t p = f.source().field().characteristic();
  // Least r first: the nil exponent fixes a lower bound.
  std::uint64_t v = 1;
  for (const auto& k : kernel_generators(f, limits)) {
    auto e = nilpotency_exponent(k, f.source().ideal(), limits.nilpotency_cap, limits);
    if (!e) throw CapExceeded("kollar_factor: kernel nilpotency exponent exceeds the cap");
    while (v < *e) v *= p;
  }
  for (std::uint32_t r = std::max<std::uint32_t>(1, log_p(v, p)); r <= max_r; ++r) {
    limits.check_deadline();
    if (auto k = kollar_factor_at(f, r, limits)) return k;
  }
  return std::nullopt;
}

FunctorialKollar functorial_kollar(const AlgebraMap& f, const AlgebraMap& g, const AlgebraMap& alpha,
                                   const AlgebraMap& beta, std::uint32_t max_r, const Limits& limits) {
  if (!beta.after(f).same_as(g.after(alpha))) throw ScopeError("functorial_kollar: square does not commute");
  auto kf = kollar_factor(f, max_r, limits);
  auto kg = kollar_factor(g, max_r, limits);
  if (!kf || !kg) throw CapExceeded("functorial_kollar: NotFound within max_r");
  const std::uint32_t r = std::max(kf->r, kg->r);
  auto top = kollar_factor_at(f, r, limits);
  auto bottom = kollar_factor_at(g, r, limits);
  if (!top || !bottom) throw Error("functorial_kollar: witnesses lost at the common exponent");
  // β^(q): y_l -> β(y)_l, a_r -> α(a)_r.
  const auto& Tt = top->twist;
  const auto& Tb = bottom->twist;
  std::vector<Polynomial> im;
  for (const auto& p : beta.images()) im.push_back(Tb.base_change.apply(p));
  for (const auto& p : alpha.images()) im.push_back(Tb.structure.apply(p));
  AlgebraMap bq(Tt.twisted, Tb.twisted, std::move(im));
  bool prism = bottom->section.after(bq).same_as(alpha.after(top->section)) &&
               Tb.relative.after(bq).same_as(beta.after(Tt.relative));
  return FunctorialKollar{r, *top, *bottom, bq, prism};
}

}  // namespace uhom
