#include "uhom/algebra.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "uhom/errors.hpp"

namespace uhom {

std::string unique_name(std::string base, const std::vector<std::string>& taken) {
  while (std::find(taken.begin(), taken.end(), base) != taken.end()) base += "_";
  return base;
}

// ---------------------------------------------------------------------------
// PresentedAlgebra

PresentedAlgebra::PresentedAlgebra(Field field, std::vector<std::string> variables,
                                   const std::vector<std::string>& relations, const Limits& limits) {
  RingPtr r = Ring::make(field, std::move(variables));
  std::vector<Polynomial> gens;
  for (const auto& s : relations) gens.push_back(Polynomial::parse(r, s));
  d_ = std::make_shared<Data>(Data{groebner_basis(Ideal(r, std::move(gens)), limits), false});
}

PresentedAlgebra::PresentedAlgebra(const Ideal& ideal, const Limits& limits) {
  if (!(ideal.ring()->order() == MonomialOrder::grevlex()))
    throw ScopeError("presented algebra: defining ideal must use grevlex");
  d_ = std::make_shared<Data>(Data{with_basis(ideal, limits), false});
}

Polynomial PresentedAlgebra::normal_form(const Polynomial& p) const {
  if (!same_ring(p.ring(), ring())) throw ScopeError("normal_form: ring context mismatch");
  return uhom::normal_form(p, d_->ideal);
}

PresentedAlgebra PresentedAlgebra::with_reduced_flag() const {
  return PresentedAlgebra(std::make_shared<Data>(Data{d_->ideal, true}));
}

std::string PresentedAlgebra::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < arity(); ++i) s += (i ? ", " : "") + variables()[i];
  s += "] / (";
  const auto& rel = relations();
  for (std::size_t i = 0; i < rel.size(); ++i) s += (i ? "; " : "") + rel[i].to_string();
  return s + ")";
}

// ---------------------------------------------------------------------------
// AlgebraMap

AlgebraMap::AlgebraMap(PresentedAlgebra source, PresentedAlgebra target, std::vector<Polynomial> images)
    : source_(std::move(source)), target_(std::move(target)) {
  if (!(source_.field() == target_.field())) throw ScopeError("map: source and target fields differ");
  if (images.size() != source_.arity())
    throw ScopeError("map: expected " + std::to_string(source_.arity()) + " images, got " +
                     std::to_string(images.size()));
  for (auto& im : images) {
    if (!same_ring(im.ring(), target_.ring())) throw ScopeError("map: image outside the target ring");
    images_.push_back(target_.normal_form(im));
  }
  const auto& gens = source_.ideal().generators().empty() ? source_.relations() : source_.ideal().generators();
  for (const auto& rel : gens) {
    if (!target_.is_zero(rel.substitute(target_.ring(), images_)))
      throw IllDefinedMap("map is not well-defined: relation " + rel.to_string() + " does not map to zero",
                          rel.to_string());
  }
}

AlgebraMap::AlgebraMap(PresentedAlgebra source, PresentedAlgebra target, const std::vector<std::string>& images)
    : AlgebraMap(source, target, [&] {
        std::vector<Polynomial> out;
        for (const auto& s : images) out.push_back(target.parse(s));
        return out;
      }()) {}

AlgebraMap AlgebraMap::identity(const PresentedAlgebra& a) {
  std::vector<Polynomial> im;
  for (std::size_t i = 0; i < a.arity(); ++i) im.push_back(a.variable(i));
  return AlgebraMap(a, a, std::move(im));
}

Polynomial AlgebraMap::apply(const Polynomial& p) const {
  if (!same_ring(p.ring(), source_.ring())) throw ScopeError("apply: polynomial outside the source ring");
  return target_.normal_form(p.substitute(target_.ring(), images_));
}

AlgebraMap AlgebraMap::after(const AlgebraMap& first) const {
  if (!same_ring(first.target().ring(), source_.ring()) ||
      first.target().relations() != source_.relations())
    throw ScopeError("compose: target of the first map is not the source of the second");
  std::vector<Polynomial> im;
  for (const auto& p : first.images()) im.push_back(apply(p));
  return AlgebraMap(first.source(), target_, std::move(im));
}

bool AlgebraMap::same_as(const AlgebraMap& other) const {
  if (images_.size() != other.images_.size()) return false;
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (!(images_[i] == other.images_[i])) return false;
  return true;
}

std::string AlgebraMap::to_string() const {
  std::string s = "{ ";
  for (std::size_t i = 0; i < images_.size(); ++i)
    s += (i ? ", " : "") + source_.variables()[i] + " -> " + images_[i].to_string();
  return s + " }";
}

// ---------------------------------------------------------------------------
// Graph-ideal machinery. Internal rings use the variable layout
//   [B vars | extra | A vars]
// with one block per group; names are prefixed so they never clash.

namespace {

struct Layout {
  RingPtr ring;
  std::vector<std::size_t> b_map, a_map;  // B/A index -> layout index
  std::size_t extra_begin = 0, extra_count = 0;
};

Layout make_layout(const AlgebraMap& f, const std::vector<std::string>& extra,
                   const std::vector<std::size_t>& extra_blocks) {
  const auto& B = f.target();
  const auto& A = f.source();
  Layout l;
  std::vector<std::string> names;
  std::vector<std::size_t> blocks;
  for (const auto& v : B.variables()) {
    l.b_map.push_back(names.size());
    names.push_back("b:" + v);
  }
  if (B.arity()) blocks.push_back(B.arity());
  l.extra_begin = names.size();
  l.extra_count = extra.size();
  for (const auto& v : extra) names.push_back("x:" + v);
  for (auto b : extra_blocks)
    if (b) blocks.push_back(b);
  for (const auto& v : A.variables()) {
    l.a_map.push_back(names.size());
    names.push_back("a:" + v);
  }
  if (A.arity()) blocks.push_back(A.arity());
  MonomialOrder ord = blocks.size() <= 1 ? MonomialOrder::grevlex() : MonomialOrder::block(blocks);
  l.ring = Ring::make(A.field(), names, ord);
  return l;
}

std::vector<Polynomial> graph_generators(const AlgebraMap& f, const Layout& l) {
  std::vector<Polynomial> gens;
  for (const auto& g : f.target().relations()) gens.push_back(g.embed(l.ring, l.b_map));
  for (std::size_t i = 0; i < f.source().arity(); ++i)
    gens.push_back(Polynomial::variable(l.ring, l.a_map[i]) - f.image(i).embed(l.ring, l.b_map));
  for (const auto& g : f.source().relations()) gens.push_back(g.embed(l.ring, l.a_map));
  return gens;
}

bool free_of(const Polynomial& p, std::size_t begin, std::size_t end) {
  for (std::size_t i = begin; i < end; ++i)
    if (p.uses_variable(i)) return false;
  return true;
}

// Layout polynomial free of everything but A's variables -> A's ring.
Polynomial to_source(const Polynomial& p, const Layout& l, const RingPtr& a_ring) {
  std::vector<Term> terms;
  for (const auto& t : p.terms()) {
    std::vector<std::uint32_t> e(l.a_map.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = t.monomial[l.a_map[i]];
    terms.push_back({Monomial(std::move(e)), t.coefficient});
  }
  return Polynomial::from_terms(a_ring, std::move(terms));
}

}  // namespace

TensorProduct tensor_over(const AlgebraMap& f, const AlgebraMap& g, const Limits& limits) {
  if (f.source().variables() != g.source().variables() || f.source().relations() != g.source().relations())
    throw ScopeError("tensor_over: maps do not share a source");
  const auto& B = f.target();
  const auto& C = g.target();
  std::vector<std::string> names;
  for (const auto& v : B.variables()) names.push_back(unique_name(v + "_l", names));
  for (const auto& v : C.variables()) names.push_back(unique_name(v + "_r", names));
  RingPtr r = Ring::make(B.field(), names);
  std::vector<std::size_t> lmap(B.arity()), rmap(C.arity());
  std::iota(lmap.begin(), lmap.end(), 0);
  std::iota(rmap.begin(), rmap.end(), B.arity());
  std::vector<Polynomial> gens;
  for (const auto& p : B.relations()) gens.push_back(p.embed(r, lmap));
  for (const auto& p : C.relations()) gens.push_back(p.embed(r, rmap));
  for (std::size_t i = 0; i < f.source().arity(); ++i)
    gens.push_back(f.image(i).embed(r, lmap) - g.image(i).embed(r, rmap));
  PresentedAlgebra T(Ideal(r, std::move(gens)), limits);
  std::vector<Polynomial> li, ri;
  for (auto i : lmap) li.push_back(T.variable(i));
  for (auto i : rmap) ri.push_back(T.variable(i));
  return TensorProduct{T, AlgebraMap(B, T, std::move(li)), AlgebraMap(C, T, std::move(ri))};
}

Ideal map_kernel(const AlgebraMap& f, const Limits& limits) {
  Layout l = make_layout(f, {}, {});
  auto gb = reduced_groebner_basis(graph_generators(f, l), limits);
  std::vector<Polynomial> kept;
  for (const auto& g : gb)
    if (free_of(g, 0, f.target().arity())) kept.push_back(to_source(g, l, f.source().ring()));
  for (const auto& g : f.source().relations()) kept.push_back(g);
  return groebner_basis(Ideal(f.source().ring(), std::move(kept)), limits);
}

std::vector<Polynomial> kernel_generators(const AlgebraMap& f, const Limits& limits) {
  std::vector<Polynomial> out;
  Ideal k = map_kernel(f, limits);
  for (const auto& g : k.basis())
    if (!f.source().is_zero(g)) out.push_back(f.source().normal_form(g));
  return out;
}

Reduction reduce(const PresentedAlgebra& a, const Limits& limits) {
  Ideal r = radical(a.ideal(), limits);
  PresentedAlgebra red = PresentedAlgebra(r, limits).with_reduced_flag();
  std::vector<Polynomial> im;
  for (std::size_t i = 0; i < a.arity(); ++i) im.push_back(red.variable(i));
  return Reduction{red, AlgebraMap(a, red, std::move(im))};
}

PresentedAlgebra certify_reduced(const PresentedAlgebra& a, const Limits& limits) {
  if (a.reduced_certified()) return a;
  Ideal r = radical(a.ideal(), limits);
  if (!same_ideal(r, a.ideal(), limits)) throw ScopeError("not reduced: defining ideal is not radical");
  return a.with_reduced_flag();
}

// ---------------------------------------------------------------------------

ImageMembership::ImageMembership(const AlgebraMap& f, const Limits& limits) : f_(f) {
  Layout l = make_layout(f, {}, {});
  graph_ = l.ring;
  basis_ = reduced_groebner_basis(graph_generators(f, l), limits);
}

std::optional<Polynomial> ImageMembership::preimage(const Polynomial& p) const {
  const auto& B = f_.target();
  std::vector<std::size_t> bmap(B.arity());
  std::iota(bmap.begin(), bmap.end(), 0);
  Polynomial nf = normal_form(p.embed(graph_, bmap), basis_);
  if (!free_of(nf, 0, B.arity())) return std::nullopt;
  Layout l;
  for (std::size_t i = 0; i < f_.source().arity(); ++i) l.a_map.push_back(B.arity() + i);
  return f_.source().normal_form(to_source(nf, l, f_.source().ring()));
}

std::optional<Polynomial> subalgebra_member(const Polynomial& p, const AlgebraMap& f, const Limits& limits) {
  return ImageMembership(f, limits).preimage(p);
}

RelativePresentation relative_presentation(const AlgebraMap& f, const Limits& limits) {
  const auto& A = f.source();
  const auto& B = f.target();
  const std::size_t m = B.arity(), n = A.arity();
  std::vector<std::string> fiber, names;
  for (std::size_t j = 0; j < m; ++j) {
    std::string y = unique_name("y" + std::to_string(j + 1), A.variables());
    fiber.push_back(y);
    names.push_back(y);
  }
  for (const auto& v : A.variables()) names.push_back(v);
  RingPtr ring = Ring::make(A.field(), names, MonomialOrder::elimination(m, m + n));
  std::vector<std::size_t> ymap(m), amap(n);
  std::iota(ymap.begin(), ymap.end(), 0);
  std::iota(amap.begin(), amap.end(), m);
  std::vector<Polynomial> gens;
  for (const auto& g : B.relations()) gens.push_back(g.embed(ring, ymap));
  for (std::size_t i = 0; i < n; ++i)
    gens.push_back(Polynomial::variable(ring, amap[i]) - f.image(i).embed(ring, ymap));
  for (const auto& g : A.relations()) gens.push_back(g.embed(ring, amap));
  Ideal k = groebner_basis(Ideal(ring, std::move(gens)), limits);
  return RelativePresentation{ring, std::move(fiber), std::move(k)};
}

std::optional<MonicRelation> monic_relation(const AlgebraMap& f, const Polynomial& b, const Limits& limits) {
  const auto& A = f.source();
  const auto& B = f.target();
  Layout l = make_layout(f, {"T"}, {1});
  auto gens = graph_generators(f, l);
  const std::size_t ti = l.extra_begin;
  gens.push_back(Polynomial::variable(l.ring, ti) - b.embed(l.ring, l.b_map));
  auto gb = reduced_groebner_basis(std::move(gens), limits);
  std::optional<Polynomial> best;
  for (const auto& g : gb) {
    if (!free_of(g, 0, B.arity())) continue;
    const Monomial& lm = g.leading_monomial();
    if (lm[ti] == 0 || lm.degree() != lm[ti]) continue;
    if (!best || lm[ti] < best->leading_monomial()[ti]) best = g;
  }
  if (!best) return std::nullopt;
  MonicRelation out{B.normal_form(b), nullptr, Polynomial(A.ring()), best->leading_monomial()[ti]};
  std::vector<std::string> names{unique_name("T", A.variables())};
  for (const auto& v : A.variables()) names.push_back(v);
  out.ring = Ring::make(A.field(), names, MonomialOrder::elimination(1, names.size()));
  std::vector<std::size_t> map(l.ring->arity(), 0);
  map[ti] = 0;
  for (std::size_t i = 0; i < A.arity(); ++i) map[l.a_map[i]] = i + 1;
  out.relation = best->monic().embed(out.ring, map);
  return out;
}

std::optional<ModuleStructure> module_generators(const AlgebraMap& f, const Limits& limits) {
  const auto& B = f.target();
  const std::size_t m = B.arity();
  RelativePresentation rp = relative_presentation(f, limits);
  std::vector<Monomial> pure;  // pure-y leading monomials, truncated to y
  for (const auto& g : rp.relations.basis()) {
    const Monomial& lm = g.leading_monomial();
    if (!free_of(Polynomial::term(rp.ring, lm, Coefficient::one(B.field())), m, rp.ring->arity())) continue;
    std::vector<std::uint32_t> e(lm.exponents().begin(), lm.exponents().begin() + static_cast<std::ptrdiff_t>(m));
    pure.emplace_back(std::move(e));
  }
  std::vector<std::uint32_t> bound(m, 0);
  for (std::size_t j = 0; j < m; ++j) {
    for (const auto& p : pure)
      if (p[j] > 0 && p.degree() == p[j] && (bound[j] == 0 || p[j] < bound[j])) bound[j] = p[j];
    if (bound[j] == 0) return std::nullopt;
  }
  ModuleStructure ms;
  if (B.is_zero_ring()) return ms;
  std::vector<std::uint32_t> e(m, 0);
  std::function<void(std::size_t)> walk = [&](std::size_t j) {
    if (j == m) {
      Monomial mono(e);
      for (const auto& p : pure)
        if (p.divides(mono)) return;
      ms.fiber_monomials.push_back(std::move(mono));
      return;
    }
    for (std::uint32_t k = 0; k < bound[j]; ++k) {
      e[j] = k;
      walk(j + 1);
    }
    e[j] = 0;
  };
  walk(0);
  const auto grevlex = MonomialOrder::grevlex();
  std::sort(ms.fiber_monomials.begin(), ms.fiber_monomials.end(),
            [&](const Monomial& a, const Monomial& b) { return grevlex.compare(a, b) < 0; });
  for (const auto& mono : ms.fiber_monomials) {
    Polynomial g = B.normal_form(Polynomial::term(B.ring(), mono, Coefficient::one(B.field())));
    auto rel = monic_relation(f, g, limits);
    if (!rel) throw Error("module_generators: generator without a monic relation");
    ms.generators.push_back(g);
    ms.relations.push_back(std::move(*rel));
  }
  return ms;
}

std::vector<std::vector<Polynomial>> linear_syzygies(const AlgebraMap& f, const std::vector<Polynomial>& h,
                                                     const Limits& limits) {
  const std::size_t k = h.size();
  if (k == 0) return {};
  std::vector<std::string> extra{"Z"};
  for (std::size_t i = 0; i < k; ++i) extra.push_back("E" + std::to_string(i));
  Layout l = make_layout(f, extra, {1, k});
  auto gens = graph_generators(f, l);
  const std::size_t z = l.extra_begin, e0 = l.extra_begin + 1;
  Polynomial Z = Polynomial::variable(l.ring, z);
  for (std::size_t i = 0; i < k; ++i)
    gens.push_back(Polynomial::variable(l.ring, e0 + i) - h[i].embed(l.ring, l.b_map) * Z);
  auto gb = reduced_groebner_basis(std::move(gens), limits);
  const auto& A = f.source();
  std::vector<std::vector<Polynomial>> out;
  for (const auto& g : gb) {
    if (!free_of(g, 0, z + 1)) continue;
    std::uint32_t edeg_min = UINT32_MAX, edeg_max = 0;
    for (const auto& t : g.terms()) {
      std::uint32_t d = 0;
      for (std::size_t i = 0; i < k; ++i) d += t.monomial[e0 + i];
      edeg_min = std::min(edeg_min, d);
      edeg_max = std::max(edeg_max, d);
    }
    if (edeg_min != edeg_max) throw Error("linear_syzygies: inhomogeneous basis element");
    if (edeg_max == 0) {
      // Kernel element c: every c·e_i is a syzygy.
      Polynomial c = A.normal_form(to_source(g, l, A.ring()));
      if (c.is_zero()) continue;
      for (std::size_t i = 0; i < k; ++i) {
        std::vector<Polynomial> v(k, Polynomial(A.ring()));
        v[i] = c;
        out.push_back(std::move(v));
      }
      continue;
    }
    if (edeg_max != 1) continue;
    std::vector<std::vector<Term>> parts(k);
    for (const auto& t : g.terms()) {
      std::size_t which = 0;
      for (std::size_t i = 0; i < k; ++i)
        if (t.monomial[e0 + i]) which = i;
      std::vector<std::uint32_t> e(A.arity());
      for (std::size_t i = 0; i < A.arity(); ++i) e[i] = t.monomial[l.a_map[i]];
      parts[which].push_back({Monomial(std::move(e)), t.coefficient});
    }
    std::vector<Polynomial> v;
    bool nonzero = false;
    for (auto& p : parts) {
      v.push_back(A.normal_form(Polynomial::from_terms(A.ring(), std::move(p))));
      nonzero = nonzero || !v.back().is_zero();
    }
    if (nonzero) out.push_back(std::move(v));
  }
  return out;
}

Conductor conductor(const AlgebraMap& f, const Limits& limits) {
  if (!kernel_generators(f, limits).empty()) throw ScopeError("conductor: map is not injective");
  auto ms = module_generators(f, limits);
  if (!ms) throw ScopeError("conductor: target is not a finite module over the source");
  const auto& A = f.source();
  const auto& B = f.target();
  Ideal acc = groebner_basis(Ideal(A.ring(), {Polynomial::constant(A.ring(), 1)}), limits);
  ImageMembership image(f, limits);
  for (const auto& e : ms->generators) {
    if (image.preimage(e)) continue;
    auto syz = linear_syzygies(f, {e, Polynomial::constant(B.ring(), 1)}, limits);
    std::vector<Polynomial> gens = A.relations();
    for (const auto& v : syz) gens.push_back(v[0]);
    acc = intersect(acc, Ideal(A.ring(), std::move(gens)), limits);
  }
  std::vector<Polynomial> bgens = B.relations();
  for (const auto& c : acc.basis()) bgens.push_back(f.apply(c));
  return Conductor{groebner_basis(Ideal(B.ring(), std::move(bgens)), limits), acc};
}

std::optional<Polynomial> unit_inverse(const PresentedAlgebra& b, const Polynomial& u, const Limits& limits) {
  if (b.is_zero_ring()) return Polynomial(b.ring());
  std::vector<std::string> names{"z:inv"};
  for (const auto& v : b.variables()) names.push_back(v);
  RingPtr r = Ring::make(b.field(), names, MonomialOrder::elimination(1, names.size()));
  std::vector<std::size_t> map(b.arity());
  std::iota(map.begin(), map.end(), 1);
  std::vector<Polynomial> gens;
  for (const auto& g : b.relations()) gens.push_back(g.embed(r, map));
  Polynomial Z = Polynomial::variable(r, 0);
  gens.push_back(Z * u.embed(r, map) - Polynomial::constant(r, 1));
  auto gb = reduced_groebner_basis(std::move(gens), limits);
  if (gb.size() == 1 && gb.front().is_constant()) return std::nullopt;
  Polynomial nf = normal_form(Z, gb);
  if (nf.uses_variable(0)) return std::nullopt;
  std::vector<std::size_t> back(r->arity(), 0);
  for (std::size_t i = 1; i < r->arity(); ++i) back[i] = i - 1;
  return b.normal_form(nf.embed(b.ring(), back));
}

}  // namespace uhom
