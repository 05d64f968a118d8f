#include "uhom/morphisms.hpp"

#include <algorithm>
#include <numeric>

#include "uhom/errors.hpp"

namespace uhom {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::False: return "false";
    case Verdict::True: return "true";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

Verdict all_of(std::initializer_list<Verdict> vs) {
  bool unknown = false;
  for (auto v : vs) {
    if (v == Verdict::False) return Verdict::False;
    unknown = unknown || v == Verdict::Unknown;
  }
  return unknown ? Verdict::Unknown : Verdict::True;
}

RadicialResult is_radicial(const AlgebraMap& f, const Limits& limits) {
  RadicialResult out;
  TensorProduct t = tensor_over(f, f, limits);
  bool all = true;
  const auto& B = f.target();
  for (std::size_t j = 0; j < B.arity(); ++j) {
    Polynomial d = t.algebra.normal_form(t.left.image(j) - t.right.image(j));
    auto m = radical_member(d, t.algebra.ideal(), limits, true);
    out.diagonal.push_back({d, m.exponent, m.member, m.cap_exceeded});
    all = all && m.member;
  }
  out.verdict = verdict(all);
  return out;
}

IsomorphismResult is_isomorphism(const AlgebraMap& f, const Limits& limits) {
  Classifier c(f, limits);
  IsomorphismResult out;
  out.isomorphism = c.isomorphism() == Verdict::True;
  out.inverse = c.report().inverse;
  auto it = c.report().reasons.find("isomorphism");
  if (it != c.report().reasons.end()) out.reason = it->second;
  return out;
}

// ---------------------------------------------------------------------------
// Jacobian criteria

SimplePresentation simplified_presentation(const AlgebraMap& f, const Limits& limits) {
  const auto& A = f.source();
  const auto& B = f.target();
  const std::size_t m = B.arity(), n = A.arity();
  RelativePresentation rp = relative_presentation(f, limits);
  RingPtr work = rp.ring->with_order(MonomialOrder::grevlex());
  std::vector<std::size_t> ymap(m), amap(n);
  std::iota(ymap.begin(), ymap.end(), 0);
  std::iota(amap.begin(), amap.end(), m);
  // Graph relations first so linear fiber variables are eliminated through them.
  std::vector<Polynomial> rels;
  for (std::size_t i = 0; i < n; ++i)
    rels.push_back(Polynomial::variable(work, amap[i]) - f.image(i).embed(work, ymap));
  for (const auto& g : B.relations()) rels.push_back(g.embed(work, ymap));

  std::vector<bool> gone(m, false);
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t j = 0; j < m && !progress; ++j) {
      if (gone[j]) continue;
      for (std::size_t r = 0; r < rels.size() && !progress; ++r) {
        const Polynomial& g = rels[r];
        if (g.degree_in(j) != 1) continue;
        std::optional<Coefficient> c;
        bool linear = true;
        std::vector<Term> rest;
        for (const auto& t : g.terms()) {
          if (t.monomial[j] == 0) {
            rest.push_back(t);
          } else if (t.monomial.degree() == 1) {
            c = t.coefficient;
          } else {
            linear = false;
          }
        }
        if (!linear || !c) continue;
        Polynomial h = Polynomial::from_terms(work, std::move(rest));
        std::vector<Polynomial> images;
        for (std::size_t k = 0; k < work->arity(); ++k) images.push_back(Polynomial::variable(work, k));
        images[j] = (-h).scale(c->inverse());
        std::vector<Polynomial> next;
        for (std::size_t s = 0; s < rels.size(); ++s) {
          if (s == r) continue;
          Polynomial p = rels[s].substitute(work, images);
          if (!p.is_zero()) next.push_back(std::move(p));
        }
        rels = std::move(next);
        gone[j] = true;
        progress = true;
      }
    }
  }

  SimplePresentation sp;
  std::vector<std::string> names;
  std::vector<std::size_t> to_new(m + n, 0);
  for (std::size_t j = 0; j < m; ++j)
    if (!gone[j]) {
      to_new[j] = names.size();
      names.push_back(rp.fiber_names[j]);
      sp.fiber_images.push_back(B.variable(j));
    }
  sp.fiber_count = names.size();
  for (std::size_t i = 0; i < n; ++i) {
    to_new[m + i] = names.size();
    names.push_back(A.variables()[i]);
  }
  sp.ring = Ring::make(A.field(), names);
  for (const auto& g : rels) {
    Polynomial p = g.embed(sp.ring, to_new);
    bool fiber = false;
    for (std::size_t k = 0; k < sp.fiber_count; ++k) fiber = fiber || p.uses_variable(k);
    if (fiber) sp.fiber_relations.push_back(p);
    sp.relations.push_back(p);
  }
  std::vector<std::size_t> a_to_new(n);
  for (std::size_t i = 0; i < n; ++i) a_to_new[i] = sp.fiber_count + i;
  for (const auto& g : A.relations()) sp.relations.push_back(g.embed(sp.ring, a_to_new));
  return sp;
}

namespace {

// Images in B of the presentation variables.
std::vector<Polynomial> presentation_images(const AlgebraMap& f, const SimplePresentation& sp) {
  std::vector<Polynomial> im = sp.fiber_images;
  for (const auto& p : f.images()) im.push_back(p);
  return im;
}

Polynomial determinant(const std::vector<std::vector<Polynomial>>& m, const PresentedAlgebra& B) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial::constant(B.ring(), 1);
  if (n == 1) return m[0][0];
  Polynomial det(B.ring());
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<Polynomial>> sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Polynomial> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      sub.push_back(std::move(row));
    }
    Polynomial term = B.normal_form(m[0][c] * determinant(sub, B));
    det = c % 2 ? det - term : det + term;
  }
  return B.normal_form(det);
}

struct Jacobian {
  std::vector<std::vector<Polynomial>> rows;  // entries in B
};

Jacobian jacobian(const AlgebraMap& f, const SimplePresentation& sp) {
  Jacobian j;
  auto im = presentation_images(f, sp);
  for (const auto& g : sp.fiber_relations) {
    std::vector<Polynomial> row;
    for (std::size_t k = 0; k < sp.fiber_count; ++k) row.push_back(f.target().normal_form(g.derivative(k).substitute(f.target().ring(), im)));
    j.rows.push_back(std::move(row));
  }
  return j;
}

constexpr std::size_t kMaxMinors = 20000;

template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    if (!fn(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t t = i; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
}

double binomial(std::size_t n, std::size_t k) {
  double r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

Polynomial minor_of(const Jacobian& j, const std::vector<std::size_t>& rows, const PresentedAlgebra& B) {
  std::vector<std::vector<Polynomial>> sub;
  for (auto r : rows) sub.push_back(j.rows[r]);
  return determinant(sub, B);
}

}  // namespace

UnramifiedResult is_unramified(const AlgebraMap& f, const Limits& limits) {
  const auto& B = f.target();
  UnramifiedResult out;
  SimplePresentation sp = simplified_presentation(f, limits);
  const std::size_t m = sp.fiber_count;
  if (B.is_zero_ring()) {
    out.verdict = Verdict::True;
    out.witness = JacobianWitness{{}, Polynomial(B.ring()), Polynomial(B.ring())};
    return out;
  }
  Jacobian jac = jacobian(f, sp);
  if (binomial(jac.rows.size(), m) > kMaxMinors) throw CapExceeded("unramified: too many Jacobian minors");
  std::vector<Polynomial> minors;
  for_each_subset(jac.rows.size(), m, [&](const std::vector<std::size_t>& rows) {
    limits.check_deadline();
    Polynomial d = minor_of(jac, rows, B);
    if (d.is_zero()) return true;
    ++out.minors;
    if (auto inv = unit_inverse(B, d, limits)) {
      out.witness = JacobianWitness{rows, d, *inv};
      return false;
    }
    minors.push_back(d);
    return true;
  });
  if (out.witness) {
    out.verdict = Verdict::True;
    return out;
  }
  if (minors.empty()) {
    out.verdict = Verdict::False;
    return out;
  }
  Ideal fit = groebner_basis(ideal_sum(B.ideal(), minors), limits);
  out.verdict = verdict(fit.is_unit());
  if (fit.is_unit()) out.witness = JacobianWitness{{}, minors.front(), std::nullopt};
  return out;
}

EtaleResult is_etale(const AlgebraMap& f, const Limits& limits) {
  EtaleResult out;
  UnramifiedResult u = is_unramified(f, limits);
  if (u.verdict == Verdict::False) {
    out.verdict = Verdict::False;
    out.reason = "not unramified";
    return out;
  }
  const auto& B = f.target();
  SimplePresentation sp = simplified_presentation(f, limits);
  const std::size_t m = sp.fiber_count;
  Jacobian jac = jacobian(f, sp);
  if (binomial(jac.rows.size(), m) > kMaxMinors) throw CapExceeded("etale: too many Jacobian minors");
  Ideal full = groebner_basis(Ideal(sp.ring, sp.relations), limits);
  std::vector<Polynomial> base;
  for (const auto& g : sp.relations) {
    bool fiber = false;
    for (std::size_t k = 0; k < m; ++k) fiber = fiber || g.uses_variable(k);
    if (!fiber) base.push_back(g);
  }
  const std::size_t na = f.source().arity();
  std::vector<std::size_t> amap(na);
  std::iota(amap.begin(), amap.end(), m);
  std::vector<Polynomial> a_ideal;
  for (const auto& g : f.source().relations()) a_ideal.push_back(g.embed(sp.ring, amap));
  for_each_subset(jac.rows.size(), m, [&](const std::vector<std::size_t>& rows) {
    limits.check_deadline();
    Polynomial d = minor_of(jac, rows, B);
    if (d.is_zero()) return true;
    auto inv = unit_inverse(B, d, limits);
    if (!inv) return true;
    std::vector<Polynomial> gens = a_ideal;
    for (auto r : rows) gens.push_back(sp.fiber_relations[r]);
    if (!same_ideal(Ideal(sp.ring, std::move(gens)), full, limits)) return true;
    out.witness = JacobianWitness{rows, d, *inv};
    return false;
  });
  if (out.witness) {
    out.verdict = Verdict::True;
  } else {
    out.verdict = Verdict::Unknown;
    out.reason = "no standard-smooth presentation of relative dimension 0 found";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classifier

const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names{"schematically_dominant", "nilimmersion", "integral",
                                              "surjective",             "radicial",    "universal_homeomorphism",
                                              "unramified",             "etale",       "isomorphism"};
  return names;
}

Classifier::Classifier(AlgebraMap f, Limits limits) : f_(std::move(f)), limits_(std::move(limits)) {}

void Classifier::note(const std::string& prop, const std::string& why) { r_.reasons.emplace(prop, why); }

const std::vector<Polynomial>& Classifier::kernel() {
  if (!kernel_) {
    kernel_ = kernel_generators(f_, limits_);
    r_.kernel = *kernel_;
  }
  return *kernel_;
}

Verdict Classifier::schematically_dominant() {
  if (!dom_) {
    dom_ = uhom::verdict(kernel().empty());
    r_.schematically_dominant = *dom_;
    if (*dom_ == Verdict::False) note("schematically_dominant", "kernel is nonzero");
  }
  return *dom_;
}

Verdict Classifier::algebra_surjective() {
  if (!alg_surj_) {
    ImageMembership im(f_, limits_);
    bool all = true;
    r_.preimages.clear();
    for (std::size_t j = 0; j < f_.target().arity(); ++j) {
      r_.preimages.push_back(im.preimage(f_.target().variable(j)));
      all = all && r_.preimages.back().has_value();
    }
    alg_surj_ = uhom::verdict(all);
  }
  return *alg_surj_;
}

Verdict Classifier::nilimmersion() {
  if (!nil_) {
    Verdict s = algebra_surjective();
    if (!kernel_nil_) {
      bool all = true;
      for (const auto& g : kernel()) {
        auto m = radical_member(g, f_.source().ideal(), limits_, true);
        r_.kernel_nilpotency.push_back({g, m.exponent, m.member, m.cap_exceeded});
        all = all && m.member;
      }
      kernel_nil_ = uhom::verdict(all);
    }
    nil_ = all_of({s, *kernel_nil_});
    r_.nilimmersion = *nil_;
    if (s == Verdict::False) note("nilimmersion", "not surjective as an algebra map");
    else if (*kernel_nil_ == Verdict::False) note("nilimmersion", "kernel is not nilpotent");
  }
  return *nil_;
}

Verdict Classifier::integral() {
  if (!int_) {
    r_.module = module_generators(f_, limits_);
    int_ = uhom::verdict(r_.module.has_value());
    r_.integral = *int_;
    if (!r_.module) note("integral", "some fiber variable has no pure-power leading term: not module-finite");
  }
  return *int_;
}

Verdict Classifier::surjective() {
  if (!surj_) {
    nilimmersion();
    if (*kernel_nil_ == Verdict::False) {
      surj_ = Verdict::False;
      note("surjective", "kernel is not nilpotent, so the image lies in a proper closed subset");
    } else if (integral() == Verdict::True || nilimmersion() == Verdict::True) {
      surj_ = Verdict::True;
    } else {
      surj_ = Verdict::Unknown;
      note("surjective", "dense image but neither integral nor a nilimmersion");
    }
    r_.surjective = *surj_;
  }
  return *surj_;
}

Verdict Classifier::radicial() {
  if (!rad_) {
    RadicialResult rr = is_radicial(f_, limits_);
    r_.diagonal = rr.diagonal;
    rad_ = rr.verdict;
    r_.radicial = *rad_;
    if (*rad_ == Verdict::False) {
      for (const auto& w : rr.diagonal)
        if (!w.nilpotent) {
          note("radicial", "diagonal difference " + w.element.to_string() + " is not nilpotent");
          break;
        }
    }
  }
  return *rad_;
}

Verdict Classifier::universal_homeomorphism() {
  if (!uh_) {
    Verdict i = integral(), s = surjective(), r = radicial();
    uh_ = all_of({i, s, r});
    r_.universal_homeomorphism = *uh_;
    if (*uh_ != Verdict::True) {
      std::string why;
      for (auto [name, v] : {std::pair{"integral", i}, {"surjective", s}, {"radicial", r}})
        if (v != Verdict::True) why += std::string(why.empty() ? "" : ", ") + name + " is " + to_string(v);
      note("universal_homeomorphism", why);
    }
  }
  return *uh_;
}

Verdict Classifier::unramified() {
  if (!unr_) {
    UnramifiedResult u = is_unramified(f_, limits_);
    r_.unramified_witness = u.witness;
    unr_ = u.verdict;
    r_.unramified = *unr_;
    if (*unr_ == Verdict::False) note("unramified", "maximal Jacobian minors do not generate the unit ideal");
  }
  return *unr_;
}

Verdict Classifier::etale() {
  if (!et_) {
    if (unramified() == Verdict::False) {
      et_ = Verdict::False;
      note("etale", "not unramified");
    } else {
      EtaleResult e = is_etale(f_, limits_);
      r_.etale_witness = e.witness;
      et_ = e.verdict;
      if (!e.reason.empty()) note("etale", e.reason);
    }
    r_.etale = *et_;
  }
  return *et_;
}

Verdict Classifier::isomorphism() {
  if (!iso_) {
    Verdict d = schematically_dominant();
    Verdict s = algebra_surjective();
    if (d == Verdict::True && s == Verdict::True) {
      std::vector<Polynomial> im;
      for (const auto& p : r_.preimages) im.push_back(*p);
      AlgebraMap inv(f_.target(), f_.source(), std::move(im));
      bool ok = inv.after(f_).same_as(AlgebraMap::identity(f_.source())) &&
                f_.after(inv).same_as(AlgebraMap::identity(f_.target()));
      if (!ok) throw Error("isomorphism: inverse failed the round trip");
      r_.inverse = inv;
      iso_ = Verdict::True;
    } else {
      iso_ = Verdict::False;
      note("isomorphism", d == Verdict::False ? "kernel is nonzero" : "some target generator has no preimage");
    }
    r_.isomorphism = *iso_;
  }
  return *iso_;
}

Verdict Classifier::verdict(const std::string& p) {
  if (p == "schematically_dominant") return schematically_dominant();
  if (p == "nilimmersion") return nilimmersion();
  if (p == "integral") return integral();
  if (p == "surjective") return surjective();
  if (p == "radicial") return radicial();
  if (p == "universal_homeomorphism" || p == "uh") return universal_homeomorphism();
  if (p == "unramified") return unramified();
  if (p == "etale") return etale();
  if (p == "isomorphism") return isomorphism();
  throw ScopeError("unknown property '" + p + "'");
}

MorphismReport Classifier::classify() {
  schematically_dominant();
  nilimmersion();
  integral();
  surjective();
  radicial();
  universal_homeomorphism();
  unramified();
  etale();
  isomorphism();
  return r_;
}

MorphismReport classify(const AlgebraMap& f, const Limits& limits) { return Classifier(f, limits).classify(); }

SchematicImage factor_schematic_image(const AlgebraMap& f, const Limits& limits) {
  Ideal k = map_kernel(f, limits);
  PresentedAlgebra image(k, limits);
  const auto& A = f.source();
  std::vector<Polynomial> q;
  for (std::size_t i = 0; i < A.arity(); ++i) q.push_back(image.variable(i));
  AlgebraMap nil(A, image, std::move(q));
  AlgebraMap dom(image, f.target(), f.images());
  return SchematicImage{k, image, nil, dom};
}

}  // namespace uhom
