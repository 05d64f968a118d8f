#include "uhom/ideal_ops.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "uhom/errors.hpp"

namespace uhom {

namespace {

std::string fresh_name(const Ring& r, std::string base) {
  while (r.index_of(base)) base += "'";
  return base;
}

// Ring with `front` fresh variables prepended; elimination order on them.
struct Extended {
  RingPtr ring;
  std::vector<std::size_t> shift;  // old index -> new index
};

Extended extend_front(const Ring& r, const std::vector<std::string>& fresh) {
  std::vector<std::string> vars;
  for (const auto& f : fresh) vars.push_back(fresh_name(r, f));
  for (const auto& v : r.variables()) vars.push_back(v);
  Extended e;
  e.ring = Ring::make(r.field(), vars, MonomialOrder::elimination(fresh.size(), vars.size()));
  for (std::size_t i = 0; i < r.arity(); ++i) e.shift.push_back(i + fresh.size());
  return e;
}

std::vector<Polynomial> embed_all(const std::vector<Polynomial>& ps, const RingPtr& to, const std::vector<std::size_t>& map) {
  std::vector<Polynomial> out;
  out.reserve(ps.size());
  for (const auto& p : ps) out.push_back(p.embed(to, map));
  return out;
}

// Moves an ideal into `target` (same variables) with its basis there.
Ideal to_ring(const Ideal& ideal, const RingPtr& target, const Limits& limits) {
  if (same_ring(ideal.ring(), target)) return with_basis(ideal, limits);
  std::vector<Polynomial> gens;
  const auto& src = ideal.has_basis() ? ideal.basis() : ideal.generators();
  for (const auto& g : src) gens.push_back(g.reorder(target));
  return groebner_basis(Ideal(target, std::move(gens)), limits);
}

Polynomial pow_mod(const Polynomial& base, std::uint64_t e, const std::vector<Polynomial>& gb) {
  Polynomial result = normal_form(Polynomial::constant(base.ring(), 1), gb);
  Polynomial b = normal_form(base, gb);
  while (e > 0) {
    if (e & 1) result = normal_form(result * b, gb);
    e >>= 1;
    if (e) b = normal_form(b * b, gb);
  }
  return result;
}

std::vector<std::size_t> max_independent_set(const Ideal& gb_ideal) {
  const auto& basis = gb_ideal.basis();
  const std::size_t n = gb_ideal.ring()->arity();
  std::vector<Monomial> lms;
  for (const auto& g : basis) lms.push_back(g.leading_monomial());
  auto independent = [&](const std::vector<bool>& in) {
    for (const auto& m : lms) {
      bool inside = true;
      for (std::size_t i = 0; i < n && inside; ++i)
        if (m[i] && !in[i]) inside = false;
      if (inside) return false;
    }
    return true;
  };
  for (std::size_t size = n; size > 0; --size) {
    std::vector<bool> sel(n, false);
    std::fill(sel.begin(), sel.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      if (independent(sel)) {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < n; ++i)
          if (sel[i]) out.push_back(i);
        return out;
      }
    } while (std::prev_permutation(sel.begin(), sel.end()));
  }
  return {};
}

Polynomial ring_one(const RingPtr& r) { return Polynomial::constant(r, 1); }

}  // namespace

// ---------------------------------------------------------------------------

std::optional<std::uint32_t> nilpotency_exponent(const Polynomial& p, const Ideal& ideal, std::uint32_t cap,
                                                 const Limits& limits) {
  Ideal I = with_basis(ideal, limits);
  const auto& gb = I.basis();
  if (cap == 0) return std::nullopt;
  Polynomial cur = normal_form(p, gb);
  if (cur.is_zero()) return 1;
  std::uint64_t e = 1;
  std::uint64_t hi = 0;
  while (true) {
    limits.check_deadline();
    std::uint64_t next = e * 2;
    if (next > cap) {
      if (e < cap && pow_mod(p, cap, gb).is_zero()) hi = cap;
      break;
    }
    cur = normal_form(cur * cur, gb);
    e = next;
    if (cur.is_zero()) {
      hi = e;
      break;
    }
  }
  if (hi == 0) return std::nullopt;
  // p^lo != 0, p^hi == 0.
  std::uint64_t lo = hi == cap && e < cap ? e : hi / 2;
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (pow_mod(p, mid, gb).is_zero())
      hi = mid;
    else
      lo = mid;
  }
  return static_cast<std::uint32_t>(hi);
}

RadicalMembership radical_member(const Polynomial& p, const Ideal& ideal, const Limits& limits, bool want_exponent) {
  if (!same_ring(p.ring(), ideal.ring())) throw ScopeError("radical_member: ring context mismatch");
  RadicalMembership out;
  const Ring& r = *ideal.ring();
  Extended ext = extend_front(r, {"_rab"});
  std::vector<Polynomial> gens = embed_all(ideal.has_basis() ? ideal.basis() : ideal.generators(), ext.ring, ext.shift);
  Polynomial t = Polynomial::variable(ext.ring, 0);
  gens.push_back(ring_one(ext.ring) - t * p.embed(ext.ring, ext.shift));
  auto gb = reduced_groebner_basis(std::move(gens), limits);
  out.member = gb.size() == 1 && gb.front().is_constant();
  if (out.member && want_exponent) {
    out.exponent = nilpotency_exponent(p, ideal, limits.nilpotency_cap, limits);
    out.cap_exceeded = !out.exponent.has_value();
  }
  return out;
}

Ideal eliminate(const Ideal& ideal, const std::vector<std::size_t>& front_vars, const Limits& limits) {
  const Ring& r = *ideal.ring();
  std::vector<bool> is_front(r.arity(), false);
  for (auto i : front_vars) {
    if (i >= r.arity()) throw ScopeError("eliminate: variable index out of range");
    is_front[i] = true;
  }
  std::vector<std::string> order_names, rest_names;
  std::vector<std::size_t> map(r.arity());
  std::size_t nf = 0;
  for (std::size_t i = 0; i < r.arity(); ++i)
    if (is_front[i]) {
      map[i] = nf++;
      order_names.push_back(r.variables()[i]);
    }
  std::size_t k = nf;
  for (std::size_t i = 0; i < r.arity(); ++i)
    if (!is_front[i]) {
      map[i] = k++;
      order_names.push_back(r.variables()[i]);
      rest_names.push_back(r.variables()[i]);
    }
  RingPtr er = Ring::make(r.field(), order_names, MonomialOrder::elimination(nf, order_names.size()));
  const auto& src = ideal.has_basis() ? ideal.basis() : ideal.generators();
  auto gb = reduced_groebner_basis(embed_all(src, er, map), limits);
  RingPtr rest = Ring::make(r.field(), rest_names);
  std::vector<std::size_t> back(order_names.size(), 0);
  for (std::size_t i = nf; i < order_names.size(); ++i) back[i] = i - nf;
  std::vector<Polynomial> kept;
  for (const auto& g : gb) {
    bool uses_front = false;
    for (std::size_t i = 0; i < nf && !uses_front; ++i) uses_front = g.uses_variable(i);
    if (uses_front) continue;
    // Drop the (unused) front coordinates.
    std::vector<Term> terms;
    for (const auto& t : g.terms()) {
      std::vector<std::uint32_t> e(t.monomial.exponents().begin() + static_cast<std::ptrdiff_t>(nf), t.monomial.exponents().end());
      terms.push_back({Monomial(std::move(e)), t.coefficient});
    }
    kept.push_back(Polynomial::from_terms(rest, std::move(terms)));
  }
  if (nf == 0 || nf == r.arity()) return groebner_basis(Ideal(rest, kept), limits);
  return ideal_from_basis(rest, std::move(kept));
}

Ideal eliminate(const Ideal& ideal, const std::vector<std::string>& front_names, const Limits& limits) {
  std::vector<std::size_t> idx;
  for (const auto& n : front_names) {
    auto i = ideal.ring()->index_of(n);
    if (!i) throw ScopeError("eliminate: unknown variable '" + n + "'");
    idx.push_back(*i);
  }
  return eliminate(ideal, idx, limits);
}

Ideal intersect(const Ideal& a, const Ideal& b, const Limits& limits) {
  if (!same_ring(a.ring(), b.ring()) && a.ring()->variables() != b.ring()->variables())
    throw ScopeError("intersect: ring context mismatch");
  const Ring& r = *a.ring();
  Extended ext = extend_front(r, {"_int"});
  Polynomial t = Polynomial::variable(ext.ring, 0);
  Polynomial one_minus_t = ring_one(ext.ring) - t;
  std::vector<Polynomial> gens;
  for (const auto& g : a.has_basis() ? a.basis() : a.generators()) gens.push_back(t * g.embed(ext.ring, ext.shift));
  for (const auto& g : b.has_basis() ? b.basis() : b.generators())
    gens.push_back(one_minus_t * g.reorder(b.ring()->variables() == r.variables() ? a.ring()->with_order(b.ring()->order()) : b.ring()).embed(ext.ring, ext.shift));
  Ideal e = eliminate(Ideal(ext.ring, std::move(gens)), std::vector<std::size_t>{0}, limits);
  // Back into a's ring.
  std::vector<Polynomial> back;
  for (const auto& g : e.basis()) back.push_back(g.embed(a.ring(), index_map_by_name(*g.ring(), r)));
  return groebner_basis(Ideal(a.ring(), std::move(back)), limits);
}

Polynomial divide_exact(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) throw ScopeError("division by zero polynomial");
  Polynomial q(f.ring());
  Polynomial r = f;
  while (!r.is_zero()) {
    if (!g.leading_monomial().divides(r.leading_monomial())) throw ScopeError("divide_exact: not divisible");
    Monomial m = r.leading_monomial() / g.leading_monomial();
    Coefficient c = r.leading_coefficient() / g.leading_coefficient();
    q += Polynomial::term(f.ring(), m, c);
    r -= g.mul_term(m, c);
  }
  return q;
}

Ideal ideal_quotient(const Ideal& i, const Polynomial& g, const Limits& limits) {
  if (g.is_zero()) return groebner_basis(Ideal(i.ring(), {ring_one(i.ring())}), limits);
  Ideal inter = intersect(i, Ideal(i.ring(), {g}), limits);
  std::vector<Polynomial> gens;
  for (const auto& h : inter.basis()) gens.push_back(divide_exact(h, g));
  return groebner_basis(Ideal(i.ring(), std::move(gens)), limits);
}

Ideal ideal_quotient(const Ideal& i, const Ideal& j, const Limits& limits) {
  std::optional<Ideal> acc;
  for (const auto& g : j.has_basis() ? j.basis() : j.generators()) {
    if (g.is_zero()) continue;
    Ideal q = ideal_quotient(i, g.reorder(i.ring()), limits);
    acc = acc ? intersect(*acc, q, limits) : q;
  }
  if (!acc) return groebner_basis(Ideal(i.ring(), {ring_one(i.ring())}), limits);
  return *acc;
}

Ideal saturate(const Ideal& i, const Polynomial& g, const Limits& limits) {
  const Ring& r = *i.ring();
  Extended ext = extend_front(r, {"_sat"});
  Polynomial t = Polynomial::variable(ext.ring, 0);
  std::vector<Polynomial> gens = embed_all(i.has_basis() ? i.basis() : i.generators(), ext.ring, ext.shift);
  gens.push_back(ring_one(ext.ring) - t * g.embed(ext.ring, ext.shift));
  Ideal e = eliminate(Ideal(ext.ring, std::move(gens)), std::vector<std::size_t>{0}, limits);
  std::vector<Polynomial> back;
  for (const auto& h : e.basis()) back.push_back(h.embed(i.ring(), index_map_by_name(*h.ring(), r)));
  return groebner_basis(Ideal(i.ring(), std::move(back)), limits);
}

Ideal saturate(const Ideal& i, const Ideal& j, const Limits& limits) {
  Ideal cur = with_basis(i, limits);
  for (;;) {
    limits.check_deadline();
    Ideal next = ideal_quotient(cur, j, limits);
    if (same_ideal(next, cur, limits)) return cur;
    cur = next;
  }
}

int dimension(const Ideal& ideal, const Limits& limits) {
  Ideal I = with_basis(ideal, limits);
  if (I.is_unit()) return -1;
  return static_cast<int>(max_independent_set(I).size());
}

std::optional<std::vector<Monomial>> zero_dim_basis(const Ideal& ideal, const Limits& limits) {
  Ideal I = with_basis(ideal, limits);
  const std::size_t n = I.ring()->arity();
  std::vector<Monomial> lms;
  for (const auto& g : I.basis()) lms.push_back(g.leading_monomial());
  std::vector<std::uint32_t> bound(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (const auto& m : lms) {
      bool pure = m[v] > 0 && m.degree() == m[v];
      if (pure && (bound[v] == 0 || m[v] < bound[v])) bound[v] = m[v];
    }
    if (bound[v] == 0) return std::nullopt;
  }
  std::vector<Monomial> out;
  if (I.is_unit()) return out;
  std::vector<std::uint32_t> e(n, 0);
  std::function<void(std::size_t)> walk = [&](std::size_t v) {
    if (v == n) {
      Monomial m(e);
      for (const auto& l : lms)
        if (l.divides(m)) return;
      out.push_back(std::move(m));
      return;
    }
    for (std::uint32_t k = 0; k < bound[v]; ++k) {
      e[v] = k;
      walk(v + 1);
    }
    e[v] = 0;
  };
  walk(0);
  const auto& ord = I.ring()->order();
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return ord.compare(a, b) < 0; });
  return out;
}

// ---------------------------------------------------------------------------
// gcd / squarefree

Polynomial polynomial_gcd(const Polynomial& f, const Polynomial& g, const Limits& limits) {
  if (f.is_zero()) return g.monic();
  if (g.is_zero()) return f.monic();
  if (f.is_constant() || g.is_constant()) return ring_one(f.ring());
  const std::size_t n = f.ring()->arity();
  std::size_t used = 0, var = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (f.uses_variable(i) || g.uses_variable(i)) {
      ++used;
      var = i;
    }
  (void)var;
  if (used <= 1) {
    auto gb = reduced_groebner_basis({f, g}, limits);
    return gb.front().monic();
  }
  Ideal l = intersect(Ideal(f.ring(), {f}), Ideal(f.ring(), {g}), limits);
  if (l.basis().size() != 1) throw Error("gcd: intersection of principal ideals is not principal");
  return divide_exact(f * g, l.basis().front()).monic();
}

namespace {

Polynomial pth_root(const Polynomial& f) {
  const std::uint32_t p = f.ring()->field().characteristic();
  std::vector<Term> terms;
  for (const auto& t : f.terms()) {
    std::vector<std::uint32_t> e = t.monomial.exponents();
    for (auto& x : e) {
      if (x % p != 0) throw Error("pth_root: exponent not divisible by p");
      x /= p;
    }
    terms.push_back({Monomial(std::move(e)), t.coefficient});
  }
  return Polynomial::from_terms(f.ring(), std::move(terms));
}

}  // namespace

Polynomial squarefree_part(const Polynomial& f, const Limits& limits) {
  if (f.is_zero()) return f;
  if (f.is_constant()) return ring_one(f.ring());
  Polynomial c = f.monic();
  for (std::size_t v = 0; v < f.ring()->arity(); ++v) {
    if (!f.uses_variable(v)) continue;
    c = polynomial_gcd(c, f.derivative(v), limits);
    if (c.is_constant()) return f.monic();
  }
  if (c.total_degree() == f.total_degree()) {
    // Every partial vanishes: f is a p-th power over F_p.
    return squarefree_part(pth_root(f.monic()), limits);
  }
  Polynomial w = divide_exact(f.monic(), c);
  Polynomial r = squarefree_part(c, limits);
  Polynomial d = polynomial_gcd(w, r, limits);
  return divide_exact(w * r, d).monic();
}

// ---------------------------------------------------------------------------
// radical

namespace {

Ideal zero_dim_radical(const Ideal& I, const Limits& limits) {
  const Ring& r = *I.ring();
  std::vector<Polynomial> adds;
  for (std::size_t v = 0; v < r.arity(); ++v) {
    std::vector<std::size_t> others;
    for (std::size_t k = 0; k < r.arity(); ++k)
      if (k != v) others.push_back(k);
    Ideal e = eliminate(I, others, limits);
    if (e.is_unit() || e.basis().empty()) continue;
    const Polynomial& g = e.basis().front();
    Polynomial s = squarefree_part(g, limits);
    if (s.total_degree() == g.total_degree()) continue;
    std::vector<std::size_t> map{v};
    adds.push_back(s.embed(I.ring(), map));
  }
  if (adds.empty()) return I;
  return groebner_basis(ideal_sum(I, adds), limits);
}

// Leading coefficient with respect to the first `nfront` variables.
Polynomial front_leading_coefficient(const Polynomial& g, std::size_t nfront) {
  const Monomial& lm = g.leading_monomial();
  std::vector<Term> terms;
  for (const auto& t : g.terms()) {
    bool same = true;
    for (std::size_t i = 0; i < nfront && same; ++i) same = t.monomial[i] == lm[i];
    if (!same) continue;
    Monomial m = t.monomial;
    for (std::size_t i = 0; i < nfront; ++i) m.set(i, 0);
    terms.push_back({std::move(m), t.coefficient});
  }
  return Polynomial::from_terms(g.ring(), std::move(terms));
}

struct Reordered {
  RingPtr ring;
  std::vector<std::size_t> to_new;   // old index -> new index
  std::vector<std::size_t> to_old;   // new index -> old index
};

Reordered reorder_vars(const Ring& r, const std::vector<std::vector<std::size_t>>& blocks) {
  Reordered out;
  out.to_new.assign(r.arity(), 0);
  std::vector<std::string> names;
  std::vector<std::size_t> sizes;
  for (const auto& b : blocks) {
    if (b.empty()) continue;
    sizes.push_back(b.size());
    for (auto i : b) {
      out.to_new[i] = names.size();
      out.to_old.push_back(i);
      names.push_back(r.variables()[i]);
    }
  }
  out.ring = Ring::make(r.field(), names, sizes.size() == 1 ? MonomialOrder::grevlex() : MonomialOrder::block(sizes));
  return out;
}

Polynomial content_in(const Polynomial& g, std::size_t var, const Limits& limits) {
  std::map<std::uint32_t, std::vector<Term>> by_deg;
  for (const auto& t : g.terms()) {
    Monomial m = t.monomial;
    std::uint32_t d = m[var];
    m.set(var, 0);
    by_deg[d].push_back({std::move(m), t.coefficient});
  }
  Polynomial c(g.ring());
  for (auto& [d, terms] : by_deg) {
    c = polynomial_gcd(c, Polynomial::from_terms(g.ring(), std::move(terms)), limits);
    if (c.is_constant()) break;
  }
  return c;
}

Ideal radical_rec(const Ideal& input, const Limits& limits, int depth) {
  if (depth > 64) throw CapExceeded("radical recursion depth exceeded");
  limits.check_deadline();
  Ideal I = with_basis(input, limits);
  if (I.is_unit() || I.is_zero()) return I;
  auto U = max_independent_set(I);
  if (U.empty()) return zero_dim_radical(I, limits);
  const Ring& r = *I.ring();
  std::vector<bool> inU(r.arity(), false);
  for (auto u : U) inU[u] = true;
  std::vector<std::size_t> Xp;
  for (std::size_t i = 0; i < r.arity(); ++i)
    if (!inU[i]) Xp.push_back(i);

  auto lc_product = [&](const Ideal& J) {
    Reordered ro = reorder_vars(r, {Xp, U});
    auto gb = reduced_groebner_basis(embed_all(J.has_basis() ? J.basis() : J.generators(), ro.ring, ro.to_new), limits);
    Polynomial h = ring_one(ro.ring);
    for (const auto& g : gb) {
      Polynomial c = front_leading_coefficient(g, Xp.size());
      if (c.is_constant()) continue;
      Polynomial d = polynomial_gcd(h, c, limits);
      h = h * divide_exact(c.monic(), d);
    }
    return h.embed(I.ring(), ro.to_old);
  };

  std::vector<Polynomial> adds;
  for (std::size_t x : Xp) {
    std::vector<std::size_t> others;
    for (auto y : Xp)
      if (y != x) others.push_back(y);
    Reordered ro = reorder_vars(r, {others, {x}, U});
    auto gb = reduced_groebner_basis(embed_all(I.basis(), ro.ring, ro.to_new), limits);
    const std::size_t xi = ro.to_new[x];
    std::optional<Polynomial> best;
    for (const auto& g : gb) {
      bool free = true;
      for (std::size_t k = 0; k < others.size() && free; ++k) free = !g.uses_variable(k);
      if (!free || !g.uses_variable(xi)) continue;
      if (!best || g.degree_in(xi) < best->degree_in(xi)) best = g;
    }
    if (!best) throw Error("radical: missing eliminant in a zero-dimensional fibre");
    Polynomial pp = divide_exact(*best, content_in(*best, xi, limits));
    Polynomial s = squarefree_part(pp, limits);
    if (!r.field().is_rational()) {
      Polynomial ds = s.derivative(xi);
      if (ds.is_zero() || polynomial_gcd(s, ds, limits).uses_variable(xi))
        throw NotCertified("radical not certified: inseparable generic fibre in characteristic " +
                           std::to_string(r.field().characteristic()));
    }
    if (s.degree_in(xi) < best->degree_in(xi) || s.total_degree() < best->total_degree())
      adds.push_back(s.embed(I.ring(), ro.to_old));
  }
  Polynomial h = lc_product(I);
  Ideal J0 = groebner_basis(ideal_sum(I, adds), limits);
  Ideal J = J0;
  Polynomial hJ = lc_product(J0);
  if (!hJ.is_constant()) J = saturate(J0, hJ, limits);
  if (h.is_constant()) return J;
  Ideal rest = radical_rec(ideal_sum(I, std::vector<Polynomial>{h}), limits, depth + 1);
  if (ideal_contains(rest, J, limits)) return J;
  if (ideal_contains(J, rest, limits)) return rest;
  return intersect(J, rest, limits);
}

}  // namespace

Ideal radical(const Ideal& ideal, const Limits& limits) {
  Ideal I = with_basis(ideal, limits);
  Ideal R = radical_rec(I, limits, 0);
  R = to_ring(R, I.ring(), limits);
  // Soundness certificate.
  if (!ideal_contains(R, I, limits)) throw NotCertified("radical not certified: input not contained in result");
  for (const auto& g : R.basis()) {
    if (!radical_member(g, I, limits, false).member)
      throw NotCertified("radical not certified: generator " + g.to_string() + " is not nilpotent modulo the input");
  }
  return R;
}

}  // namespace uhom
