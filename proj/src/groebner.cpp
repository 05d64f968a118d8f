#include "uhom/groebner.hpp"

#include <algorithm>

#include "uhom/errors.hpp"

namespace uhom {

void Limits::check_deadline() const {
  if (deadline && std::chrono::steady_clock::now() > *deadline) throw CapExceeded("timeout exceeded");
}

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> generators) : ring_(std::move(ring)), gens_(std::move(generators)) {
  for (const auto& g : gens_)
    if (!same_ring(g.ring(), ring_)) throw ScopeError("ideal generator lives in a different ring");
}

const std::vector<Polynomial>& Ideal::basis() const {
  if (!basis_) throw ScopeError("ideal has no cached Groebner basis");
  return *basis_;
}

bool Ideal::is_unit() const {
  const auto& b = basis();
  return b.size() == 1 && b.front().is_constant() && !b.front().is_zero();
}

bool Ideal::is_zero() const { return basis().empty(); }

std::string Ideal::to_string() const {
  const auto& list = basis_ ? *basis_ : gens_;
  std::string s = "(";
  for (std::size_t i = 0; i < list.size(); ++i) s += (i ? ", " : "") + list[i].to_string();
  return s + ")";
}

namespace {

// Q: primitive integer polynomial with positive leading coefficient.
// F_p: monic.
Polynomial normalize(const Polynomial& p) {
  if (p.is_zero()) return p;
  const Field& k = p.ring()->field();
  if (!k.is_rational()) return p.monic();
  mpz_class den = 1, num = 0;
  for (const auto& t : p.terms()) {
    const mpq_class& q = t.coefficient.rational();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
  }
  for (const auto& t : p.terms()) {
    const mpq_class& q = t.coefficient.rational();
    mpz_class v = q.get_num() * (den / q.get_den());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), v.get_mpz_t());
  }
  mpq_class factor(den, num);
  if (p.leading_coefficient().is_negative()) factor = -factor;
  return p.scale(Coefficient::from_rational(k, factor));
}

// Full reduction of h by polys[active]. With `exact` the basis must be monic
// and the remainder is the true normal form; otherwise (Q only) the
// remainder is correct up to a nonzero constant and kept integral.
Polynomial reduce_full(Polynomial h, const std::vector<Polynomial>& polys, const std::vector<std::size_t>& active,
                       bool exact) {
  const RingPtr ring = h.ring();
  const bool fraction_free = !exact && ring->field().is_rational();
  std::vector<Term> rest;
  Polynomial work = std::move(h);
  while (!work.is_zero()) {
    const Term& lt = work.leading_term();
    const Polynomial* divisor = nullptr;
    for (std::size_t idx : active) {
      if (polys[idx].leading_monomial().divides(lt.monomial)) {
        divisor = &polys[idx];
        break;
      }
    }
    if (!divisor) {
      rest.push_back(lt);
      std::vector<Term> tail(work.terms().begin() + 1, work.terms().end());
      work = Polynomial::from_terms(ring, std::move(tail));
      continue;
    }
    Monomial m = lt.monomial / divisor->leading_monomial();
    if (fraction_free) {
      const mpz_class& a = divisor->leading_coefficient().rational().get_num();
      const mpz_class& b = lt.coefficient.rational().get_num();
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Coefficient ca = Coefficient::from_integer(ring->field(), mpz_class(a / g));
      Coefficient cb = Coefficient::from_integer(ring->field(), mpz_class(b / g));
      work = work.scale(ca) - divisor->mul_term(m, cb);
      if (!ca.is_one())
        for (auto& t : rest) t.coefficient *= ca;
    } else {
      Coefficient c = lt.coefficient / divisor->leading_coefficient();
      work = work - divisor->mul_term(m, c);
    }
  }
  return Polynomial::from_terms(ring, std::move(rest));
}

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
};

class Buchberger {
 public:
  Buchberger(RingPtr ring, const Limits& limits) : ring_(std::move(ring)), limits_(limits) {}

  std::vector<Polynomial> run(std::vector<Polynomial> gens) {
    std::vector<Polynomial> inputs;
    for (auto& g : gens) {
      if (!same_ring(g.ring(), ring_)) throw ScopeError("generator in a different ring");
      if (!g.is_zero()) inputs.push_back(normalize(g));
    }
    const auto& ord = ring_->order();
    std::stable_sort(inputs.begin(), inputs.end(), [&](const Polynomial& a, const Polynomial& b) {
      return ord.compare(a.leading_monomial(), b.leading_monomial()) < 0;
    });
    for (auto& g : inputs) {
      Polynomial h = normalize(reduce_full(g, polys_, active_, false));
      if (h.is_zero()) continue;
      if (h.is_constant()) return {Polynomial::constant(ring_, 1)};
      insert(std::move(h));
    }
    std::size_t processed = 0;
    while (!pairs_.empty()) {
      limits_.check_deadline();
      if (++processed > limits_.max_pairs) throw CapExceeded("S-pair cap exceeded");
      std::size_t best = select();
      Pair pr = std::move(pairs_[best]);
      pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(best));
      if (pr.lcm.degree() > limits_.max_degree) throw CapExceeded("degree cap exceeded");
      Polynomial s = spoly(pr);
      Polynomial h = normalize(reduce_full(std::move(s), polys_, active_, false));
      if (h.is_zero()) continue;
      if (h.is_constant()) return {Polynomial::constant(ring_, 1)};
      insert(std::move(h));
    }
    return interreduce();
  }

 private:
  std::size_t select() const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs_.size(); ++k)
      if (better(pairs_[k], pairs_[best])) best = k;
    return best;
  }

  static bool better(const Pair& a, const Pair& b) {
    if (a.lcm.degree() != b.lcm.degree()) return a.lcm.degree() < b.lcm.degree();
    static const MonomialOrder lex = MonomialOrder::lex();
    int c = lex.compare(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.j != b.j) return a.j < b.j;
    return a.i < b.i;
  }

  Polynomial spoly(const Pair& pr) const {
    const Polynomial& f = polys_[pr.i];
    const Polynomial& g = polys_[pr.j];
    Monomial mf = pr.lcm / f.leading_monomial();
    Monomial mg = pr.lcm / g.leading_monomial();
    const Field& k = ring_->field();
    if (!k.is_rational()) {
      Coefficient one = Coefficient::one(k);
      return f.mul_term(mf, one) - g.mul_term(mg, one);
    }
    const mpz_class& a = f.leading_coefficient().rational().get_num();
    const mpz_class& b = g.leading_coefficient().rational().get_num();
    mpz_class d;
    mpz_gcd(d.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return f.mul_term(mf, Coefficient::from_integer(k, mpz_class(b / d))) -
           g.mul_term(mg, Coefficient::from_integer(k, mpz_class(a / d)));
  }

  // Gebauer-Moeller update.
  void insert(Polynomial h) {
    std::size_t hi = polys_.size();
    polys_.push_back(std::move(h));
    const Monomial& lh = polys_[hi].leading_monomial();

    std::vector<Pair> cand;
    for (std::size_t g : active_) cand.push_back({g, hi, lh.lcm(polys_[g].leading_monomial())});
    std::vector<Pair> kept;
    for (std::size_t a = 0; a < cand.size(); ++a) {
      const Pair& p1 = cand[a];
      bool coprime = lh.coprime(polys_[p1.i].leading_monomial());
      bool dominated = false;
      if (!coprime) {
        for (std::size_t b = a + 1; b < cand.size() && !dominated; ++b)
          if (cand[b].lcm.divides(p1.lcm)) dominated = true;
        for (const auto& p2 : kept)
          if (!dominated && p2.lcm.divides(p1.lcm)) dominated = true;
      }
      if (coprime || !dominated) kept.push_back(p1);
    }
    std::vector<Pair> fresh;
    for (auto& p : kept)
      if (!lh.coprime(polys_[p.i].leading_monomial())) fresh.push_back(std::move(p));

    std::vector<Pair> survivors;
    for (auto& p : pairs_) {
      bool drop = lh.divides(p.lcm) && !(lh.lcm(polys_[p.i].leading_monomial()) == p.lcm) &&
                  !(lh.lcm(polys_[p.j].leading_monomial()) == p.lcm);
      if (!drop) survivors.push_back(std::move(p));
    }
    pairs_ = std::move(survivors);
    for (auto& p : fresh) pairs_.push_back(std::move(p));

    std::vector<std::size_t> next;
    for (std::size_t g : active_)
      if (!lh.divides(polys_[g].leading_monomial())) next.push_back(g);
    next.push_back(hi);
    active_ = std::move(next);
  }

  std::vector<Polynomial> interreduce() {
    std::vector<Polynomial> basis;
    std::vector<Polynomial> monic;
    for (std::size_t g : active_) monic.push_back(polys_[g].monic());
    const auto& ord = ring_->order();
    std::sort(monic.begin(), monic.end(), [&](const Polynomial& a, const Polynomial& b) {
      return ord.compare(a.leading_monomial(), b.leading_monomial()) < 0;
    });
    std::vector<std::size_t> all(monic.size());
    for (std::size_t k = 0; k < monic.size(); ++k) {
      std::vector<std::size_t> others;
      for (std::size_t m = 0; m < monic.size(); ++m)
        if (m != k) others.push_back(m);
      // Tail reduction: the leading term is irreducible by the others.
      const Polynomial& g = monic[k];
      Polynomial lead = Polynomial::term(ring_, g.leading_monomial(), g.leading_coefficient());
      Polynomial tail = g - lead;
      basis.push_back(lead + reduce_full(tail, monic, others, true));
    }
    return basis;
  }

  RingPtr ring_;
  const Limits& limits_;
  std::vector<Polynomial> polys_;
  std::vector<std::size_t> active_;
  std::vector<Pair> pairs_;
};

}  // namespace

std::vector<Polynomial> reduced_groebner_basis(std::vector<Polynomial> generators, const Limits& limits) {
  if (generators.empty()) return {};
  RingPtr ring = generators.front().ring();
  return Buchberger(ring, limits).run(std::move(generators));
}

Ideal groebner_basis(const Ideal& ideal, const Limits& limits) {
  if (ideal.has_basis()) return ideal;
  Ideal out = ideal;
  out.basis_ = Buchberger(ideal.ring(), limits).run(ideal.generators());
  return out;
}

Ideal groebner_basis(const Ideal& ideal, const MonomialOrder& order, const Limits& limits) {
  if (ideal.ring()->order() == order) return groebner_basis(ideal, limits);
  RingPtr r = ideal.ring()->with_order(order);
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(g.reorder(r));
  return groebner_basis(Ideal(r, std::move(gens)), limits);
}

Ideal ideal_from_basis(RingPtr ring, std::vector<Polynomial> basis) {
  Ideal out(ring, basis);
  out.basis_ = std::move(basis);
  return out;
}

Ideal with_basis(const Ideal& ideal, const Limits& limits) { return groebner_basis(ideal, limits); }

Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& reduced_basis) {
  std::vector<std::size_t> all(reduced_basis.size());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
  return reduce_full(p, reduced_basis, all, true);
}

Polynomial normal_form(const Polynomial& p, const Ideal& ideal) {
  if (!same_ring(p.ring(), ideal.ring())) throw ScopeError("normal_form: ring context mismatch");
  return normal_form(p, ideal.basis());
}

bool ideal_member(const Polynomial& p, const Ideal& ideal, const Limits& limits) {
  if (!same_ring(p.ring(), ideal.ring())) throw ScopeError("ideal_member: ring context mismatch");
  return normal_form(p, with_basis(ideal, limits)).is_zero();
}

bool ideal_contains(const Ideal& big, const Ideal& small, const Limits& limits) {
  Ideal b = with_basis(big, limits);
  const auto& list = small.has_basis() ? small.basis() : small.generators();
  for (const auto& g : list)
    if (!normal_form(g.reorder(b.ring()), b).is_zero()) return false;
  return true;
}

bool same_ideal(const Ideal& a, const Ideal& b, const Limits& limits) {
  if (!same_ring(a.ring(), b.ring())) {
    if (a.ring()->variables() != b.ring()->variables()) return false;
    return ideal_contains(a, b, limits) && ideal_contains(b, a, limits);
  }
  return with_basis(a, limits).basis() == with_basis(b, limits).basis();
}

Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  std::vector<Polynomial> g = a.generators();
  for (const auto& x : b.generators()) g.push_back(x);
  return Ideal(a.ring(), std::move(g));
}

Ideal ideal_sum(const Ideal& a, const std::vector<Polynomial>& extra) {
  std::vector<Polynomial> g = a.generators();
  for (const auto& x : extra) g.push_back(x);
  return Ideal(a.ring(), std::move(g));
}

}  // namespace uhom
