#include <gtest/gtest.h>

#include <set>

#include "corpus.hpp"
#include "uhom/errors.hpp"
#include "uhom/frob.hpp"
#include "uhom/morphisms.hpp"
#include "uhom/oracle.hpp"

using namespace uhom;
using namespace corpus;

namespace {

std::set<std::string> rendered(const FiniteRing& r, const std::vector<std::uint64_t>& codes) {
  std::set<std::string> out;
  for (auto c : codes) out.insert(r.to_polynomial(r.element(c)).to_string());
  return out;
}

// Finite rings with at most 81 elements built from the corpus and its truncations.
std::vector<PresentedAlgebra> small_rings() {
  return {
      alg(F(2), {"x"}, {"x^2"}),
      alg(F(2), {"x"}, {"x^2 - x"}),
      alg(F(2), {"x"}, {"x^2 + x + 1"}),
      alg(F(2), {"x"}, {"x^4"}),
      alg(F(2), {"x", "y"}, {"x^2", "y^2", "x*y"}),
      alg(F(2), {"x", "y"}, {"x^2", "y^2"}),
      alg(F(2), {"a", "b"}, {"b^2 - a^3", "a^3", "b^2"}),
      alg(F(2), {"t"}, {"t^6"}),
      alg(F(2), {"x", "y"}, {"x*y", "x^3", "y^2"}),
      alg(F(2), {"x", "e"}, {"e^2 - e", "x - x*e", "x^2"}),
      alg(F(2), {"x"}, {"x^3 + x + 1"}),
      alg(F(3), {"x"}, {"x^2 - 1"}),
      alg(F(3), {"x"}, {"x^3"}),
      alg(F(3), {"x"}, {"x^4"}),
      alg(F(3), {"x", "y"}, {"x^2", "y^2"}),
      alg(F(3), {"x", "y"}, {"x*y", "x^2", "y^2"}),
      alg(F(3), {"x"}, {"x^2 + 1"}),
      alg(F(3), {"x"}, {"x^4 - x^2"}),
      alg(F(3), {"u", "v"}, {"u^2 + v^2", "u^2", "v^3"}),
  };
}

// Every polynomial of degree 1..max_deg over F_p with no repeated factor.
std::vector<Polynomial> separable_polys(unsigned p, unsigned max_deg) {
  auto ring = alg(F(p), {"t"}).ring();
  std::vector<Polynomial> out;
  for (unsigned d = 1; d <= max_deg; ++d) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (std::uint64_t c = 0; c < count; ++c) {
      Polynomial g = Polynomial::variable(ring, 0).pow(d);
      std::uint64_t rest = c;
      for (unsigned i = 0; i < d; ++i, rest /= p)
        g += Polynomial::variable(ring, 0).pow(i) * Polynomial::constant(ring, static_cast<long>(rest % p));
      if (polynomial_gcd(g, g.derivative(0)).is_one()) out.push_back(g);
    }
  }
  return out;
}

FiniteRing::Element image(const AlgebraMap& f, const FiniteRing& r, const FiniteRing& s, std::uint64_t code) {
  return s.from_polynomial(f.apply(r.to_polynomial(r.element(code))));
}

}  // namespace

TEST(Enumerate, Examples) {
  FiniteRing a(alg(F(2), {"x"}, {"x^2"}));
  EXPECT_EQ(a.size(), 4u);
  ASSERT_EQ(a.dim(), 2u);
  EXPECT_EQ(a.to_polynomial(a.element(1)).to_string(), "1");
  EXPECT_EQ(a.to_polynomial(a.element(2)).to_string(), "x");
  EXPECT_EQ(FiniteRing(alg(F(3), {"x"}, {"x^2 - 1"})).size(), 9u);
  EXPECT_EQ(FiniteRing(alg(F(2), {"x", "y"}, {"x^2", "y^2", "x*y"})).size(), 8u);
}

TEST(Enumerate, Errors) {
  EXPECT_THROW(FiniteRing(alg(F(2), {"x"})), ScopeError);
  EXPECT_THROW(FiniteRing(alg(Q(), {"x"}, {"x^2"})), ScopeError);
  EXPECT_THROW(FiniteRing(alg(F(2), {"x"}, {"x^17"})), CapExceeded);
  Limits small;
  small.enum_cap = 8;
  EXPECT_THROW(FiniteRing(alg(F(2), {"x"}, {"x^4"}), small), CapExceeded);
  EXPECT_NO_THROW(FiniteRing(alg(F(2), {"x"}, {"x^3"}), small));
}

TEST(Enumerate, CodesRoundTrip) {
  FiniteRing r(alg(F(3), {"x", "y"}, {"x^2", "y^2"}));
  for (std::uint64_t c = 0; c < r.size(); ++c) EXPECT_EQ(r.code(r.element(c)), c);
}

TEST(Nilpotents, Examples) {
  FiniteRing a(alg(F(2), {"x"}, {"x^2"}));
  EXPECT_EQ(rendered(a, brute_nilpotents(a)), (std::set<std::string>{"0", "x"}));
  FiniteRing b(alg(F(2), {"x"}, {"x^2 - x"}));
  EXPECT_EQ(rendered(b, brute_nilpotents(b)), (std::set<std::string>{"0"}));
  FiniteRing c(alg(F(2), {"x", "y"}, {"x^2", "y^2", "x*y"}));
  EXPECT_EQ(rendered(c, brute_nilpotents(c)), (std::set<std::string>{"0", "x", "y", "x + y"}));
}

TEST(Roots, Examples) {
  auto t2 = alg(F(2), {"t"}).ring();
  FiniteRing dual(alg(F(2), {"x"}, {"x^2"}));
  auto r = brute_roots(Polynomial::parse(t2, "t^2 + t"), dual);
  EXPECT_EQ(r.count, 2u);
  EXPECT_EQ(rendered(dual, r.roots), (std::set<std::string>{"0", "1"}));
  FiniteRing f2(alg(F(2), {}));
  EXPECT_EQ(brute_roots(Polynomial::parse(t2, "t^2 + t + 1"), f2).count, 0u);
  for (const auto& a : small_rings()) {
    FiniteRing ring(a);
    auto t = alg(a.field(), {"t"}).ring();
    EXPECT_EQ(brute_roots(Polynomial::parse(t, "t"), ring).count, 1u) << a.to_string();
  }
  EXPECT_THROW(brute_roots(Polynomial::parse(alg(F(2), {"s", "t"}).ring(), "s*t"), dual), ScopeError);
}

TEST(Homs, Examples) {
  FiniteRing dual(alg(F(2), {"x"}, {"x^2"}));
  FiniteRing f2(alg(F(2), {}));
  FiniteRing split(alg(F(2), {"e"}, {"e^2 - e"}));
  EXPECT_EQ(brute_homs(dual, f2), 1u);
  EXPECT_EQ(brute_homs(split, f2), 2u);
  EXPECT_EQ(brute_homs(dual, dual), 2u);
  // F_4 has two automorphisms and no map to F_2.
  FiniteRing f4(alg(F(2), {"x"}, {"x^2 + x + 1"}));
  EXPECT_EQ(brute_homs(f4, f4), 2u);
  EXPECT_EQ(brute_homs(f4, f2), 0u);
}

TEST(SeparableRank, Examples) {
  EXPECT_EQ(separable_rank(FiniteRing(alg(F(2), {"x"}, {"x^2"}))), 1u);
  EXPECT_EQ(separable_rank(FiniteRing(alg(F(2), {"e"}, {"e^2 - e"}))), 2u);
  EXPECT_EQ(separable_rank(FiniteRing(alg(F(2), {"x"}, {"x^2 + x + 1"}))), 2u);
  // x^4 - x^2 = x^2 (x - 1)(x + 1) over F_3: three points of degree one.
  EXPECT_EQ(separable_rank(FiniteRing(alg(F(3), {"x"}, {"x^4 - x^2"}))), 3u);
}

TEST(SeparableRank, MatchesHomsIntoSplittingField) {
  // Over a finite field every point of degree d contributes d maps into F_{p^N}
  // once d divides N; for these rings the residue degrees divide 6.
  FiniteRing f64(alg(F(2), {"x"}, {"x^6 + x + 1"}));
  for (const auto& a : small_rings()) {
    if (a.field().characteristic() != 2) continue;
    FiniteRing r(a);
    EXPECT_EQ(brute_homs(r, f64), separable_rank(r)) << a.to_string();
  }
}

// Property: the Groebner radical test agrees with exhaustive squaring.
TEST(OracleAgreement, RadicalMemberMatchesBruteNilpotents) {
  std::size_t checked = 0;
  for (const auto& a : small_rings()) {
    FiniteRing r(a);
    ASSERT_LE(r.size(), 81u);
    auto nil = brute_nilpotents(r);
    std::set<std::uint64_t> nilset(nil.begin(), nil.end());
    for (std::uint64_t c = 0; c < r.size(); ++c) {
      bool member = radical_member(r.to_polynomial(r.element(c)), a.ideal()).member;
      EXPECT_EQ(member, nilset.count(c) == 1) << a.to_string() << " element " << c;
      ++checked;
    }
  }
  EXPECT_GT(checked, 300u);
}

// Property: each variable's eliminant vanishes at every F_p-point of V(I).
TEST(OracleAgreement, EliminantsVanishOnSolutions) {
  for (const auto& a : small_rings()) {
    const std::size_t n = a.arity();
    if (n < 2) continue;
    const unsigned p = a.field().characteristic();
    FiniteRing kp(alg(a.field(), {}));
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= p;
    for (std::size_t keep = 0; keep < n; ++keep) {
      std::vector<std::size_t> drop;
      for (std::size_t i = 0; i < n; ++i)
        if (i != keep) drop.push_back(i);
      Ideal e = eliminate(a.ideal(), drop);
      for (std::uint64_t c = 0; c < total; ++c) {
        std::vector<FiniteRing::Element> pt(n);
        std::uint64_t rest = c;
        for (std::size_t i = 0; i < n; ++i, rest /= p) pt[i] = kp.scale(static_cast<std::uint32_t>(rest % p), kp.one());
        bool solution = true;
        for (const auto& g : a.relations()) solution = solution && kp.is_zero(kp.evaluate(g, pt));
        if (!solution) continue;
        for (const auto& g : e.basis()) EXPECT_TRUE(kp.is_zero(kp.evaluate(g, {pt[keep]}))) << a.to_string();
      }
    }
  }
}

// Property: along universal homeomorphisms of finite rings, separable
// polynomials have the same roots, and the map carries roots bijectively.
TEST(Invariance, RootCountsAlongUniversalHomeomorphisms) {
  std::vector<AlgebraMap> maps = {
      map(alg(F(2), {"x"}, {"x^2"}), alg(F(2), {}), {"0"}),
      map(alg(F(2), {"x"}, {"x^4"}), alg(F(2), {"x"}, {"x^2"}), {"x"}),
      map(alg(F(3), {"x"}, {"x^3"}), alg(F(3), {}), {"0"}),
      map(alg(F(3), {"x", "y"}, {"x^2", "y^2"}), alg(F(3), {"x"}, {"x^2"}), {"x", "0"}),
      map(alg(F(2), {"x", "e"}, {"e^2 - e", "x - x*e", "x^2"}), alg(F(2), {"e"}, {"e^2 - e"}), {"0", "e"}),
      perfection_truncation(alg(F(2), {"x"}, {"x^2 - x"}), 1),
      perfection_truncation(alg(F(2), {"x"}, {"x^3 + x + 1"}), 2),
      perfection_truncation(alg(F(3), {"x"}, {"x^2 + 1"}), 1),
  };
  for (const auto& f : maps) {
    ASSERT_EQ(classify(f).universal_homeomorphism, Verdict::True) << f.to_string();
    FiniteRing r(f.source()), s(f.target());
    const unsigned p = r.characteristic();
    for (const auto& g : separable_polys(p, p == 2 ? 4 : 3)) {
      auto rr = brute_roots(g, r);
      auto rs = brute_roots(g, s);
      ASSERT_EQ(rr.count, rs.count) << f.to_string() << " g = " << g.to_string();
      std::set<std::uint64_t> mapped;
      for (auto c : rr.roots) mapped.insert(s.code(image(f, r, s, c)));
      EXPECT_EQ(mapped, std::set<std::uint64_t>(rs.roots.begin(), rs.roots.end())) << f.to_string();
    }
  }
}

TEST(Invariance, OpenPointInclusionIsDetected) {
  auto f = map(alg(F(2), {"e"}, {"e^2 - e"}), alg(F(2), {}), {"1"});
  EXPECT_EQ(classify(f).universal_homeomorphism, Verdict::False);
  FiniteRing r(f.source()), s(f.target());
  bool differs = false;
  for (const auto& g : separable_polys(2, 4)) differs = differs || brute_roots(g, r).count != brute_roots(g, s).count;
  EXPECT_TRUE(differs);
}
