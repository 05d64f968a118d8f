// Acceptance gate: one PASS/FAIL line per criterion; exit status is the
// number of failing criteria.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "corpus.hpp"
#include "uhom/cli.hpp"
#include "uhom/errors.hpp"
#include "uhom/frob.hpp"
#include "uhom/morphisms.hpp"
#include "uhom/oracle.hpp"
#include "uhom/session.hpp"
#include "uhom/wn.hpp"

using namespace uhom;
using namespace corpus;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Accumulates named checks; the first failing check names the outcome.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failed_.empty()) failed_ = what;
    ++count_;
  }
  Outcome done(std::string detail = {}) const {
    if (!failed_.empty()) return {false, "failed: " + failed_ + (detail.empty() ? "" : "; " + detail)};
    return {true, std::to_string(count_) + " checks" + (detail.empty() ? "" : "; " + detail)};
  }

 private:
  std::string failed_;
  std::size_t count_ = 0;
};

bool all_nilpotent(const std::vector<NilpotencyWitness>& ws) {
  return !ws.empty() && std::all_of(ws.begin(), ws.end(), [](const auto& w) { return w.nilpotent && w.exponent; });
}

AlgebraMap crossing_to(const WeakNormalizationResult& w) {
  ImageMembership im(w.into_target);
  const auto& B = w.into_target.target();
  auto p = im.preimage(B.parse("s"));
  auto q = im.preimage(B.parse("s'"));
  if (!p || !q) throw Error("branches are not in the weak normalization");
  return AlgebraMap(crossing(), w.algebra, std::vector<Polynomial>{*p, *q});
}

Outcome c1() {
  auto r = classify(frobenius_subring());
  Checks c;
  c.expect(r.integral == Verdict::True, "integral");
  c.expect(r.surjective == Verdict::True, "surjective");
  c.expect(r.radicial == Verdict::True, "radicial");
  c.expect(r.universal_homeomorphism == Verdict::True, "uh");
  c.expect(r.module && r.module->relations.size() == r.module->generators.size(), "module certificate");
  c.expect(all_nilpotent(r.diagonal), "diagonal nilpotency witnesses");
  std::string exps;
  for (const auto& w : r.diagonal) exps += (exps.empty() ? "" : ",") + std::to_string(*w.exponent);
  return c.done("diagonal exponents {" + exps + "}");
}

Outcome c2() {
  auto r = classify(gaussian_lines());
  Checks c;
  c.expect(r.radicial == Verdict::False, "radicial false");
  c.expect(r.universal_homeomorphism == Verdict::False, "uh false");
  return c.done();
}

Outcome c3() {
  auto f = cusp();
  auto r = classify(f);
  Checks c;
  c.expect(r.universal_homeomorphism == Verdict::True, "uh");
  std::uint32_t e = r.diagonal.empty() || !r.diagonal[0].exponent ? 0 : *r.diagonal[0].exponent;
  auto w = weak_normalize(f);
  c.expect(is_isomorphism(w.into_target).isomorphism, "weak normalization is the full cover");
  c.expect(traverso_obstruction(f, f.target().parse("t")), "traverso_obstruction(t)");
  c.expect(e == 4, "diagonal nilpotency exponent exactly 4 (least exponent found: " + std::to_string(e) + ")");
  return c.done("least e with (t_l - t_r)^e = 0 is " + std::to_string(e));
}

Outcome c4() {
  auto f = node();
  auto w = weak_normalize(f);
  Checks c;
  c.expect(is_isomorphism(w.from_source).isomorphism, "weak normalization is the identity");
  c.expect(classify(f).radicial == Verdict::False, "radicial false");
  return c.done();
}

Outcome c5() {
  auto f = tacnode();
  auto w = weak_normalize(f);
  Checks c;
  c.expect(!is_isomorphism(w.from_source).isomorphism, "A -> A'' is not an isomorphism");
  c.expect(!is_isomorphism(w.into_target).isomorphism, "A'' -> B is not an isomorphism");
  c.expect(is_isomorphism(crossing_to(w)).isomorphism, "A'' isomorphic to Q[p,q]/(pq)");
  auto w2 = weak_normalize(w.into_target);
  c.expect(is_isomorphism(w2.from_source).isomorphism, "idempotence");
  return c.done();
}

Outcome c6() {
  Checks c;
  auto f = frobenius_subring();
  auto k = kollar_factor(f);
  c.expect(k.has_value(), "factor found");
  if (k) {
    c.expect(k->r == 1, "r = 1");
    c.expect(f.after(k->section).same_as(k->twist.relative), "f o section = relative Frobenius");
    c.expect(k->section.after(k->twist.structure).same_as(AlgebraMap::identity(f.source())),
             "section splits the structure map");
  }
  auto g = map(alg(F(3), {"x"}, {"x^9"}), alg(F(3), {}), {"0"});
  auto kn = kollar_factor(g);
  c.expect(kn && kn->nil_exponent == 9, "nilimmersion branch v = 9");
  if (kn) c.expect(g.after(kn->section).same_as(kn->twist.relative), "nilimmersion triangle");
  return c.done();
}

Outcome c7() {
  Checks c;
  auto A = cusp(F(2)).source();
  std::vector<AlgebraMap> levels;
  for (std::uint32_t n = 1; n <= 3; ++n) {
    levels.push_back(perfection_truncation(A, n));
    c.expect(classify(levels.back()).universal_homeomorphism == Verdict::True, "level " + std::to_string(n) + " uh");
  }
  for (std::size_t i = 0; i < levels.size(); ++i)
    for (std::size_t j = 0; j < levels.size(); ++j) {
      auto g = levels[j].after(levels[i]);
      c.expect(classify(g).universal_homeomorphism == Verdict::True, "composite uh");
      if (i + j + 2 <= 3) c.expect(g.same_as(levels[i + j + 1]), "composite equals the combined level");
    }
  // Two-out-of-three with a non-Frobenius factor: the normalization t -> t.
  auto nu = cusp(F(2));
  c.expect(classify(nu).universal_homeomorphism == Verdict::True, "normalization uh");
  c.expect(classify(nu.after(levels[0])).universal_homeomorphism == Verdict::True, "nu o level 1 uh");
  return c.done();
}

Outcome c8() {
  Checks c;
  std::vector<std::pair<std::string, AlgebraMap>> maps = {
      {"cusp", cusp()},
      {"frobenius_subring", frobenius_subring()},
      {"gaussian", gaussian_lines()},
      {"node", node()},
      {"tacnode", tacnode()},
      {"etale cover", etale_double_cover()},
      {"identity", AlgebraMap::identity(crossing())},
      {"localization iso", map(alg(Q(), {"x"}), alg(Q(), {"x"}), {"x + 1"})},
  };
  std::size_t both = 0;
  for (const auto& [name, f] : maps) {
    auto r = classify(f);
    if (r.etale == Verdict::True && r.universal_homeomorphism == Verdict::True) {
      ++both;
      c.expect(r.isomorphism == Verdict::True, name + ": etale and uh but not an isomorphism");
    }
  }
  c.expect(both >= 2, "corpus has etale uh members");
  auto e = classify(etale_double_cover());
  c.expect(e.etale == Verdict::True && e.universal_homeomorphism == Verdict::False, "etale-not-uh member");
  auto u = classify(cusp());
  c.expect(u.universal_homeomorphism == Verdict::True && u.etale == Verdict::False, "uh-not-etale member");
  return c.done(std::to_string(both) + " etale uh members");
}

Outcome c9() {
  auto w = weak_normalize(tacnode());
  auto wl = weak_normalize(tacnode_localized());
  Polynomial x = w.from_source.image(0);
  std::vector<std::string> vars = w.algebra.variables();
  vars.push_back("z");
  std::vector<std::string> rels;
  for (const auto& r : w.algebra.relations()) rels.push_back(r.to_string());
  rels.push_back("(" + x.to_string() + ")*z - 1");
  auto loc = PresentedAlgebra(Q(), vars, rels);
  ImageMembership im(wl.into_target);
  const auto& BL = wl.into_target.target();
  std::vector<Polynomial> images;
  for (const auto& g : w.into_target.images()) {
    auto p = im.preimage(BL.parse(g.to_string()));
    if (!p) return {false, "generator " + g.to_string() + " missing from the localized weak normalization"};
    images.push_back(*p);
  }
  images.push_back(*im.preimage(BL.parse("z")));
  Checks c;
  c.expect(is_isomorphism(AlgebraMap(loc, wl.algebra, images)).isomorphism, "localization commutes");
  return c.done();
}

std::vector<Polynomial> separable_polys(unsigned p, unsigned max_deg) {
  auto ring = alg(F(p), {"t"}).ring();
  std::vector<Polynomial> out;
  for (unsigned d = 1; d <= max_deg; ++d) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Polynomial g = Polynomial::variable(ring, 0).pow(d);
      std::uint64_t rest = code;
      for (unsigned i = 0; i < d; ++i, rest /= p)
        g += Polynomial::variable(ring, 0).pow(i) * Polynomial::constant(ring, static_cast<long>(rest % p));
      if (polynomial_gcd(g, g.derivative(0)).is_one()) out.push_back(g);
    }
  }
  return out;
}

Outcome c10() {
  Checks c;
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
  std::size_t pairs = 0;
  for (const auto& f : maps) {
    c.expect(classify(f).universal_homeomorphism == Verdict::True, f.to_string() + " uh");
    FiniteRing r(f.source()), s(f.target());
    for (const auto& g : separable_polys(r.characteristic(), 4)) {
      c.expect(brute_roots(g, r).count == brute_roots(g, s).count, "root counts of " + g.to_string());
      ++pairs;
    }
  }
  auto control = map(alg(F(2), {"e"}, {"e^2 - e"}), alg(F(2), {}), {"1"});
  FiniteRing r(control.source()), s(control.target());
  bool violated = false;
  for (const auto& g : separable_polys(2, 4)) violated = violated || brute_roots(g, r).count != brute_roots(g, s).count;
  c.expect(classify(control).universal_homeomorphism == Verdict::False, "control is not uh");
  c.expect(violated, "control exhibits a root-count violation");
  return c.done(std::to_string(maps.size()) + " maps, " + std::to_string(pairs) + " (map, g) pairs");
}

Outcome c11() {
  std::vector<PresentedAlgebra> rings = {
      alg(F(2), {"x"}, {"x^2"}),
      alg(F(2), {"x"}, {"x^2 - x"}),
      alg(F(2), {"x"}, {"x^2 + x + 1"}),
      alg(F(2), {"x"}, {"x^4"}),
      alg(F(2), {"x", "y"}, {"x^2", "y^2", "x*y"}),
      alg(F(2), {"x", "y"}, {"x^2", "y^2"}),
      alg(F(2), {"a", "b"}, {"b^2 - a^3", "a^3", "b^2"}),
      alg(F(2), {"t"}, {"t^6"}),
      alg(F(2), {"x", "e"}, {"e^2 - e", "x - x*e", "x^2"}),
      alg(F(3), {"x"}, {"x^2 - 1"}),
      alg(F(3), {"x"}, {"x^4"}),
      alg(F(3), {"x", "y"}, {"x^2", "y^2"}),
      alg(F(3), {"x"}, {"x^4 - x^2"}),
      alg(F(3), {"u", "v"}, {"u^2 + v^2", "u^2", "v^3"}),
      alg(F(3), {"x", "y"}, {"x*y", "x^2", "y^2"}),
  };
  std::size_t elements = 0, discrepancies = 0;
  for (const auto& a : rings) {
    FiniteRing r(a);
    if (r.size() > 81) return {false, a.to_string() + " has more than 81 elements"};
    auto nil = brute_nilpotents(r);
    std::set<std::uint64_t> nilset(nil.begin(), nil.end());
    for (std::uint64_t code = 0; code < r.size(); ++code, ++elements)
      if (radical_member(r.to_polynomial(r.element(code)), a.ideal()).member != (nilset.count(code) == 1))
        ++discrepancies;
  }
  Checks c;
  c.expect(discrepancies == 0, std::to_string(discrepancies) + " discrepancies");
  return c.done(std::to_string(rings.size()) + " rings, " + std::to_string(elements) + " elements, 0 discrepancies");
}

Polynomial random_poly(std::mt19937& rng, const RingPtr& r, int terms, int maxdeg) {
  std::uniform_int_distribution<int> coef(-5, 5), deg(0, maxdeg);
  std::vector<Term> ts;
  for (int k = 0; k < terms; ++k) {
    std::vector<std::uint32_t> e(r->arity());
    for (auto& x : e) x = static_cast<std::uint32_t>(deg(rng));
    ts.push_back({Monomial(e), Coefficient::from_integer(r->field(), coef(rng))});
  }
  return Polynomial::from_terms(r, std::move(ts));
}

Outcome c12() {
  Checks c;
  std::mt19937 rng(12);
  for (int k = 0; k < 25; ++k) {
    auto f = k % 2 ? Field::prime(7) : Field::rationals();
    auto r = Ring::make(f, {"x", "y", "z"});
    std::vector<Polynomial> gens;
    for (int g = 0; g < 3; ++g) gens.push_back(random_poly(rng, r, 3, 2));
    auto ref = reduced_groebner_basis(gens);
    for (int s = 0; s < 4; ++s) {
      std::shuffle(gens.begin(), gens.end(), rng);
      c.expect(reduced_groebner_basis(gens) == ref, "uniqueness on random ideal " + std::to_string(k));
    }
  }
  auto r = Ring::make(Field::rationals(), {"a", "b", "c", "d"});
  std::vector<Polynomial> cyclic;
  for (const char* g : {"a+b+c+d", "a*b+b*c+c*d+d*a", "a*b*c+b*c*d+c*d*a+d*a*b", "a*b*c*d-1"})
    cyclic.push_back(Polynomial::parse(r, g));
  auto start = std::chrono::steady_clock::now();
  auto gb = reduced_groebner_basis(cyclic);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  c.expect(gb.size() == 7, "cyclic-4 basis has 7 elements");
  c.expect(ms < 10000.0, "cyclic-4 under 10 s");
  std::ostringstream d;
  d.precision(1);
  d << std::fixed << "cyclic-4 in " << ms << " ms";
  return c.done(d.str());
}

struct Run {
  int code;
  std::string out;
};

Run tool(const std::string& args) {
  std::string cmd = std::string("\"") + UHTOOL_PATH + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome c13() {
  Checks c;
  const fs::path dir = UHOM_SESSIONS_DIR;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".ses") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  c.expect(files.size() >= 6, "corpus sessions present");
  for (const auto& f : files) {
    auto ast = parse_session(slurp(f));
    auto printed = print_session(ast);
    c.expect(parse_session(printed) == ast, "round trip " + f.filename().string());
    for (const auto& m : ast.maps) {
      auto args = "check \"" + f.string() + "\" " + m.name + " --json --no-timings";
      auto a = tool(args), b = tool(args);
      c.expect(a.code == 0 && a.out == b.out && !a.out.empty(), "determinism " + f.filename().string() + ":" + m.name);
    }
  }
  const std::vector<std::pair<std::string, int>> malformed = {
      {"unclosed_bracket", 2}, {"bad_polynomial", 2}, {"undefined_ring", 2}, {"arity_mismatch", 2},
      {"ill_defined", 2},      {"missing_field", 2},  {"duplicate_name", 2}, {"unknown_variable", 2},
      {"unknown_keyword", 2},  {"non_prime_field", 3},
  };
  for (const auto& [name, code] : malformed)
    c.expect(tool("check \"" + (dir / "malformed" / (name + ".ses")).string() + "\" f").code == code, "exit code " + name);
  c.expect(tool("wn \"" + (dir / "nilpotent.ses").string() + "\" f").code == 3, "scope exit code");
  c.expect(tool("oracle enumerate \"" + (dir / "finite.ses").string() + "\" D --enum-cap 2").code == 4, "cap exit code");
  return c.done(std::to_string(files.size()) + " sessions, " + std::to_string(malformed.size()) + " malformed fixtures");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"frobenius subring k[x^2,xy,y] in k[x,y] over F_2 is a universal homeomorphism", c1},
      {"conjugate lines Q[u,v]/(u^2+v^2) -> Q(i)[x] are not radicial, not uh", c2},
      {"cusp normalization: uh, diagonal exponent 4, wn is the cover, Traverso obstruction", c3},
      {"node is weakly normal in its normalization, which is not radicial", c4},
      {"tacnode weak normalization is the crossing pq = 0, strictly intermediate, idempotent", c5},
      {"Kollar factorization: r = 1 on the subring example, v = 9 on F_3[x]/(x^9) -> F_3", c6},
      {"truncated perfections of the F_2 cusp and their composites are uh", c7},
      {"etale + uh implies isomorphism on the corpus; one-conjunct counterexamples", c8},
      {"weak normalization of the tacnode commutes with inverting x", c9},
      {"root counts of separable polynomials agree along uh maps of finite rings", c10},
      {"radical_member agrees with brute-force nilpotents on finite rings", c11},
      {"reduced basis uniqueness on 25 random ideals; cyclic-4 under 10 s", c12},
      {"CLI round trip, determinism and exit codes", c13},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": " << criteria[i].first << " -- " << o.detail
              << " [" << static_cast<long>(ms) << " ms]" << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size() << " criteria pass"
            << std::endl;
  return failures;
}
