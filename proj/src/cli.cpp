#include "uhom/cli.hpp"

#include <chrono>
#include <set>

#include "uhom/errors.hpp"
#include "uhom/frob.hpp"
#include "uhom/morphisms.hpp"
#include "uhom/oracle.hpp"
#include "uhom/session.hpp"
#include "uhom/wn.hpp"

namespace uhom::cli {

using json = nlohmann::ordered_json;

namespace {

json strings(const std::vector<Polynomial>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

json verdict_json(Verdict v) {
  if (v == Verdict::Unknown) return nullptr;
  return v == Verdict::True;
}

json nilpotency_json(const std::vector<NilpotencyWitness>& ws) {
  json out = json::array();
  for (const auto& w : ws) {
    json j;
    j["element"] = w.element.to_string();
    j["nilpotent"] = w.nilpotent;
    j["exponent"] = w.exponent ? json(*w.exponent) : json(nullptr);
    j["cap_exceeded"] = w.cap_exceeded;
    out.push_back(j);
  }
  return out;
}

json jacobian_json(const JacobianWitness& w) {
  json j;
  j["rows"] = w.rows;
  j["minor"] = w.minor.to_string();
  j["inverse"] = w.inverse ? json(w.inverse->to_string()) : json(nullptr);
  return j;
}

json map_json(const AlgebraMap& f) {
  json j = json::object();
  for (std::size_t i = 0; i < f.source().arity(); ++i) j[f.source().variables()[i]] = f.image(i).to_string();
  return j;
}

json report_json(const MorphismReport& r, const std::vector<std::string>& which) {
  json out;
  auto pick = [&](const std::string& name, Verdict v) {
    if (std::find(which.begin(), which.end(), name) != which.end()) out["verdicts"][name] = verdict_json(v);
  };
  pick("schematically_dominant", r.schematically_dominant);
  pick("nilimmersion", r.nilimmersion);
  pick("integral", r.integral);
  pick("surjective", r.surjective);
  pick("radicial", r.radicial);
  pick("universal_homeomorphism", r.universal_homeomorphism);
  pick("unramified", r.unramified);
  pick("etale", r.etale);
  pick("isomorphism", r.isomorphism);
  out["reasons"] = json::object();
  for (const auto& [k, v] : r.reasons) out["reasons"][k] = v;

  json c = json::object();
  c["kernel"] = strings(r.kernel);
  if (!r.kernel_nilpotency.empty()) c["kernel_nilpotency"] = nilpotency_json(r.kernel_nilpotency);
  if (!r.preimages.empty()) {
    json p = json::array();
    for (const auto& x : r.preimages) p.push_back(x ? json(x->to_string()) : json(nullptr));
    c["preimages"] = p;
  }
  if (r.module) {
    json m;
    m["generators"] = strings(r.module->generators);
    json rels = json::array();
    for (const auto& mr : r.module->relations) {
      json e;
      e["element"] = mr.element.to_string();
      e["relation"] = mr.relation.to_string();
      e["degree"] = mr.degree;
      rels.push_back(e);
    }
    m["monic_relations"] = rels;
    c["module"] = m;
  }
  if (!r.diagonal.empty()) c["diagonal"] = nilpotency_json(r.diagonal);
  if (r.unramified_witness) c["unramified_witness"] = jacobian_json(*r.unramified_witness);
  if (r.etale_witness) c["etale_witness"] = jacobian_json(*r.etale_witness);
  if (r.inverse) c["inverse"] = map_json(*r.inverse);
  out["certificates"] = c;
  return out;
}

// Fresh declaration names for results printed back in the session grammar.
class Names {
 public:
  explicit Names(const SessionAst& ast) {
    for (const auto& r : ast.rings) taken_.push_back(r.name);
    for (const auto& m : ast.maps) taken_.push_back(m.name);
  }
  std::string fresh(const std::string& base) {
    std::string n = unique_name(base, taken_);
    taken_.push_back(n);
    return n;
  }

 private:
  std::vector<std::string> taken_;
};

std::string with_declarations(const SessionAst& ast, const std::vector<std::string>& lines) {
  std::string out = print_session(ast);
  for (const auto& l : lines) out += l + "\n";
  return out;
}

std::string target_arg(const CommandRequest& req, std::size_t i, const char* what) {
  if (req.args.size() <= i) throw ParseError(std::string("missing ") + what);
  return req.args[i];
}

// Variable name of a univariate polynomial text; "t" when it has none.
std::string single_variable(std::string_view text) {
  std::set<std::string> found;
  for (std::size_t i = 0; i < text.size();) {
    char c = text[i];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '\''))
        ++j;
      found.insert(std::string(text.substr(i, j - i)));
      i = j;
    } else {
      ++i;
    }
  }
  if (found.size() > 1) throw ScopeError("--poly must be univariate");
  return found.empty() ? "t" : *found.begin();
}

json run_check(const CommandRequest& req, const Session& s) {
  const auto name = target_arg(req, 0, "map name");
  Classifier c(s.map(name), req.limits);
  std::vector<std::string> which;
  if (req.property) {
    std::string p = *req.property == "uh" ? "universal_homeomorphism" : *req.property;
    c.verdict(p);
    which.push_back(p);
  } else {
    c.classify();
    which = property_names();
  }
  return report_json(c.report(), which);
}

json run_wn(const CommandRequest& req, const Session& s) {
  const auto name = target_arg(req, 0, "map name");
  const auto* decl = s.ast().find_map(name);
  if (!decl) throw ScopeError("no map named '" + name + "'");
  auto w = weak_normalize(s.map(name), req.limits);
  Names names(s.ast());
  std::string ring = names.fresh(name + "_wn");
  std::string from = names.fresh(name + "_to_wn");
  std::string into = names.fresh(name + "_wn_to_target");
  json r;
  r["algebra"] = print_ring(ring, w.algebra);
  r["from_source"] = map_json(w.from_source);
  r["into_target"] = map_json(w.into_target);
  r["module_elements"] = strings(w.module_elements);
  r["source_isomorphic"] = is_isomorphism(w.from_source, req.limits).isomorphism;
  r["target_isomorphic"] = is_isomorphism(w.into_target, req.limits).isomorphism;
  r["session"] = with_declarations(s.ast(), {print_ring(ring, w.algebra), print_map(from, decl->source, ring, w.from_source),
                                             print_map(into, ring, decl->target, w.into_target)});
  json out;
  out["result"] = r;
  return out;
}

json run_factor(const CommandRequest& req, const Session& s) {
  const auto name = target_arg(req, 0, "map name");
  const auto* decl = s.ast().find_map(name);
  if (!decl) throw ScopeError("no map named '" + name + "'");
  auto f = factor_schematic_image(s.map(name), req.limits);
  Names names(s.ast());
  std::string ring = names.fresh(name + "_image");
  std::string nil = names.fresh(name + "_onto_image");
  std::string dom = names.fresh(name + "_from_image");
  json r;
  r["kernel"] = strings(kernel_generators(s.map(name), req.limits));
  r["image"] = print_ring(ring, f.image);
  r["nilimmersion"] = map_json(f.nilimmersion);
  r["dominant"] = map_json(f.dominant);
  r["session"] = with_declarations(s.ast(), {print_ring(ring, f.image), print_map(nil, decl->source, ring, f.nilimmersion),
                                             print_map(dom, ring, decl->target, f.dominant)});
  json out;
  out["result"] = r;
  return out;
}

json run_perfection(const CommandRequest& req, const Session& s) {
  const auto name = target_arg(req, 0, "ring name");
  auto f = perfection_truncation(s.ring(name), req.level, req.limits);
  Names names(s.ast());
  std::string m = names.fresh(name + "_frob" + std::to_string(req.level));
  json out = report_json(classify(f, req.limits), property_names());
  out["result"]["level"] = req.level;
  out["result"]["map"] = map_json(f);
  out["result"]["session"] = with_declarations(s.ast(), {print_map(m, name, name, f)});
  return out;
}

json twist_json(const FrobeniusTwistData& t, const std::string& ring) {
  json j;
  j["r"] = t.r;
  j["q"] = t.q;
  j["twisted"] = print_ring(ring, t.twisted);
  j["base_change"] = map_json(t.base_change);
  j["structure"] = map_json(t.structure);
  j["relative"] = map_json(t.relative);
  return j;
}

json run_kollar(const CommandRequest& req, const Session& s) {
  const auto name = target_arg(req, 0, "map name");
  auto k = kollar_factor(s.map(name), req.max_r, req.limits);
  json r;
  r["found"] = k.has_value();
  r["max_r"] = req.max_r;
  if (!k) {
    r["reason"] = "no q = p^r with r <= " + std::to_string(req.max_r) + " admits a section; larger r not ruled out";
  } else {
    Names names(s.ast());
    r["r"] = k->r;
    r["q"] = k->q;
    r["nil_exponent"] = k->nil_exponent;
    r["dominant_exponent"] = k->dominant_exponent;
    r["twist"] = twist_json(k->twist, names.fresh(name + "_twist"));
    r["section"] = map_json(k->section);
    r["witnesses"] = strings(k->witnesses);
  }
  json out;
  out["result"] = r;
  return out;
}

json run_twist(const CommandRequest& req, const Session& s) {
  const auto name = target_arg(req, 0, "map name");
  auto t = frobenius_twist(s.map(name), req.r, req.limits);
  Names names(s.ast());
  json out;
  out["result"] = twist_json(t, names.fresh(name + "_twist"));
  return out;
}

json run_gb(const CommandRequest& req, const Session& s) {
  const auto name = target_arg(req, 0, "ring name");
  const auto* decl = s.ast().find_ring(name);
  if (!decl) throw ScopeError("no ring named '" + name + "'");
  auto order = parse_order(req.order, decl->variables.size());
  auto ring = decl->ring->with_order(order);
  std::vector<Polynomial> gens;
  for (const auto& g : decl->relations) gens.push_back(g.reorder(ring));
  auto gb = groebner_basis(Ideal(ring, gens), req.limits);
  json r;
  r["order"] = order.to_string();
  r["basis"] = strings(gb.basis());
  auto std_basis = zero_dim_basis(gb, req.limits);
  r["dimension"] = dimension(gb, req.limits);
  if (std_basis) {
    json m = json::array();
    for (const auto& mono : *std_basis) m.push_back(Polynomial::term(ring, mono, Coefficient::one(ring->field())).to_string());
    r["standard_monomials"] = m;
  }
  json out;
  out["result"] = r;
  return out;
}

json elements_json(const FiniteRing& r, const std::vector<std::uint64_t>& codes) {
  json out = json::array();
  for (auto c : codes) out.push_back(r.to_polynomial(r.element(c)).to_string());
  return out;
}

json run_oracle(const CommandRequest& req, const Session& s) {
  const auto sub = target_arg(req, 0, "oracle sub-command (enumerate, nilpotents, roots, homs, rank)");
  const auto name = target_arg(req, 1, "ring name");
  FiniteRing r(s.ring(name), req.limits);
  json res;
  res["ring"] = name;
  res["size"] = r.size();
  if (sub == "enumerate") {
    json basis = json::array();
    for (const auto& m : r.basis())
      basis.push_back(Polynomial::term(r.presentation().ring(), m, Coefficient::one(r.presentation().field())).to_string());
    res["basis"] = basis;
    json table = json::array();
    for (std::size_t i = 0; i < r.dim(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < r.dim(); ++j) {
        FiniteRing::Element ei(r.dim(), 0), ej(r.dim(), 0);
        ei[i] = 1;
        ej[j] = 1;
        row.push_back(r.to_polynomial(r.mul(ei, ej)).to_string());
      }
      table.push_back(row);
    }
    res["multiplication"] = table;
  } else if (sub == "nilpotents") {
    auto n = brute_nilpotents(r);
    res["count"] = n.size();
    res["elements"] = elements_json(r, n);
  } else if (sub == "roots") {
    if (!req.poly) throw ParseError("oracle roots needs --poly");
    auto ring = Ring::make(s.field(), {single_variable(*req.poly)});
    auto g = Polynomial::parse(ring, *req.poly);
    auto roots = brute_roots(g, r);
    res["poly"] = g.to_string();
    res["count"] = roots.count;
    res["roots"] = elements_json(r, roots.roots);
  } else if (sub == "homs") {
    const auto other = target_arg(req, 2, "target ring name");
    FiniteRing t(s.ring(other), req.limits);
    res["into"] = other;
    res["count"] = brute_homs(r, t, req.limits);
  } else if (sub == "rank") {
    res["separable_rank"] = separable_rank(r);
  } else {
    throw ParseError("unknown oracle sub-command '" + sub + "'");
  }
  json out;
  out["result"] = res;
  return out;
}

json caps_json(const CommandRequest& req) {
  json c;
  c["nilpotency_cap"] = req.limits.nilpotency_cap;
  c["enum_cap"] = req.limits.enum_cap;
  c["max_pairs"] = req.limits.max_pairs;
  c["max_degree"] = req.limits.max_degree;
  c["timeout_ms"] = req.timeout_ms ? json(*req.timeout_ms) : json(nullptr);
  return c;
}

json command_json(const CommandRequest& req) {
  json c;
  c["name"] = req.command;
  c["args"] = req.args;
  json opts = json::object();
  if (req.command == "check" && req.property) opts["property"] = *req.property;
  if (req.command == "perfection") opts["level"] = req.level;
  if (req.command == "kollar") opts["max_r"] = req.max_r;
  if (req.command == "twist") opts["r"] = req.r;
  if (req.command == "gb") opts["order"] = req.order;
  if (req.command == "oracle" && req.poly) opts["poly"] = *req.poly;
  c["options"] = opts;
  return c;
}

json error_json(const char* kind, const std::string& message) {
  json e;
  e["kind"] = kind;
  e["message"] = message;
  return e;
}

}  // namespace

MonomialOrder parse_order(std::string_view text, std::size_t arity) {
  if (text == "lex") return MonomialOrder::lex();
  if (text == "grevlex") return MonomialOrder::grevlex();
  if (text.rfind("block:", 0) == 0) {
    std::vector<std::size_t> sizes;
    std::size_t total = 0;
    std::string_view rest = text.substr(6);
    while (!rest.empty()) {
      auto comma = rest.find(',');
      auto part = rest.substr(0, comma);
      if (part.empty() || part.find_first_not_of("0123456789") != std::string_view::npos)
        throw ParseError("bad block size in order '" + std::string(text) + "'");
      sizes.push_back(std::stoul(std::string(part)));
      if (sizes.back() == 0) throw ParseError("block sizes must be positive");
      total += sizes.back();
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    if (total != arity)
      throw ParseError("block sizes sum to " + std::to_string(total) + " but the ring has " + std::to_string(arity) +
                       " variables");
    return MonomialOrder::block(std::move(sizes));
  }
  throw ParseError("unknown order '" + std::string(text) + "' (lex, grevlex, block:n1,n2,...)");
}

CommandOutcome run_command(const CommandRequest& request, std::string_view session_text) {
  const auto start = std::chrono::steady_clock::now();
  CommandRequest req = request;
  if (req.timeout_ms) req.limits.deadline = start + std::chrono::milliseconds(*req.timeout_ms);

  CommandOutcome out;
  json& rep = out.report;
  rep["tool"] = kToolName;
  rep["version"] = kToolVersion;
  rep["schema_version"] = kSchemaVersion;
  rep["command"] = command_json(req);
  rep["caps"] = caps_json(req);
  rep["status"] = "ok";
  json body;
  try {
    Session s = load_session(session_text, req.limits);
    if (req.command == "check")
      body = run_check(req, s);
    else if (req.command == "wn")
      body = run_wn(req, s);
    else if (req.command == "factor")
      body = run_factor(req, s);
    else if (req.command == "perfection")
      body = run_perfection(req, s);
    else if (req.command == "kollar")
      body = run_kollar(req, s);
    else if (req.command == "twist")
      body = run_twist(req, s);
    else if (req.command == "gb")
      body = run_gb(req, s);
    else if (req.command == "oracle")
      body = run_oracle(req, s);
    else
      throw ParseError("unknown command '" + req.command + "'");
  } catch (const ParseError& e) {
    out.exit_code = kExitParse;
    rep["status"] = "parse_error";
    body = json::object();
    body["error"] = error_json("parse_error", e.what());
    if (e.line()) {
      body["error"]["line"] = e.line();
      body["error"]["column"] = e.column();
    }
  } catch (const IllDefinedMap& e) {
    out.exit_code = kExitParse;
    rep["status"] = "parse_error";
    body = json::object();
    body["error"] = error_json("ill_defined_map", e.what());
    body["error"]["relation"] = e.relation();
  } catch (const ScopeError& e) {
    out.exit_code = kExitScope;
    rep["status"] = "scope_error";
    body = json::object();
    body["error"] = error_json("scope_error", e.what());
  } catch (const NotCertified& e) {
    out.exit_code = kExitScope;
    rep["status"] = "scope_error";
    body = json::object();
    body["error"] = error_json("not_certified", e.what());
  } catch (const CapExceeded& e) {
    out.exit_code = kExitCap;
    rep["status"] = "cap_exceeded";
    body = json::object();
    body["error"] = error_json("cap_exceeded", e.what());
  } catch (const std::exception& e) {
    out.exit_code = kExitInternal;
    rep["status"] = "internal_error";
    body = json::object();
    body["error"] = error_json("internal_error", e.what());
  }
  for (auto& [k, v] : body.items()) rep[k] = v;
  if (req.timings) {
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    rep["timings"]["total_ms"] = ms;
  }
  return out;
}

std::string render_text(const json& report) {
  std::string out;
  out += std::string(report["tool"]) + " " + std::string(report["version"]) + ": " +
         std::string(report["command"]["name"]);
  for (const auto& a : report["command"]["args"]) out += " " + std::string(a);
  out += "\n";
  if (report.contains("error")) {
    out += "error (" + std::string(report["error"]["kind"]) + "): " + std::string(report["error"]["message"]) + "\n";
    return out;
  }
  if (report.contains("verdicts")) {
    for (const auto& [k, v] : report["verdicts"].items()) {
      std::string shown = v.is_null() ? "unknown" : (v.get<bool>() ? "true" : "false");
      out += "  " + k + ": " + shown;
      if (report["reasons"].contains(k)) out += "  (" + std::string(report["reasons"][k]) + ")";
      out += "\n";
    }
  }
  if (report.contains("result")) {
    for (const auto& [k, v] : report["result"].items()) {
      if (k == "session") continue;
      out += "  " + k + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    }
    if (report["result"].contains("session")) out += "\n" + std::string(report["result"]["session"]);
  }
  return out;
}

}  // namespace uhom::cli
