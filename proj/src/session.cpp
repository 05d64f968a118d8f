#include "uhom/session.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "uhom/errors.hpp"

namespace uhom {

namespace {

[[noreturn]] void fail(const std::string& msg, std::size_t line, std::size_t column) {
  throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg, line, column);
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

// Cursor over one line; columns are 1-based.
class LineCursor {
 public:
  LineCursor(std::string_view text, std::size_t line) : s_(text), line_(line) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return pos_ + 1; }
  std::size_t next_column() {
    skip_space();
    return column();
  }
  bool at_end() {
    skip_space();
    return pos_ >= s_.size();
  }
  [[noreturn]] void error(const std::string& msg) const { fail(msg, line_, column()); }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(std::string_view tok) {
    skip_space();
    if (s_.substr(pos_, tok.size()) != tok) return false;
    pos_ += tok.size();
    return true;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) error("expected '" + std::string(tok) + "'");
  }
  std::string identifier(const char* what) {
    skip_space();
    if (pos_ >= s_.size() || !ident_start(s_[pos_])) error(std::string("expected ") + what);
    std::size_t start = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }
  std::string number() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error("expected a prime");
    return std::string(s_.substr(start, pos_ - start));
  }
  // Text up to the matching closing bracket (no nesting of `close` expected
  // beyond parentheses inside polynomials); the cursor ends after `close`.
  std::pair<std::string_view, std::size_t> until_close(char open, char close) {
    skip_space();
    std::size_t start = pos_;
    int depth = 0;
    for (; pos_ < s_.size(); ++pos_) {
      char c = s_[pos_];
      if (c == open) ++depth;
      if (c == close) {
        if (depth == 0) {
          auto body = s_.substr(start, pos_ - start);
          ++pos_;
          return {body, start + 1};
        }
        --depth;
      }
    }
    error(std::string("missing '") + close + "'");
  }

 private:
  std::string_view s_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

struct Piece {
  std::string_view text;
  std::size_t column;  // of the first non-space character
};

std::string_view trim(std::string_view s, std::size_t& column) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
    ++column;
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits at top-level `sep`; an all-blank body gives no pieces.
std::vector<Piece> split(std::string_view body, std::size_t column, char sep, std::size_t line) {
  std::vector<Piece> out;
  std::size_t col = column;
  std::size_t trimmed_col = column;
  if (trim(body, trimmed_col).empty()) return out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= body.size(); ++i) {
    if (i < body.size() && body[i] == '(') ++depth;
    if (i < body.size() && body[i] == ')') --depth;
    if (i == body.size() || (body[i] == sep && depth == 0)) {
      std::size_t c = col + start;
      auto t = trim(body.substr(start, i - start), c);
      if (t.empty()) fail(std::string("empty entry before '") + sep + "'", line, c);
      out.push_back({t, c});
      start = i + 1;
    }
  }
  return out;
}

Polynomial parse_poly(const RingPtr& ring, const Piece& piece, std::size_t line) {
  try {
    return Polynomial::parse(ring, piece.text);
  } catch (const ParseError& e) {
    std::string msg = e.what();
    fail(msg, line, piece.column + (e.column() ? e.column() - 1 : 0));
  }
}

struct Parser {
  SessionAst ast;
  std::set<std::string, std::less<>> names;

  void declare(const std::string& name, std::size_t line, std::size_t column) {
    if (!names.insert(name).second) fail("duplicate name '" + name + "'", line, column);
  }

  void field_line(LineCursor& c, Span span) {
    if (ast.field) c.error("field declared twice");
    if (!ast.rings.empty()) c.error("field must precede ring declarations");
    std::size_t col = c.next_column();
    std::string kind = c.identifier("'Q' or 'F <prime>'");
    if (kind == "Q") {
      ast.field = FieldDecl{Field::rationals(), span};
    } else if (kind == "F") {
      col = c.next_column();
      std::string p = c.number();
      try {
        ast.field = FieldDecl{Field::prime(std::stoull(p)), span};
      } catch (const ScopeError& e) {
        throw ScopeError("line " + std::to_string(span.line) + ", column " + std::to_string(col) + ": " + e.what());
      } catch (const std::out_of_range&) {
        fail("prime out of range", span.line, col);
      }
    } else {
      fail("unknown field '" + kind + "'", span.line, col);
    }
  }

  void ring_line(LineCursor& c, Span span) {
    if (!ast.field) c.error("ring declared before the field");
    RingDecl r;
    r.span = span;
    std::size_t col = c.next_column();
    r.name = c.identifier("ring name");
    declare(r.name, span.line, col);
    c.expect("=");
    c.expect("[");
    auto [vbody, vcol] = c.until_close('[', ']');
    for (const auto& piece : split(vbody, vcol, ',', span.line)) {
      std::string v(piece.text);
      if (!ident_start(v[0]) || !std::all_of(v.begin(), v.end(), ident_char))
        fail("invalid variable name '" + v + "'", span.line, piece.column);
      if (std::find(r.variables.begin(), r.variables.end(), v) != r.variables.end())
        fail("duplicate variable '" + v + "'", span.line, piece.column);
      r.variables.push_back(v);
    }
    c.expect("/");
    c.expect("(");
    auto [rbody, rcol] = c.until_close('(', ')');
    r.ring = Ring::make(ast.field->field, r.variables);
    for (const auto& piece : split(rbody, rcol, ';', span.line)) {
      r.relations.push_back(parse_poly(r.ring, piece, span.line));
      r.relation_spans.push_back({span.line, piece.column, piece.text.size()});
    }
    if (!c.at_end()) c.error("unexpected text after ring declaration");
    ast.rings.push_back(std::move(r));
  }

  void map_line(LineCursor& c, Span span) {
    MapDecl m;
    m.span = span;
    std::size_t col = c.next_column();
    m.name = c.identifier("map name");
    declare(m.name, span.line, col);
    c.expect(":");
    col = c.next_column();
    m.source = c.identifier("source ring");
    const RingDecl* src = ast.find_ring(m.source);
    if (!src) fail("undefined ring '" + m.source + "'", span.line, col);
    c.expect("->");
    col = c.next_column();
    m.target = c.identifier("target ring");
    const RingDecl* dst = ast.find_ring(m.target);
    if (!dst) fail("undefined ring '" + m.target + "'", span.line, col);
    c.expect("=");
    c.expect("{");
    std::size_t brace = c.column() - 1;
    auto [body, bcol] = c.until_close('{', '}');
    if (!c.at_end()) c.error("unexpected text after map declaration");
    auto entries = split(body, bcol, ',', span.line);
    std::vector<std::optional<Polynomial>> images(src->variables.size());
    std::vector<Span> spans(src->variables.size());
    for (const auto& e : entries) {
      auto arrow = e.text.find("->");
      if (arrow == std::string_view::npos) fail("expected '<var> -> <poly>'", span.line, e.column);
      std::size_t vc = e.column;
      auto var = trim(e.text.substr(0, arrow), vc);
      auto it = std::find(src->variables.begin(), src->variables.end(), var);
      if (it == src->variables.end())
        fail("'" + std::string(var) + "' is not a variable of " + m.source, span.line, vc);
      auto idx = static_cast<std::size_t>(it - src->variables.begin());
      if (images[idx]) fail("variable '" + std::string(var) + "' assigned twice", span.line, vc);
      std::size_t pc = e.column + arrow + 2;
      auto ptxt = trim(e.text.substr(arrow + 2), pc);
      if (ptxt.empty()) fail("missing image", span.line, pc);
      images[idx] = parse_poly(dst->ring, {ptxt, pc}, span.line);
      spans[idx] = {span.line, pc, ptxt.size()};
    }
    if (entries.size() != src->variables.size())
      fail("arity mismatch: " + m.source + " has " + std::to_string(src->variables.size()) + " variables, map assigns " +
               std::to_string(entries.size()),
           span.line, brace);
    for (auto& img : images) m.images.push_back(std::move(*img));
    m.image_spans = std::move(spans);
    ast.maps.push_back(std::move(m));
  }
};

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::vector<std::string> rendered(const std::vector<Polynomial>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

std::string ring_text(std::string_view name, const std::vector<std::string>& vars, const std::vector<Polynomial>& rels) {
  return "ring " + std::string(name) + " = [" + join(vars, ", ") + "] / (" + join(rendered(rels), "; ") + ")";
}

std::string map_text(std::string_view name, std::string_view src, std::string_view dst,
                     const std::vector<std::string>& vars, const std::vector<Polynomial>& images) {
  std::vector<std::string> entries;
  for (std::size_t i = 0; i < vars.size(); ++i) entries.push_back(vars[i] + " -> " + images[i].to_string());
  std::string body = entries.empty() ? "{}" : "{ " + join(entries, ", ") + " }";
  return "map " + std::string(name) + " : " + std::string(src) + " -> " + std::string(dst) + " = " + body;
}

}  // namespace

const RingDecl* SessionAst::find_ring(std::string_view name) const {
  for (const auto& r : rings)
    if (r.name == name) return &r;
  return nullptr;
}

const MapDecl* SessionAst::find_map(std::string_view name) const {
  for (const auto& m : maps)
    if (m.name == name) return &m;
  return nullptr;
}

bool operator==(const SessionAst& a, const SessionAst& b) {
  if (a.field.has_value() != b.field.has_value()) return false;
  if (a.field && !(a.field->field == b.field->field)) return false;
  if (a.rings.size() != b.rings.size() || a.maps.size() != b.maps.size()) return false;
  for (std::size_t i = 0; i < a.rings.size(); ++i) {
    const auto &x = a.rings[i], &y = b.rings[i];
    if (x.name != y.name || x.variables != y.variables || x.relations != y.relations) return false;
  }
  for (std::size_t i = 0; i < a.maps.size(); ++i) {
    const auto &x = a.maps[i], &y = b.maps[i];
    if (x.name != y.name || x.source != y.source || x.target != y.target || x.images != y.images) return false;
  }
  return true;
}

SessionAst parse_session(std::string_view text) {
  Parser p;
  std::size_t line_no = 0;
  while (!text.empty() || line_no == 0) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    LineCursor c(line, line_no);
    if (c.at_end()) {
      if (text.empty()) break;
      continue;
    }
    Span span{line_no, c.column(), line.size() - c.column() + 1};
    std::string kw = c.identifier("'field', 'ring' or 'map'");
    if (kw == "field")
      p.field_line(c, span);
    else if (kw == "ring")
      p.ring_line(c, span);
    else if (kw == "map")
      p.map_line(c, span);
    else
      fail("unknown declaration '" + kw + "'", line_no, span.column);
    if (kw == "field" && !c.at_end()) c.error("unexpected text after field declaration");
  }
  if (!p.ast.field) fail("missing field declaration", 1, 1);
  return std::move(p.ast);
}

std::string print_session(const SessionAst& ast) {
  std::string out;
  if (ast.field) out += "field " + ast.field->field.to_string() + "\n";
  for (const auto& r : ast.rings) out += ring_text(r.name, r.variables, r.relations) + "\n";
  for (const auto& m : ast.maps) out += map_text(m.name, m.source, m.target, ast.find_ring(m.source)->variables, m.images) + "\n";
  return out;
}

std::string print_ring(std::string_view name, const PresentedAlgebra& a) {
  return ring_text(name, a.variables(), a.relations());
}

std::string print_map(std::string_view name, std::string_view source, std::string_view target, const AlgebraMap& f) {
  return map_text(name, source, target, f.source().variables(), f.images());
}

Session::Session(SessionAst ast, const Limits& limits) : ast_(std::move(ast)) {
  for (const auto& r : ast_.rings) rings_.emplace(r.name, PresentedAlgebra(Ideal(r.ring, r.relations), limits));
  for (const auto& m : ast_.maps) {
    try {
      maps_.emplace(m.name, AlgebraMap(ring(m.source), ring(m.target), m.images));
    } catch (const IllDefinedMap& e) {
      throw IllDefinedMap("line " + std::to_string(m.span.line) + ": map " + m.name + " is ill-defined: relation " +
                              e.relation() + " of " + m.source + " does not map to zero in " + m.target,
                          e.relation());
    }
  }
}

const Field& Session::field() const { return ast_.field->field; }

const PresentedAlgebra& Session::ring(std::string_view name) const {
  auto it = rings_.find(name);
  if (it == rings_.end()) throw ScopeError("no ring named '" + std::string(name) + "'");
  return it->second;
}

const AlgebraMap& Session::map(std::string_view name) const {
  auto it = maps_.find(name);
  if (it == maps_.end()) throw ScopeError("no map named '" + std::string(name) + "'");
  return it->second;
}

bool Session::has_ring(std::string_view name) const { return rings_.find(name) != rings_.end(); }
bool Session::has_map(std::string_view name) const { return maps_.find(name) != maps_.end(); }

Session load_session(std::string_view text, const Limits& limits) { return Session(parse_session(text), limits); }

}  // namespace uhom
