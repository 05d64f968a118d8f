#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uhom/algebra.hpp"

namespace uhom {

/// 1-based line and column of a node; `length` counts characters on that line.
struct Span {
  std::size_t line = 0;
  std::size_t column = 0;
  std::size_t length = 0;
};

struct FieldDecl {
  Field field;
  Span span;
};

struct RingDecl {
  std::string name;
  std::vector<std::string> variables;
  std::vector<Polynomial> relations;  // canonical, in `ring`
  RingPtr ring;                       // grevlex on `variables`
  Span span;
  std::vector<Span> relation_spans;
};

struct MapDecl {
  std::string name;
  std::string source, target;
  std::vector<Polynomial> images;  // in the target's ring, ordered like the source's variables
  Span span;
  std::vector<Span> image_spans;
};

/// Declarations in file order. Equality ignores spans.
struct SessionAst {
  std::optional<FieldDecl> field;
  std::vector<RingDecl> rings;
  std::vector<MapDecl> maps;

  const RingDecl* find_ring(std::string_view name) const;
  const MapDecl* find_map(std::string_view name) const;
};

bool operator==(const SessionAst& a, const SessionAst& b);

/// Syntax, name resolution and arity checks. Throws ParseError with the
/// offending line and column.
SessionAst parse_session(std::string_view text);

/// Canonical rendering in the input grammar: field, rings, then maps.
std::string print_session(const SessionAst& ast);

std::string print_ring(std::string_view name, const PresentedAlgebra& a);
std::string print_map(std::string_view name, std::string_view source, std::string_view target, const AlgebraMap& f);

/// Elaborated session: every ring presented and every map checked for
/// well-definedness. An ill-defined map raises IllDefinedMap naming its line.
class Session {
 public:
  explicit Session(SessionAst ast, const Limits& limits = {});

  const SessionAst& ast() const { return ast_; }
  const Field& field() const;
  const PresentedAlgebra& ring(std::string_view name) const;
  const AlgebraMap& map(std::string_view name) const;
  bool has_ring(std::string_view name) const;
  bool has_map(std::string_view name) const;

 private:
  SessionAst ast_;
  std::map<std::string, PresentedAlgebra, std::less<>> rings_;
  std::map<std::string, AlgebraMap, std::less<>> maps_;
};

Session load_session(std::string_view text, const Limits& limits = {});

}  // namespace uhom
