#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace uhom {

/// Exponent vector of fixed arity.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t arity) : exp_(arity, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps);

  std::size_t arity() const noexcept { return exp_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exp_[i]; }
  std::uint64_t degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return degree_ == 0; }
  const std::vector<std::uint32_t>& exponents() const noexcept { return exp_; }

  void set(std::size_t i, std::uint32_t e);

  Monomial operator*(const Monomial& o) const;
  /// Requires o | *this.
  Monomial operator/(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const;
  bool coprime(const Monomial& o) const;
  Monomial pow(std::uint64_t e) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exp_ == b.exp_; }

 private:
  std::vector<std::uint32_t> exp_;
  std::uint64_t degree_ = 0;
};

/// Term orders. Block compares graded reverse lexicographic order block by
/// block (first block most significant); blocks of size one give lex.
class MonomialOrder {
 public:
  enum class Kind { Lex, GRevLex, Block };

  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, {}); }
  static MonomialOrder grevlex() { return MonomialOrder(Kind::GRevLex, {}); }
  /// Sizes must sum to the ring arity.
  static MonomialOrder block(std::vector<std::size_t> sizes) { return MonomialOrder(Kind::Block, std::move(sizes)); }
  /// Two-block elimination order: the first `front` variables are eliminated.
  static MonomialOrder elimination(std::size_t front, std::size_t total);

  Kind kind() const noexcept { return kind_; }
  const std::vector<std::size_t>& blocks() const noexcept { return blocks_; }

  /// Returns -1, 0 or 1.
  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  std::string to_string() const;

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  MonomialOrder(Kind k, std::vector<std::size_t> b) : kind_(k), blocks_(std::move(b)) {}
  Kind kind_ = Kind::GRevLex;
  std::vector<std::size_t> blocks_;
};

}  // namespace uhom
