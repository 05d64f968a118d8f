#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "uhom/polynomial.hpp"

namespace uhom {

/// Resource caps shared by every computation. Exceeding one raises CapExceeded.
struct Limits {
  std::size_t max_pairs = 200000;     // S-pairs processed per Groebner basis
  std::uint64_t max_degree = 2048;    // total degree of any S-pair lcm
  std::uint32_t nilpotency_cap = 64;  // largest exponent searched for nilpotency witnesses
  std::uint64_t enum_cap = 1u << 16;  // largest finite ring the oracle enumerates
  std::optional<std::chrono::steady_clock::time_point> deadline;

  void check_deadline() const;
};

/// An ideal of a polynomial ring; optionally carries its reduced Groebner basis
/// with respect to the ring's order. Immutable.
class Ideal {
 public:
  explicit Ideal(RingPtr ring, std::vector<Polynomial> generators = {});

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& generators() const noexcept { return gens_; }
  bool has_basis() const noexcept { return basis_.has_value(); }
  /// Reduced monic basis, ascending by leading monomial. Throws if absent.
  const std::vector<Polynomial>& basis() const;
  bool is_unit() const;
  bool is_zero() const;

  std::string to_string() const;

 private:
  friend Ideal groebner_basis(const Ideal&, const Limits&);
  friend Ideal ideal_from_basis(RingPtr, std::vector<Polynomial>);
  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::optional<std::vector<Polynomial>> basis_;
};

/// Reduced Groebner basis in the ring's own order (Buchberger with the
/// Gebauer-Moeller criteria and the normal selection strategy).
Ideal groebner_basis(const Ideal& ideal, const Limits& limits = {});
/// Same ideal moved to the ring with `order`, with its basis there.
Ideal groebner_basis(const Ideal& ideal, const MonomialOrder& order, const Limits& limits = {});
/// Wraps a list already known to be a reduced basis (internal use by elimination).
Ideal ideal_from_basis(RingPtr ring, std::vector<Polynomial> basis);

std::vector<Polynomial> reduced_groebner_basis(std::vector<Polynomial> generators, const Limits& limits = {});

/// Unique remainder of `p` modulo a basis-carrying ideal.
Polynomial normal_form(const Polynomial& p, const Ideal& with_basis);
Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& reduced_basis);

bool ideal_member(const Polynomial& p, const Ideal& ideal, const Limits& limits = {});
/// Every generator of `small` lies in `big`.
bool ideal_contains(const Ideal& big, const Ideal& small, const Limits& limits = {});
bool same_ideal(const Ideal& a, const Ideal& b, const Limits& limits = {});
Ideal ideal_sum(const Ideal& a, const Ideal& b);
Ideal ideal_sum(const Ideal& a, const std::vector<Polynomial>& extra);

/// Ensures the basis is present (computes it when missing).
Ideal with_basis(const Ideal& ideal, const Limits& limits = {});

}  // namespace uhom
