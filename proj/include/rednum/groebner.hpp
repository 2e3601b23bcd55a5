#ifndef REDNUM_GROEBNER_HPP
#define REDNUM_GROEBNER_HPP

#include "rednum/polynomial.hpp"

#include <memory>
#include <span>
#include <vector>

namespace rednum {

/// Monomial ideal given by its minimal generators (an antichain under
/// divisibility), sorted ascending in degrevlex.
class MonomialIdeal {
public:
  explicit MonomialIdeal(std::size_t nvars) : nvars_(nvars) {}
  /// Keeps only the minimal elements of gens.
  MonomialIdeal(std::size_t nvars, std::vector<Monomial> gens);

  std::size_t nvars() const { return nvars_; }
  const std::vector<Monomial>& generators() const { return gens_; }
  bool empty() const { return gens_.empty(); }
  bool contains(const Monomial& m) const;

  /// Monomials of degree j outside the ideal, descending degrevlex.
  std::vector<Monomial> standard_monomials(Exponent j) const;

  bool operator==(const MonomialIdeal&) const = default;

private:
  std::size_t nvars_;
  std::vector<Monomial> gens_;
};

/// Remainder of f on division by a Groebner basis with monic elements:
/// no term of the result is divisible by a leading monomial of gb.
Polynomial normal_form(const Ring& ring, const Polynomial& f, std::span<const Polynomial> gb);

/// Reduced degrevlex Groebner basis of homogeneous generators, sorted by
/// ascending leading monomial. Zero generators are ignored; the unit ideal
/// yields {1}.
std::vector<Polynomial> buchberger(const Ring& ring, std::vector<Polynomial> gens);

MonomialIdeal initial_ideal(std::size_t nvars, std::span<const Polynomial> gb);

struct MinimalGenerators {
  std::vector<Polynomial> generators;
  /// Degrees of the minimal generators, ascending.
  std::vector<Exponent> degrees;
};

/// Subset of gens (made monic) minimally generating the same ideal.
MinimalGenerators minimalize(const Ring& ring, std::vector<Polynomial> gens);

/// Homogeneous ideal of a shared ring. Immutable; the Groebner basis and the
/// minimal generating set are computed on first use and shared by copies.
class GradedIdeal {
public:
  GradedIdeal(RingPtr ring, std::vector<Polynomial> gens);

  static GradedIdeal zero(RingPtr ring) { return GradedIdeal(std::move(ring), {}); }
  static GradedIdeal unit(RingPtr ring);

  const Ring& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }

  const std::vector<Polynomial>& groebner_basis() const;
  const MinimalGenerators& minimal() const;
  MonomialIdeal initial() const;

  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const;
  bool contains(const Polynomial& f) const;
  /// Largest generator degree, 0 for the zero ideal.
  Exponent max_generator_degree() const;

private:
  struct Cache;
  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

GradedIdeal operator+(const GradedIdeal& a, const GradedIdeal& b);
GradedIdeal operator*(const GradedIdeal& a, const GradedIdeal& b);

/// Drops generators that are field-linear combinations of same-degree
/// generators listed before them, and makes the rest monic. Keeps products
/// of ideals from accumulating duplicate generators.
std::vector<Polynomial> prune_linearly_dependent(const Ring& ring, std::vector<Polynomial> gens);

}  // namespace rednum

#endif  // REDNUM_GROEBNER_HPP
