#ifndef REDNUM_HILBERT_HPP
#define REDNUM_HILBERT_HPP

#include "rednum/groebner.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <vector>

namespace rednum {

using BigInt = boost::multiprecision::cpp_int;

/// Hilbert series numerator(t) / (1 - t)^n with exact integer coefficients.
class HilbertSeries {
public:
  HilbertSeries(std::vector<BigInt> numerator, int denominator_exponent);
  static HilbertSeries zero(int denominator_exponent) { return {{}, denominator_exponent}; }

  /// Coefficients by ascending power of t; empty for the zero series.
  const std::vector<BigInt>& numerator() const { return numerator_; }
  int denominator_exponent() const { return n_; }
  bool is_zero() const { return numerator_.empty(); }

  /// Order of the pole at t = 1; 0 for series that are polynomials
  /// (including the zero series).
  int pole_order() const { return pole_order_; }
  /// Numerator after cancelling every (1 - t) factor it shares with the
  /// denominator; the series equals reduced() / (1 - t)^pole_order().
  const std::vector<BigInt>& reduced() const { return reduced_; }

  HilbertSeries operator+(const HilbertSeries& o) const;
  HilbertSeries operator-(const HilbertSeries& o) const;
  /// Multiplication by t^k.
  HilbertSeries shifted(int k) const;

  bool operator==(const HilbertSeries& o) const;

private:
  std::vector<BigInt> numerator_;
  int n_;
  int pole_order_ = 0;
  std::vector<BigInt> reduced_;
};

class InfiniteAInvariant : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Module (U + K) / K over R = K[x_1..x_n]. The cyclic module R/K is the
/// case U = R.
class Subquotient {
public:
  Subquotient(GradedIdeal generators, GradedIdeal relations);
  static Subquotient quotient_ring(GradedIdeal relations);

  const GradedIdeal& generators() const { return gens_; }
  const GradedIdeal& relations() const { return rels_; }
  const Ring& ring() const { return rels_.ring(); }
  bool is_cyclic() const { return cyclic_; }

private:
  GradedIdeal gens_;
  GradedIdeal rels_;
  bool cyclic_;
};

HilbertSeries hs_monomial(const MonomialIdeal& ideal);
HilbertSeries hs_quotient_ring(const GradedIdeal& relations);
HilbertSeries hs_subquotient(const Subquotient& m);

/// Dimension of the degree-j component.
BigInt hf_eval(const HilbertSeries& hs, std::int64_t j);

/// Krull dimension; nullopt for the zero module.
std::optional<int> krull_dim(const HilbertSeries& hs);

/// Largest degree of a nonzero component; nullopt stands for -infinity
/// (zero module). Throws InfiniteAInvariant for positive-dimensional series.
std::optional<std::int64_t> a_invariant(const HilbertSeries& hs);

}  // namespace rednum

#endif  // REDNUM_HILBERT_HPP
