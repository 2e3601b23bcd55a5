#ifndef REDNUM_MONOMIAL_HPP
#define REDNUM_MONOMIAL_HPP

#include <boost/container/small_vector.hpp>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace rednum {

using Exponent = std::int32_t;

/// Power product x_1^{e_1} ... x_n^{e_n} with cached total degree.
class Monomial {
public:
  using Storage = boost::container::small_vector<Exponent, 8>;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  Monomial(std::initializer_list<Exponent> exps);
  explicit Monomial(const std::vector<Exponent>& exps);

  static Monomial variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const { return exps_.size(); }
  Exponent degree() const { return degree_; }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  const Storage& exponents() const { return exps_; }

  void set(std::size_t i, Exponent e) {
    degree_ += e - exps_[i];
    exps_[i] = e;
  }

  bool is_one() const { return degree_ == 0; }
  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// Quotient a / b; requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  /// a / gcd(a, b), the generator of (a) : (b).
  friend Monomial colon(const Monomial& a, const Monomial& b);

  bool operator==(const Monomial& o) const {
    return degree_ == o.degree_ && exps_ == o.exps_;
  }

private:
  Storage exps_;
  Exponent degree_ = 0;
};

/// Degree-reverse-lexicographic comparison: negative, zero or positive as
/// a < b, a == b, a > b.
int degrevlex_compare(const Monomial& a, const Monomial& b);

struct DegRevLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return degrevlex_compare(a, b) < 0;
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const;
};

/// All monomials of the given degree in nvars variables, in descending
/// degrevlex order.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, Exponent degree);

/// Number of monomials of the given degree, C(n + d - 1, d).
std::uint64_t count_monomials(std::size_t nvars, Exponent degree);

}  // namespace rednum

#endif  // REDNUM_MONOMIAL_HPP
