#ifndef REDNUM_POLYNOMIAL_HPP
#define REDNUM_POLYNOMIAL_HPP

#include "rednum/field.hpp"
#include "rednum/monomial.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rednum {

struct Term {
  Monomial mono;
  Coeff coef;

  bool operator==(const Term&) const = default;
};

/// Homogeneous polynomial: terms sorted by descending degrevlex with no zero
/// coefficients. The zero polynomial has no terms and no degree.
class Polynomial {
public:
  Polynomial() = default;

  bool is_zero() const { return terms_.empty(); }
  std::optional<Exponent> degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.front().mono.degree();
  }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  Coeff leading_coeff() const { return terms_.front().coef; }

  /// Coefficient of m, zero when absent.
  Coeff coeff(const Monomial& m) const;

  bool operator==(const Polynomial&) const = default;

private:
  friend class Ring;
  explicit Polynomial(std::vector<Term> terms) : terms_(std::move(terms)) {}
  std::vector<Term> terms_;
};

class DegreeMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// The standard graded ring K[x_1..x_n] over a prime field with degrevlex
/// order. All polynomial arithmetic goes through a Ring so the modulus and
/// variable count are checked in one place.
class Ring {
public:
  Ring(PrimeField field, std::vector<std::string> names);
  Ring(std::uint32_t modulus, std::size_t nvars);

  const PrimeField& field() const { return field_; }
  std::uint32_t modulus() const { return field_.modulus(); }
  std::size_t nvars() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> variable_index(std::string_view name) const;

  Polynomial zero() const { return {}; }
  Polynomial one() const { return constant(1); }
  Polynomial constant(std::int64_t c) const;
  Polynomial variable(std::size_t i) const;
  Polynomial monomial(const Monomial& m, Coeff c = 1) const;
  /// Builds a homogeneous polynomial from arbitrary terms; combines equal
  /// monomials and drops zeros. Throws DegreeMismatch on mixed degrees.
  Polynomial from_terms(std::vector<Term> terms) const;

  Polynomial add(const Polynomial& f, const Polynomial& g) const;
  Polynomial sub(const Polynomial& f, const Polynomial& g) const;
  Polynomial neg(const Polynomial& f) const;
  Polynomial scale(const Polynomial& f, Coeff c) const;
  Polynomial mul(const Polynomial& f, const Polynomial& g) const;
  Polynomial mul_term(const Polynomial& f, const Monomial& m, Coeff c) const;
  /// f - c * m * g, the elementary reduction step.
  Polynomial sub_mul_term(const Polynomial& f, Coeff c, const Monomial& m,
                          const Polynomial& g) const;
  Polynomial pow(const Polynomial& f, unsigned e) const;
  /// Scales to leading coefficient one; zero stays zero.
  Polynomial monic(const Polynomial& f) const;

  std::string to_string(const Polynomial& f) const;
  std::string to_string(const Monomial& m) const;

  bool operator==(const Ring& o) const {
    return field_ == o.field_ && names_ == o.names_;
  }

private:
  void check_arity(const Polynomial& f) const;

  PrimeField field_;
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

}  // namespace rednum

#endif  // REDNUM_POLYNOMIAL_HPP
