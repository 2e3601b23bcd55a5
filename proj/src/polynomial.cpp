#include "rednum/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rednum {

Coeff Polynomial::coeff(const Monomial& m) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), m,
      [](const Term& t, const Monomial& x) { return degrevlex_compare(t.mono, x) > 0; });
  if (it != terms_.end() && it->mono == m) return it->coef;
  return 0;
}

Ring::Ring(PrimeField field, std::vector<std::string> names)
    : field_(field), names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw std::invalid_argument("empty variable name");
    for (std::size_t j = 0; j < i; ++j) {
      if (names_[i] == names_[j]) {
        throw std::invalid_argument("duplicate variable name '" + names_[i] + "'");
      }
    }
  }
}

Ring::Ring(std::uint32_t modulus, std::size_t nvars) : field_(modulus) {
  for (std::size_t i = 1; i <= nvars; ++i) names_.push_back("x" + std::to_string(i));
}

std::optional<std::size_t> Ring::variable_index(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

void Ring::check_arity(const Polynomial& f) const {
  if (!f.is_zero() && f.leading_monomial().nvars() != nvars()) {
    throw std::invalid_argument("polynomial belongs to a ring with a different variable count");
  }
}

Polynomial Ring::constant(std::int64_t c) const {
  Coeff v = field_.from_int(c);
  if (v == 0) return {};
  return Polynomial({Term{Monomial(nvars()), v}});
}

Polynomial Ring::variable(std::size_t i) const {
  if (i >= nvars()) throw std::out_of_range("variable index");
  return Polynomial({Term{Monomial::variable(nvars(), i), 1}});
}

Polynomial Ring::monomial(const Monomial& m, Coeff c) const {
  if (m.nvars() != nvars()) throw std::invalid_argument("monomial arity");
  c %= modulus();
  if (c == 0) return {};
  return Polynomial({Term{m, c}});
}

Polynomial Ring::from_terms(std::vector<Term> terms) const {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return degrevlex_compare(a.mono, b.mono) > 0;
  });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (t.mono.nvars() != nvars()) throw std::invalid_argument("monomial arity");
    Coeff c = t.coef % modulus();
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coef = field_.add(out.back().coef, c);
      if (out.back().coef == 0) out.pop_back();
    } else if (c != 0) {
      out.push_back(Term{std::move(t.mono), c});
    }
  }
  for (const auto& t : out) {
    if (t.mono.degree() != out.front().mono.degree()) {
      throw DegreeMismatch("inhomogeneous polynomial: degrees " +
                           std::to_string(out.front().mono.degree()) + " and " +
                           std::to_string(t.mono.degree()));
    }
  }
  return Polynomial(std::move(out));
}

Polynomial Ring::add(const Polynomial& f, const Polynomial& g) const {
  check_arity(f);
  check_arity(g);
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  if (*f.degree() != *g.degree()) {
    throw DegreeMismatch("adding homogeneous polynomials of degrees " +
                         std::to_string(*f.degree()) + " and " + std::to_string(*g.degree()));
  }
  const auto& a = f.terms();
  const auto& b = g.terms();
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = degrevlex_compare(a[i].mono, b[j].mono);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
    } else {
      Coeff s = field_.add(a[i].coef, b[j].coef);
      if (s != 0) out.push_back(Term{a[i].mono, s});
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), a.begin() + i, a.end());
  out.insert(out.end(), b.begin() + j, b.end());
  return Polynomial(std::move(out));
}

Polynomial Ring::neg(const Polynomial& f) const { return scale(f, modulus() - 1); }

Polynomial Ring::sub(const Polynomial& f, const Polynomial& g) const { return add(f, neg(g)); }

Polynomial Ring::scale(const Polynomial& f, Coeff c) const {
  c %= modulus();
  if (c == 0) return {};
  std::vector<Term> out = f.terms();
  for (auto& t : out) t.coef = field_.mul(t.coef, c);
  return Polynomial(std::move(out));
}

Polynomial Ring::mul_term(const Polynomial& f, const Monomial& m, Coeff c) const {
  c %= modulus();
  if (c == 0 || f.is_zero()) return {};
  std::vector<Term> out;
  out.reserve(f.size());
  // multiplication by a monomial preserves degrevlex order
  for (const auto& t : f.terms()) out.push_back(Term{t.mono * m, field_.mul(t.coef, c)});
  return Polynomial(std::move(out));
}

Polynomial Ring::sub_mul_term(const Polynomial& f, Coeff c, const Monomial& m,
                              const Polynomial& g) const {
  c %= modulus();
  if (c == 0 || g.is_zero()) return f;
  if (f.is_zero()) return mul_term(g, m, field_.neg(c));
  Exponent gd = g.leading_monomial().degree() + m.degree();
  if (gd != *f.degree()) {
    throw DegreeMismatch("reduction step between degrees " + std::to_string(*f.degree()) +
                         " and " + std::to_string(gd));
  }
  const Coeff nc = field_.neg(c);
  const auto& a = f.terms();
  const auto& b = g.terms();
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  Monomial bm;
  bool have_bm = false;
  while (i < a.size() && j < b.size()) {
    if (!have_bm) {
      bm = b[j].mono * m;
      have_bm = true;
    }
    int cmp = degrevlex_compare(a[i].mono, bm);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back(Term{std::move(bm), field_.mul(b[j].coef, nc)});
      ++j;
      have_bm = false;
    } else {
      Coeff s = field_.add(a[i].coef, field_.mul(b[j].coef, nc));
      if (s != 0) out.push_back(Term{a[i].mono, s});
      ++i;
      ++j;
      have_bm = false;
    }
  }
  out.insert(out.end(), a.begin() + i, a.end());
  for (; j < b.size(); ++j) {
    out.push_back(Term{b[j].mono * m, field_.mul(b[j].coef, nc)});
  }
  return Polynomial(std::move(out));
}

Polynomial Ring::mul(const Polynomial& f, const Polynomial& g) const {
  check_arity(f);
  check_arity(g);
  if (f.is_zero() || g.is_zero()) return {};
  const Polynomial& small = f.size() <= g.size() ? f : g;
  const Polynomial& big = f.size() <= g.size() ? g : f;
  Polynomial acc;
  for (const auto& t : small.terms()) {
    Polynomial part = mul_term(big, t.mono, t.coef);
    acc = acc.is_zero() ? std::move(part) : add(acc, part);
  }
  return acc;
}

Polynomial Ring::pow(const Polynomial& f, unsigned e) const {
  Polynomial result = one();
  Polynomial base = f;
  while (e > 0) {
    if (e & 1u) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

Polynomial Ring::monic(const Polynomial& f) const {
  if (f.is_zero() || f.leading_coeff() == 1) return f;
  return scale(f, field_.inv(f.leading_coeff()));
}

std::string Ring::to_string(const Monomial& m) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (m[i] == 0) continue;
    if (!first) os << '*';
    first = false;
    os << names_[i];
    if (m[i] > 1) os << '^' << m[i];
  }
  if (first) os << '1';
  return os.str();
}

std::string Ring::to_string(const Polynomial& f) const {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : f.terms()) {
    std::int64_t c = field_.to_signed(t.coef);
    if (c < 0) {
      os << (first ? "-" : " - ");
      c = -c;
    } else if (!first) {
      os << " + ";
    }
    first = false;
    if (t.mono.is_one()) {
      os << c;
    } else {
      if (c != 1) os << c << '*';
      os << to_string(t.mono);
    }
  }
  return os.str();
}

}  // namespace rednum
