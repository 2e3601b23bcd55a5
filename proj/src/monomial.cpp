#include "rednum/monomial.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace rednum {

Monomial::Monomial(std::initializer_list<Exponent> exps)
    : exps_(exps.begin(), exps.end()),
      degree_(std::accumulate(exps.begin(), exps.end(), Exponent{0})) {
  for (Exponent e : exps_) {
    if (e < 0) throw std::invalid_argument("negative exponent");
  }
}

Monomial::Monomial(const std::vector<Exponent>& exps)
    : exps_(exps.begin(), exps.end()),
      degree_(std::accumulate(exps.begin(), exps.end(), Exponent{0})) {
  for (Exponent e : exps_) {
    if (e < 0) throw std::invalid_argument("negative exponent");
  }
}

Monomial Monomial::variable(std::size_t nvars, std::size_t index) {
  Monomial m(nvars);
  m.set(index, 1);
  return m;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  }
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  assert(a.nvars() == b.nvars());
  Monomial r = a;
  for (std::size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] += b.exps_[i];
  r.degree_ += b.degree_;
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  assert(b.divides(a));
  Monomial r = a;
  for (std::size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] -= b.exps_[i];
  r.degree_ -= b.degree_;
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  r.degree_ = 0;
  for (std::size_t i = 0; i < r.exps_.size(); ++i) {
    r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    r.degree_ += r.exps_[i];
  }
  return r;
}

Monomial colon(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  r.degree_ = 0;
  for (std::size_t i = 0; i < r.exps_.size(); ++i) {
    r.exps_[i] = std::max(a.exps_[i] - b.exps_[i], 0);
    r.degree_ += r.exps_[i];
  }
  return r;
}

int degrevlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (std::size_t i = a.nvars(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

std::size_t MonomialHash::operator()(const Monomial& m) const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (Exponent e : m.exponents()) {
    h ^= static_cast<std::size_t>(e) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

void enumerate(std::size_t var, Exponent remaining, Monomial& cur,
               std::vector<Monomial>& out) {
  if (var + 1 == cur.nvars()) {
    cur.set(var, remaining);
    out.push_back(cur);
    cur.set(var, 0);
    return;
  }
  for (Exponent e = remaining; e >= 0; --e) {
    cur.set(var, e);
    enumerate(var + 1, remaining - e, cur, out);
  }
  cur.set(var, 0);
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t nvars, Exponent degree) {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back(0);
    return out;
  }
  Monomial cur(nvars);
  enumerate(0, degree, cur, out);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
    return degrevlex_compare(a, b) > 0;
  });
  return out;
}

std::uint64_t count_monomials(std::size_t nvars, Exponent degree) {
  if (degree < 0) return 0;
  if (nvars == 0) return degree == 0 ? 1 : 0;
  // C(n - 1 + d, n - 1), computed incrementally to stay exact
  std::uint64_t r = 1;
  for (std::uint64_t k = 1; k < nvars; ++k) {
    r = r * (static_cast<std::uint64_t>(degree) + k) / k;
  }
  return r;
}

}  // namespace rednum
