#include "rednum/hilbert.hpp"

#include <algorithm>
#include <string>

namespace rednum {

namespace {

using TPoly = std::vector<BigInt>;

void trim(TPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

TPoly add(const TPoly& a, const TPoly& b) {
  TPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

TPoly mul(const TPoly& a, const TPoly& b) {
  if (a.empty() || b.empty()) return {};
  TPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

TPoly shift(const TPoly& a, std::size_t k) {
  if (a.empty()) return {};
  TPoly r(k, 0);
  r.insert(r.end(), a.begin(), a.end());
  return r;
}

// 1 - t^d
TPoly one_minus_power(std::size_t d) {
  TPoly r(d + 1, 0);
  r[0] += 1;
  r[d] -= 1;
  trim(r);
  return r;
}

// Divides by (1 - t) when t = 1 is a root.
bool divide_one_minus_t(const TPoly& p, TPoly& q) {
  BigInt sum = 0;
  for (const auto& c : p) sum += c;
  if (sum != 0 || p.empty()) return false;
  q.assign(p.size() - 1, 0);
  BigInt acc = 0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    acc += p[i];
    q[i] = acc;
  }
  trim(q);
  return true;
}

// Numerator of HS(R / I) over (1 - t)^n, by pivot recursion
// HS(I) = HS(I + (v)) + t^deg(v) HS(I : v).
TPoly kpoly(std::vector<Monomial> gens, std::size_t nvars) {
  MonomialIdeal ideal(nvars, std::move(gens));
  const auto& g = ideal.generators();
  if (g.empty()) return {1};
  if (g.front().is_one()) return {};

  // Generators coprime to every other generator split off as factors.
  TPoly factor{1};
  std::vector<Monomial> rest;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool isolated = true;
    for (std::size_t j = 0; j < g.size() && isolated; ++j) {
      if (j != i && !g[i].coprime(g[j])) isolated = false;
    }
    if (isolated) {
      factor = mul(factor, one_minus_power(static_cast<std::size_t>(g[i].degree())));
    } else {
      rest.push_back(g[i]);
    }
  }
  if (rest.empty()) return factor;

  // Pivot on the variable occurring in most generators.
  std::size_t best = 0;
  std::size_t best_count = 0;
  for (std::size_t k = 0; k < nvars; ++k) {
    std::size_t count = 0;
    for (const auto& m : rest) count += m[k] > 0 ? 1 : 0;
    if (count > best_count) {
      best_count = count;
      best = k;
    }
  }
  std::vector<Exponent> exps;
  for (const auto& m : rest) {
    if (m[best] > 0) exps.push_back(m[best]);
  }
  std::sort(exps.begin(), exps.end());
  Monomial pivot(nvars);
  pivot.set(best, exps[exps.size() / 2]);
  MonomialIdeal rest_ideal(nvars, rest);
  if (rest_ideal.contains(pivot)) pivot.set(best, exps.front());

  std::vector<Monomial> with_pivot = rest;
  with_pivot.push_back(pivot);
  std::vector<Monomial> quotient;
  quotient.reserve(rest.size());
  for (const auto& m : rest) quotient.push_back(colon(m, pivot));

  TPoly a = kpoly(std::move(with_pivot), nvars);
  TPoly b = shift(kpoly(std::move(quotient), nvars), static_cast<std::size_t>(pivot.degree()));
  return mul(factor, add(a, b));
}

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < k) return 0;
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

}  // namespace

HilbertSeries::HilbertSeries(std::vector<BigInt> numerator, int denominator_exponent)
    : numerator_(std::move(numerator)), n_(denominator_exponent) {
  if (n_ < 0) throw std::invalid_argument("negative denominator exponent");
  trim(numerator_);
  reduced_ = numerator_;
  pole_order_ = n_;
  TPoly q;
  while (pole_order_ > 0 && divide_one_minus_t(reduced_, q)) {
    reduced_ = std::move(q);
    --pole_order_;
  }
  if (numerator_.empty()) pole_order_ = 0;
}

HilbertSeries HilbertSeries::operator+(const HilbertSeries& o) const {
  if (n_ != o.n_) throw std::invalid_argument("series over different denominators");
  return {add(numerator_, o.numerator_), n_};
}

HilbertSeries HilbertSeries::operator-(const HilbertSeries& o) const {
  if (n_ != o.n_) throw std::invalid_argument("series over different denominators");
  TPoly neg = o.numerator_;
  for (auto& c : neg) c = -c;
  return {add(numerator_, neg), n_};
}

HilbertSeries HilbertSeries::shifted(int k) const {
  if (k < 0) throw std::invalid_argument("negative shift");
  return {shift(numerator_, static_cast<std::size_t>(k)), n_};
}

bool HilbertSeries::operator==(const HilbertSeries& o) const {
  return n_ == o.n_ && numerator_ == o.numerator_;
}

Subquotient::Subquotient(GradedIdeal generators, GradedIdeal relations)
    : gens_(std::move(generators)), rels_(std::move(relations)) {
  if (!(gens_.ring() == rels_.ring())) {
    throw std::invalid_argument("subquotient ideals over different rings");
  }
  cyclic_ = gens_.is_unit();
}

Subquotient Subquotient::quotient_ring(GradedIdeal relations) {
  GradedIdeal unit = GradedIdeal::unit(relations.ring_ptr());
  return Subquotient(std::move(unit), std::move(relations));
}

HilbertSeries hs_monomial(const MonomialIdeal& ideal) {
  return {kpoly(ideal.generators(), ideal.nvars()), static_cast<int>(ideal.nvars())};
}

HilbertSeries hs_quotient_ring(const GradedIdeal& relations) {
  return hs_monomial(relations.initial());
}

HilbertSeries hs_subquotient(const Subquotient& m) {
  return hs_quotient_ring(m.relations()) - hs_quotient_ring(m.generators() + m.relations());
}

BigInt hf_eval(const HilbertSeries& hs, std::int64_t j) {
  if (j < 0) return 0;
  const auto& num = hs.numerator();
  const std::int64_t n = hs.denominator_exponent();
  BigInt total = 0;
  for (std::size_t k = 0; k < num.size() && static_cast<std::int64_t>(k) <= j; ++k) {
    if (num[k] == 0) continue;
    std::int64_t rest = j - static_cast<std::int64_t>(k);
    // coefficient of t^rest in 1/(1-t)^n
    BigInt c = n == 0 ? BigInt(rest == 0 ? 1 : 0) : binomial(rest + n - 1, n - 1);
    total += num[k] * c;
  }
  return total;
}

std::optional<int> krull_dim(const HilbertSeries& hs) {
  if (hs.is_zero()) return std::nullopt;
  return hs.pole_order();
}

std::optional<std::int64_t> a_invariant(const HilbertSeries& hs) {
  if (hs.is_zero()) return std::nullopt;
  if (hs.pole_order() > 0) {
    throw InfiniteAInvariant("infinite a-invariant: module has Krull dimension " +
                             std::to_string(hs.pole_order()));
  }
  return static_cast<std::int64_t>(hs.reduced().size()) - 1;
}

}  // namespace rednum
