#include "rednum/koszul.hpp"

#include <algorithm>
#include <unordered_map>

namespace rednum {

namespace {

using MonomialIndex = std::unordered_map<Monomial, std::size_t, MonomialHash>;

MonomialIndex index_of(const std::vector<Monomial>& monos) {
  MonomialIndex idx;
  for (std::size_t i = 0; i < monos.size(); ++i) idx.emplace(monos[i], i);
  return idx;
}

// f must already be in normal form with respect to the relations.
std::vector<Coeff> to_vector(const Polynomial& f, const MonomialIndex& idx, std::size_t size) {
  std::vector<Coeff> v(size, 0);
  for (const auto& t : f.terms()) v[idx.at(t.mono)] = t.coef;
  return v;
}

RowEchelon identity(std::size_t n) {
  RowEchelon e;
  e.rows = DenseMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    e.rows(i, i) = 1;
    e.pivots.push_back(i);
  }
  return e;
}

GradedComponentBasis build_component(const Subquotient& m, std::span<const Polynomial> gb, Exponent j) {
  const Ring& ring = m.ring();
  GradedComponentBasis out;
  out.degree = j;
  if (j < 0) return out;
  out.standard = initial_ideal(ring.nvars(), gb).standard_monomials(j);
  const std::size_t dim = out.standard.size();
  if (m.is_cyclic()) {
    out.span = identity(dim);
    return out;
  }
  MonomialIndex idx = index_of(out.standard);
  DenseMatrix rows(0, dim);
  for (const auto& u : m.generators().generators()) {
    Exponent du = *u.degree();
    if (du > j) continue;
    for (const auto& mono : monomials_of_degree(ring.nvars(), j - du)) {
      Polynomial nf = normal_form(ring, ring.mul_term(u, mono, 1), gb);
      if (!nf.is_zero()) rows.append_row(to_vector(nf, idx, dim));
    }
  }
  out.span = row_echelon(ring.field(), std::move(rows));
  return out;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t t = i; t < k; ++t) cur[t] = cur[t - 1] + 1;
  }
  return out;
}

std::uint64_t mask_of(const std::vector<std::size_t>& s) {
  std::uint64_t m = 0;
  for (auto v : s) m |= std::uint64_t{1} << v;
  return m;
}

}  // namespace

GradedComponentBasis component_basis(const Subquotient& m, Exponent j) {
  return build_component(m, m.relations().groebner_basis(), j);
}

KoszulComplex::KoszulComplex(const Subquotient& m)
    : m_(m), n_(m.ring().nvars()), gb_(m.relations().groebner_basis()) {
  if (n_ > 63) throw std::invalid_argument("Koszul complex supports at most 63 variables");
}

const GradedComponentBasis& KoszulComplex::component(Exponent j) {
  auto it = components_.find(j);
  if (it == components_.end()) it = components_.emplace(j, build_component(m_, gb_, j)).first;
  return it->second;
}

std::size_t KoszulComplex::component_dim(Exponent j) { return component(j).size(); }

const DenseMatrix& KoszulComplex::multiplication(std::size_t k, Exponent j) {
  auto key = std::make_pair(k, j);
  auto it = mult_.find(key);
  if (it != mult_.end()) return it->second;

  const Ring& ring = m_.ring();
  const GradedComponentBasis& src = component(j);
  const GradedComponentBasis& dst = component(j + 1);
  DenseMatrix mat(dst.size(), src.size());
  MonomialIndex idx = index_of(dst.standard);
  Monomial xk = Monomial::variable(n_, k);
  std::vector<Coeff> coords;
  for (std::size_t b = 0; b < src.size(); ++b) {
    std::vector<Term> terms;
    for (std::size_t c = 0; c < src.standard.size(); ++c) {
      Coeff v = src.span.rows(b, c);
      if (v != 0) terms.push_back(Term{src.standard[c] * xk, v});
    }
    Polynomial image = normal_form(ring, ring.from_terms(std::move(terms)), gb_);
    bool inside = dst.span.coordinates(ring.field(), to_vector(image, idx, dst.standard.size()), coords);
    if (!inside) throw std::logic_error("multiplication left the submodule");
    for (std::size_t r = 0; r < coords.size(); ++r) mat(r, b) = coords[r];
  }
  return mult_.emplace(key, std::move(mat)).first->second;
}

DenseMatrix KoszulComplex::differential(int i, Exponent j) {
  if (i <= 0 || static_cast<std::size_t>(i) > n_) return {};
  const std::size_t hs = component_dim(j - i);
  const std::size_t ht = component_dim(j - i + 1);
  auto src = subsets(n_, static_cast<std::size_t>(i));
  auto dst = subsets(n_, static_cast<std::size_t>(i - 1));
  std::unordered_map<std::uint64_t, std::size_t> dst_index;
  for (std::size_t t = 0; t < dst.size(); ++t) dst_index.emplace(mask_of(dst[t]), t);

  const PrimeField& field = m_.ring().field();
  DenseMatrix d(dst.size() * ht, src.size() * hs);
  if (hs == 0 || ht == 0) return d;
  for (std::size_t s = 0; s < src.size(); ++s) {
    const auto& set = src[s];
    const std::uint64_t mask = mask_of(set);
    for (std::size_t t = 0; t < set.size(); ++t) {
      const std::size_t var = set[t];
      const std::size_t row_block = dst_index.at(mask & ~(std::uint64_t{1} << var)) * ht;
      const DenseMatrix& mul = multiplication(var, j - i);
      const bool negative = t % 2 == 1;
      for (std::size_t b = 0; b < hs; ++b) {
        for (std::size_t r = 0; r < ht; ++r) {
          Coeff v = mul(r, b);
          if (v == 0) continue;
          d(row_block + r, s * hs + b) = negative ? field.neg(v) : v;
        }
      }
    }
  }
  return d;
}

std::size_t KoszulComplex::differential_rank(int i, Exponent j) {
  DenseMatrix d = differential(i, j);
  if (d.rows() == 0 || d.cols() == 0) return 0;
  return rank(m_.ring().field(), std::move(d));
}

BettiTable koszul_betti(const Subquotient& m, Exponent degree_cap) {
  if (degree_cap < 0) throw std::invalid_argument("degree cap must be non-negative");
  KoszulComplex kc(m);
  const int n = static_cast<int>(kc.nvars());
  BettiTable table;
  table.degree_cap = degree_cap;
  for (Exponent j = 0; j <= degree_cap; ++j) {
    std::vector<std::size_t> ranks(static_cast<std::size_t>(n) + 2, 0);
    for (int i = 1; i <= n; ++i) ranks[static_cast<std::size_t>(i)] = kc.differential_rank(i, j);
    for (int i = 0; i <= n; ++i) {
      const std::size_t chain = subsets(kc.nvars(), static_cast<std::size_t>(i)).size() * kc.component_dim(j - i);
      const std::size_t beta = chain - ranks[static_cast<std::size_t>(i)] - ranks[static_cast<std::size_t>(i) + 1];
      if (beta != 0) table.entries[{i, j}] = beta;
    }
  }
  return table;
}

Exponent certifying_degree_cap(const Subquotient& m) {
  Exponent d = m.relations().max_generator_degree();
  if (!m.is_cyclic()) d = std::max(d, m.generators().max_generator_degree());
  return d * static_cast<Exponent>(m.ring().nvars() + 1);
}

Regularity regularity(const Subquotient& m, Exponent degree_cap) {
  HilbertSeries hs = hs_subquotient(m);
  if (hs.is_zero()) return {std::nullopt, true};
  if (hs.pole_order() == 0) return {a_invariant(hs), true};
  BettiTable table = koszul_betti(m, degree_cap);
  Regularity out;
  for (const auto& [key, beta] : table.entries) {
    std::int64_t v = key.second - key.first;
    if (!out.value || v > *out.value) out.value = v;
  }
  out.certified = degree_cap >= certifying_degree_cap(m);
  return out;
}

}  // namespace rednum
