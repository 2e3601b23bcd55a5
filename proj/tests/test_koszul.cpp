#include "doctest.h"
#include "oracle.hpp"
#include "rednum/koszul.hpp"
#include "rednum/parse.hpp"

#include <random>

using namespace rednum;

namespace {

RingPtr make_ring(std::vector<std::string> names) {
  return std::make_shared<const Ring>(PrimeField(32003), std::move(names));
}

GradedIdeal ideal(const RingPtr& r, std::initializer_list<const char*> texts) {
  std::vector<Polynomial> gens;
  for (const char* t : texts) gens.push_back(parse_polynomial(*r, t));
  return GradedIdeal(r, std::move(gens));
}

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

DenseMatrix product(const PrimeField& f, const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = f.add(c(i, j), f.mul(a(i, k), b(k, j)));
    }
  }
  return c;
}

}  // namespace

TEST_CASE("component_basis") {
  auto r = make_ring({"x", "y"});
  Subquotient field = Subquotient::quotient_ring(ideal(r, {"x", "y"}));
  CHECK(component_basis(field, 0).size() == 1);
  CHECK(component_basis(field, 1).size() == 0);

  Subquotient fin = Subquotient::quotient_ring(ideal(r, {"x^2", "x*y", "y^3"}));
  auto c2 = component_basis(fin, 2);
  CHECK(c2.standard == std::vector<Monomial>{Monomial{0, 2}});

  Subquotient shifted(ideal(r, {"x^2"}), ideal(r, {"y"}));
  CHECK(component_basis(shifted, 1).size() == 0);
  auto s2 = component_basis(shifted, 2);
  REQUIRE(s2.size() == 1);
  CHECK(s2.standard[s2.span.pivots[0]] == Monomial{2, 0});
}

TEST_CASE("koszul_betti known tables") {
  auto r = make_ring({"x", "y"});
  BettiTable residue = koszul_betti(Subquotient::quotient_ring(ideal(r, {"x", "y"})), 5);
  CHECK(residue.entries == std::map<std::pair<int, Exponent>, std::uint64_t>{{{0, 0}, 1}, {{1, 1}, 2}, {{2, 2}, 1}});

  for (int d = 1; d <= 4; ++d) {
    GradedIdeal principal(r, {r->add(r->pow(r->variable(0), d), r->pow(r->variable(1), d))});
    BettiTable t = koszul_betti(Subquotient::quotient_ring(principal), 3 * d + 2);
    CHECK(t.entries == std::map<std::pair<int, Exponent>, std::uint64_t>{{{0, 0}, 1}, {{1, d}, 1}});
  }

  BettiTable fin = koszul_betti(Subquotient::quotient_ring(ideal(r, {"x^2", "x*y", "y^3"})), 8);
  CHECK(fin.entries ==
        std::map<std::pair<int, Exponent>, std::uint64_t>{{{0, 0}, 1}, {{1, 2}, 2}, {{1, 3}, 1}, {{2, 3}, 1}, {{2, 4}, 1}});
}

TEST_CASE("regularity") {
  auto r = make_ring({"x", "y"});
  auto residue = regularity(Subquotient::quotient_ring(ideal(r, {"x", "y"})), 4);
  CHECK(residue.value == 0);
  CHECK(residue.certified);
  for (int d = 2; d <= 5; ++d) {
    Subquotient m = Subquotient::quotient_ring(GradedIdeal(r, {r->pow(r->variable(0), d)}));
    auto reg = regularity(m, certifying_degree_cap(m));
    CHECK(reg.value == d - 1);
    CHECK(reg.certified);
    CHECK_FALSE(regularity(m, d - 1).certified);
  }
  Subquotient fin = Subquotient::quotient_ring(ideal(r, {"x^2", "x*y", "y^3"}));
  auto reg = regularity(fin, 0);
  CHECK(reg.value == 2);
  CHECK(reg.certified);
  CHECK(reg.value == a_invariant(hs_subquotient(fin)));
}

TEST_CASE("koszul invariants") {
  std::mt19937_64 rng(31337);
  for (int it = 0; it < 12; ++it) {
    std::size_t n = 2 + rng() % 2;
    auto r = std::make_shared<const Ring>(32003, n);
    std::vector<Polynomial> kg, ug;
    for (int g = 0; g < 2; ++g) kg.push_back(oracle::random_form(*r, 2 + static_cast<int>(rng() % 2), 2, rng));
    ug.push_back(oracle::random_form(*r, 1 + static_cast<int>(rng() % 2), 2, rng));
    if (it % 2 == 0) ug.clear();
    GradedIdeal k(r, kg);
    Subquotient m = ug.empty() ? Subquotient::quotient_ring(k) : Subquotient(GradedIdeal(r, ug), k);
    HilbertSeries hs = hs_subquotient(m);
    KoszulComplex kc(m);
    const Exponent cap = 7;
    BettiTable table = koszul_betti(m, cap);
    for (Exponent j = 0; j <= cap; ++j) {
      CHECK(kc.component_dim(j) == static_cast<std::size_t>(hf_eval(hs, j)));
      // Euler characteristic of the degree-j strand
      std::int64_t chains = 0, homology = 0;
      for (int i = 0; i <= static_cast<int>(n); ++i) {
        std::int64_t sign = i % 2 ? -1 : 1;
        chains += sign * static_cast<std::int64_t>(binom(n, i) * kc.component_dim(j - i));
        homology += sign * static_cast<std::int64_t>(table.at(i, j));
      }
      CHECK(chains == homology);
      // d o d = 0
      for (int i = 2; i <= static_cast<int>(n); ++i) {
        DenseMatrix d1 = kc.differential(i - 1, j);
        DenseMatrix d2 = kc.differential(i, j);
        if (d1.rows() == 0 || d2.cols() == 0 || d1.cols() == 0) continue;
        DenseMatrix zero = product(r->field(), d1, d2);
        bool all_zero = true;
        for (std::size_t a = 0; a < zero.rows(); ++a) {
          for (std::size_t b = 0; b < zero.cols(); ++b) all_zero = all_zero && zero(a, b) == 0;
        }
        CHECK(all_zero);
      }
    }
    if (ug.empty()) {
      // beta_{1,j}(R/K) counts minimal generators of K in degree j
      const auto& degs = k.minimal().degrees;
      for (Exponent j = 0; j <= cap; ++j) {
        CHECK(table.at(1, j) == static_cast<std::uint64_t>(std::count(degs.begin(), degs.end(), j)));
      }
    }
  }
}

TEST_CASE("complete intersections follow the Koszul pattern") {
  auto r = make_ring({"x", "y", "z"});
  for (auto [d1, d2] : {std::pair{1, 1}, {2, 3}, {2, 2}, {3, 2}}) {
    Polynomial f = r->add(r->pow(r->variable(0), d1), r->pow(r->variable(2), d1));
    Polynomial g = r->add(r->pow(r->variable(1), d2), r->mul(r->variable(2), r->pow(r->variable(0), d2 - 1)));
    BettiTable t = koszul_betti(Subquotient::quotient_ring(GradedIdeal(r, {f, g})), d1 + d2 + 3);
    std::map<std::pair<int, Exponent>, std::uint64_t> expect;
    expect[{0, 0}] += 1;
    expect[{1, d1}] += 1;
    expect[{1, d2}] += 1;
    expect[{2, d1 + d2}] += 1;
    CHECK(t.entries == expect);
  }
}
