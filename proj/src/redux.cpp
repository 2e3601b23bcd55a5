#include "rednum/redux.hpp"

#include "rednum/linalg.hpp"
#include "rednum/seed.hpp"

#include <random>

namespace rednum {

GradedIdeal multipower(const RingPtr& ring, std::span<const GradedIdeal> ideals, const PowerVector& a) {
  if (a.size() != ideals.size()) {
    throw std::invalid_argument("power vector has " + std::to_string(a.size()) + " entries for " +
                                std::to_string(ideals.size()) + " ideals");
  }
  GradedIdeal result = GradedIdeal::unit(ring);
  for (int e : a) {
    if (e < 0) return result;
  }
  for (std::size_t i = 0; i < ideals.size(); ++i) {
    for (int k = 0; k < a[i]; ++k) result = result * ideals[i];
  }
  return result;
}

LinearSystem random_linear_system(const Ring& ring, std::size_t s, std::uint64_t seed) {
  const std::size_t n = ring.nvars();
  if (s > n) {
    throw std::invalid_argument("cannot draw " + std::to_string(s) +
                                " independent linear forms in " + std::to_string(n) + " variables");
  }
  std::mt19937_64 rng(seed);
  const PrimeField& field = ring.field();
  for (;;) {
    DenseMatrix coeffs(s, n);
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t k = 0; k < n; ++k) coeffs(i, k) = static_cast<Coeff>(rng() % field.modulus());
    }
    if (rank(field, coeffs) != s) continue;
    LinearSystem out;
    out.seed = seed;
    for (std::size_t i = 0; i < s; ++i) {
      std::vector<Term> terms;
      for (std::size_t k = 0; k < n; ++k) terms.push_back(Term{Monomial::variable(n, k), coeffs(i, k)});
      out.forms.push_back(ring.from_terms(std::move(terms)));
    }
    return out;
  }
}

GradedIdeal reduced_relations(const LinearSystem& j, const Subquotient& m) {
  const Ring& ring = m.ring();
  std::vector<Polynomial> gens = m.relations().generators();
  const auto& tops = m.is_cyclic() ? std::vector<Polynomial>{ring.one()} : m.generators().generators();
  for (const auto& l : j.forms) {
    for (const auto& u : tops) gens.push_back(ring.mul(l, u));
  }
  return GradedIdeal(m.relations().ring_ptr(), prune_linearly_dependent(ring, std::move(gens)));
}

namespace {

// Hilbert series of m / J m, given HS(R / (U + K)).
HilbertSeries quotient_series(const LinearSystem& j, const Subquotient& m, const HilbertSeries& top) {
  return hs_quotient_ring(reduced_relations(j, m)) - top;
}

HilbertSeries top_series(const Subquotient& m) {
  return hs_quotient_ring(m.generators() + m.relations());
}

}  // namespace

bool is_reduction(const LinearSystem& j, const Subquotient& m) {
  if (hs_subquotient(m).is_zero()) throw ZeroModuleError();
  return quotient_series(j, m, top_series(m)).pole_order() == 0;
}

std::optional<std::int64_t> r_j(const LinearSystem& j, const Subquotient& m) {
  HilbertSeries q = quotient_series(j, m, top_series(m));
  if (q.pole_order() != 0) throw NotAReduction();
  return a_invariant(q);
}

ReductionResult reduction_number(const Subquotient& m, const ReductionOptions& opts) {
  if (opts.trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (opts.resample_cap < 1) throw std::invalid_argument("resample cap must be at least 1");
  const Ring& ring = m.ring();
  HilbertSeries top = top_series(m);
  HilbertSeries whole = hs_quotient_ring(m.relations()) - top;
  auto dim = krull_dim(whole);
  if (!dim) throw ZeroModuleError();

  ReductionResult out;
  out.dim_module = *dim;
  if (*dim == 0) {
    // the zero ideal is the only minimal reduction
    out.value = a_invariant(whole);
    out.trials = 1;
    out.witness_seed = derive_seed(opts.seed, {0, 0});
    return out;
  }
  bool have = false;
  for (int t = 0; t < opts.trials; ++t) {
    bool found = false;
    for (int r = 0; r < opts.resample_cap && !found; ++r) {
      std::uint64_t seed = derive_seed(opts.seed, {static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(r)});
      LinearSystem j = random_linear_system(ring, static_cast<std::size_t>(*dim), seed);
      HilbertSeries q = quotient_series(j, m, top);
      if (q.pole_order() != 0) continue;
      found = true;
      auto v = a_invariant(q);
      // nullopt (-inf) cannot occur for a nonzero module by graded Nakayama
      if (!have || v < out.value) {
        out.value = v;
        out.witness_seed = seed;
        have = true;
      }
    }
    if (!found) throw GenericityFailure();
  }
  out.trials = opts.trials;
  return out;
}

ReductionResult r_power(std::span<const GradedIdeal> ideals, const GradedIdeal& relations,
                        const PowerVector& a, const ReductionOptions& opts) {
  Subquotient m(multipower(relations.ring_ptr(), ideals, a), relations);
  try {
    return reduction_number(m, opts);
  } catch (const ZeroModuleError&) {
    ReductionResult out;
    out.zero_module = true;
    out.trials = 0;
    return out;
  }
}

ReductionResult r_quotient(std::span<const GradedIdeal> ideals, const GradedIdeal& relations,
                           const PowerVector& a, const ReductionOptions& opts) {
  Subquotient m = Subquotient::quotient_ring(relations + multipower(relations.ring_ptr(), ideals, a));
  try {
    return reduction_number(m, opts);
  } catch (const ZeroModuleError&) {
    ReductionResult out;
    out.zero_module = true;
    out.trials = 0;
    return out;
  }
}

}  // namespace rednum
