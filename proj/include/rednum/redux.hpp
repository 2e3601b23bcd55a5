#ifndef REDNUM_REDUX_HPP
#define REDNUM_REDUX_HPP

#include "rednum/hilbert.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace rednum {

/// Exponent vector a for I^a = I_1^{a_1} ... I_m^{a_m}. Entries may be
/// negative; any such vector gives the unit ideal.
using PowerVector = std::vector<int>;

/// Linearly independent linear forms drawn from a seed.
struct LinearSystem {
  std::vector<Polynomial> forms;
  std::uint64_t seed = 0;
};

class ZeroModuleError : public std::domain_error {
public:
  ZeroModuleError() : std::domain_error("zero module") {}
};

class GenericityFailure : public std::runtime_error {
public:
  GenericityFailure()
      : std::runtime_error("genericity failure - increase p or trials") {}
};

class NotAReduction : public std::domain_error {
public:
  NotAReduction() : std::domain_error("linear system is not a reduction of the module") {}
};

/// I_1^{a_1} ... I_m^{a_m}; the unit ideal when a has a negative entry or is zero.
GradedIdeal multipower(const RingPtr& ring, std::span<const GradedIdeal> ideals, const PowerVector& a);

/// s random linear forms; coefficients are redrawn until the forms are
/// independent. Throws std::invalid_argument when s exceeds the variable count.
LinearSystem random_linear_system(const Ring& ring, std::size_t s, std::uint64_t seed);

/// Whether m / J m has finite length, i.e. (J M)_n = M_n for n >> 0.
bool is_reduction(const LinearSystem& j, const Subquotient& m);

/// max{n : (J M)_n != M_n}; nullopt stands for -infinity. Throws
/// NotAReduction when J is not a reduction of m.
std::optional<std::int64_t> r_j(const LinearSystem& j, const Subquotient& m);

struct ReductionOptions {
  int trials = 5;
  int resample_cap = 20;
  std::uint64_t seed = 0;
};

struct ReductionResult {
  /// Minimum r_J over the sampled systems; nullopt is -infinity.
  std::optional<std::int64_t> value;
  int trials = 0;
  /// Seed that regenerates the minimizing system via random_linear_system.
  std::uint64_t witness_seed = 0;
  /// Krull dimension of the module, which is also the number of forms used.
  int dim_module = 0;
  /// Set instead of throwing by r_power / r_quotient when the module is zero.
  bool zero_module = false;
};

/// r(M) estimated as the minimum of r_J over generic systems of dim(M)
/// forms. For finite-length modules J = 0 is the only minimal reduction and
/// the value is exact.
ReductionResult reduction_number(const Subquotient& m, const ReductionOptions& opts = {});

/// r(I^a M) for M = R/K, with I^a M = (I^a + K)/K.
ReductionResult r_power(std::span<const GradedIdeal> ideals, const GradedIdeal& relations,
                        const PowerVector& a, const ReductionOptions& opts = {});

/// r(M / I^a M) = r(R / (K + I^a)).
ReductionResult r_quotient(std::span<const GradedIdeal> ideals, const GradedIdeal& relations,
                           const PowerVector& a, const ReductionOptions& opts = {});

/// Ideal J U + K whose quotient by U + K is m / J m.
GradedIdeal reduced_relations(const LinearSystem& j, const Subquotient& m);

}  // namespace rednum

#endif  // REDNUM_REDUX_HPP
