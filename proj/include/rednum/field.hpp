#ifndef REDNUM_FIELD_HPP
#define REDNUM_FIELD_HPP

#include <cstdint>
#include <stdexcept>

namespace rednum {

/// Element of a prime field, stored as its canonical residue in [0, p).
using Coeff = std::uint32_t;

/// Arithmetic in Z/pZ for a prime p < 2^31.
class PrimeField {
public:
  static constexpr std::uint32_t kDefaultModulus = 32003;

  explicit PrimeField(std::uint32_t modulus = kDefaultModulus);

  std::uint32_t modulus() const { return p_; }

  Coeff add(Coeff a, Coeff b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Coeff sub(Coeff a, Coeff b) const { return a >= b ? a - b : a + p_ - b; }
  Coeff neg(Coeff a) const { return a == 0 ? 0 : p_ - a; }
  Coeff mul(Coeff a, Coeff b) const {
    return static_cast<Coeff>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Coeff inv(Coeff a) const;

  /// Reduces an arbitrary signed integer into [0, p).
  Coeff from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Coeff>(r < 0 ? r + p_ : r);
  }

  /// Symmetric representative in (-p/2, p/2], used for printing.
  std::int64_t to_signed(Coeff a) const {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : a;
  }

  bool operator==(const PrimeField&) const = default;

private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

}  // namespace rednum

#endif  // REDNUM_FIELD_HPP
