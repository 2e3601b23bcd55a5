#ifndef REDNUM_KOSZUL_HPP
#define REDNUM_KOSZUL_HPP

#include "rednum/hilbert.hpp"
#include "rednum/linalg.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace rednum {

/// Coordinates for the degree-j component of (U + K)/K. Vectors live over
/// the standard monomials of in(K) in degree j; `span` is a reduced row
/// echelon basis of the component inside that space.
struct GradedComponentBasis {
  Exponent degree = 0;
  std::vector<Monomial> standard;
  RowEchelon span;

  std::size_t size() const { return span.rank(); }
};

GradedComponentBasis component_basis(const Subquotient& m, Exponent j);

/// Koszul complex of the variables with coefficients in a subquotient, one
/// internal degree at a time. Component bases and multiplication maps are
/// cached, so one instance should serve a whole Betti table.
class KoszulComplex {
public:
  explicit KoszulComplex(const Subquotient& m);

  std::size_t nvars() const { return n_; }
  /// dim M_j
  std::size_t component_dim(Exponent j);
  /// Matrix of d_i : Lambda^i (x) M_{j-i} -> Lambda^{i-1} (x) M_{j-i+1};
  /// columns index (subset, basis vector) of the source.
  DenseMatrix differential(int i, Exponent j);
  std::size_t differential_rank(int i, Exponent j);
  /// Matrix of multiplication by x_k from M_j to M_{j+1}.
  const DenseMatrix& multiplication(std::size_t k, Exponent j);

private:
  const GradedComponentBasis& component(Exponent j);

  const Subquotient& m_;
  std::size_t n_;
  std::vector<Polynomial> gb_;
  std::map<Exponent, GradedComponentBasis> components_;
  std::map<std::pair<std::size_t, Exponent>, DenseMatrix> mult_;
};

struct BettiTable {
  /// Nonzero beta_{i,j}, keyed by (homological index i, internal degree j).
  std::map<std::pair<int, Exponent>, std::uint64_t> entries;
  Exponent degree_cap = 0;

  std::uint64_t at(int i, Exponent j) const {
    auto it = entries.find({i, j});
    return it == entries.end() ? 0 : it->second;
  }
};

/// beta_{i,j}(M) = dim H_i(x; M)_j for all j <= degree_cap.
BettiTable koszul_betti(const Subquotient& m, Exponent degree_cap);

struct Regularity {
  /// nullopt for the zero module (-infinity).
  std::optional<std::int64_t> value;
  /// False means value is only a lower bound.
  bool certified = false;
};

/// Regularity from the Betti table up to degree_cap. Finite-length modules
/// are certified through reg = a; otherwise certification needs
/// degree_cap >= (max generator degree) * (n + 1).
Regularity regularity(const Subquotient& m, Exponent degree_cap);

/// Smallest degree cap that certifies regularity for m.
Exponent certifying_degree_cap(const Subquotient& m);

}  // namespace rednum

#endif  // REDNUM_KOSZUL_HPP
