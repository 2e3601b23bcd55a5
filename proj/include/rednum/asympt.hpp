#ifndef REDNUM_ASYMPT_HPP
#define REDNUM_ASYMPT_HPP

#include "rednum/redux.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rednum {

enum CellFlag : unsigned {
  kZeroPower = 1u << 0,
  kZeroQuotient = 1u << 1,
  kRegLowerBound = 1u << 2,
};

/// One grid point of a sweep. nullopt dimensions and reduction numbers mark
/// the zero module; nullopt reg_power is -infinity or "not computed".
struct CellRecord {
  PowerVector a;
  std::optional<int> dim_power;
  std::optional<int> dim_quotient;
  std::optional<std::int64_t> r_power;
  std::optional<std::int64_t> r_quotient;
  std::optional<std::int64_t> reg_power;
  /// Seed handed to reduction_number for both targets of this cell.
  std::uint64_t witness_seed = 0;
  unsigned flags = 0;

  bool operator==(const CellRecord&) const = default;
};

struct SweepMeta {
  std::uint64_t seed = 0;
  int trials = 5;
  std::uint32_t p = 32003;
  /// Minimal generator degrees of each I_i, in generator order.
  std::vector<std::vector<Exponent>> degrees;
  PowerVector caps;
  bool with_reg = false;

  bool operator==(const SweepMeta&) const = default;
};

/// Cells over 1 <= a_i <= cap_i in lexicographic order (a_m varies fastest).
struct SweepTable {
  SweepMeta meta;
  std::vector<CellRecord> cells;

  std::size_t index(const PowerVector& a) const;
  const CellRecord& at(const PowerVector& a) const { return cells.at(index(a)); }
  bool operator==(const SweepTable&) const = default;
};

/// All a with lo <= a <= hi componentwise, lexicographically.
std::vector<PowerVector> grid_points(const PowerVector& lo, const PowerVector& hi);

std::uint64_t cell_seed(std::uint64_t seed, const PowerVector& a);

CellRecord evaluate_cell(std::span<const GradedIdeal> ideals, const GradedIdeal& relations,
                         const PowerVector& a, int trials, std::uint64_t seed, bool with_reg);

struct SweepOptions {
  PowerVector caps;
  int trials = 5;
  std::uint64_t seed = 0;
  bool with_reg = false;
  /// 0 reads RNUM_THREADS and falls back to the hardware concurrency.
  unsigned threads = 0;
};

/// Evaluates every cell; the result does not depend on the thread count.
SweepTable sweep(std::span<const GradedIdeal> ideals, const GradedIdeal& relations, const SweepOptions& opts);

struct StationarityReport {
  bool dim_power_nonincreasing = true;
  bool dim_power_constant_on_top = true;
  bool dim_quotient_constant = true;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// dim_power must be non-increasing along each axis (the zero module counts
/// as -1) and constant on the cells with a_i >= ceil((cap_i + 1) / 2);
/// dim_quotient must be constant on the whole grid.
StationarityReport check_stationary(const SweepTable& table);

enum class Column { DimPower, DimQuotient, RPower, RQuotient, RegPower };

Column parse_column(const std::string& name);
std::string column_name(Column c);

struct GridColumn {
  PowerVector caps;
  std::uint64_t seed = 0;
  /// Indexed like SweepTable::cells; nullopt is a sentinel cell.
  std::vector<std::optional<std::int64_t>> values;
};

GridColumn column_of(const SweepTable& table, Column c);

/// Allowed slopes per coordinate.
using SlopeSets = std::vector<std::vector<std::int64_t>>;

/// Distinct generator degrees of each ideal, optionally with 0 added.
SlopeSets slope_sets(const std::vector<std::vector<Exponent>>& degrees, bool with_zero);

struct LinearPiece {
  std::vector<std::int64_t> slopes;
  std::int64_t intercept = 0;

  std::int64_t operator()(const PowerVector& a) const;
  bool operator==(const LinearPiece&) const = default;
};

struct PiecewiseLinearModel {
  std::vector<LinearPiece> pieces;
  PowerVector threshold;
  std::int64_t residual = 0;
  std::uint64_t source_seed = 0;

  std::int64_t operator()(const PowerVector& a) const;
  bool operator==(const PiecewiseLinearModel&) const = default;
};

class NotYetAsymptotic : public std::runtime_error {
public:
  NotYetAsymptotic() : std::runtime_error("not yet asymptotic - increase caps") {}
  explicit NotYetAsymptotic(const std::string& detail)
      : std::runtime_error("not yet asymptotic - increase caps (" + detail + ")") {}
};

/// Exact fit of the column on a >= threshold by a maximum of affine pieces
/// with slopes from the given sets. Thresholds range over all b with at
/// least two grid points per axis on a >= b; the largest region that admits
/// a fit wins (ties: lexicographically smallest b), and within it a cover
/// with the fewest pieces. With require_one_all_d the cover must be
/// irredundant and contain a piece without zero slopes; when only that
/// requirement fails, the NotYetAsymptotic message says so.
PiecewiseLinearModel fit_max_linear(const GridColumn& column, const SlopeSets& slopes, bool require_one_all_d);

struct OutOfSamplePoint {
  PowerVector a;
  std::optional<std::int64_t> observed;
  std::int64_t predicted = 0;
};

struct OutOfSampleReport {
  std::vector<OutOfSamplePoint> points;
  bool ok() const;
};

/// Recomputes the column at up to `count` points of the band between the
/// caps and caps + 1 above the model threshold, always including caps + 1.
OutOfSampleReport validate_out_of_sample(const PiecewiseLinearModel& model, std::span<const GradedIdeal> ideals,
                                         const GradedIdeal& relations, Column column, const SweepMeta& meta,
                                         std::size_t count = 10);

struct AxisSlope {
  std::size_t axis = 0;
  bool stabilized = false;
  std::optional<std::int64_t> slope;
  bool in_set = false;
};

struct RhoReport {
  std::vector<AxisSlope> axes;
  bool stabilized() const;
  bool ok() const;
};

/// Forward differences along each axis through the grid corner. A slope is
/// reported once the last two differences agree.
RhoReport rho_report(const GridColumn& column, const SlopeSets& slopes);

struct RecursionMismatch {
  PowerVector b;
  std::size_t axis = 0;
  std::optional<std::int64_t> lhs;
  std::optional<std::int64_t> previous;
  std::optional<std::int64_t> a_u;
};

struct RecursionReport {
  std::size_t checked = 0;
  std::size_t skipped = 0;
  /// Seeds of the fixed linear systems, one per cell dimension in use.
  std::vector<std::pair<int, std::uint64_t>> systems;
  std::vector<RecursionMismatch> mismatches;
};

/// For each b and axis i with b - e_i >= 1, checks
///   r_J(M/I^b M) = max{r_J(M/I^{b-e_i} M), a(U)},
/// U = (I^{b-e_i} M + J M)/(I^b M + J M), for one J per dimension class.
RecursionReport recursion_check(std::span<const GradedIdeal> ideals, const GradedIdeal& relations,
                                const PowerVector& caps, std::uint64_t seed, int resample_cap = 20);

}  // namespace rednum

#endif  // REDNUM_ASYMPT_HPP
