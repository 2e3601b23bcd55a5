#include "rednum/asympt.hpp"

#include "rednum/koszul.hpp"
#include "rednum/seed.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <random>
#include <thread>

namespace rednum {

namespace {

std::string format_vector(const PowerVector& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  return s + ")";
}

void check_caps(const PowerVector& caps, std::size_t m, int minimum) {
  if (caps.size() != m) {
    throw std::invalid_argument("expected " + std::to_string(m) + " caps, got " + std::to_string(caps.size()));
  }
  for (int c : caps) {
    if (c < minimum) throw std::invalid_argument("caps must be >= " + std::to_string(minimum));
  }
}

unsigned thread_count(unsigned requested) {
  if (requested) return requested;
  if (const char* env = std::getenv("RNUM_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::optional<std::int64_t> value_of(const CellRecord& c, Column col) {
  switch (col) {
    case Column::DimPower: return c.dim_power;
    case Column::DimQuotient: return c.dim_quotient;
    case Column::RPower: return c.r_power;
    case Column::RQuotient: return c.r_quotient;
    case Column::RegPower: return c.reg_power;
  }
  return std::nullopt;
}

std::int64_t dot(const std::vector<std::int64_t>& slopes, const PowerVector& a) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += slopes[i] * a[i];
  return s;
}

std::vector<std::vector<std::int64_t>> slope_vectors(const SlopeSets& sets) {
  std::vector<std::vector<std::int64_t>> out{{}};
  for (const auto& set : sets) {
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& prefix : out) {
      for (auto s : set) {
        next.push_back(prefix);
        next.back().push_back(s);
      }
    }
    out = std::move(next);
  }
  return out;
}

using Bits = boost::dynamic_bitset<>;

struct Candidate {
  LinearPiece piece;
  Bits tight;
  bool all_d;
};

bool irredundant(const std::vector<const Candidate*>& cover) {
  for (std::size_t k = 0; k < cover.size(); ++k) {
    Bits others(cover[k]->tight.size());
    for (std::size_t l = 0; l < cover.size(); ++l) {
      if (l != k) others |= cover[l]->tight;
    }
    if ((cover[k]->tight - others).none()) return false;
  }
  return true;
}

// Smallest cover of all points by tight sets, trying subsets of each size in
// lexicographic order of candidate index.
std::optional<std::vector<const Candidate*>> find_cover(const std::vector<Candidate>& cands, std::size_t npoints,
                                                        bool require_all_d) {
  const std::size_t n = cands.size();
  const std::size_t max_size = std::min(n, npoints);
  std::vector<std::size_t> idx;
  for (std::size_t k = 1; k <= max_size; ++k) {
    idx.resize(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      Bits covered(npoints);
      bool has_all_d = false;
      for (auto i : idx) {
        covered |= cands[i].tight;
        has_all_d = has_all_d || cands[i].all_d;
      }
      if (covered.all() && (!require_all_d || has_all_d)) {
        std::vector<const Candidate*> cover;
        for (auto i : idx) cover.push_back(&cands[i]);
        if (!require_all_d || irredundant(cover)) return cover;
      }
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t t = i; t < k; ++t) idx[t] = idx[t - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace

std::size_t SweepTable::index(const PowerVector& a) const {
  const auto& caps = meta.caps;
  if (a.size() != caps.size()) throw std::out_of_range("power vector length does not match the grid");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 1 || a[i] > caps[i]) throw std::out_of_range("power vector " + format_vector(a) + " is off the grid");
    idx = idx * static_cast<std::size_t>(caps[i]) + static_cast<std::size_t>(a[i] - 1);
  }
  return idx;
}

std::vector<PowerVector> grid_points(const PowerVector& lo, const PowerVector& hi) {
  std::vector<PowerVector> out;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) return out;
  }
  PowerVector a = lo;
  for (;;) {
    out.push_back(a);
    std::size_t i = a.size();
    while (i > 0 && a[i - 1] == hi[i - 1]) {
      a[i - 1] = lo[i - 1];
      --i;
    }
    if (i == 0) break;
    ++a[i - 1];
  }
  return out;
}

std::uint64_t cell_seed(std::uint64_t seed, const PowerVector& a) {
  std::vector<std::uint64_t> path(a.begin(), a.end());
  return derive_seed(seed, path);
}

CellRecord evaluate_cell(std::span<const GradedIdeal> ideals, const GradedIdeal& relations, const PowerVector& a,
                         int trials, std::uint64_t seed, bool with_reg) {
  CellRecord c;
  c.a = a;
  c.witness_seed = cell_seed(seed, a);
  ReductionOptions opts{trials, 20, c.witness_seed};
  GradedIdeal power = multipower(relations.ring_ptr(), ideals, a);

  Subquotient pm(power, relations);
  try {
    auto r = reduction_number(pm, opts);
    c.dim_power = r.dim_module;
    c.r_power = r.value;
  } catch (const ZeroModuleError&) {
    c.flags |= kZeroPower;
  }
  try {
    auto r = reduction_number(Subquotient::quotient_ring(relations + power), opts);
    c.dim_quotient = r.dim_module;
    c.r_quotient = r.value;
  } catch (const ZeroModuleError&) {
    c.flags |= kZeroQuotient;
  }
  if (with_reg && !(c.flags & kZeroPower)) {
    Regularity reg = regularity(pm, certifying_degree_cap(pm));
    c.reg_power = reg.value;
    if (!reg.certified) c.flags |= kRegLowerBound;
  }
  return c;
}

SweepTable sweep(std::span<const GradedIdeal> ideals, const GradedIdeal& relations, const SweepOptions& opts) {
  check_caps(opts.caps, ideals.size(), 1);
  if (opts.trials < 1) throw std::invalid_argument("trials must be at least 1");

  SweepTable table;
  table.meta.seed = opts.seed;
  table.meta.trials = opts.trials;
  table.meta.p = relations.ring().field().modulus();
  table.meta.caps = opts.caps;
  table.meta.with_reg = opts.with_reg;
  for (const auto& ideal : ideals) table.meta.degrees.push_back(ideal.minimal().degrees);

  const auto points = grid_points(PowerVector(opts.caps.size(), 1), opts.caps);
  table.cells.resize(points.size());

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::size_t error_index = points.size();
  std::exception_ptr error;
  auto worker = [&] {
    for (;;) {
      std::size_t k = next.fetch_add(1);
      if (k >= points.size()) return;
      try {
        table.cells[k] = evaluate_cell(ideals, relations, points[k], opts.trials, opts.seed, opts.with_reg);
      } catch (...) {
        // report the failure of the first cell in grid order
        std::lock_guard lock(error_mutex);
        if (k < error_index) {
          error_index = k;
          error = std::current_exception();
        }
      }
    }
  };
  const unsigned n = std::min<std::size_t>(thread_count(opts.threads), points.size());
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return table;
}

StationarityReport check_stationary(const SweepTable& table) {
  StationarityReport rep;
  const auto& caps = table.meta.caps;
  if (table.cells.empty()) return rep;
  auto dim = [](const std::optional<int>& d) { return d.value_or(-1); };

  for (const auto& c : table.cells) {
    for (std::size_t i = 0; i < caps.size(); ++i) {
      if (c.a[i] == caps[i]) continue;
      PowerVector up = c.a;
      ++up[i];
      if (dim(table.at(up).dim_power) > dim(c.dim_power)) {
        rep.dim_power_nonincreasing = false;
        rep.violations.push_back("dim_power increases from " + format_vector(c.a) + " to " + format_vector(up));
      }
    }
  }

  PowerVector top(caps.size());
  for (std::size_t i = 0; i < caps.size(); ++i) top[i] = (caps[i] + 2) / 2;
  const int corner = dim(table.at(caps).dim_power);
  for (const auto& a : grid_points(top, caps)) {
    if (dim(table.at(a).dim_power) != corner) {
      rep.dim_power_constant_on_top = false;
      rep.violations.push_back("dim_power at " + format_vector(a) + " differs from the corner value " +
                               std::to_string(corner));
    }
  }

  const int first = dim(table.cells.front().dim_quotient);
  for (const auto& c : table.cells) {
    if (dim(c.dim_quotient) != first) {
      rep.dim_quotient_constant = false;
      rep.violations.push_back("dim_quotient at " + format_vector(c.a) + " differs from " + std::to_string(first));
    }
  }
  return rep;
}

Column parse_column(const std::string& name) {
  if (name == "dim_power") return Column::DimPower;
  if (name == "dim_quotient") return Column::DimQuotient;
  if (name == "r_power") return Column::RPower;
  if (name == "r_quotient") return Column::RQuotient;
  if (name == "reg_power") return Column::RegPower;
  throw std::invalid_argument("unknown column '" + name + "'");
}

std::string column_name(Column c) {
  switch (c) {
    case Column::DimPower: return "dim_power";
    case Column::DimQuotient: return "dim_quotient";
    case Column::RPower: return "r_power";
    case Column::RQuotient: return "r_quotient";
    case Column::RegPower: return "reg_power";
  }
  return {};
}

GridColumn column_of(const SweepTable& table, Column c) {
  if (c == Column::RegPower && !table.meta.with_reg) throw std::invalid_argument("table has no reg_power column");
  GridColumn out;
  out.caps = table.meta.caps;
  out.seed = table.meta.seed;
  for (const auto& cell : table.cells) out.values.push_back(value_of(cell, c));
  return out;
}

SlopeSets slope_sets(const std::vector<std::vector<Exponent>>& degrees, bool with_zero) {
  SlopeSets out;
  for (const auto& ds : degrees) {
    std::vector<std::int64_t> set(ds.begin(), ds.end());
    if (with_zero) set.push_back(0);
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    out.push_back(std::move(set));
  }
  return out;
}

std::int64_t LinearPiece::operator()(const PowerVector& a) const { return dot(slopes, a) + intercept; }

std::int64_t PiecewiseLinearModel::operator()(const PowerVector& a) const {
  if (pieces.empty()) throw std::logic_error("model has no pieces");
  std::int64_t best = pieces.front()(a);
  for (const auto& p : pieces) best = std::max(best, p(a));
  return best;
}

PiecewiseLinearModel fit_max_linear(const GridColumn& column, const SlopeSets& slopes, bool require_one_all_d) {
  const auto& caps = column.caps;
  if (slopes.size() != caps.size()) throw std::invalid_argument("one slope set per ideal is required");
  for (const auto& s : slopes) {
    if (s.empty()) throw std::invalid_argument("empty slope set");
  }
  const std::size_t m = caps.size();
  PowerVector ones(m, 1), inner(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (caps[i] < 2) throw NotYetAsymptotic();
    inner[i] = caps[i] - 1;
  }

  auto region_size = [&](const PowerVector& b) {
    std::size_t s = 1;
    for (std::size_t i = 0; i < m; ++i) s *= static_cast<std::size_t>(caps[i] - b[i] + 1);
    return s;
  };
  auto thresholds = grid_points(ones, inner);
  std::stable_sort(thresholds.begin(), thresholds.end(),
                   [&](const PowerVector& x, const PowerVector& y) { return region_size(x) > region_size(y); });

  const auto vectors = slope_vectors(slopes);
  std::optional<PowerVector> unconstrained;
  // index into column.values
  auto flat = [&](const PowerVector& a) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < m; ++i) idx = idx * static_cast<std::size_t>(caps[i]) + static_cast<std::size_t>(a[i] - 1);
    return idx;
  };

  for (const auto& b : thresholds) {
    const auto points = grid_points(b, caps);
    std::vector<std::int64_t> values;
    bool sentinel = false;
    for (const auto& a : points) {
      const auto& v = column.values.at(flat(a));
      if (!v) {
        sentinel = true;
        break;
      }
      values.push_back(*v);
    }
    if (sentinel) continue;

    std::vector<Candidate> cands;
    for (const auto& lambda : vectors) {
      std::int64_t c = values[0] - dot(lambda, points[0]);
      for (std::size_t k = 1; k < points.size(); ++k) c = std::min(c, values[k] - dot(lambda, points[k]));
      Candidate cand{LinearPiece{lambda, c}, Bits(points.size()), true};
      for (std::size_t k = 0; k < points.size(); ++k) cand.tight[k] = cand.piece(points[k]) == values[k];
      for (auto s : lambda) cand.all_d = cand.all_d && s != 0;
      cands.push_back(std::move(cand));
    }
    auto cover = find_cover(cands, points.size(), require_one_all_d);
    if (!cover) {
      if (require_one_all_d && !unconstrained && find_cover(cands, points.size(), false)) unconstrained = b;
      continue;
    }

    PiecewiseLinearModel model;
    for (const Candidate* c : *cover) model.pieces.push_back(c->piece);
    model.threshold = b;
    model.source_seed = column.seed;
    for (std::size_t k = 0; k < points.size(); ++k) {
      std::int64_t dev = model(points[k]) - values[k];
      model.residual = std::max(model.residual, dev < 0 ? -dev : dev);
    }
    return model;
  }
  if (unconstrained) {
    std::string b;
    for (int v : *unconstrained) b += (b.empty() ? "" : ",") + std::to_string(v);
    throw NotYetAsymptotic("exact fit on a >= (" + b + "), but no irredundant piece has all slopes in D");
  }
  throw NotYetAsymptotic();
}

bool OutOfSampleReport::ok() const {
  for (const auto& p : points) {
    if (!p.observed || *p.observed != p.predicted) return false;
  }
  return true;
}

OutOfSampleReport validate_out_of_sample(const PiecewiseLinearModel& model, std::span<const GradedIdeal> ideals,
                                         const GradedIdeal& relations, Column column, const SweepMeta& meta,
                                         std::size_t count) {
  PowerVector outer = meta.caps;
  for (auto& c : outer) ++c;
  std::vector<PowerVector> band;
  for (const auto& a : grid_points(model.threshold, outer)) {
    bool beyond = false;
    for (std::size_t i = 0; i < a.size(); ++i) beyond = beyond || a[i] == outer[i];
    if (beyond && a != outer) band.push_back(a);
  }
  std::mt19937_64 rng(derive_seed(meta.seed, {0x6f7574ull}));
  for (std::size_t k = band.size(); k > 1; --k) std::swap(band[k - 1], band[rng() % k]);
  if (count > 0) --count;
  if (band.size() > count) band.resize(count);
  std::sort(band.begin(), band.end());
  band.insert(band.begin(), outer);

  OutOfSampleReport rep;
  for (const auto& a : band) {
    CellRecord c = evaluate_cell(ideals, relations, a, meta.trials, meta.seed, column == Column::RegPower);
    rep.points.push_back({a, value_of(c, column), model(a)});
  }
  return rep;
}

bool RhoReport::stabilized() const {
  return std::all_of(axes.begin(), axes.end(), [](const AxisSlope& s) { return s.stabilized; });
}

bool RhoReport::ok() const {
  return std::all_of(axes.begin(), axes.end(), [](const AxisSlope& s) { return s.stabilized && s.in_set; });
}

RhoReport rho_report(const GridColumn& column, const SlopeSets& slopes) {
  const auto& caps = column.caps;
  if (slopes.size() != caps.size()) throw std::invalid_argument("one slope set per ideal is required");
  RhoReport rep;
  for (std::size_t i = 0; i < caps.size(); ++i) {
    AxisSlope axis;
    axis.axis = i;
    std::vector<std::int64_t> line;
    bool complete = true;
    PowerVector a = caps;
    for (int k = 1; k <= caps[i]; ++k) {
      a[i] = k;
      std::size_t idx = 0;
      for (std::size_t t = 0; t < caps.size(); ++t) idx = idx * static_cast<std::size_t>(caps[t]) + static_cast<std::size_t>(a[t] - 1);
      const auto& v = column.values.at(idx);
      if (!v) {
        complete = false;
        break;
      }
      line.push_back(*v);
    }
    const std::size_t n = line.size();
    if (complete && n >= 3) {
      std::int64_t last = line[n - 1] - line[n - 2];
      if (last == line[n - 2] - line[n - 3]) {
        axis.stabilized = true;
        axis.slope = last;
        axis.in_set = std::find(slopes[i].begin(), slopes[i].end(), last) != slopes[i].end();
      }
    }
    rep.axes.push_back(axis);
  }
  return rep;
}

RecursionReport recursion_check(std::span<const GradedIdeal> ideals, const GradedIdeal& relations,
                                const PowerVector& caps, std::uint64_t seed, int resample_cap) {
  check_caps(caps, ideals.size(), 2);
  const RingPtr& ring = relations.ring_ptr();
  const std::size_t m = caps.size();
  const auto points = grid_points(PowerVector(m, 1), caps);
  SweepTable shape;
  shape.meta.caps = caps;

  std::vector<GradedIdeal> quotients;
  std::vector<int> cls;
  std::map<int, std::vector<std::size_t>> classes;
  for (std::size_t k = 0; k < points.size(); ++k) {
    quotients.push_back(relations + multipower(ring, ideals, points[k]));
    auto d = krull_dim(hs_quotient_ring(quotients.back()));
    cls.push_back(d.value_or(-1));
    classes[cls.back()].push_back(k);
  }

  RecursionReport rep;
  std::map<int, GradedIdeal> systems;
  for (const auto& [s, members] : classes) {
    if (s <= 0) {
      systems.emplace(s, GradedIdeal::zero(ring));
      rep.systems.emplace_back(s, derive_seed(seed, {static_cast<std::uint64_t>(std::max(s, 0)), 0}));
      continue;
    }
    bool found = false;
    for (int r = 0; r < resample_cap && !found; ++r) {
      std::uint64_t sd = derive_seed(seed, {static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(r)});
      GradedIdeal j(ring, random_linear_system(*ring, static_cast<std::size_t>(s), sd).forms);
      found = std::all_of(members.begin(), members.end(),
                          [&](std::size_t k) { return hs_quotient_ring(quotients[k] + j).pole_order() == 0; });
      if (found) {
        systems.emplace(s, j);
        rep.systems.emplace_back(s, sd);
      }
    }
    if (!found) throw GenericityFailure();
  }

  // HS(R/(K + I^b + J)) keyed by (cell, class of J)
  std::map<std::pair<std::size_t, int>, HilbertSeries> cache;
  auto series = [&](std::size_t k, int s) -> const HilbertSeries& {
    auto it = cache.find({k, s});
    if (it == cache.end()) it = cache.emplace(std::pair{k, s}, hs_quotient_ring(quotients[k] + systems.at(s))).first;
    return it->second;
  };
  auto max_opt = [](std::optional<std::int64_t> x, std::optional<std::int64_t> y) {
    if (!x) return y;
    if (!y) return x;
    return std::optional<std::int64_t>(std::max(*x, *y));
  };

  for (std::size_t k = 0; k < points.size(); ++k) {
    const int s = cls[k];
    for (std::size_t i = 0; i < m; ++i) {
      if (points[k][i] < 2) {
        ++rep.skipped;
        continue;
      }
      ++rep.checked;
      PowerVector prev = points[k];
      --prev[i];
      const std::size_t kp = shape.index(prev);
      const HilbertSeries& hb = series(k, s);
      const HilbertSeries& hp = series(kp, s);
      auto lhs = a_invariant(hb);
      auto previous = a_invariant(hp);
      auto a_u = a_invariant(hb - hp);
      if (lhs != max_opt(previous, a_u)) rep.mismatches.push_back({points[k], i, lhs, previous, a_u});
    }
  }
  return rep;
}

}  // namespace rednum
