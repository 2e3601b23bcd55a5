// Acceptance gate: one PASS/FAIL line per criterion.
//
// Exit status is nonzero when a criterion fails, except for failures listed
// as known defects in the stated criteria (reported as FAIL all the same). --strict makes those
// fatal too.

#include "oracle.hpp"
#include "rednum/io.hpp"
#include "rednum/koszul.hpp"
#include "rednum/parse.hpp"

#include <chrono>
#include <cstring>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

using namespace rednum;

namespace {

const std::string kData = REDNUM_TEST_DATA;

struct Outcome {
  bool pass = true;
  // failing only on checks whose expected value is stated incorrectly
  bool known_defect = false;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

struct Entry {
  std::string file;
  ProblemFile problem;
  SweepTable table;
};

std::string vec(const std::vector<std::int64_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::string vec(const PowerVector& v) { return vec(std::vector<std::int64_t>(v.begin(), v.end())); }

std::string describe(const PiecewiseLinearModel& m) {
  std::string s;
  for (const auto& p : m.pieces) {
    s += (s.empty() ? "max{" : ", ") + vec(p.slopes) + ".a " + (p.intercept < 0 ? "- " : "+ ") +
         std::to_string(p.intercept < 0 ? -p.intercept : p.intercept);
  }
  s += "}";
  return s + " on a>=" + vec(m.threshold);
}

SweepTable run_sweep(const ProblemFile& p, int cap, std::uint64_t seed) {
  auto ideals = p.acting_ideals();
  SweepOptions opts;
  opts.caps = PowerVector(ideals.size(), cap);
  opts.trials = 5;
  opts.seed = seed;
  return sweep(ideals, p.relations(), opts);
}

Entry load_entry(const std::string& file, int cap, std::uint64_t seed = 0,
                 std::optional<std::uint32_t> modulus = std::nullopt) {
  Entry e{file, load_problem(kData + "/" + file, modulus), {}};
  e.table = run_sweep(e.problem, cap, seed);
  return e;
}

bool slopes_in(const LinearPiece& piece, const SlopeSets& sets) {
  for (std::size_t i = 0; i < piece.slopes.size(); ++i) {
    if (std::find(sets[i].begin(), sets[i].end(), piece.slopes[i]) == sets[i].end()) return false;
  }
  return true;
}

class Gate {
public:
  explicit Gate(bool strict) : strict_(strict) {}

  void run(int id, const std::string& title, double budget_seconds, const std::function<Outcome()>& body) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o.pass = false;
      o.known_defect = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget_seconds > 0 && secs > budget_seconds) {
      o.pass = false;
      o.known_defect = false;
      o.notes.push_back("over the " + std::to_string(static_cast<int>(budget_seconds)) + " s budget");
    }
    std::ostringstream line;
    line << (o.pass ? "PASS" : "FAIL") << "  criterion " << id << "  " << title << "  [" << std::fixed
         << std::setprecision(2) << secs << " s]";
    if (!o.pass && o.known_defect) line << "  (known defect in criterion)";
    std::cout << line.str() << "\n";
    for (const auto& n : o.notes) std::cout << "      " << n << "\n";
    std::cout.flush();
    if (!o.pass) {
      ++failed_;
      if (!o.known_defect || strict_) fatal_ = true;
    }
  }

  int exit_code() const {
    std::cout << "summary: " << failed_ << " failing criteria" << (fatal_ ? "" : failed_ ? ", all known defects in criteria" : "")
              << "\n";
    return fatal_ ? 1 : 0;
  }

private:
  bool strict_;
  int failed_ = 0;
  bool fatal_ = false;
};

}  // namespace

int main(int argc, char** argv) {
  bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
  Gate gate(strict);

  const std::vector<std::string> corpus_files{"two_principal.txt", "mixed_degrees.txt", "three_principal.txt"};
  std::vector<Entry> corpus;
  std::vector<Entry> lines;

  gate.run(1, "principal-module example, n = 1..5", 10, [&] {
    Outcome o;
    for (auto [file, d] : {std::pair{"quotient_by_x2.txt", 2}, {"quotient_by_x1.txt", 3}}) {
      Entry e = load_entry(file, 5);
      for (const auto& c : e.table.cells) {
        const int n = c.a[0];
        o.require(c.r_power == n * d, std::string(file) + ": r(I^n M) at n=" + std::to_string(n) + " is " +
                                          (c.r_power ? std::to_string(*c.r_power) : "zero-module"));
        o.require(c.r_quotient == n * d - 1, std::string(file) + ": r(M/I^n M) at n=" + std::to_string(n) + " is " +
                                                 (c.r_quotient ? std::to_string(*c.r_quotient) : "zero-module"));
      }
      auto power = fit_max_linear(column_of(e.table, Column::RPower), slope_sets(e.table.meta.degrees, false), false);
      auto quot = fit_max_linear(column_of(e.table, Column::RQuotient), slope_sets(e.table.meta.degrees, true), true);
      for (const auto* m : {&power, &quot}) {
        for (const auto& p : m->pieces) o.require(p.slopes == std::vector<std::int64_t>{d}, std::string(file) + ": fitted " + describe(*m));
      }
      o.notes.push_back(std::string(file) + ": r(I^n M) = " + describe(power) + ", r(M/I^n M) = " + describe(quot));
      if (o.pass) o.notes.pop_back();
      lines.push_back(std::move(e));
    }
    return o;
  });

  gate.run(2, "power-case fits on the corpus, caps 4", 300, [&] {
    Outcome o;
    for (const auto& f : corpus_files) corpus.push_back(load_entry(f, 4));
    for (const auto& e : corpus) {
      SlopeSets d = slope_sets(e.table.meta.degrees, false);
      auto model = fit_max_linear(column_of(e.table, Column::RPower), d, false);
      for (const auto& p : model.pieces) o.require(slopes_in(p, d), e.file + ": piece outside D in " + describe(model));
      o.require(model.residual == 0, e.file + ": residual " + std::to_string(model.residual));
      auto ideals = e.problem.acting_ideals();
      auto rep = validate_out_of_sample(model, ideals, e.problem.relations(), Column::RPower, e.table.meta);
      for (const auto& pt : rep.points) {
        o.require(pt.observed == pt.predicted, e.file + ": out-of-sample " + vec(pt.a) + " predicted " +
                                                   std::to_string(pt.predicted));
      }
      o.notes.push_back(e.file + ": " + describe(model) + ", " + std::to_string(rep.points.size()) +
                        " out-of-sample points");
    }
    return o;
  });

  gate.run(3, "quotient-case fits on the corpus, closed form (2,3,-2)", 300, [&] {
    Outcome o;
    bool structural = true;
    for (const auto& e : corpus) {
      SlopeSets d0 = slope_sets(e.table.meta.degrees, true);
      auto model = fit_max_linear(column_of(e.table, Column::RQuotient), d0, true);
      bool all_d = false;
      for (const auto& p : model.pieces) {
        structural = structural && slopes_in(p, d0);
        o.require(slopes_in(p, d0), e.file + ": piece outside D u {0} in " + describe(model));
        all_d = all_d || std::none_of(p.slopes.begin(), p.slopes.end(), [](std::int64_t s) { return s == 0; });
      }
      structural = structural && all_d && model.residual == 0;
      o.require(all_d, e.file + ": no piece with all slopes in D");
      o.require(model.residual == 0, e.file + ": residual " + std::to_string(model.residual));
      auto ideals = e.problem.acting_ideals();
      auto rep = validate_out_of_sample(model, ideals, e.problem.relations(), Column::RQuotient, e.table.meta);
      for (const auto& pt : rep.points) {
        structural = structural && pt.observed == pt.predicted;
        o.require(pt.observed == pt.predicted, e.file + ": out-of-sample " + vec(pt.a) + " predicted " +
                                                   std::to_string(pt.predicted));
      }
      o.notes.push_back(e.file + ": " + describe(model));

      if (e.file == "two_principal.txt") {
        PiecewiseLinearModel stated{{{{2, 3}, -2}}, {1, 1}, 0, e.table.meta.seed};
        bool match = model == stated;
        o.require(match, "closed form: expected " + describe(stated) + ", fitted " + describe(model) +
                             " (I^a = (x^{2a1} y^{3a2}) is principal, M/I^aM has dimension 1 and r = 2a1+3a2-1)");
      }
    }
    o.known_defect = !o.pass && structural;
    return o;
  });

  gate.run(4, "stationarity of dim(I^a M) and dim(M/I^a M)", 0, [&] {
    Outcome o;
    for (const auto* group : {&corpus, &lines}) {
      for (const auto& e : *group) {
        auto rep = check_stationary(e.table);
        for (const auto& v : rep.violations) o.require(false, e.file + ": " + v);
      }
    }
    return o;
  });

  gate.run(5, "recursion identity on caps (4,4)", 0, [&] {
    Outcome o;
    for (const char* file : {"two_principal.txt", "mixed_degrees.txt"}) {
      ProblemFile p = load_problem(kData + "/" + file);
      auto ideals = p.acting_ideals();
      auto rep = recursion_check(ideals, p.relations(), {4, 4}, 0);
      o.require(rep.checked > 0, std::string(file) + ": nothing checked");
      for (const auto& mm : rep.mismatches) o.require(false, std::string(file) + ": mismatch at b=" + vec(mm.b));
      o.notes.push_back(std::string(file) + ": " + std::to_string(rep.checked) + " checked, " +
                        std::to_string(rep.skipped) + " skipped, " + std::to_string(rep.mismatches.size()) +
                        " mismatches");
    }
    return o;
  });

  gate.run(6, "Betti numbers and regularity", 0, [&] {
    Outcome o;
    auto r = std::make_shared<const Ring>(PrimeField(32003), std::vector<std::string>{"x", "y"});
    auto ideal = [&](std::initializer_list<const char*> gens) {
      std::vector<Polynomial> g;
      for (const char* t : gens) g.push_back(parse_polynomial(*r, t));
      return GradedIdeal(r, g);
    };
    BettiTable residue = koszul_betti(Subquotient::quotient_ring(ideal({"x", "y"})), 6);
    o.require(residue.entries == std::map<std::pair<int, Exponent>, std::uint64_t>{{{0, 0}, 1}, {{1, 1}, 2}, {{2, 2}, 1}},
              "betti(R/(x,y)) is not 1;2;1 at degrees 0;1;2");
    for (int d = 2; d <= 5; ++d) {
      Subquotient m = Subquotient::quotient_ring(GradedIdeal(r, {r->pow(r->variable(0), d)}));
      Regularity reg = regularity(m, certifying_degree_cap(m));
      o.require(reg.value == d - 1 && reg.certified, "reg(R/(x^" + std::to_string(d) + ")) = " +
                                                         (reg.value ? std::to_string(*reg.value) : "-inf"));
    }
    Subquotient fin = Subquotient::quotient_ring(ideal({"x^2", "x*y", "y^3"}));
    Regularity reg = regularity(fin, 6);
    BettiTable table = koszul_betti(fin, 6);
    std::optional<std::int64_t> from_betti;
    for (const auto& [key, beta] : table.entries) {
      std::int64_t v = key.second - key.first;
      if (!from_betti || v > *from_betti) from_betti = v;
    }
    o.require(reg.value == 2, "reg(R/(x^2,xy,y^3)) is not 2");
    o.require(from_betti == 2, "Betti table of R/(x^2,xy,y^3) gives reg " + (from_betti ? std::to_string(*from_betti) : "-inf"));
    o.require(reg.value == a_invariant(hs_subquotient(fin)), "reg differs from the a-invariant");
    return o;
  });

  gate.run(7, "Hilbert functions against the rank oracle, 20 ideals", 120, [&] {
    Outcome o;
    std::mt19937_64 rng(20240607);
    for (int it = 0; it < 20; ++it) {
      std::size_t n = 1 + rng() % 3;
      auto r = std::make_shared<const Ring>(32003, n);
      std::vector<Polynomial> gens;
      std::size_t count = 1 + rng() % 3;
      for (std::size_t g = 0; g < count; ++g) {
        gens.push_back(oracle::random_form(*r, 1 + static_cast<int>(rng() % 3), 1 + rng() % 4, rng));
      }
      HilbertSeries hs = hs_quotient_ring(GradedIdeal(r, gens));
      for (int j = 0; j <= 8; ++j) {
        BigInt fast = hf_eval(hs, j);
        std::int64_t slow = oracle::hilbert_function(*r, gens, j);
        o.require(fast == slow, "ideal " + std::to_string(it) + " degree " + std::to_string(j) + ": pipeline " +
                                    fast.str() + ", oracle " + std::to_string(slow));
      }
    }
    return o;
  });

  gate.run(8, "r-values stable under a second seed and p = 65537", 0, [&] {
    Outcome o;
    auto compare = [&](const Entry& base, const Entry& other, const std::string& label) {
      for (std::size_t k = 0; k < base.table.cells.size(); ++k) {
        const auto& x = base.table.cells[k];
        const auto& y = other.table.cells[k];
        o.require(x.r_power == y.r_power && x.r_quotient == y.r_quotient,
                  base.file + " " + label + ": r-values differ at a=" + vec(x.a));
      }
    };
    for (const auto* group : {&corpus, &lines}) {
      for (const auto& e : *group) {
        const int cap = e.table.meta.caps.front();
        compare(e, load_entry(e.file, cap, 0x5eed), "second seed");
        compare(e, load_entry(e.file, cap, 0, 65537), "p = 65537");
      }
    }
    return o;
  });

  return gate.exit_code();
}
