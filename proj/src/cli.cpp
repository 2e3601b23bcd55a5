#include "rednum/cli.hpp"

#include "rednum/io.hpp"
#include "rednum/koszul.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace rednum {

namespace {

PowerVector parse_vector(const std::string& text, const char* what) {
  PowerVector out;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw std::invalid_argument(std::string("bad ") + what + " '" + text + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument(std::string("empty ") + what);
  return out;
}

std::string opt_str(const std::optional<std::int64_t>& v, const char* missing = "-inf") {
  return v ? std::to_string(*v) : missing;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

template <typename T>
std::string join_numbers(const std::vector<T>& v) {
  std::vector<std::string> parts;
  for (const auto& x : v) {
    std::ostringstream s;
    s << x;
    parts.push_back(s.str());
  }
  return join(parts, ",");
}

SweepTable read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_sweep_csv(in);
}

// Output target that is either a file or the given stream.
class Sink {
public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot write " + path);
      out_ = &file_;
    }
  }
  std::ostream& operator*() { return *out_; }

private:
  std::ofstream file_;
  std::ostream* out_;
};

struct Common {
  std::string problem;
  std::uint32_t prime = 0;

  ProblemFile load() const {
    return load_problem(problem, prime ? std::optional<std::uint32_t>(prime) : std::nullopt);
  }
};

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reduction numbers of graded modules over prime fields"};
  app.require_subcommand(1);
  Common common;
  std::function<int()> action;

  auto problem_command = [&](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("problem", common.problem, "problem file")->required();
    sub->add_option("--prime", common.prime, "override the field modulus");
    return sub;
  };

  // gb
  std::string ideal_name;
  CLI::App* gb = problem_command("gb", "reduced Groebner bases of the declared ideals");
  gb->add_option("--ideal", ideal_name, "only this ideal");
  gb->callback([&] {
    action = [&] {
      ProblemFile p = common.load();
      for (const auto& d : p.declared) {
        if (!ideal_name.empty() && d.name != ideal_name) continue;
        std::vector<std::string> parts;
        for (const auto& g : d.ideal.groebner_basis()) parts.push_back(p.ring->to_string(g));
        out << d.name << ": " << (parts.empty() ? "0" : join(parts, ", ")) << "\n";
      }
      if (!ideal_name.empty()) p.ideal(ideal_name);
      return kExitOk;
    };
  });

  // hilbert
  int upto = 10;
  CLI::App* hilbert = problem_command("hilbert", "Hilbert series of R/K, or of R/NAME with --ideal");
  hilbert->add_option("--ideal", ideal_name, "quotient by this ideal instead of K");
  hilbert->add_option("--upto", upto, "print the Hilbert function up to this degree")->check(CLI::NonNegativeNumber);
  hilbert->callback([&] {
    action = [&] {
      ProblemFile p = common.load();
      HilbertSeries hs = hs_quotient_ring(ideal_name.empty() ? p.relations() : p.ideal(ideal_name));
      out << "numerator: " << join_numbers(hs.numerator()) << "\n";
      out << "denominator_exponent: " << hs.denominator_exponent() << "\n";
      out << "reduced: " << join_numbers(hs.reduced()) << "\n";
      auto dim = krull_dim(hs);
      out << "krull_dim: " << (dim ? std::to_string(*dim) : "empty") << "\n";
      out << "a_invariant: " << (hs.pole_order() > 0 ? "infinite" : opt_str(a_invariant(hs))) << "\n";
      std::vector<BigInt> hf;
      for (int j = 0; j <= upto; ++j) hf.push_back(hf_eval(hs, j));
      out << "hf: " << join_numbers(hf) << "\n";
      return kExitOk;
    };
  });

  // rnum
  std::string target = "power", a_text;
  int trials = 5;
  std::uint64_t seed = 0;
  CLI::App* rnum = problem_command("rnum", "reduction number of I^a M or M / I^a M");
  rnum->add_option("--target", target, "power or quotient")->check(CLI::IsMember({"power", "quotient"}));
  rnum->add_option("--a", a_text, "exponent vector, comma separated")->required();
  rnum->add_option("--trials", trials, "sampled reductions")->check(CLI::PositiveNumber);
  rnum->add_option("--seed", seed, "random seed");
  rnum->callback([&] {
    action = [&] {
      ProblemFile p = common.load();
      auto ideals = p.acting_ideals();
      PowerVector a = parse_vector(a_text, "exponent vector");
      ReductionOptions opts{trials, 20, seed};
      auto r = target == "power" ? r_power(ideals, p.relations(), a, opts) : r_quotient(ideals, p.relations(), a, opts);
      out << (r.zero_module ? "zero-module" : opt_str(r.value)) << "\n";
      err << "# seed=" << seed << " trials=" << r.trials << " p=" << p.ring->field().modulus()
          << " dim=" << (r.zero_module ? "empty" : std::to_string(r.dim_module)) << " witness_seed=" << r.witness_seed
          << "\n";
      return kExitOk;
    };
  });

  // betti
  int maxdeg = -1;
  CLI::App* betti = problem_command("betti", "graded Betti numbers and regularity of M, or of I^a M with --a");
  betti->add_option("--maxdeg", maxdeg, "largest internal degree (default: certifying bound)");
  betti->add_option("--a", a_text, "use I^a M");
  betti->callback([&] {
    action = [&] {
      ProblemFile p = common.load();
      GradedIdeal rel = p.relations();
      std::optional<Subquotient> m;
      if (a_text.empty()) {
        m.emplace(Subquotient::quotient_ring(rel));
      } else {
        auto ideals = p.acting_ideals();
        m.emplace(multipower(p.ring, ideals, parse_vector(a_text, "exponent vector")), rel);
      }
      Exponent cap = maxdeg >= 0 ? maxdeg : certifying_degree_cap(*m);
      BettiTable t = koszul_betti(*m, cap);
      out << "i j beta\n";
      for (const auto& [key, beta] : t.entries) out << key.first << ' ' << key.second << ' ' << beta << "\n";
      Regularity reg = regularity(*m, cap);
      out << "reg " << opt_str(reg.value) << ' ' << (reg.certified ? "certified" : "lower-bound") << "\n";
      return kExitOk;
    };
  });

  // sweep
  std::string caps_text, out_path;
  bool with_reg = false;
  CLI::App* sw = problem_command("sweep", "tabulate r(I^a M) and r(M / I^a M) over a grid");
  sw->add_option("--caps", caps_text, "grid caps, comma separated")->required();
  sw->add_option("--trials", trials, "sampled reductions per cell")->check(CLI::PositiveNumber);
  sw->add_option("--seed", seed, "random seed");
  sw->add_flag("--with-reg", with_reg, "also compute reg(I^a M)");
  sw->add_option("--out", out_path, "CSV output file (default stdout)");
  sw->callback([&] {
    action = [&] {
      ProblemFile p = common.load();
      auto ideals = p.acting_ideals();
      SweepOptions opts;
      opts.caps = parse_vector(caps_text, "caps");
      opts.trials = trials;
      opts.seed = seed;
      opts.with_reg = with_reg;
      SweepTable t = sweep(ideals, p.relations(), opts);
      Sink sink(out_path, out);
      write_sweep_csv(*sink, t);
      auto rep = check_stationary(t);
      err << "stationary: " << (rep.ok() ? "yes" : "no") << "\n";
      for (const auto& v : rep.violations) err << "  " << v << "\n";
      return kExitOk;
    };
  });

  // stationary
  std::string in_path;
  CLI::App* st = app.add_subcommand("stationary", "check the dimension columns of a sweep table");
  st->add_option("--in", in_path, "sweep CSV")->required();
  st->callback([&] {
    action = [&] {
      auto rep = check_stationary(read_table(in_path));
      out << "dim_power non-increasing: " << (rep.dim_power_nonincreasing ? "yes" : "no") << "\n";
      out << "dim_power constant on top: " << (rep.dim_power_constant_on_top ? "yes" : "no") << "\n";
      out << "dim_quotient constant: " << (rep.dim_quotient_constant ? "yes" : "no") << "\n";
      for (const auto& v : rep.violations) out << "violation: " << v << "\n";
      return rep.ok() ? kExitOk : kExitError;
    };
  });

  // fit
  std::string column = "r_power", slopes = "D", verify;
  bool require_all_d = false;
  std::size_t verify_points = 10;
  CLI::App* fit = app.add_subcommand("fit", "fit a maximum of linear functions to a sweep column");
  fit->add_option("--in", in_path, "sweep CSV")->required();
  fit->add_option("--column", column, "column to fit")
      ->check(CLI::IsMember({"r_power", "r_quotient", "reg_power", "dim_power", "dim_quotient"}));
  fit->add_option("--slopes", slopes, "D or D0 (D with 0 added)")->check(CLI::IsMember({"D", "D0"}));
  fit->add_flag("--require-one-all-D", require_all_d, "some piece must have all slopes in D");
  fit->add_option("--verify", verify, "problem file for an out-of-sample check at caps + 1");
  fit->add_option("--verify-points", verify_points, "points in the out-of-sample check");
  fit->add_option("--out", out_path, "JSON output file (default stdout)");
  fit->callback([&] {
    action = [&] {
      SweepTable t = read_table(in_path);
      Column col = parse_column(column);
      PiecewiseLinearModel model = fit_max_linear(column_of(t, col), slope_sets(t.meta.degrees, slopes == "D0"), require_all_d);
      if (!verify.empty()) {
        ProblemFile p = load_problem(verify, t.meta.p);
        auto ideals = p.acting_ideals();
        auto rep = validate_out_of_sample(model, ideals, p.relations(), col, t.meta, verify_points);
        for (const auto& pt : rep.points) {
          err << "verify " << join_numbers(pt.a) << ": observed " << opt_str(pt.observed, "zero-module")
              << " predicted " << pt.predicted << "\n";
        }
        if (!rep.ok()) {
          err << "out-of-sample check failed\n";
          throw NotYetAsymptotic();
        }
      }
      Sink sink(out_path, out);
      *sink << model_json(model) << "\n";
      return kExitOk;
    };
  });

  // rho
  CLI::App* rho = app.add_subcommand("rho", "stabilized slopes along each axis through the grid corner");
  rho->add_option("--in", in_path, "sweep CSV")->required();
  rho->add_option("--column", column, "column")
      ->check(CLI::IsMember({"r_power", "r_quotient", "reg_power"}));
  rho->add_option("--slopes", slopes, "D or D0")->check(CLI::IsMember({"D", "D0"}));
  rho->callback([&] {
    action = [&] {
      SweepTable t = read_table(in_path);
      auto rep = rho_report(column_of(t, parse_column(column)), slope_sets(t.meta.degrees, slopes == "D0"));
      for (const auto& ax : rep.axes) {
        out << "axis " << ax.axis + 1 << ": ";
        if (!ax.stabilized) {
          out << "not stabilized\n";
          continue;
        }
        out << "slope " << *ax.slope << ' ' << (ax.in_set ? "in" : "not in") << ' ' << slopes << "\n";
      }
      if (!rep.stabilized()) throw NotYetAsymptotic();
      return kExitOk;
    };
  });

  // recursion-check
  CLI::App* rc = problem_command("recursion-check", "check the step identity for r(M / I^b M) with a fixed J");
  rc->add_option("--caps", caps_text, "grid caps, comma separated")->required();
  rc->add_option("--seed", seed, "random seed");
  rc->callback([&] {
    action = [&] {
      ProblemFile p = common.load();
      auto ideals = p.acting_ideals();
      auto rep = recursion_check(ideals, p.relations(), parse_vector(caps_text, "caps"), seed);
      out << "checked " << rep.checked << " skipped " << rep.skipped << " mismatches " << rep.mismatches.size() << "\n";
      for (const auto& [dim, sd] : rep.systems) out << "system dim " << dim << " seed " << sd << "\n";
      for (const auto& mm : rep.mismatches) {
        out << "mismatch b=" << join_numbers(mm.b) << " axis " << mm.axis + 1 << ": lhs " << opt_str(mm.lhs)
            << " previous " << opt_str(mm.previous) << " a(U) " << opt_str(mm.a_u) << "\n";
      }
      return rep.mismatches.empty() ? kExitOk : kExitError;
    };
  });

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    return action ? action() : kExitError;
  } catch (const NotYetAsymptotic& e) {
    err << e.what() << "\n";
    return kExitNotAsymptotic;
  } catch (const GenericityFailure& e) {
    err << e.what() << "\n";
    return kExitGenericity;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace rednum
