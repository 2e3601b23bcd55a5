#include "rednum/io.hpp"

#include "rednum/parse.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace rednum {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

// Splits on commas outside parentheses.
std::vector<std::string> split_top_level(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

template <typename T>
bool parse_int(const std::string& s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

struct IdealLine {
  std::size_t line;
  std::string name;
  std::vector<std::string> gens;
};

}  // namespace

const GradedIdeal& ProblemFile::ideal(const std::string& name) const {
  for (const auto& d : declared) {
    if (d.name == name) return d.ideal;
  }
  throw std::invalid_argument("unknown ideal '" + name + "'");
}

GradedIdeal ProblemFile::relations() const {
  return relations_name == "0" ? GradedIdeal::zero(ring) : ideal(relations_name);
}

std::vector<GradedIdeal> ProblemFile::acting_ideals() const {
  std::vector<GradedIdeal> out;
  for (const auto& d : declared) {
    if (d.name != relations_name) out.push_back(d.ideal);
  }
  return out;
}

ProblemFile parse_problem(std::istream& in, std::optional<std::uint32_t> modulus) {
  std::optional<std::pair<std::size_t, std::uint32_t>> field;
  std::optional<std::pair<std::size_t, std::vector<std::string>>> vars;
  std::vector<IdealLine> ideals;
  std::optional<std::size_t> module_line;
  ProblemFile out;

  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    std::size_t sp = line.find_first_of(" \t");
    std::string keyword = line.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : trim(line.substr(sp));

    if (keyword == "field") {
      if (field) throw ProblemError(lineno, "duplicate field statement");
      std::uint32_t p = 0;
      if (!parse_int(rest, p)) throw ProblemError(lineno, "field expects an integer modulus");
      if (!is_prime(p) || p >= (1u << 31)) throw ProblemError(lineno, "field modulus " + rest + " is not a prime below 2^31");
      field.emplace(lineno, p);
    } else if (keyword == "vars") {
      if (vars) throw ProblemError(lineno, "duplicate vars statement");
      std::vector<std::string> names;
      for (auto& v : split_top_level(rest)) {
        if (!is_identifier(v)) throw ProblemError(lineno, "invalid variable name '" + v + "'");
        if (std::find(names.begin(), names.end(), v) != names.end()) {
          throw ProblemError(lineno, "duplicate variable '" + v + "'");
        }
        names.push_back(v);
      }
      vars.emplace(lineno, std::move(names));
    } else if (keyword == "ideal") {
      auto colon = rest.find(':');
      if (colon == std::string::npos) throw ProblemError(lineno, "expected 'ideal NAME: generators'");
      std::string name = trim(rest.substr(0, colon));
      if (!is_identifier(name)) throw ProblemError(lineno, "invalid ideal name '" + name + "'");
      for (const auto& d : ideals) {
        if (d.name == name) throw ProblemError(lineno, "duplicate ideal '" + name + "'");
      }
      std::string body = trim(rest.substr(colon + 1));
      std::vector<std::string> gens;
      if (body != "0") gens = split_top_level(body);
      for (const auto& g : gens) {
        if (g.empty()) throw ProblemError(lineno, "empty generator");
      }
      ideals.push_back({lineno, name, std::move(gens)});
    } else if (keyword == "module") {
      if (module_line) throw ProblemError(lineno, "more than one module declaration");
      auto colon = rest.find(':');
      if (colon == std::string::npos) throw ProblemError(lineno, "expected 'module NAME: quotient K'");
      out.module_name = trim(rest.substr(0, colon));
      if (!is_identifier(out.module_name)) throw ProblemError(lineno, "invalid module name '" + out.module_name + "'");
      std::istringstream body(rest.substr(colon + 1));
      std::string kind, target, extra;
      body >> kind >> target;
      if (kind != "quotient" || target.empty() || (body >> extra)) {
        throw ProblemError(lineno, "expected 'quotient K' or 'quotient 0'");
      }
      out.relations_name = target;
      module_line = lineno;
    } else {
      throw ProblemError(lineno, "unknown statement '" + keyword + "'");
    }
  }

  if (!vars) throw ProblemError(lineno, "missing vars statement");
  if (!module_line) throw ProblemError(lineno, "missing module declaration");
  std::uint32_t p = modulus ? *modulus : field ? field->second : 32003;
  try {
    out.ring = std::make_shared<const Ring>(PrimeField(p), vars->second);
  } catch (const std::invalid_argument& e) {
    throw ProblemError(field ? field->first : vars->first, e.what());
  }
  for (const auto& d : ideals) {
    std::vector<Polynomial> gens;
    for (const auto& g : d.gens) {
      try {
        gens.push_back(parse_polynomial(*out.ring, g));
      } catch (const ParseError& e) {
        throw ProblemError(d.line, std::string(e.what()) + " in '" + g + "'");
      }
    }
    out.declared.push_back({d.name, GradedIdeal(out.ring, std::move(gens))});
  }
  if (out.relations_name != "0") {
    bool known = std::any_of(ideals.begin(), ideals.end(), [&](const IdealLine& d) { return d.name == out.relations_name; });
    if (!known) throw ProblemError(*module_line, "unknown ideal '" + out.relations_name + "'");
  }
  return out;
}

ProblemFile load_problem(const std::string& path, std::optional<std::uint32_t> modulus) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_problem(in, modulus);
}

namespace {

std::string join_ints(const PowerVector& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

template <typename T>
std::string token(const std::optional<T>& v, const char* missing) {
  return v ? std::to_string(*v) : missing;
}

std::string flag_string(unsigned flags) {
  std::vector<std::string> names;
  if (flags & kZeroPower) names.emplace_back("zero-module-power");
  if (flags & kZeroQuotient) names.emplace_back("zero-module-quotient");
  if (flags & kRegLowerBound) names.emplace_back("reg-lower-bound");
  std::string s;
  for (std::size_t i = 0; i < names.size(); ++i) s += (i ? "|" : "") + names[i];
  return s;
}

unsigned parse_flags(const std::string& s, std::size_t line) {
  unsigned flags = 0;
  if (s.empty()) return flags;
  for (const auto& f : split(s, '|')) {
    if (f == "zero-module-power") flags |= kZeroPower;
    else if (f == "zero-module-quotient") flags |= kZeroQuotient;
    else if (f == "reg-lower-bound") flags |= kRegLowerBound;
    else throw ProblemError(line, "unknown flag '" + f + "'");
  }
  return flags;
}

template <typename T>
std::optional<T> parse_token(const std::string& s, const char* missing, std::size_t line) {
  if (s == missing) return std::nullopt;
  T v{};
  if (!parse_int(s, v)) throw ProblemError(line, "bad value '" + s + "'");
  return v;
}

PowerVector parse_int_list(const std::string& s, char sep, std::size_t line) {
  PowerVector out;
  for (const auto& t : split(s, sep)) {
    int v = 0;
    if (!parse_int(trim(t), v)) throw ProblemError(line, "bad integer list '" + s + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

void write_sweep_csv(std::ostream& out, const SweepTable& table) {
  const auto& m = table.meta;
  out << "# seed=" << m.seed << "\n";
  out << "# trials=" << m.trials << "\n";
  out << "# p=" << m.p << "\n";
  out << "# D=";
  for (std::size_t i = 0; i < m.degrees.size(); ++i) {
    if (i) out << ';';
    out << join_ints(PowerVector(m.degrees[i].begin(), m.degrees[i].end()), ',');
  }
  out << "\n# caps=" << join_ints(m.caps, ',') << "\n";
  for (std::size_t i = 0; i < m.caps.size(); ++i) out << 'a' << i + 1 << ',';
  out << "dim_power,dim_quotient,r_power,r_quotient," << (m.with_reg ? "reg_power," : "") << "witness_seed,flags\n";
  for (const auto& c : table.cells) {
    out << join_ints(c.a, ',') << ',' << token(c.dim_power, "empty") << ',' << token(c.dim_quotient, "empty") << ','
        << token(c.r_power, "zero-module") << ',' << token(c.r_quotient, "zero-module") << ',';
    if (m.with_reg) out << token(c.reg_power, "-inf") << ',';
    out << c.witness_seed << ',' << flag_string(c.flags) << "\n";
  }
}

SweepTable read_sweep_csv(std::istream& in) {
  SweepTable t;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  bool have_caps = false;
  std::size_t m = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(2, eq - 2), value = line.substr(eq + 1);
      if (key == "seed") {
        if (!parse_int(value, t.meta.seed)) throw ProblemError(lineno, "bad seed");
      } else if (key == "trials") {
        if (!parse_int(value, t.meta.trials)) throw ProblemError(lineno, "bad trials");
      } else if (key == "p") {
        if (!parse_int(value, t.meta.p)) throw ProblemError(lineno, "bad modulus");
      } else if (key == "D") {
        t.meta.degrees.clear();
        for (const auto& part : split(value, ';')) {
          PowerVector d = parse_int_list(part, ',', lineno);
          t.meta.degrees.emplace_back(d.begin(), d.end());
        }
      } else if (key == "caps") {
        t.meta.caps = parse_int_list(value, ',', lineno);
        have_caps = true;
      }
      continue;
    }
    auto fields = split(line, ',');
    if (!have_header) {
      if (!have_caps) throw ProblemError(lineno, "caps metadata missing before header");
      m = t.meta.caps.size();
      t.meta.with_reg = std::find(fields.begin(), fields.end(), "reg_power") != fields.end();
      const std::size_t expect = m + 6 + (t.meta.with_reg ? 1 : 0);
      if (fields.size() != expect || fields[m] != "dim_power") throw ProblemError(lineno, "unexpected header");
      have_header = true;
      continue;
    }
    const std::size_t expect = m + 6 + (t.meta.with_reg ? 1 : 0);
    if (fields.size() != expect) throw ProblemError(lineno, "expected " + std::to_string(expect) + " fields");
    CellRecord c;
    for (std::size_t i = 0; i < m; ++i) {
      int v = 0;
      if (!parse_int(fields[i], v)) throw ProblemError(lineno, "bad exponent '" + fields[i] + "'");
      c.a.push_back(v);
    }
    std::size_t k = m;
    c.dim_power = parse_token<int>(fields[k++], "empty", lineno);
    c.dim_quotient = parse_token<int>(fields[k++], "empty", lineno);
    c.r_power = parse_token<std::int64_t>(fields[k++], "zero-module", lineno);
    c.r_quotient = parse_token<std::int64_t>(fields[k++], "zero-module", lineno);
    if (t.meta.with_reg) c.reg_power = parse_token<std::int64_t>(fields[k++], "-inf", lineno);
    if (!parse_int(fields[k++], c.witness_seed)) throw ProblemError(lineno, "bad witness seed");
    c.flags = parse_flags(fields[k], lineno);
    t.cells.push_back(std::move(c));
  }
  if (!have_header) throw ProblemError(lineno, "missing header");
  std::size_t expected = 1;
  for (int c : t.meta.caps) expected *= static_cast<std::size_t>(std::max(c, 0));
  if (t.cells.size() != expected) throw ProblemError(lineno, "table is not a full grid");
  for (std::size_t k = 0; k < t.cells.size(); ++k) {
    if (t.index(t.cells[k].a) != k) throw ProblemError(lineno, "rows are not in grid order");
  }
  return t;
}

std::string model_json(const PiecewiseLinearModel& model) {
  nlohmann::ordered_json j;
  j["pieces"] = nlohmann::ordered_json::array();
  for (const auto& p : model.pieces) {
    nlohmann::ordered_json piece;
    piece["slopes"] = p.slopes;
    piece["intercept"] = p.intercept;
    j["pieces"].push_back(piece);
  }
  j["threshold"] = model.threshold;
  j["residual"] = model.residual;
  j["source_seed"] = model.source_seed;
  return j.dump();
}

PiecewiseLinearModel parse_model_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  PiecewiseLinearModel m;
  for (const auto& p : j.at("pieces")) {
    m.pieces.push_back({p.at("slopes").get<std::vector<std::int64_t>>(), p.at("intercept").get<std::int64_t>()});
  }
  m.threshold = j.at("threshold").get<PowerVector>();
  m.residual = j.at("residual").get<std::int64_t>();
  m.source_seed = j.at("source_seed").get<std::uint64_t>();
  return m;
}

}  // namespace rednum
