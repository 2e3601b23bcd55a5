#ifndef REDNUM_IO_HPP
#define REDNUM_IO_HPP

#include "rednum/asympt.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rednum {

class ProblemError : public std::runtime_error {
public:
  ProblemError(std::size_t line, const std::string& what)
      : std::runtime_error(what + ", line " + std::to_string(line)), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

struct NamedIdeal {
  std::string name;
  GradedIdeal ideal;
};

/// Problem description:
///
///   # comment
///   field 32003
///   vars x, y
///   ideal I1: x^2, x*y
///   ideal K: x*y^2
///   module M: quotient K        (or "quotient 0")
///
/// Every declared ideal other than the module's K acts as one I_i, in
/// declaration order.
struct ProblemFile {
  RingPtr ring;
  std::vector<NamedIdeal> declared;
  std::string module_name;
  /// Name of K, or "0".
  std::string relations_name;

  GradedIdeal relations() const;
  std::vector<GradedIdeal> acting_ideals() const;
  const GradedIdeal& ideal(const std::string& name) const;
};

/// `modulus` replaces the field statement when given.
ProblemFile parse_problem(std::istream& in, std::optional<std::uint32_t> modulus = std::nullopt);
ProblemFile load_problem(const std::string& path, std::optional<std::uint32_t> modulus = std::nullopt);

void write_sweep_csv(std::ostream& out, const SweepTable& table);
SweepTable read_sweep_csv(std::istream& in);

std::string model_json(const PiecewiseLinearModel& model);
PiecewiseLinearModel parse_model_json(const std::string& text);

}  // namespace rednum

#endif  // REDNUM_IO_HPP
