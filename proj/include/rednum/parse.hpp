#ifndef REDNUM_PARSE_HPP
#define REDNUM_PARSE_HPP

#include "rednum/polynomial.hpp"

#include <stdexcept>
#include <string_view>

namespace rednum {

class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Parses text such as "3*x1^2*x2 - x2^3 + (x1+x2)^2*x2" over the ring's
/// variables. Intermediate expressions may be inhomogeneous; the result must
/// not be.
Polynomial parse_polynomial(const Ring& ring, std::string_view text);

}  // namespace rednum

#endif  // REDNUM_PARSE_HPP
