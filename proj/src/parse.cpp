#include "rednum/parse.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace rednum {

namespace {

// Possibly inhomogeneous intermediate value, normalized: sorted, combined.
using RawPoly = std::vector<Term>;

class Parser {
public:
  Parser(const Ring& ring, std::string_view text) : ring_(ring), text_(text) {}

  RawPoly parse_all() {
    RawPoly r = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return r;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("malformed polynomial at column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RawPoly normalize(RawPoly p) const {
    std::sort(p.begin(), p.end(), [](const Term& a, const Term& b) {
      return degrevlex_compare(a.mono, b.mono) > 0;
    });
    RawPoly out;
    for (auto& t : p) {
      if (!out.empty() && out.back().mono == t.mono) {
        out.back().coef = ring_.field().add(out.back().coef, t.coef);
        if (out.back().coef == 0) out.pop_back();
      } else if (t.coef != 0) {
        out.push_back(std::move(t));
      }
    }
    return out;
  }

  RawPoly multiply(const RawPoly& a, const RawPoly& b) const {
    RawPoly out;
    out.reserve(a.size() * b.size());
    for (const auto& s : a) {
      for (const auto& t : b) out.push_back(Term{s.mono * t.mono, ring_.field().mul(s.coef, t.coef)});
    }
    return normalize(std::move(out));
  }

  RawPoly expr() {
    RawPoly acc;
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    for (;;) {
      RawPoly t = term();
      if (negate) {
        for (auto& x : t) x.coef = ring_.field().neg(x.coef);
      }
      acc.insert(acc.end(), t.begin(), t.end());
      if (accept('+')) {
        negate = false;
      } else if (accept('-')) {
        negate = true;
      } else {
        break;
      }
    }
    return normalize(std::move(acc));
  }

  RawPoly term() {
    RawPoly acc = factor();
    while (accept('*')) acc = multiply(acc, factor());
    return acc;
  }

  std::uint64_t integer() {
    skip_ws();
    std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > (std::uint64_t{1} << 60)) fail("integer too large");
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) fail("expected integer");
    return v;
  }

  RawPoly power(RawPoly base) {
    if (!accept('^')) return base;
    std::uint64_t e = integer();
    if (e > (1u << 30)) fail("exponent too large");
    RawPoly r{Term{Monomial(ring_.nvars()), 1}};
    for (std::uint64_t i = 0; i < e; ++i) r = multiply(r, base);
    return r;
  }

  RawPoly factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RawPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return power(std::move(inner));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t v = integer();
      Coeff k = static_cast<Coeff>(v % ring_.modulus());
      RawPoly r;
      if (k != 0) r.push_back(Term{Monomial(ring_.nvars()), k});
      return power(std::move(r));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string_view name = text_.substr(start, pos_ - start);
      auto idx = ring_.variable_index(name);
      if (!idx) throw ParseError("unknown variable '" + std::string(name) + "'");
      RawPoly r{Term{Monomial::variable(ring_.nvars(), *idx), 1}};
      if (accept('^')) {
        std::uint64_t e = integer();
        if (e > (1u << 30)) fail("exponent too large");
        r.front().mono.set(*idx, static_cast<Exponent>(e));
      }
      return r;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const Ring& ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const Ring& ring, std::string_view text) {
  RawPoly raw = Parser(ring, text).parse_all();
  try {
    return ring.from_terms(std::move(raw));
  } catch (const DegreeMismatch& e) {
    throw ParseError(e.what());
  }
}

}  // namespace rednum
