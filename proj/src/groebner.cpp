#include "rednum/groebner.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace rednum {

MonomialIdeal::MonomialIdeal(std::size_t nvars, std::vector<Monomial> gens) : nvars_(nvars) {
  std::sort(gens.begin(), gens.end(), DegRevLexLess{});
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  for (auto& g : gens) {
    if (g.nvars() != nvars) throw std::invalid_argument("monomial arity");
    bool redundant = false;
    // earlier elements have degree <= deg g, so only they can divide g
    for (const auto& k : gens_) {
      if (k.divides(g)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) gens_.push_back(std::move(g));
  }
}

bool MonomialIdeal::contains(const Monomial& m) const {
  for (const auto& g : gens_) {
    if (g.degree() > m.degree()) break;
    if (g.divides(m)) return true;
  }
  return false;
}

std::vector<Monomial> MonomialIdeal::standard_monomials(Exponent j) const {
  std::vector<Monomial> out;
  for (auto& m : monomials_of_degree(nvars_, j)) {
    if (!contains(m)) out.push_back(std::move(m));
  }
  return out;
}

namespace {

const Polynomial* find_divisor(std::span<const Polynomial> gb, const Monomial& m) {
  for (const auto& g : gb) {
    const Monomial& lt = g.leading_monomial();
    if (lt.degree() > m.degree()) continue;
    if (lt.divides(m)) return &g;
  }
  return nullptr;
}

// work[from..] - c * m * (g without its leading term)
std::vector<Term> merge_sub(const PrimeField& field, const std::vector<Term>& work,
                            std::size_t from, Coeff c, const Monomial& m, const Polynomial& g) {
  const Coeff nc = field.neg(c);
  const auto& b = g.terms();
  std::vector<Term> out;
  out.reserve(work.size() - from + b.size());
  std::size_t i = from, j = 1;
  while (i < work.size() && j < b.size()) {
    Monomial bm = b[j].mono * m;
    int cmp = degrevlex_compare(work[i].mono, bm);
    if (cmp > 0) {
      out.push_back(work[i++]);
    } else if (cmp < 0) {
      out.push_back(Term{std::move(bm), field.mul(b[j++].coef, nc)});
    } else {
      Coeff s = field.add(work[i].coef, field.mul(b[j].coef, nc));
      if (s != 0) out.push_back(Term{std::move(bm), s});
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), work.begin() + static_cast<std::ptrdiff_t>(i), work.end());
  for (; j < b.size(); ++j) out.push_back(Term{b[j].mono * m, field.mul(b[j].coef, nc)});
  return out;
}

}  // namespace

Polynomial normal_form(const Ring& ring, const Polynomial& f, std::span<const Polynomial> gb) {
  const PrimeField& field = ring.field();
  std::vector<Term> rest;
  std::vector<Term> work = f.terms();
  std::size_t pos = 0;
  while (pos < work.size()) {
    const Term& lt = work[pos];
    const Polynomial* g = find_divisor(gb, lt.mono);
    if (g == nullptr) {
      rest.push_back(lt);
      ++pos;
      continue;
    }
    Coeff c = lt.coef;
    if (g->leading_coeff() != 1) c = field.mul(c, field.inv(g->leading_coeff()));
    Monomial m = lt.mono / g->leading_monomial();
    work = merge_sub(field, work, pos + 1, c, m, *g);
    pos = 0;
  }
  return ring.from_terms(std::move(rest));
}

namespace {

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

class Buchberger {
public:
  explicit Buchberger(const Ring& ring) : ring_(ring) {}

  std::vector<Polynomial> run(std::vector<Polynomial> gens) {
    std::vector<Polynomial> inputs;
    for (auto& g : gens) {
      if (g.is_zero()) continue;
      if (g.leading_monomial().nvars() != ring_.nvars()) {
        throw std::invalid_argument("generator arity does not match ring");
      }
      if (*g.degree() == 0) return {ring_.one()};
      inputs.push_back(ring_.monic(g));
    }
    std::stable_sort(inputs.begin(), inputs.end(), [](const Polynomial& a, const Polynomial& b) {
      return *a.degree() < *b.degree();
    });
    std::size_t next_input = 0;
    while (next_input < inputs.size() || !pairs_.empty()) {
      Exponent d = std::numeric_limits<Exponent>::max();
      if (next_input < inputs.size()) d = *inputs[next_input].degree();
      for (const auto& p : pairs_) d = std::min(d, p.lcm.degree());

      std::vector<Pair> todo;
      std::vector<Pair> later;
      for (auto& p : pairs_) (p.lcm.degree() == d ? todo : later).push_back(std::move(p));
      pairs_ = std::move(later);
      std::sort(todo.begin(), todo.end(), [](const Pair& a, const Pair& b) {
        int c = degrevlex_compare(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        return std::tie(a.i, a.j) < std::tie(b.i, b.j);
      });

      std::vector<Polynomial> candidates;
      for (const auto& p : todo) candidates.push_back(spoly(p));
      while (next_input < inputs.size() && *inputs[next_input].degree() == d) {
        candidates.push_back(std::move(inputs[next_input++]));
      }
      for (const auto& c : candidates) {
        Polynomial r = normal_form(ring_, c, basis_);
        if (!r.is_zero()) insert(ring_.monic(r));
      }
    }
    return finish();
  }

private:
  Polynomial spoly(const Pair& p) const {
    const Polynomial& f = basis_[p.i];
    const Polynomial& g = basis_[p.j];
    Polynomial a = ring_.mul_term(f, p.lcm / f.leading_monomial(), 1);
    return ring_.sub_mul_term(a, 1, p.lcm / g.leading_monomial(), g);
  }

  // Gebauer-Moeller pair update for a new basis element.
  void insert(Polynomial h) {
    const std::size_t k = basis_.size();
    const Monomial& lh = h.leading_monomial();

    std::vector<Pair> c;
    for (std::size_t i = 0; i < k; ++i) c.push_back(Pair{i, k, lcm(basis_[i].leading_monomial(), lh)});
    std::vector<Pair> d;
    for (std::size_t idx = 0; idx < c.size(); ++idx) {
      const Pair& p = c[idx];
      bool keep = basis_[p.i].leading_monomial().coprime(lh);
      if (!keep) {
        keep = true;
        for (std::size_t r = idx + 1; r < c.size() && keep; ++r) {
          if (c[r].lcm.divides(p.lcm)) keep = false;
        }
        for (std::size_t r = 0; r < d.size() && keep; ++r) {
          if (d[r].lcm.divides(p.lcm)) keep = false;
        }
      }
      if (keep) d.push_back(p);
    }

    std::vector<Pair> kept;
    for (auto& p : pairs_) {
      bool drop = lh.divides(p.lcm) &&
                  lcm(basis_[p.i].leading_monomial(), lh) != p.lcm &&
                  lcm(basis_[p.j].leading_monomial(), lh) != p.lcm;
      if (!drop) kept.push_back(std::move(p));
    }
    pairs_ = std::move(kept);
    for (auto& p : d) {
      if (!basis_[p.i].leading_monomial().coprime(lh)) pairs_.push_back(std::move(p));
    }
    basis_.push_back(std::move(h));
  }

  std::vector<Polynomial> finish() {
    // Homogeneous degree-ordered insertion leaves a minimal basis; reduce
    // tails against the other elements.
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      std::vector<Polynomial> others;
      for (std::size_t j = 0; j < basis_.size(); ++j) {
        if (j != i) others.push_back(basis_[j]);
      }
      out.push_back(ring_.monic(normal_form(ring_, basis_[i], others)));
    }
    std::sort(out.begin(), out.end(), [](const Polynomial& a, const Polynomial& b) {
      return degrevlex_compare(a.leading_monomial(), b.leading_monomial()) < 0;
    });
    return out;
  }

  const Ring& ring_;
  std::vector<Polynomial> basis_;
  std::vector<Pair> pairs_;
};

}  // namespace

std::vector<Polynomial> buchberger(const Ring& ring, std::vector<Polynomial> gens) {
  return Buchberger(ring).run(std::move(gens));
}

MonomialIdeal initial_ideal(std::size_t nvars, std::span<const Polynomial> gb) {
  std::vector<Monomial> lts;
  for (const auto& g : gb) lts.push_back(g.leading_monomial());
  return MonomialIdeal(nvars, std::move(lts));
}

MinimalGenerators minimalize(const Ring& ring, std::vector<Polynomial> gens) {
  std::vector<Polynomial> input;
  for (auto& g : gens) {
    if (!g.is_zero()) input.push_back(ring.monic(g));
  }
  std::stable_sort(input.begin(), input.end(), [](const Polynomial& a, const Polynomial& b) {
    return *a.degree() < *b.degree();
  });
  MinimalGenerators out;
  std::vector<Polynomial> gb;
  for (auto& g : input) {
    if (!normal_form(ring, g, gb).is_zero()) {
      out.degrees.push_back(*g.degree());
      out.generators.push_back(std::move(g));
      gb = buchberger(ring, out.generators);
    }
  }
  return out;
}

std::vector<Polynomial> prune_linearly_dependent(const Ring& ring, std::vector<Polynomial> gens) {
  // echelon rows per degree, keyed by leading monomial
  std::map<Exponent, std::vector<Polynomial>> rows;
  std::vector<Polynomial> out;
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    auto& echelon = rows[*g.degree()];
    Polynomial r = normal_form(ring, g, echelon);
    // normal_form against same-degree rows is plain Gaussian elimination:
    // a degree-d leading monomial divides a degree-d term only when equal.
    if (r.is_zero()) continue;
    echelon.push_back(ring.monic(r));
    out.push_back(ring.monic(g));
  }
  return out;
}

struct GradedIdeal::Cache {
  std::once_flag gb_once;
  std::vector<Polynomial> gb;
  std::once_flag min_once;
  MinimalGenerators min;
};

GradedIdeal::GradedIdeal(RingPtr ring, std::vector<Polynomial> gens)
    : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
  if (!ring_) throw std::invalid_argument("null ring");
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    if (g.leading_monomial().nvars() != ring_->nvars()) {
      throw std::invalid_argument("generator arity does not match ring");
    }
    gens_.push_back(std::move(g));
  }
}

GradedIdeal GradedIdeal::unit(RingPtr ring) {
  Polynomial one = ring->one();
  return GradedIdeal(std::move(ring), {std::move(one)});
}

const std::vector<Polynomial>& GradedIdeal::groebner_basis() const {
  std::call_once(cache_->gb_once, [this] { cache_->gb = buchberger(*ring_, gens_); });
  return cache_->gb;
}

const MinimalGenerators& GradedIdeal::minimal() const {
  std::call_once(cache_->min_once, [this] { cache_->min = minimalize(*ring_, gens_); });
  return cache_->min;
}

MonomialIdeal GradedIdeal::initial() const {
  return initial_ideal(ring_->nvars(), groebner_basis());
}

bool GradedIdeal::is_unit() const {
  const auto& gb = groebner_basis();
  return gb.size() == 1 && *gb.front().degree() == 0;
}

bool GradedIdeal::contains(const Polynomial& f) const {
  return normal_form(*ring_, f, groebner_basis()).is_zero();
}

Exponent GradedIdeal::max_generator_degree() const {
  Exponent d = 0;
  for (const auto& g : gens_) d = std::max(d, *g.degree());
  return d;
}

GradedIdeal operator+(const GradedIdeal& a, const GradedIdeal& b) {
  if (!(a.ring() == b.ring())) throw std::invalid_argument("ideals over different rings");
  std::vector<Polynomial> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return GradedIdeal(a.ring_ptr(), std::move(gens));
}

GradedIdeal operator*(const GradedIdeal& a, const GradedIdeal& b) {
  if (!(a.ring() == b.ring())) throw std::invalid_argument("ideals over different rings");
  std::vector<Polynomial> gens;
  for (const auto& f : a.generators()) {
    for (const auto& g : b.generators()) gens.push_back(a.ring().mul(f, g));
  }
  return GradedIdeal(a.ring_ptr(), prune_linearly_dependent(a.ring(), std::move(gens)));
}

}  // namespace rednum
