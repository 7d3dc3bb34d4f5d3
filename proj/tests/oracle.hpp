#pragma once

// Naive reference implementations. Nothing here shares code with the library
// beyond the FiniteAlgebra tables and the BinRel container used for I/O.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "relid/algebra.hpp"
#include "relid/expr.hpp"
#include "relid/relation.hpp"

namespace oracle {

  using relid::BinRel;
  using relid::Element;
  using relid::FiniteAlgebra;

  using Matrix = std::vector<std::vector<bool>>;

  inline Matrix matrix(BinRel const& r) {
    Matrix m(r.size(), std::vector<bool>(r.size()));
    for (Element a = 0; a < r.size(); ++a) {
      for (Element b = 0; b < r.size(); ++b) {
        m[a][b] = r.contains(a, b);
      }
    }
    return m;
  }

  inline BinRel relation(Matrix const& m) {
    std::vector<std::pair<Element, Element>> pairs;
    for (Element a = 0; a < m.size(); ++a) {
      for (Element b = 0; b < m.size(); ++b) {
        if (m[a][b]) {
          pairs.emplace_back(a, b);
        }
      }
    }
    return BinRel::from_pairs(m.size(), pairs);
  }

  inline Matrix identity(std::size_t n) {
    Matrix m(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i) {
      m[i][i] = true;
    }
    return m;
  }

  inline Matrix full(std::size_t n) {
    return Matrix(n, std::vector<bool>(n, true));
  }

  inline Matrix compose(Matrix const& r, Matrix const& s) {
    auto   n = r.size();
    Matrix out(n, std::vector<bool>(n));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          if (r[a][b] && s[b][c]) {
            out[a][c] = true;
          }
        }
      }
    }
    return out;
  }

  inline Matrix converse(Matrix const& r) {
    auto   n = r.size();
    Matrix out(n, std::vector<bool>(n));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        out[b][a] = r[a][b];
      }
    }
    return out;
  }

  inline Matrix meet(Matrix r, Matrix const& s) {
    for (std::size_t a = 0; a < r.size(); ++a) {
      for (std::size_t b = 0; b < r.size(); ++b) {
        r[a][b] = r[a][b] && s[a][b];
      }
    }
    return r;
  }

  inline Matrix join(Matrix r, Matrix const& s) {
    for (std::size_t a = 0; a < r.size(); ++a) {
      for (std::size_t b = 0; b < r.size(); ++b) {
        r[a][b] = r[a][b] || s[a][b];
      }
    }
    return r;
  }

  // S o T o S ... with m factors.
  inline Matrix alternate(Matrix const& r, Matrix const& s, std::size_t m) {
    Matrix out = r;
    for (std::size_t i = 1; i < m; ++i) {
      out = compose(out, i % 2 == 1 ? s : r);
    }
    return out;
  }

  // Union of the alternating compositions with up to 2n^2+2 factors.
  inline Matrix plus(Matrix const& r, Matrix const& s) {
    auto   total = r;
    auto   n     = r.size();
    for (std::size_t m = 2; m <= 2 * n * n + 2; ++m) {
      total = join(total, alternate(r, s, m));
    }
    return total;
  }

  // Union of all powers R^1 .. R^(n*n+1).
  inline Matrix transitive(Matrix const& r) {
    auto total = r;
    auto step  = r;
    for (std::size_t i = 0; i < r.size() * r.size() + 1; ++i) {
      step  = compose(step, r);
      total = join(total, step);
    }
    return total;
  }

  inline bool leq(Matrix const& r, Matrix const& s) {
    for (std::size_t a = 0; a < r.size(); ++a) {
      for (std::size_t b = 0; b < r.size(); ++b) {
        if (r[a][b] && !s[a][b]) {
          return false;
        }
      }
    }
    return true;
  }

  // Every tuple of pairs from R, applied componentwise, lands in R.
  inline bool admissible(FiniteAlgebra const& alg, Matrix const& r) {
    auto                                     n = alg.size();
    std::vector<std::pair<Element, Element>> pairs;
    for (Element a = 0; a < n; ++a) {
      for (Element b = 0; b < n; ++b) {
        if (r[a][b]) {
          pairs.emplace_back(a, b);
        }
      }
    }
    for (auto const& op : alg.operations()) {
      std::size_t combos = 1;
      for (std::size_t i = 0; i < op.arity; ++i) {
        combos *= pairs.size();
      }
      std::vector<Element> left(op.arity), right(op.arity);
      for (std::size_t code = 0; code < combos; ++code) {
        auto rest = code;
        for (std::size_t i = 0; i < op.arity; ++i) {
          auto const& p = pairs[rest % pairs.size()];
          rest /= pairs.size();
          left[i]  = p.first;
          right[i] = p.second;
        }
        std::size_t li = 0, ri = 0;
        for (std::size_t i = 0; i < op.arity; ++i) {
          li = li * n + left[i];
          ri = ri * n + right[i];
        }
        if (!r[op.table[li]][op.table[ri]]) {
          return false;
        }
      }
    }
    return true;
  }

  inline bool reflexive(Matrix const& r) {
    for (std::size_t a = 0; a < r.size(); ++a) {
      if (!r[a][a]) {
        return false;
      }
    }
    return true;
  }

  inline bool symmetric(Matrix const& r) {
    return r == converse(r);
  }

  inline bool transitive_rel(Matrix const& r) {
    return leq(compose(r, r), r);
  }

  enum class Kind { refl, tol, con };

  inline bool has_kind(FiniteAlgebra const& alg, Kind kind, Matrix const& r) {
    if (!reflexive(r) || !admissible(alg, r)) {
      return false;
    }
    if (kind != Kind::refl && !symmetric(r)) {
      return false;
    }
    return kind != Kind::con || transitive_rel(r);
  }

  // All relations of the given kind, by filtering every subset of A x A.
  inline std::vector<Matrix> all_of_kind(FiniteAlgebra const& alg, Kind kind) {
    auto                n     = alg.size();
    auto                cells = n * n;
    std::vector<Matrix> out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << cells); ++bits) {
      Matrix m(n, std::vector<bool>(n));
      for (std::size_t i = 0; i < cells; ++i) {
        m[i / n][i % n] = (bits >> i) & 1U;
      }
      if (has_kind(alg, kind, m)) {
        out.push_back(std::move(m));
      }
    }
    return out;
  }

  // Least member of `family` containing r (intersection of all that do).
  inline Matrix least_above(std::vector<Matrix> const& family, Matrix const& r) {
    auto out = full(r.size());
    for (auto const& m : family) {
      if (leq(r, m)) {
        out = meet(out, m);
      }
    }
    return out;
  }

  // Free algebra by repeated full application until nothing new appears.
  inline std::set<std::vector<Element>> free_algebra(FiniteAlgebra const& alg,
                                                     std::size_t          g) {
    auto        n     = alg.size();
    std::size_t width = 1;
    for (std::size_t i = 0; i < g; ++i) {
      width *= n;
    }
    std::set<std::vector<Element>> set;
    for (std::size_t v = 0; v < g; ++v) {
      std::vector<Element> proj(width);
      for (std::size_t t = 0; t < width; ++t) {
        auto rest = t;
        for (std::size_t i = g; i-- > v + 1;) {
          rest /= n;
        }
        proj[t] = static_cast<Element>(rest % n);
      }
      set.insert(proj);
    }
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::vector<Element>> items(set.begin(), set.end());
      for (auto const& op : alg.operations()) {
        std::size_t combos = 1;
        for (std::size_t i = 0; i < op.arity; ++i) {
          combos *= items.size();
        }
        for (std::size_t code = 0; code < combos; ++code) {
          std::vector<std::size_t> pick(op.arity);
          auto                     rest = code;
          for (std::size_t i = 0; i < op.arity; ++i) {
            pick[i] = rest % items.size();
            rest /= items.size();
          }
          std::vector<Element> v(width);
          for (std::size_t t = 0; t < width; ++t) {
            std::size_t idx = 0;
            for (std::size_t i = 0; i < op.arity; ++i) {
              idx = idx * n + items[pick[i]][t];
            }
            v[t] = op.table[idx];
          }
          if (set.insert(std::move(v)).second) {
            grew = true;
          }
        }
      }
    }
    return set;
  }

  inline Matrix random_matrix(std::size_t n, std::mt19937& rng) {
    std::bernoulli_distribution coin(0.35);
    Matrix                      m(n, std::vector<bool>(n));
    for (auto& row : m) {
      for (std::size_t b = 0; b < n; ++b) {
        row[b] = coin(rng);
      }
    }
    return m;
  }

  // Direct evaluation of an expression with closures taken from brute-force
  // families.
  struct Evaluator {
    FiniteAlgebra const*                 alg;
    std::vector<Matrix>                  refl;
    std::vector<Matrix>                  tol;

    explicit Evaluator(FiniteAlgebra const& a)
        : alg(&a),
          refl(all_of_kind(a, Kind::refl)),
          tol(all_of_kind(a, Kind::tol)) {}

    Matrix eval(relid::RelExpr const&                e,
                std::map<std::string, Matrix> const& env) const {
      using K   = relid::RelExpr::Kind;
      auto n    = alg->size();
      auto arg  = [&](std::size_t i) { return eval(e.operands()[i], env); };
      switch (e.kind()) {
        case K::var:
          return env.at(e.name());
        case K::delta:
          return identity(n);
        case K::nabla:
          return full(n);
        case K::intersect:
          return meet(arg(0), arg(1));
        case K::unite:
          return join(arg(0), arg(1));
        case K::compose:
          return compose(arg(0), arg(1));
        case K::compose_m:
          if (e.factors().is_infinite()) {
            return plus(arg(0), arg(1));
          }
          return alternate(arg(0), arg(1), e.factors().value());
        case K::power:
          return alternate(arg(0), arg(0), e.exponent());
        case K::converse:
          return converse(arg(0));
        case K::star:
          return transitive(arg(0));
        case K::overline:
          return least_above(refl, arg(0));
        case K::tolerance_of:
          return least_above(tol, arg(0));
        case K::plus:
          return plus(arg(0), arg(1));
      }
      return {};
    }
  };

}  // namespace oracle
