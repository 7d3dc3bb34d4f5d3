#include "relid/check.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <random>
#include <thread>

#include "relid/error.hpp"

namespace relid {

  BinRel Evaluator::eval(RelExpr const& e, Environment const& env) {
    using K      = RelExpr::Kind;
    auto const n = alg_->size();
    switch (e.kind()) {
      case K::var: {
        auto it = env.find(e.name());
        if (it == env.end()) {
          throw PreconditionError("unbound variable '" + e.name() + "'");
        }
        if (it->second.size() != n) {
          throw SizeMismatch("variable '" + e.name() + "' is a relation on "
                             + std::to_string(it->second.size())
                             + " elements, algebra has "
                             + std::to_string(n));
        }
        return it->second;
      }
      case K::delta:
        return delta(n);
      case K::nabla:
        return nabla(n);
      case K::intersect:
        return intersect(eval(e.operands()[0], env),
                         eval(e.operands()[1], env));
      case K::unite:
        return unite(eval(e.operands()[0], env), eval(e.operands()[1], env));
      case K::compose:
        return compose(eval(e.operands()[0], env),
                       eval(e.operands()[1], env));
      case K::compose_m:
        return m_compose(eval(e.operands()[0], env),
                         eval(e.operands()[1], env), e.factors());
      case K::plus:
        return plus(eval(e.operands()[0], env), eval(e.operands()[1], env));
      case K::power:
        return power(eval(e.operands()[0], env), e.exponent());
      case K::converse:
        return converse(eval(e.operands()[0], env));
      case K::star:
        return star(eval(e.operands()[0], env));
      case K::overline: {
        auto arg = eval(e.operands()[0], env);
        auto it  = overline_.find(arg);
        if (it == overline_.end()) {
          auto value = refl_adm_closure(*alg_, arg);
          it         = overline_.emplace(std::move(arg), std::move(value)).first;
        }
        return it->second;
      }
      case K::tolerance_of: {
        auto arg = eval(e.operands()[0], env);
        auto it  = tolerance_.find(arg);
        if (it == tolerance_.end()) {
          auto value = tolerance_of(*alg_, arg);
          it = tolerance_.emplace(std::move(arg), std::move(value)).first;
        }
        return it->second;
      }
    }
    throw InternalError("unhandled expression kind");
  }

  BinRel eval_expr(FiniteAlgebra const& alg, RelExpr const& expr,
                   Environment const& env) {
    return Evaluator(alg).eval(expr, env);
  }

  namespace {
    std::optional<std::pair<Element, Element>> first_excess(BinRel const& big,
                                                            BinRel const& small) {
      for (Element a = 0; a < big.size(); ++a) {
        auto extra = big.row(a) & ~small.row(a);
        if (extra != 0) {
          return std::pair{a, static_cast<Element>(std::countr_zero(extra))};
        }
      }
      return std::nullopt;
    }

    // Evaluates one assignment; fills cex (except index) on violation.
    bool violates(Evaluator& ev, IdentityStatement const& stmt,
                  Environment const& env, Counterexample* cex) {
      auto lhs    = ev.eval(stmt.lhs, env);
      auto rhs    = ev.eval(stmt.rhs, env);
      auto excess = first_excess(lhs, rhs);
      bool reversed = false;
      if (!excess && stmt.relation == Inclusion::equals) {
        excess   = first_excess(rhs, lhs);
        reversed = excess.has_value();
      }
      if (!excess) {
        return false;
      }
      if (cex != nullptr) {
        cex->a        = excess->first;
        cex->c        = excess->second;
        cex->lhs      = std::move(lhs);
        cex->rhs      = std::move(rhs);
        cex->reversed = reversed;
        cex->assignment.clear();
        for (auto const& q : stmt.quantifiers) {
          cex->assignment.emplace_back(q.name, env.find(q.name)->second);
        }
      }
      return true;
    }

    std::uint64_t splitmix(std::uint64_t x) {
      x += 0x9e3779b97f4a7c15ULL;
      x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
      x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
      return x ^ (x >> 31);
    }

    // Runs `probe(i)` for i in [0, total) on `jobs` threads and returns the
    // least i for which it reported a violation, or total.
    template <typename MakeProbe>
    std::size_t first_violation(std::size_t total, std::size_t jobs,
                                MakeProbe&& make_probe) {
      jobs = std::max<std::size_t>(1, std::min(jobs, total));
      std::atomic<std::size_t> best{total};
      auto                     work = [&](std::size_t lo, std::size_t hi) {
        auto probe = make_probe();
        for (std::size_t i = lo; i < hi && i < best.load(); ++i) {
          if (probe(i)) {
            auto current = best.load();
            while (i < current && !best.compare_exchange_weak(current, i)) {
            }
            return;
          }
        }
      };
      if (jobs == 1) {
        work(0, total);
        return best.load();
      }
      std::vector<std::jthread> workers;
      auto                      chunk = (total + jobs - 1) / jobs;
      for (std::size_t j = 0; j < jobs; ++j) {
        auto lo = j * chunk;
        auto hi = std::min(total, lo + chunk);
        if (lo < hi) {
          workers.emplace_back(work, lo, hi);
        }
      }
      workers.clear();
      return best.load();
    }
  }  // namespace

  std::vector<BinRel> sample_assignment(FiniteAlgebra const&     alg,
                                        IdentityStatement const& stmt,
                                        std::uint64_t seed, std::size_t i) {
    std::mt19937_64     rng(splitmix(seed ^ splitmix(i)));
    auto const          n = alg.size();
    std::vector<BinRel> out;
    for (auto const& q : stmt.quantifiers) {
      BinRel        r(n);
      std::uint64_t bits = 0;
      std::size_t   left = 0;
      for (Element a = 0; a < n; ++a) {
        for (Element b = 0; b < n; ++b) {
          if (left == 0) {
            bits = rng();
            left = 64;
          }
          if (bits & 1U) {
            r.insert(a, b);
          }
          bits >>= 1;
          --left;
        }
      }
      out.push_back(close(alg, kind_of(q.sort), r));
    }
    return out;
  }

  Verdict check_identity(FiniteAlgebra const&     alg,
                         IdentityStatement const& stmt,
                         CheckOptions const&      opts) {
    Verdict verdict;
    if (opts.mode == CheckMode::exhaustive) {
      std::map<Sort, RelLattice> lattices;
      for (auto const& q : stmt.quantifiers) {
        if (!lattices.contains(q.sort)) {
          lattices.emplace(q.sort, enumerate(alg, kind_of(q.sort), opts.caps));
        }
      }
      std::vector<std::vector<BinRel> const*> domains;
      std::size_t                             total = 1;
      for (auto const& q : stmt.quantifiers) {
        auto const& members = lattices.at(q.sort).members;
        domains.push_back(&members);
        if (total > std::numeric_limits<std::size_t>::max() / members.size()) {
          throw CapExceeded("assignment-count",
                            std::numeric_limits<std::size_t>::max(), total);
        }
        total *= members.size();
      }
      auto assign = [&](std::size_t index, Environment& env) {
        for (std::size_t q = stmt.quantifiers.size(); q-- > 0;) {
          auto const& dom = *domains[q];
          env.insert_or_assign(stmt.quantifiers[q].name, dom[index % dom.size()]);
          index /= dom.size();
        }
      };
      auto first = first_violation(total, opts.jobs, [&] {
        return [&, ev = Evaluator(alg), env = Environment()](
                   std::size_t i) mutable {
          assign(i, env);
          return violates(ev, stmt, env, nullptr);
        };
      });
      if (first == total) {
        verdict.checked = total;
        return verdict;
      }
      Evaluator      ev(alg);
      Environment    env;
      Counterexample cex;
      assign(first, env);
      violates(ev, stmt, env, &cex);
      cex.index              = first;
      verdict.holds          = false;
      verdict.checked        = first + 1;
      verdict.counterexample = std::move(cex);
      return verdict;
    }

    auto assign = [&](std::size_t i, Environment& env) {
      auto values = sample_assignment(alg, stmt, opts.seed, i);
      for (std::size_t q = 0; q < values.size(); ++q) {
        env.insert_or_assign(stmt.quantifiers[q].name, std::move(values[q]));
      }
    };
    auto first = first_violation(opts.samples, opts.jobs, [&] {
      return [&, ev = Evaluator(alg), env = Environment()](
                 std::size_t i) mutable {
        assign(i, env);
        return violates(ev, stmt, env, nullptr);
      };
    });
    if (first == opts.samples) {
      verdict.checked = opts.samples;
      return verdict;
    }
    Evaluator      ev(alg);
    Environment    env;
    Counterexample cex;
    assign(first, env);
    violates(ev, stmt, env, &cex);
    cex.index              = first;
    verdict.holds          = false;
    verdict.checked        = first + 1;
    verdict.counterexample = std::move(cex);
    return verdict;
  }

  bool confirms_violation(FiniteAlgebra const&     alg,
                          IdentityStatement const& stmt,
                          Counterexample const&    cex) {
    Environment env;
    for (auto const& [name, value] : cex.assignment) {
      env.insert_or_assign(name, value);
    }
    auto lhs = eval_expr(alg, stmt.lhs, env);
    auto rhs = eval_expr(alg, stmt.rhs, env);
    if (cex.reversed) {
      return rhs.contains(cex.a, cex.c) && !lhs.contains(cex.a, cex.c);
    }
    return lhs.contains(cex.a, cex.c) && !rhs.contains(cex.a, cex.c);
  }

  IdentityStatement with_sorts(
      IdentityStatement                                stmt,
      std::vector<std::pair<std::string, Sort>> const& overrides) {
    for (auto const& [name, sort] : overrides) {
      auto it = std::find_if(stmt.quantifiers.begin(), stmt.quantifiers.end(),
                             [&](auto const& q) { return q.name == name; });
      if (it == stmt.quantifiers.end()) {
        throw PreconditionError("no quantifier named '" + name + "'");
      }
      it->sort = sort;
    }
    return stmt;
  }

}  // namespace relid
