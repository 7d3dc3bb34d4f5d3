#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "relid/expr.hpp"
#include "relid/lattice.hpp"

namespace relid {

  using Environment = std::map<std::string, BinRel, std::less<>>;

  // Evaluates expressions against one algebra, memoising the closure
  // operators (cl, tol) by argument. Not thread-safe; use one per thread.
  class Evaluator {
   public:
    explicit Evaluator(FiniteAlgebra const& alg) : alg_(&alg) {}

    BinRel eval(RelExpr const& expr, Environment const& env);

   private:
    FiniteAlgebra const*                               alg_;
    std::unordered_map<BinRel, BinRel, BinRelHash>     overline_;
    std::unordered_map<BinRel, BinRel, BinRelHash>     tolerance_;
  };

  BinRel eval_expr(FiniteAlgebra const& alg, RelExpr const& expr,
                   Environment const& env);

  enum class CheckMode { exhaustive, sample };

  struct CheckOptions {
    CheckMode     mode    = CheckMode::exhaustive;
    std::uint64_t seed    = 0;
    std::size_t   samples = 1000;
    std::size_t   jobs    = 1;
    Caps          caps    = {};
  };

  struct Counterexample {
    // Position of the assignment in canonical order (exhaustive) or the
    // sample number (sample mode).
    std::size_t                                 index = 0;
    std::vector<std::pair<std::string, BinRel>> assignment;
    Element                                     a = 0;
    Element                                     c = 0;
    BinRel                                      lhs;
    BinRel                                      rhs;
    // Set for "=" statements when (a,c) is in rhs but not in lhs.
    bool reversed = false;
  };

  struct Verdict {
    bool                          holds   = true;
    std::size_t                   checked = 0;
    std::optional<Counterexample> counterexample;
  };

  // Checks the statement on one algebra. Exhaustive mode iterates the product
  // of the quantifier lattices, first quantifier outermost, each lattice in
  // canonical order, and reports the least violating assignment. Sample mode
  // draws `samples` assignments; sample i depends only on (seed, i).
  Verdict check_identity(FiniteAlgebra const&     alg,
                         IdentityStatement const& stmt,
                         CheckOptions const&      opts = {});

  // Re-evaluates a counterexample from scratch.
  bool confirms_violation(FiniteAlgebra const&     alg,
                          IdentityStatement const& stmt,
                          Counterexample const&    cex);

  // Replaces the sorts of the named quantifiers.
  IdentityStatement with_sorts(
      IdentityStatement                               stmt,
      std::vector<std::pair<std::string, Sort>> const& overrides);

  // Assignment for sample i: random relations closed to each quantifier's
  // sort.
  std::vector<BinRel> sample_assignment(FiniteAlgebra const&     alg,
                                        IdentityStatement const& stmt,
                                        std::uint64_t seed, std::size_t i);

}  // namespace relid
