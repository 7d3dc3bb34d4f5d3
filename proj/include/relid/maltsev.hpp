#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "relid/algebra.hpp"

namespace relid {

  // Ternary terms p, j_1, ..., j_k (variables x, y, z):
  //   x = p(x,z,z),  p(x,x,z) = j_1(x,x,z),  j_i(x,y,x) = x,
  //   j_i(x,z,z) = j_{i+1}(x,x,z),  j_k(x,y,z) = z.
  struct DirectedGummSystem {
    std::size_t       k = 0;
    Term              p = Term::variable(0);
    std::vector<Term> j;
  };

  // Quaternary terms d_0, ..., d_k (variables x, y, z, w):
  //   x = d_i(x,y,y,x),  x = d_0,  d_k = w,
  //   d_i(x,x,w,w) = d_{i+1}(x,x,w,w) for even i,
  //   d_i(x,y,y,w) = d_{i+1}(x,y,y,w) for odd i.
  struct DaySystem {
    std::size_t       k = 0;
    std::vector<Term> d;
  };

  enum class SearchStatus { found, not_up_to, cap_exceeded };

  template <typename System>
  struct SearchResult {
    SearchStatus          status = SearchStatus::not_up_to;
    std::optional<System> system;
    std::size_t           max_k = 0;
    // For not_up_to: no system exists for any k (the finite search graph has
    // no path at all).
    bool definitive = false;
    // Shortest path length when a system exists but exceeds max_k.
    std::optional<std::size_t> minimal_k;
    std::size_t                free_size  = 0;
    std::size_t                node_count = 0;
    std::string                cap_message;
  };

  using GummSearchResult = SearchResult<DirectedGummSystem>;
  using DaySearchResult  = SearchResult<DaySystem>;

  // Shortest path search in F(3). k = 1 (a Maltsev term) is reported too.
  GummSearchResult find_directed_gumm(FiniteAlgebra const& alg,
                                      std::size_t          max_k,
                                      Caps const&          caps = {});

  // Layered search in F(4) from the first to the last projection.
  DaySearchResult find_day(FiniteAlgebra const& alg, std::size_t max_k,
                           Caps const& caps = {});

  // Check every defining identity over all tuples of A. Throw TermError on
  // unknown symbols, arity mismatches or out-of-range variables.
  bool verify_directed_gumm(FiniteAlgebra const&      alg,
                            DirectedGummSystem const& sys);
  bool verify_day(FiniteAlgebra const& alg, DaySystem const& sys);

  enum class ModularityStatus { modular, no_terms, no_terms_up_to, cap_exceeded };

  struct ModularityVerdict {
    ModularityStatus                  status = ModularityStatus::no_terms_up_to;
    std::optional<DirectedGummSystem> system;
    std::size_t                       max_k = 0;
    GummSearchResult                  search;
  };

  // Directed Gumm terms exist for some k iff the variety is congruence
  // modular; the search graph is finite, so a missing path is a definitive
  // answer.
  ModularityVerdict decide_modularity(FiniteAlgebra const& alg,
                                      std::size_t          max_k,
                                      Caps const&          caps = {});

}  // namespace relid
