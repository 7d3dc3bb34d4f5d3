#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "relid/maltsev.hpp"
#include "relid/relation.hpp"

namespace relid {

  // Element sequence certifying that (front, back) lies in a composition of
  // labelled relations. Step i links elements[i] to elements[i + 1] through
  // relations[step_relation[i]].
  struct WitnessChain {
    std::vector<Element>     elements;
    std::vector<std::size_t> step_relation;
    // 0 for head steps, b >= 1 for steps inside the b-th block.
    std::vector<std::size_t> step_block;
    std::vector<std::string> labels;
    std::vector<BinRel>      relations;
    std::size_t              blocks = 0;

    Element first() const {
      return elements.front();
    }
    Element last() const {
      return elements.back();
    }
    std::size_t steps() const {
      return step_relation.size();
    }
  };

  // Re-checks every step against its relation.
  bool is_valid(WitnessChain const& chain);

  // "a -[label]-> b -[label]-> c"
  std::string to_string(WitnessChain const& chain);

  struct TurtRelations {
    BinRel              r;
    BinRel              v;
    BinRel              w;
    std::vector<BinRel> s;  // S_1 .. S_l
  };

  // a V b W c and a = a_0 S_1 a_1 ... S_l a_l = c.
  struct TurtInstance {
    Element              a = 0;
    Element              b = 0;
    std::vector<Element> chain;
  };

  // (a, c) in R & cl(V | W) ; Lambda^(2k-3) with
  // Lambda = tol(R) & S_1 ; ... ; tol(R) & S_l. Requires k >= 2.
  WitnessChain witness_turt(FiniteAlgebra const&      alg,
                            DirectedGummSystem const& sys,
                            TurtRelations const&      rels,
                            TurtInstance const&       inst);

  // (a, c) in R & conv(R) & cl(conv(V) | W) ; Lambda^(k-1). Requires k >= 2.
  WitnessChain witness_turtt(FiniteAlgebra const&      alg,
                             DirectedGummSystem const& sys,
                             TurtRelations const&      rels,
                             TurtInstance const&       inst);

  struct DayInstance {
    Element a = 0;
    Element b = 0;
    Element c = 0;
  };

  // For a Theta c and a S b S~ c: a chain of k - 1 steps alternating
  // Theta & S and Theta & conv(S).
  WitnessChain witness_day(FiniteAlgebra const& alg,
                           DaySystem const&     sys,
                           BinRel const&        theta,
                           BinRel const&        s,
                           DayInstance const&   inst);

}  // namespace relid
