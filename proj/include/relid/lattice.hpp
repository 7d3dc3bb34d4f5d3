#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "relid/relation.hpp"

namespace relid {

  enum class RelKind { refl_adm, tolerance, congruence };

  std::string_view to_string(RelKind kind);

  // Kind-appropriate closure: refl_adm_closure, tolerance_of or
  // congruence_generated.
  BinRel close(FiniteAlgebra const& alg, RelKind kind, BinRel const& r);
  bool   satisfies(FiniteAlgebra const& alg, RelKind kind, BinRel const& r);

  struct RelLattice {
    RelKind             kind;
    std::vector<BinRel> members;  // canonical order
  };

  // Every relation of the given kind. Members are obtained as joins of the
  // principal ones close(delta u {(a,b)}); caps.max_closure_size bounds the
  // member count.
  RelLattice enumerate(FiniteAlgebra const& alg, RelKind kind,
                       Caps const& caps = {});

}  // namespace relid
