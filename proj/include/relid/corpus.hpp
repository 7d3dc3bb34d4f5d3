#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relid/algebra.hpp"

namespace relid {

  // Algebras shipped with the library: sl2, sl3 (meet semilattice chains),
  // z2 (xor), z2xz2 (Klein four-group as xor on two bits), l2 (two-element
  // lattice), m3 (diamond lattice, 0 bottom, 1..3 atoms, 4 top) and trivial
  // (one element).
  std::vector<std::string>     corpus_names();
  std::optional<FiniteAlgebra> corpus_algebra(std::string_view name);

}  // namespace relid
