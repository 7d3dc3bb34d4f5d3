#pragma once

#include <cstddef>
#include <vector>

namespace relid::detail {

  // Calls visit(idx) once for every tuple idx in [0..i]^arity that contains i,
  // grouped by the position of the first occurrence of i.
  template <typename Visit>
  void for_each_fresh_tuple(std::size_t arity, std::size_t i, Visit&& visit) {
    std::vector<std::size_t> idx(arity);
    for (std::size_t first = 0; first < arity; ++first) {
      if (i == 0 && first > 0) {
        return;
      }
      for (std::size_t q = 0; q < arity; ++q) {
        idx[q] = q == first ? i : 0;
      }
      while (true) {
        visit(idx);
        std::size_t pos  = arity;
        bool        done = true;
        while (pos > 0) {
          --pos;
          if (pos == first) {
            continue;
          }
          auto top = pos < first ? i - 1 : i;
          if (idx[pos] < top) {
            ++idx[pos];
            done = false;
            break;
          }
          idx[pos] = 0;
        }
        if (done) {
          break;
        }
      }
    }
  }

}  // namespace relid::detail
