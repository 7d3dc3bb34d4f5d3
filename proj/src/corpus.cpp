#include "relid/corpus.hpp"

#include <functional>

namespace relid {

  namespace {
    Operation binary(std::string symbol, std::size_t n,
                     std::function<Element(Element, Element)> const& f) {
      Operation op{std::move(symbol), 2, {}};
      for (Element x = 0; x < n; ++x) {
        for (Element y = 0; y < n; ++y) {
          op.table.push_back(f(x, y));
        }
      }
      return op;
    }

    Element min(Element x, Element y) {
      return x < y ? x : y;
    }
    Element max(Element x, Element y) {
      return x < y ? y : x;
    }

    // Diamond: 0 < 1, 2, 3 < 4.
    Element m3_meet(Element x, Element y) {
      if (x == y || y == 4) {
        return x;
      }
      if (x == 4) {
        return y;
      }
      return 0;
    }
    Element m3_join(Element x, Element y) {
      if (x == y || y == 0) {
        return x;
      }
      if (x == 0) {
        return y;
      }
      return 4;
    }
  }  // namespace

  std::vector<std::string> corpus_names() {
    return {"sl2", "sl3", "z2", "z2xz2", "l2", "m3", "trivial"};
  }

  std::optional<FiniteAlgebra> corpus_algebra(std::string_view name) {
    if (name == "sl2") {
      return FiniteAlgebra("sl2", 2, {binary("meet", 2, min)});
    }
    if (name == "sl3") {
      return FiniteAlgebra("sl3", 3, {binary("meet", 3, min)});
    }
    if (name == "z2") {
      return FiniteAlgebra(
          "z2", 2, {binary("xor", 2, [](Element x, Element y) { return x ^ y; })});
    }
    if (name == "z2xz2") {
      return FiniteAlgebra(
          "z2xz2", 4,
          {binary("xor", 4, [](Element x, Element y) { return x ^ y; })});
    }
    if (name == "l2") {
      return FiniteAlgebra("l2", 2,
                           {binary("meet", 2, min), binary("join", 2, max)});
    }
    if (name == "m3") {
      return FiniteAlgebra(
          "m3", 5, {binary("meet", 5, m3_meet), binary("join", 5, m3_join)});
    }
    if (name == "trivial") {
      return FiniteAlgebra("trivial", 1, {binary("f", 1, min)});
    }
    return std::nullopt;
  }

}  // namespace relid
