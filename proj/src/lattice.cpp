#include "relid/lattice.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "relid/error.hpp"

namespace relid {

  std::string_view to_string(RelKind kind) {
    switch (kind) {
      case RelKind::refl_adm:
        return "REFL_ADM";
      case RelKind::tolerance:
        return "TOLERANCE";
      case RelKind::congruence:
        return "CONGRUENCE";
    }
    return "?";
  }

  BinRel close(FiniteAlgebra const& alg, RelKind kind, BinRel const& r) {
    switch (kind) {
      case RelKind::refl_adm:
        return refl_adm_closure(alg, r);
      case RelKind::tolerance:
        return tolerance_of(alg, r);
      case RelKind::congruence:
        return congruence_generated(alg, r);
    }
    throw PreconditionError("unknown relation kind");
  }

  bool satisfies(FiniteAlgebra const& alg, RelKind kind, BinRel const& r) {
    switch (kind) {
      case RelKind::refl_adm:
        return is_refl_adm(alg, r);
      case RelKind::tolerance:
        return is_tolerance(alg, r);
      case RelKind::congruence:
        return is_congruence(alg, r);
    }
    return false;
  }

  RelLattice enumerate(FiniteAlgebra const& alg, RelKind kind,
                       Caps const& caps) {
    auto const n = alg.size();
    if (n > BinRel::max_size) {
      throw CapExceeded("relation-size", BinRel::max_size, n);
    }
    auto const bottom = close(alg, kind, delta(n));

    std::vector<BinRel> principals;
    {
      std::unordered_set<BinRel, BinRelHash> seen;
      for (Element a = 0; a < n; ++a) {
        for (Element b = 0; b < n; ++b) {
          auto seed = delta(n);
          seed.insert(a, b);
          auto p = close(alg, kind, seed);
          if (seen.insert(p).second) {
            principals.push_back(std::move(p));
          }
        }
      }
    }

    // Every member is a join of principals, so joining one principal at a
    // time from the bottom reaches all of them.
    std::unordered_set<BinRel, BinRelHash> members{bottom};
    std::deque<BinRel>                     queue{bottom};
    while (!queue.empty()) {
      auto current = std::move(queue.front());
      queue.pop_front();
      for (auto const& p : principals) {
        if (p.subset_of(current)) {
          continue;
        }
        auto joined = close(alg, kind, unite(current, p));
        if (members.insert(joined).second) {
          if (members.size() > caps.max_closure_size) {
            throw CapExceeded("lattice-size", caps.max_closure_size,
                              members.size());
          }
          queue.push_back(std::move(joined));
        }
      }
    }

    RelLattice out{kind, {members.begin(), members.end()}};
    std::sort(out.members.begin(), out.members.end());
    return out;
  }

}  // namespace relid
