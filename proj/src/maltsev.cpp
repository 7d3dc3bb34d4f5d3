#include "relid/maltsev.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <unordered_map>

#include "relid/error.hpp"

namespace relid {

  namespace {
    constexpr std::size_t unreachable = std::numeric_limits<std::size_t>::max();

    using Signature = std::vector<Element>;

    struct SignatureHash {
      std::size_t operator()(Signature const& s) const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (auto x : s) {
          h = (h ^ x) * 0x100000001b3ULL;
        }
        return static_cast<std::size_t>(h);
      }
    };

    using SignatureIndex
        = std::unordered_map<Signature, std::vector<std::size_t>, SignatureHash>;

    // Restriction of a g-ary term function to the argument tuples produced by
    // `shape`, enumerated over all assignments of `free` variables.
    template <typename Shape>
    Signature restrict(std::vector<Element> const& values, std::size_t n,
                       std::size_t g, std::size_t free, Shape&& shape) {
      Signature   out;
      std::size_t total = 1;
      for (std::size_t i = 0; i < free; ++i) {
        total *= n;
      }
      std::vector<Element> vars(free);
      for (std::size_t t = 0; t < total; ++t) {
        auto rest = t;
        for (std::size_t i = free; i-- > 0;) {
          vars[i] = static_cast<Element>(rest % n);
          rest /= n;
        }
        auto        args  = shape(vars);
        std::size_t index = 0;
        for (std::size_t i = 0; i < g; ++i) {
          index = index * n + args[i];
        }
        out.push_back(values[index]);
      }
      return out;
    }

    template <typename System>
    SearchResult<System> cap_result(std::size_t max_k, CapExceeded const& e) {
      SearchResult<System> r;
      r.status      = SearchStatus::cap_exceeded;
      r.max_k       = max_k;
      r.cap_message = e.what();
      return r;
    }
  }  // namespace

  GummSearchResult find_directed_gumm(FiniteAlgebra const& alg,
                                      std::size_t          max_k,
                                      Caps const&          caps) {
    if (max_k < 1) {
      throw PreconditionError("max_k must be at least 1");
    }
    GummSearchResult result;
    result.max_k  = max_k;
    auto const n  = alg.size();
    if (n == 1) {
      result.status    = SearchStatus::found;
      result.system    = DirectedGummSystem{1, Term::variable(0), {Term::variable(2)}};
      result.free_size = 1;
      return result;
    }
    std::vector<FreeElement> free;
    try {
      free = free_algebra(alg, 3, caps);
    } catch (CapExceeded const& e) {
      return cap_result<DirectedGummSystem>(max_k, e);
    }
    result.free_size = free.size();

    using V = std::vector<Element>;
    std::vector<Signature> reflexive(free.size()), left(free.size()),
        right(free.size());
    for (std::size_t i = 0; i < free.size(); ++i) {
      auto const& f = free[i].values;
      // f(x,y,x), f(x,x,z), f(x,z,z)
      reflexive[i] = restrict(f, n, 3, 2, [](V const& v) {
        return V{v[0], v[1], v[0]};
      });
      left[i] = restrict(f, n, 3, 2, [](V const& v) {
        return V{v[0], v[0], v[1]};
      });
      right[i] = restrict(f, n, 3, 2, [](V const& v) {
        return V{v[0], v[1], v[1]};
      });
    }
    auto const& first_projection = left[0];  // x(x,z) = x

    std::vector<bool> is_node(free.size());
    SignatureIndex    by_left, by_right;
    for (std::size_t i = 0; i < free.size(); ++i) {
      is_node[i] = reflexive[i] == first_projection;
      if (is_node[i]) {
        result.node_count++;
        by_left[left[i]].push_back(i);
        by_right[right[i]].push_back(i);
      }
    }

    // Left signatures reachable as p(x,x,z) for some p with p(x,z,z) = x.
    std::map<Signature, std::size_t> p_by_left;
    for (std::size_t i = 0; i < free.size(); ++i) {
      if (right[i] == first_projection) {
        p_by_left.emplace(left[i], i);
      }
    }

    constexpr std::size_t target = 2;  // z
    std::vector<std::size_t> dist(free.size(), unreachable);
    dist[target] = 0;
    std::deque<std::size_t> queue{target};
    while (!queue.empty()) {
      auto g = queue.front();
      queue.pop_front();
      // f -> g iff f(x,z,z) = g(x,x,z)
      auto it = by_right.find(left[g]);
      if (it == by_right.end()) {
        continue;
      }
      for (auto f : it->second) {
        if (dist[f] == unreachable) {
          dist[f] = dist[g] + 1;
          queue.push_back(f);
        }
      }
    }

    std::size_t best = unreachable;
    for (std::size_t i = 0; i < free.size(); ++i) {
      if (is_node[i] && dist[i] != unreachable && p_by_left.contains(left[i])
          && (best == unreachable || dist[i] < dist[best])) {
        best = i;
      }
    }
    if (best == unreachable) {
      result.status     = SearchStatus::not_up_to;
      result.definitive = true;
      return result;
    }
    auto const k = dist[best] + 1;
    if (k > max_k) {
      result.status    = SearchStatus::not_up_to;
      result.minimal_k = k;
      return result;
    }

    DirectedGummSystem sys;
    sys.k = k;
    sys.p = free[p_by_left.at(left[best])].term;
    for (auto current = best;;) {
      sys.j.push_back(free[current].term);
      if (dist[current] == 0) {
        break;
      }
      std::size_t next = unreachable;
      for (auto g : by_left.at(right[current])) {
        if (dist[g] + 1 == dist[current] && (next == unreachable || g < next)) {
          next = g;
        }
      }
      current = next;
    }
    result.status = SearchStatus::found;
    result.system = std::move(sys);
    return result;
  }

  DaySearchResult find_day(FiniteAlgebra const& alg, std::size_t max_k,
                           Caps const& caps) {
    if (max_k < 1) {
      throw PreconditionError("max_k must be at least 1");
    }
    DaySearchResult result;
    result.max_k = max_k;
    auto const n = alg.size();
    if (n == 1) {
      result.status    = SearchStatus::found;
      result.system    = DaySystem{0, {Term::variable(0)}};
      result.free_size = 1;
      return result;
    }
    std::vector<FreeElement> free;
    try {
      free = free_algebra(alg, 4, caps);
    } catch (CapExceeded const& e) {
      return cap_result<DaySystem>(max_k, e);
    }
    result.free_size = free.size();

    using V = std::vector<Element>;
    auto const size = free.size();
    std::vector<Signature> reflexive(size), even(size), odd(size);
    for (std::size_t i = 0; i < size; ++i) {
      auto const& f = free[i].values;
      reflexive[i]  = restrict(f, n, 4, 2, [](V const& v) {
        return V{v[0], v[1], v[1], v[0]};
      });
      even[i] = restrict(f, n, 4, 2, [](V const& v) {
        return V{v[0], v[0], v[1], v[1]};
      });
      odd[i] = restrict(f, n, 4, 3, [](V const& v) {
        return V{v[0], v[1], v[1], v[2]};
      });
    }
    auto const& first_projection = reflexive[0];

    std::vector<bool> is_node(size);
    SignatureIndex    by_even, by_odd;
    for (std::size_t i = 0; i < size; ++i) {
      is_node[i] = reflexive[i] == first_projection;
      if (is_node[i]) {
        result.node_count++;
        by_even[even[i]].push_back(i);
        by_odd[odd[i]].push_back(i);
      }
    }

    // State (f, parity of f's position in the sequence). From parity 0 the
    // next term agrees on (x,x,w,w); from parity 1 on (x,y,y,w). Both
    // relations are symmetric, so predecessors use the same indices.
    constexpr std::size_t start  = 0;  // x
    constexpr std::size_t target = 3;  // w
    auto neighbours = [&](std::size_t f, std::size_t parity)
        -> std::vector<std::size_t> const& {
      return parity == 0 ? by_even.at(even[f]) : by_odd.at(odd[f]);
    };
    std::vector<std::size_t> dist(2 * size, unreachable);
    std::deque<std::size_t>  queue;
    for (std::size_t parity = 0; parity < 2; ++parity) {
      dist[2 * target + parity] = 0;
      queue.push_back(2 * target + parity);
    }
    while (!queue.empty()) {
      auto state = queue.front();
      queue.pop_front();
      auto g = state / 2, parity = state % 2;
      // predecessors: (f, 1 - parity) with matching signature of f's parity
      auto prev_parity = 1 - parity;
      for (auto f : neighbours(g, prev_parity)) {
        auto s = 2 * f + prev_parity;
        if (dist[s] == unreachable) {
          dist[s] = dist[state] + 1;
          queue.push_back(s);
        }
      }
    }

    auto const k = dist[2 * start];
    if (k == unreachable) {
      result.status     = SearchStatus::not_up_to;
      result.definitive = true;
      return result;
    }
    if (k > max_k) {
      result.status    = SearchStatus::not_up_to;
      result.minimal_k = k;
      return result;
    }
    DaySystem sys;
    sys.k = k;
    for (std::size_t state = 2 * start;;) {
      sys.d.push_back(free[state / 2].term);
      if (dist[state] == 0) {
        break;
      }
      auto        parity = state % 2;
      std::size_t next   = unreachable;
      for (auto g : neighbours(state / 2, parity)) {
        auto s = 2 * g + (1 - parity);
        if (dist[s] + 1 == dist[state] && (next == unreachable || s < next)) {
          next = s;
        }
      }
      state = next;
    }
    result.status = SearchStatus::found;
    result.system = std::move(sys);
    return result;
  }

  namespace {
    std::vector<std::vector<Element>> tables(FiniteAlgebra const&     alg,
                                             std::vector<Term> const& terms,
                                             std::size_t              g) {
      std::vector<std::vector<Element>> out;
      for (auto const& t : terms) {
        out.push_back(term_table(alg, t, g).values);
      }
      return out;
    }
  }  // namespace

  bool verify_directed_gumm(FiniteAlgebra const&      alg,
                            DirectedGummSystem const& sys) {
    if (sys.k == 0 || sys.j.size() != sys.k) {
      return false;
    }
    auto const n  = alg.size();
    auto const p  = term_table(alg, sys.p, 3).values;
    auto const js = tables(alg, sys.j, 3);
    auto at = [n](std::vector<Element> const& f, Element a, Element b,
                  Element c) { return f[(a * n + b) * n + c]; };
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        for (Element z = 0; z < n; ++z) {
          if (at(p, x, z, z) != x || at(p, x, x, z) != at(js[0], x, x, z)) {
            return false;
          }
          for (std::size_t i = 0; i < sys.k; ++i) {
            if (at(js[i], x, y, x) != x) {
              return false;
            }
            if (i + 1 < sys.k && at(js[i], x, z, z) != at(js[i + 1], x, x, z)) {
              return false;
            }
          }
          if (at(js[sys.k - 1], x, y, z) != z) {
            return false;
          }
        }
      }
    }
    return true;
  }

  bool verify_day(FiniteAlgebra const& alg, DaySystem const& sys) {
    if (sys.d.size() != sys.k + 1) {
      return false;
    }
    auto const n  = alg.size();
    auto const ds = tables(alg, sys.d, 4);
    auto at = [n](std::vector<Element> const& f, Element a, Element b,
                  Element c, Element d) {
      return f[((a * n + b) * n + c) * n + d];
    };
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        for (Element z = 0; z < n; ++z) {
          for (Element w = 0; w < n; ++w) {
            if (at(ds[0], x, y, z, w) != x || at(ds[sys.k], x, y, z, w) != w) {
              return false;
            }
            for (std::size_t i = 0; i <= sys.k; ++i) {
              if (at(ds[i], x, y, y, x) != x) {
                return false;
              }
              if (i == sys.k) {
                continue;
              }
              bool linked = i % 2 == 0
                                ? at(ds[i], x, x, w, w) == at(ds[i + 1], x, x, w, w)
                                : at(ds[i], x, y, y, w) == at(ds[i + 1], x, y, y, w);
              if (!linked) {
                return false;
              }
            }
          }
        }
      }
    }
    return true;
  }

  ModularityVerdict decide_modularity(FiniteAlgebra const& alg,
                                      std::size_t          max_k,
                                      Caps const&          caps) {
    ModularityVerdict verdict;
    verdict.max_k  = max_k;
    verdict.search = find_directed_gumm(alg, max_k, caps);
    switch (verdict.search.status) {
      case SearchStatus::found:
        verdict.status = ModularityStatus::modular;
        verdict.system = verdict.search.system;
        break;
      case SearchStatus::not_up_to:
        verdict.status = verdict.search.definitive
                             ? ModularityStatus::no_terms
                             : ModularityStatus::no_terms_up_to;
        break;
      case SearchStatus::cap_exceeded:
        verdict.status = ModularityStatus::cap_exceeded;
        break;
    }
    return verdict;
  }

}  // namespace relid
