#include "relid/relation.hpp"

#include <algorithm>
#include <bit>
#include <charconv>

#include "relid/detail/fresh_tuples.hpp"
#include "relid/error.hpp"

namespace relid {

  namespace {
    void require_same_size(BinRel const& r, BinRel const& s) {
      if (r.size() != s.size()) {
        throw SizeMismatch("relations on " + std::to_string(r.size()) + " and "
                           + std::to_string(s.size()) + " elements");
      }
    }

    void require_matches(FiniteAlgebra const& alg, BinRel const& r) {
      if (alg.size() != r.size()) {
        throw SizeMismatch("relation on " + std::to_string(r.size())
                           + " elements used with algebra of size "
                           + std::to_string(alg.size()));
      }
    }

    std::uint64_t full_row(std::size_t n) {
      return n == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n) - 1;
    }
  }  // namespace

  BinRel::BinRel(std::size_t n) : n_(n), rows_(n, 0) {
    if (n == 0 || n > max_size) {
      throw PreconditionError("relation size must be in 1.."
                              + std::to_string(max_size) + ", got "
                              + std::to_string(n));
    }
  }

  BinRel BinRel::from_pairs(std::size_t                                     n,
                            std::vector<std::pair<Element, Element>> const& pairs) {
    BinRel r(n);
    for (auto [a, b] : pairs) {
      if (a >= n || b >= n) {
        throw PreconditionError("pair (" + std::to_string(a) + ","
                                + std::to_string(b) + ") out of range");
      }
      r.insert(a, b);
    }
    return r;
  }

  std::size_t BinRel::count() const {
    std::size_t c = 0;
    for (auto row : rows_) {
      c += static_cast<std::size_t>(std::popcount(row));
    }
    return c;
  }

  bool BinRel::subset_of(BinRel const& other) const {
    require_same_size(*this, other);
    for (std::size_t a = 0; a < n_; ++a) {
      if ((rows_[a] & ~other.rows_[a]) != 0) {
        return false;
      }
    }
    return true;
  }

  std::vector<std::pair<Element, Element>> BinRel::pairs() const {
    std::vector<std::pair<Element, Element>> out;
    for (std::size_t a = 0; a < n_; ++a) {
      for (auto row = rows_[a]; row != 0; row &= row - 1) {
        out.emplace_back(static_cast<Element>(a),
                         static_cast<Element>(std::countr_zero(row)));
      }
    }
    return out;
  }

  std::strong_ordering operator<=>(BinRel const& r, BinRel const& s) {
    if (auto c = r.n_ <=> s.n_; c != 0) {
      return c;
    }
    for (std::size_t a = 0; a < r.n_; ++a) {
      auto diff = r.rows_[a] ^ s.rows_[a];
      if (diff != 0) {
        auto bit = std::countr_zero(diff);
        return ((r.rows_[a] >> bit) & 1U) ? std::strong_ordering::greater
                                          : std::strong_ordering::less;
      }
    }
    return std::strong_ordering::equal;
  }

  std::size_t BinRelHash::operator()(BinRel const& r) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ r.size();
    for (std::size_t a = 0; a < r.size(); ++a) {
      h ^= r.row(static_cast<Element>(a)) + 0x9e3779b97f4a7c15ULL + (h << 6)
           + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

  std::string to_string(FactorCount m) {
    return m.is_infinite() ? std::string("inf") : std::to_string(m.value());
  }

  BinRel delta(std::size_t n) {
    BinRel r(n);
    for (std::size_t a = 0; a < n; ++a) {
      r.insert(static_cast<Element>(a), static_cast<Element>(a));
    }
    return r;
  }

  BinRel nabla(std::size_t n) {
    BinRel r(n);
    for (std::size_t a = 0; a < n; ++a) {
      r.row(static_cast<Element>(a)) = full_row(n);
    }
    return r;
  }

  BinRel compose(BinRel const& r, BinRel const& s) {
    require_same_size(r, s);
    BinRel out(r.size());
    for (Element a = 0; a < r.size(); ++a) {
      std::uint64_t acc = 0;
      for (auto row = r.row(a); row != 0; row &= row - 1) {
        acc |= s.row(static_cast<Element>(std::countr_zero(row)));
      }
      out.row(a) = acc;
    }
    return out;
  }

  BinRel converse(BinRel const& r) {
    BinRel out(r.size());
    for (auto [a, b] : r.pairs()) {
      out.insert(b, a);
    }
    return out;
  }

  BinRel intersect(BinRel const& r, BinRel const& s) {
    require_same_size(r, s);
    BinRel out(r.size());
    for (Element a = 0; a < r.size(); ++a) {
      out.row(a) = r.row(a) & s.row(a);
    }
    return out;
  }

  BinRel unite(BinRel const& r, BinRel const& s) {
    require_same_size(r, s);
    BinRel out(r.size());
    for (Element a = 0; a < r.size(); ++a) {
      out.row(a) = r.row(a) | s.row(a);
    }
    return out;
  }

  BinRel m_compose(BinRel const& r, BinRel const& s, FactorCount m) {
    require_same_size(r, s);
    if (m.is_infinite()) {
      return plus(r, s);
    }
    BinRel out = r;
    for (std::size_t i = 1; i < m.value(); ++i) {
      out = compose(out, i % 2 == 1 ? s : r);
    }
    return out;
  }

  BinRel power(BinRel const& r, std::size_t h) {
    if (h == 0) {
      throw PreconditionError("power exponent must be at least 1");
    }
    return m_compose(r, r, FactorCount(h));
  }

  BinRel star(BinRel const& r) {
    BinRel out = r;
    auto   n   = r.size();
    for (Element k = 0; k < n; ++k) {
      auto bit = std::uint64_t(1) << k;
      for (Element i = 0; i < n; ++i) {
        if (out.row(i) & bit) {
          out.row(i) |= out.row(k);
        }
      }
    }
    return out;
  }

  BinRel plus(BinRel const& r, BinRel const& s) {
    // Even factor counts give (r o s)^j, odd ones (r o s)^j o r.
    auto even = star(compose(r, s));
    return unite(unite(r, even), compose(even, r));
  }

  bool is_reflexive(BinRel const& r) {
    for (Element a = 0; a < r.size(); ++a) {
      if (!r.contains(a, a)) {
        return false;
      }
    }
    return true;
  }

  bool is_symmetric(BinRel const& r) {
    return converse(r) == r;
  }

  bool is_transitive(BinRel const& r) {
    return compose(r, r).subset_of(r);
  }

  namespace {
    // Applies op to every tuple of pairs from `list` that mentions index i,
    // with all indices <= i. Calls emit(a, b) with each resulting pair.
    template <typename Emit>
    void apply_to_new_pairs(FiniteAlgebra const&                             alg,
                            Operation const&                                 op,
                            std::vector<std::pair<Element, Element>> const& list,
                            std::size_t                                      i,
                            Emit&&                                           emit) {
      auto const n = alg.size();
      detail::for_each_fresh_tuple(
          op.arity, i, [&](std::vector<std::size_t> const& idx) {
            std::size_t left = 0, right = 0;
            for (auto j : idx) {
              left  = left * n + list[j].first;
              right = right * n + list[j].second;
            }
            emit(op.table[left], op.table[right]);
          });
    }

    // Subuniverse of A^2 generated by the pairs of seed.
    BinRel close_pairs(FiniteAlgebra const& alg, BinRel seed) {
      auto list = seed.pairs();
      for (auto const& op : alg.operations()) {
        if (op.arity == 0) {
          auto c = op.table[0];
          if (!seed.contains(c, c)) {
            seed.insert(c, c);
            list.emplace_back(c, c);
          }
        }
      }
      for (std::size_t i = 0; i < list.size(); ++i) {
        for (auto const& op : alg.operations()) {
          if (op.arity == 0) {
            continue;
          }
          apply_to_new_pairs(alg, op, list, i, [&](Element a, Element b) {
            if (!seed.contains(a, b)) {
              seed.insert(a, b);
              list.emplace_back(a, b);
            }
          });
        }
      }
      return seed;
    }
  }  // namespace

  bool is_admissible(FiniteAlgebra const& alg, BinRel const& r) {
    require_matches(alg, r);
    auto list = r.pairs();
    for (auto const& op : alg.operations()) {
      if (op.arity == 0) {
        if (!r.contains(op.table[0], op.table[0])) {
          return false;
        }
        continue;
      }
      bool ok = true;
      for (std::size_t i = 0; i < list.size() && ok; ++i) {
        apply_to_new_pairs(alg, op, list, i, [&](Element a, Element b) {
          ok = ok && r.contains(a, b);
        });
      }
      if (!ok) {
        return false;
      }
    }
    return true;
  }

  bool is_refl_adm(FiniteAlgebra const& alg, BinRel const& r) {
    return is_reflexive(r) && is_admissible(alg, r);
  }

  bool is_tolerance(FiniteAlgebra const& alg, BinRel const& r) {
    return is_reflexive(r) && is_symmetric(r) && is_admissible(alg, r);
  }

  bool is_congruence(FiniteAlgebra const& alg, BinRel const& r) {
    return is_tolerance(alg, r) && is_transitive(r);
  }

  BinRel refl_adm_closure(FiniteAlgebra const& alg, BinRel const& r) {
    require_matches(alg, r);
    return close_pairs(alg, unite(r, delta(r.size())));
  }

  BinRel tolerance_of(FiniteAlgebra const& alg, BinRel const& r) {
    return refl_adm_closure(alg, unite(r, converse(r)));
  }

  BinRel congruence_generated(FiniteAlgebra const& alg, BinRel const& r) {
    auto current = tolerance_of(alg, r);
    while (true) {
      auto next = tolerance_of(alg, star(current));
      if (next == current) {
        return current;
      }
      current = std::move(next);
    }
  }

  BinRel parse_relation(std::string_view text, std::size_t n) {
    BinRel      r(n);
    std::size_t pos = 0;
    while (true) {
      auto end   = text.find('+', pos);
      auto token = text.substr(pos, end == std::string_view::npos
                                        ? std::string_view::npos
                                        : end - pos);
      while (!token.empty() && token.front() == ' ') {
        token.remove_prefix(1);
        ++pos;
      }
      while (!token.empty() && token.back() == ' ') {
        token.remove_suffix(1);
      }
      if (token == "delta") {
        r = unite(r, delta(n));
      } else if (token == "nabla") {
        r = unite(r, nabla(n));
      } else if (token == "empty") {
      } else {
        auto dash = token.find('-');
        if (dash == std::string_view::npos) {
          throw ParseError("expected 'delta', 'nabla' or a pair 'a-b'", pos);
        }
        auto number = [&](std::string_view s, std::size_t at) {
          Element v          = 0;
          auto [ptr, ec]     = std::from_chars(s.data(), s.data() + s.size(), v);
          if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
            throw ParseError("expected an element number", at);
          }
          if (v >= n) {
            throw ParseError("element " + std::to_string(v)
                                 + " out of range for size " + std::to_string(n),
                             at);
          }
          return v;
        };
        auto a = number(token.substr(0, dash), pos);
        auto b = number(token.substr(dash + 1), pos + dash + 1);
        r.insert(a, b);
      }
      if (end == std::string_view::npos) {
        return r;
      }
      pos = end + 1;
    }
  }

  std::string to_literal(BinRel const& r) {
    if (r == nabla(r.size())) {
      return "nabla";
    }
    if (r.count() == 0) {
      return "empty";
    }
    bool        refl = is_reflexive(r);
    std::string out  = refl ? "delta" : "";
    for (auto [a, b] : r.pairs()) {
      if (refl && a == b) {
        continue;
      }
      if (!out.empty()) {
        out += '+';
      }
      out += std::to_string(a) + "-" + std::to_string(b);
    }
    return out;
  }

}  // namespace relid
