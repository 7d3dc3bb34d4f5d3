#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relid/algebra.hpp"

namespace relid {

  // Binary relation on {0, ..., n-1} stored as one 64-bit row mask per
  // element, so n is limited to 64.
  class BinRel {
   public:
    static constexpr std::size_t max_size = 64;

    BinRel() = default;
    explicit BinRel(std::size_t n);

    static BinRel from_pairs(std::size_t                                n,
                             std::vector<std::pair<Element, Element>> const& pairs);

    std::size_t size() const noexcept {
      return n_;
    }
    bool contains(Element a, Element b) const {
      return (rows_[a] >> b) & 1U;
    }
    void insert(Element a, Element b) {
      rows_[a] |= std::uint64_t(1) << b;
    }
    std::uint64_t row(Element a) const {
      return rows_[a];
    }
    std::uint64_t& row(Element a) {
      return rows_[a];
    }

    std::size_t                          count() const;
    bool                                 subset_of(BinRel const& other) const;
    std::vector<std::pair<Element, Element>> pairs() const;

    friend bool operator==(BinRel const&, BinRel const&) = default;
    // Canonical order: lexicographic on the row-major flattened bit matrix,
    // absent before present.
    friend std::strong_ordering operator<=>(BinRel const&, BinRel const&);

   private:
    std::size_t                n_ = 0;
    std::vector<std::uint64_t> rows_;
  };

  struct BinRelHash {
    std::size_t operator()(BinRel const& r) const noexcept;
  };

  // Number of factors in an alternating composition; `infinite` stands for
  // the union over all finite counts.
  class FactorCount {
   public:
    constexpr FactorCount() = default;
    constexpr explicit FactorCount(std::size_t m) : value_(m) {}
    static constexpr FactorCount infinite() {
      FactorCount f;
      f.value_ = 0;
      return f;
    }
    constexpr bool is_infinite() const noexcept {
      return value_ == 0;
    }
    constexpr std::size_t value() const noexcept {
      return value_;
    }
    friend constexpr bool operator==(FactorCount, FactorCount) = default;

   private:
    std::size_t value_ = 1;
  };

  std::string to_string(FactorCount m);

  BinRel delta(std::size_t n);
  BinRel nabla(std::size_t n);
  BinRel compose(BinRel const& r, BinRel const& s);
  BinRel converse(BinRel const& r);
  BinRel intersect(BinRel const& r, BinRel const& s);
  BinRel unite(BinRel const& r, BinRel const& s);
  // r o s o r o ... with m factors; m infinite gives plus(r, s).
  BinRel m_compose(BinRel const& r, BinRel const& s, FactorCount m);
  BinRel power(BinRel const& r, std::size_t h);
  // Transitive closure.
  BinRel star(BinRel const& r);
  // Union over all m >= 1 of m_compose(r, s, m).
  BinRel plus(BinRel const& r, BinRel const& s);

  bool is_reflexive(BinRel const& r);
  bool is_symmetric(BinRel const& r);
  bool is_transitive(BinRel const& r);
  bool is_admissible(FiniteAlgebra const& alg, BinRel const& r);
  bool is_refl_adm(FiniteAlgebra const& alg, BinRel const& r);
  bool is_tolerance(FiniteAlgebra const& alg, BinRel const& r);
  bool is_congruence(FiniteAlgebra const& alg, BinRel const& r);

  // Least reflexive admissible relation containing r.
  BinRel refl_adm_closure(FiniteAlgebra const& alg, BinRel const& r);
  // Least tolerance containing r: refl_adm_closure(r u r~).
  BinRel tolerance_of(FiniteAlgebra const& alg, BinRel const& r);
  // Least congruence containing r.
  BinRel congruence_generated(FiniteAlgebra const& alg, BinRel const& r);

  // Relation literals: "+"-separated tokens, each "delta", "nabla", "empty"
  // or a pair "a-b". Example: "delta+0-1".
  BinRel      parse_relation(std::string_view text, std::size_t n);
  std::string to_literal(BinRel const& r);

}  // namespace relid
