#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relid/term.hpp"

namespace relid {

  using Element = std::uint32_t;

  // A finitary operation given by its full table. Argument tuples are encoded
  // mixed-radix with the first argument most significant.
  struct Operation {
    std::string          symbol;
    std::size_t          arity = 0;
    std::vector<Element> table;
  };

  // Finite algebra on the universe {0, ..., n-1}. Validated on construction
  // and immutable afterwards.
  class FiniteAlgebra {
   public:
    FiniteAlgebra(std::string name, std::size_t size,
                  std::vector<Operation> operations);

    std::string const& name() const noexcept {
      return name_;
    }
    std::size_t size() const noexcept {
      return size_;
    }
    std::span<Operation const> operations() const noexcept {
      return operations_;
    }

    // nullptr when no operation has this symbol.
    Operation const* find(std::string_view symbol) const;

    Element apply(Operation const& op, std::span<Element const> args) const;

    friend bool operator==(FiniteAlgebra const&, FiniteAlgebra const&);

   private:
    std::string            name_;
    std::size_t            size_;
    std::vector<Operation> operations_;
  };

  // Resource limits for free-algebra and closure computations.
  struct Caps {
    std::size_t max_vector_length = std::size_t(1) << 20;
    std::size_t max_closure_size  = std::size_t(1) << 20;
  };

  // An element of a subpower A^width together with a term that builds it
  // from the generators (variable i = generator i).
  struct FreeElement {
    std::vector<Element> values;
    Term                 term;
  };

  // Parses the JSON algebra format
  //   {"name": ..., "size": n, "operations": [{"symbol", "arity", "table"}]}
  FiniteAlgebra load_algebra(std::string_view text);
  FiniteAlgebra load_algebra_file(std::string const& path);
  std::string   dump_algebra(FiniteAlgebra const& alg);

  Element eval_term(FiniteAlgebra const&      alg,
                    Term const&               term,
                    std::span<Element const> env);

  // n^g, or throws CapExceeded when above caps.max_vector_length.
  std::size_t tuple_count(std::size_t n, std::size_t g, Caps const& caps);

  // The i-th argument tuple of arity g in mixed-radix order.
  std::vector<Element> decode_tuple(std::size_t n, std::size_t g,
                                    std::size_t index);

  // The g-ary term function of `term` as a vector of length n^g.
  FreeElement term_table(FiniteAlgebra const& alg, Term const& term,
                         std::size_t g, Caps const& caps = {});

  // Least subset of A^width containing the generators and closed under every
  // operation acting coordinatewise. Output order is discovery order:
  // generators first (duplicates dropped), then constants, then elements as
  // found by semi-naive saturation. Terms are over generator indices.
  std::vector<FreeElement> generate_subuniverse(
      FiniteAlgebra const&         alg,
      std::size_t                  width,
      std::span<FreeElement const> generators,
      Caps const&                  caps = {});

  // F(g) as the subalgebra of A^(A^g) generated by the g projections; the
  // first g elements are the projections.
  std::vector<FreeElement> free_algebra(FiniteAlgebra const& alg,
                                        std::size_t          g,
                                        Caps const&          caps = {});

}  // namespace relid
