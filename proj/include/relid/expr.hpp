#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "relid/lattice.hpp"
#include "relid/relation.hpp"

namespace relid {

  // Syntax tree of a relation expression. Nodes are immutable and shared.
  class RelExpr {
   public:
    enum class Kind {
      var,
      delta,
      nabla,
      intersect,
      unite,
      compose,
      compose_m,
      power,
      converse,
      star,
      overline,
      tolerance_of,
      plus,
    };

    static RelExpr var(std::string name);
    static RelExpr delta();
    static RelExpr nabla();
    static RelExpr intersect(RelExpr lhs, RelExpr rhs);
    static RelExpr unite(RelExpr lhs, RelExpr rhs);
    static RelExpr compose(RelExpr lhs, RelExpr rhs);
    static RelExpr compose_m(RelExpr lhs, RelExpr rhs, FactorCount m);
    static RelExpr power(RelExpr operand, std::size_t h);
    static RelExpr converse(RelExpr operand);
    static RelExpr star(RelExpr operand);
    static RelExpr overline(RelExpr operand);
    static RelExpr tolerance_of(RelExpr operand);
    static RelExpr plus(RelExpr lhs, RelExpr rhs);

    Kind kind() const;
    // Variable name; empty for other kinds.
    std::string const& name() const;
    // Operands: none, one (unary and power) or two.
    std::vector<RelExpr> const& operands() const;
    FactorCount factors() const;
    std::size_t exponent() const;

    // Identity of the shared node, usable as a cache key.
    void const* id() const noexcept {
      return node_.get();
    }

    friend bool operator==(RelExpr const& lhs, RelExpr const& rhs);

   private:
    struct Node;
    explicit RelExpr(std::shared_ptr<Node const> node) : node_(std::move(node)) {}
    std::shared_ptr<Node const> node_;
  };

  enum class Sort { refl, tol, con };

  std::string_view to_string(Sort sort);
  RelKind          kind_of(Sort sort);

  struct Quantifier {
    std::string name;
    Sort        sort;
    friend bool operator==(Quantifier const&, Quantifier const&) = default;
  };

  enum class Inclusion { included_in, equals };

  // "quantifiers |- lhs <= rhs" or "quantifiers |- lhs = rhs".
  struct IdentityStatement {
    std::vector<Quantifier> quantifiers;
    Inclusion               relation = Inclusion::included_in;
    RelExpr                 lhs      = RelExpr::delta();
    RelExpr                 rhs      = RelExpr::delta();

    friend bool operator==(IdentityStatement const&,
                           IdentityStatement const&) = default;
  };

  std::string to_string(RelExpr const& expr);
  std::string to_string(IdentityStatement const& stmt);

  RelExpr           parse_expr(std::string_view text,
                               std::vector<std::string> const& declared);
  IdentityStatement parse_identity(std::string_view text);

}  // namespace relid
