#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace relid {

  // Immutable term tree over operation symbols and indexed variables.
  // Copies share structure.
  class Term {
   public:
    static Term variable(std::size_t index);
    static Term apply(std::string symbol, std::vector<Term> children = {});

    bool is_variable() const;
    std::size_t variable_index() const;
    std::string const& symbol() const;
    std::span<Term const> children() const;

    // Largest variable index plus one; 0 for ground terms.
    std::size_t variable_bound() const;
    std::size_t depth() const;
    std::size_t node_count() const;

    friend bool operator==(Term const& lhs, Term const& rhs);

   private:
    struct Node;
    explicit Term(std::shared_ptr<Node const> node) : node_(std::move(node)) {}
    std::shared_ptr<Node const> node_;
  };

  // Default variable names: x, y, z, w for indices 0..3, then v4, v5, ...
  std::string variable_name(std::size_t index);

  // Fully parenthesised prefix form, e.g. "xor(xor(x,y),z)".
  std::string to_string(Term const& term);

  // Inverse of to_string. Accepts x, y, z, w and v<i> as variables; any other
  // identifier is an operation symbol and must be followed by "(" unless it
  // is nullary.
  Term parse_term(std::string_view text);

}  // namespace relid
