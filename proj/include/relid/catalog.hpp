#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relid/expr.hpp"

namespace relid {

  // Parameters of the parametric identity families. k is the number of
  // non-initial directed Gumm (or Day) terms, h the doubling depth of the
  // (a1)-(a3) family, m the factor count of the (A1)-(D5) family and
  // `length` the number of S_i variables in (turt)/(turtt).
  struct CatalogParams {
    std::size_t k      = 2;
    std::size_t h      = 1;
    FactorCount m      = FactorCount(2);
    std::size_t length = 2;
  };

  struct CatalogEntry {
    std::string       label;
    IdentityStatement statement;
  };

  // Every built-in identity, instantiated. Throws PreconditionError unless
  // k >= 2, h >= 1, m >= 2 (or infinite) and length >= 1.
  std::vector<CatalogEntry> catalog(CatalogParams const& params = {});

  // Accepts labels with or without the surrounding parentheses.
  std::optional<CatalogEntry> find_in_catalog(std::string_view     label,
                                              CatalogParams const& params = {});

  // (2^(h+1) - 2)(2k - 3) and 1 + (2^(h+1) - 2)(k - 1).
  std::size_t q_bound(std::size_t h, std::size_t k);
  std::size_t r_bound(std::size_t h, std::size_t k);

}  // namespace relid
