#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "relid/catalog.hpp"
#include "relid/error.hpp"
#include "relid/expr.hpp"

using namespace relid;

namespace {
  using E = RelExpr;

  E var(char const* name) {
    return E::var(name);
  }

  std::vector<CatalogParams> parameter_grid() {
    std::vector<CatalogParams> out;
    for (std::size_t k : {2, 3}) {
      for (std::size_t h : {1, 2}) {
        for (auto m : {FactorCount(2), FactorCount(3), FactorCount::infinite()}) {
          for (std::size_t l : {1, 2, 3}) {
            out.push_back(CatalogParams{k, h, m, l});
          }
        }
      }
    }
    return out;
  }

  std::string statement_of(char const* label, CatalogParams const& p = {}) {
    auto entry = find_in_catalog(label, p);
    REQUIRE(entry.has_value());
    return to_string(entry->statement);
  }
}  // namespace

TEST_CASE("parse an identity") {
  auto stmt = parse_identity(
      "Theta:TOL, S:REFL |- Theta & (S ; S) <= star(Theta & S)");
  REQUIRE(stmt.quantifiers.size() == 2);
  CHECK(stmt.quantifiers[0] == Quantifier{"Theta", Sort::tol});
  CHECK(stmt.quantifiers[1] == Quantifier{"S", Sort::refl});
  CHECK(stmt.relation == Inclusion::included_in);
  CHECK(stmt.lhs == E::intersect(var("Theta"), E::compose(var("S"), var("S"))));
  CHECK(stmt.rhs == E::star(E::intersect(var("Theta"), var("S"))));

  auto trivial = parse_identity("S:REFL |- S <= S");
  CHECK(trivial.lhs == var("S"));
  CHECK(parse_identity("A:CON |- A = A ; A").relation == Inclusion::equals);
}

TEST_CASE("precedence and associativity") {
  std::vector<std::string> names{"A", "B", "C"};
  auto A = var("A"), B = var("B"), C = var("C");
  CHECK(parse_expr("A ; B & C", names) == E::compose(A, E::intersect(B, C)));
  CHECK(parse_expr("A & B ; C", names) == E::compose(E::intersect(A, B), C));
  CHECK(parse_expr("A + B ; C", names) == E::plus(A, E::compose(B, C)));
  CHECK(parse_expr("A ; B ; C", names) == E::compose(E::compose(A, B), C));
  CHECK(parse_expr("A & B & C", names) == E::intersect(E::intersect(A, B), C));
  CHECK(parse_expr("A ;^3 B ; C", names)
        == E::compose(E::compose_m(A, B, FactorCount(3)), C));
  CHECK(parse_expr("A ;^inf B", names)
        == E::compose_m(A, B, FactorCount::infinite()));
  CHECK(parse_expr("A | B + C", names) == E::plus(E::unite(A, B), C));
  CHECK(parse_expr("conv(A) & star(B)", names)
        == E::intersect(E::converse(A), E::star(B)));
  CHECK(parse_expr("pow(A ; B, 3)", names) == E::power(E::compose(A, B), 3));
  CHECK(parse_expr("cl(A | delta) & tol(nabla)", names)
        == E::intersect(E::overline(E::unite(A, E::delta())),
                        E::tolerance_of(E::nabla())));
  CHECK(parse_expr("A ; (B ; C)", names) == E::compose(A, E::compose(B, C)));
}

TEST_CASE("printer uses minimal parentheses") {
  std::vector<std::string> names{"A", "B", "C"};
  for (auto text : {"A ; B & C", "A & B ; C", "(A ; B) & C", "A ; (B ; C)",
                    "A + B ; C", "(A + B) ; C", "A ;^2 B ; C", "A ;^inf (B + C)",
                    "conv(A ; B) & pow(A, 2)", "A | B + C", "A & (B | C)"}) {
    CAPTURE(text);
    CHECK(to_string(parse_expr(text, names)) == text);
  }
}

TEST_CASE("parse errors") {
  CHECK_THROWS_WITH_AS(parse_identity("S:REFL |- S <= T"),
                       doctest::Contains("unknown variable 'T'"), ParseError);
  CHECK_THROWS_WITH_AS(parse_identity("S:REFL, S:TOL |- S <= S"),
                       doctest::Contains("duplicate quantifier"), ParseError);
  CHECK_THROWS_WITH_AS(parse_identity("S:EQ |- S <= S"),
                       doctest::Contains("unknown sort"), ParseError);
  CHECK_THROWS_WITH_AS(parse_identity("star:REFL |- star <= star"),
                       doctest::Contains("reserved word"), ParseError);
  CHECK_THROWS_AS(parse_identity("S:REFL |- S <="), ParseError);
  CHECK_THROWS_AS(parse_identity("S:REFL |- S ;^0 S <= S"), ParseError);
  CHECK_THROWS_AS(parse_identity("S:REFL |- pow(S, 0) <= S"), ParseError);
  CHECK_THROWS_AS(parse_identity("S:REFL |- S S <= S"), ParseError);
  CHECK_THROWS_AS(parse_identity("S:REFL S <= S"), ParseError);
  try {
    parse_identity("S:REFL |- S & # <= S");
    FAIL("expected a parse error");
  } catch (ParseError const& e) {
    CHECK(e.position() == 14);
  }
}

TEST_CASE("catalog statements") {
  CHECK(statement_of("(1.1)")
        == "Theta:TOL, S:REFL |- Theta & (S ; S) <= star(Theta & S)");
  CHECK(statement_of("(1.2)")
        == "Theta:TOL, S:REFL |- Theta & star(S) <= star(Theta & S)");
  CHECK(statement_of("1.2") == statement_of("(1.2)"));
  CHECK(statement_of("(B1)", CatalogParams{2, 1, FactorCount::infinite(), 2})
        == "Theta:TOL, S:REFL |- Theta & (S ;^inf conv(S)) <= Theta & S + "
           "Theta & conv(S)");
  CHECK(statement_of("(a2)", CatalogParams{2, 1, FactorCount(2), 2})
        == "R:REFL, S:REFL, T:REFL |- R & (S ;^2 T) <= R & cl(S | T) ; "
           "(tol(R) & S ;^2 tol(R) & T)");
  CHECK(statement_of("(a1)", CatalogParams{3, 2, FactorCount(2), 2})
        == "Theta:TOL, S:REFL |- Theta & (S ;^4 S) <= pow(Theta & S, 19)");
  CHECK(statement_of("(a3)", CatalogParams{3, 2, FactorCount(2), 2})
        == "Theta:TOL, S:REFL |- Theta & (S ;^4 conv(S)) <= Theta & conv(S) "
           ";^13 Theta & S");
  CHECK(statement_of("(turt)", CatalogParams{3, 1, FactorCount(2), 3})
        == "R:REFL, V:REFL, W:REFL, S1:REFL, S2:REFL, S3:REFL |- R & (V ; W) "
           "& (S1 ; S2 ; S3) <= R & cl(V | W) ; pow(tol(R) & S1 ; tol(R) & S2 "
           "; tol(R) & S3, 3)");
  CHECK(statement_of("(turtt)", CatalogParams{3, 1, FactorCount(2), 1})
        == "R:REFL, V:REFL, W:REFL, S1:REFL |- R & (V ; W) & S1 <= R & "
           "conv(R) & cl(conv(V) | W) ; pow(tol(R) & S1, 2)");
  CHECK(statement_of("(day)", CatalogParams{4, 1, FactorCount(2), 2})
        == "Theta:TOL, S:REFL |- Theta & (S ; conv(S)) <= Theta & S ;^3 "
           "Theta & conv(S)");
  CHECK_FALSE(find_in_catalog("(Z9)").has_value());
}

TEST_CASE("catalog labels") {
  std::vector<std::string> labels;
  for (auto const& e : catalog()) {
    labels.push_back(e.label);
  }
  CHECK(labels
        == std::vector<std::string>{
            "(1.1)", "(1.2)", "(1.3)", "(1.4)", "(1.5)", "(var-dist)",
            "(var-perm)", "(turt)", "(turtt)", "(a1)", "(a2)", "(a3)", "(A1)",
            "(A2)", "(A3)", "(B1)", "(B2)", "(C1)", "(C2)", "(C3)", "(C4)",
            "(D1)", "(D2)", "(D3)", "(D4)", "(D5)", "(day)"});
}

TEST_CASE("catalog parameter validation") {
  CHECK_THROWS_AS(catalog(CatalogParams{1, 1, FactorCount(2), 2}),
                  PreconditionError);
  CHECK_THROWS_AS(catalog(CatalogParams{2, 0, FactorCount(2), 2}),
                  PreconditionError);
  CHECK_THROWS_AS(catalog(CatalogParams{2, 1, FactorCount(1), 2}),
                  PreconditionError);
  CHECK_THROWS_AS(catalog(CatalogParams{2, 1, FactorCount(2), 0}),
                  PreconditionError);
}

TEST_CASE("bounds") {
  CHECK(q_bound(1, 2) == 2);
  CHECK(r_bound(1, 2) == 3);
  CHECK(q_bound(2, 3) == 18);
  for (std::size_t h = 1; h < 8; ++h) {
    for (std::size_t k = 2; k < 8; ++k) {
      std::size_t twos = (std::size_t(1) << (h + 1)) - 2;
      CHECK(q_bound(h, k) == twos * (2 * k - 3));
      CHECK(r_bound(h, k) == 1 + twos * (k - 1));
    }
  }
  CHECK_THROWS_AS(q_bound(0, 2), PreconditionError);
  CHECK_THROWS_AS(r_bound(1, 1), PreconditionError);
}

TEST_CASE("parse and print are inverse on the whole catalog") {
  std::set<std::string> seen;
  for (auto const& p : parameter_grid()) {
    for (auto const& e : catalog(p)) {
      auto text = to_string(e.statement);
      CAPTURE(e.label);
      CAPTURE(text);
      auto reparsed = parse_identity(text);
      CHECK(reparsed == e.statement);
      CHECK(to_string(reparsed) == text);
      seen.insert(text);
    }
  }
  CHECK(seen.size() > 50);
}
