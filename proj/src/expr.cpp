#include "relid/expr.hpp"

#include "relid/error.hpp"

namespace relid {

  struct RelExpr::Node {
    Kind                 kind;
    std::string          name;
    std::vector<RelExpr> operands;
    FactorCount          factors;
    std::size_t          exponent = 0;
  };

  namespace {
    std::vector<RelExpr> pack(RelExpr a) {
      std::vector<RelExpr> v;
      v.push_back(std::move(a));
      return v;
    }
    std::vector<RelExpr> pack(RelExpr a, RelExpr b) {
      std::vector<RelExpr> v;
      v.push_back(std::move(a));
      v.push_back(std::move(b));
      return v;
    }
  }  // namespace

#define RELID_MAKE(kind_, ...)                                         \
  RelExpr(std::make_shared<Node const>(Node{kind_, __VA_ARGS__}))

  RelExpr RelExpr::var(std::string name) {
    return RELID_MAKE(Kind::var, std::move(name), {}, {}, 0);
  }
  RelExpr RelExpr::delta() {
    return RELID_MAKE(Kind::delta, {}, {}, {}, 0);
  }
  RelExpr RelExpr::nabla() {
    return RELID_MAKE(Kind::nabla, {}, {}, {}, 0);
  }
  RelExpr RelExpr::intersect(RelExpr lhs, RelExpr rhs) {
    return RELID_MAKE(Kind::intersect, {}, pack(lhs, rhs), {}, 0);
  }
  RelExpr RelExpr::unite(RelExpr lhs, RelExpr rhs) {
    return RELID_MAKE(Kind::unite, {}, pack(lhs, rhs), {}, 0);
  }
  RelExpr RelExpr::compose(RelExpr lhs, RelExpr rhs) {
    return RELID_MAKE(Kind::compose, {}, pack(lhs, rhs), {}, 0);
  }
  RelExpr RelExpr::compose_m(RelExpr lhs, RelExpr rhs, FactorCount m) {
    return RELID_MAKE(Kind::compose_m, {}, pack(lhs, rhs), m, 0);
  }
  RelExpr RelExpr::power(RelExpr operand, std::size_t h) {
    if (h == 0) {
      throw PreconditionError("power exponent must be at least 1");
    }
    return RELID_MAKE(Kind::power, {}, pack(operand), {}, h);
  }
  RelExpr RelExpr::converse(RelExpr operand) {
    return RELID_MAKE(Kind::converse, {}, pack(operand), {}, 0);
  }
  RelExpr RelExpr::star(RelExpr operand) {
    return RELID_MAKE(Kind::star, {}, pack(operand), {}, 0);
  }
  RelExpr RelExpr::overline(RelExpr operand) {
    return RELID_MAKE(Kind::overline, {}, pack(operand), {}, 0);
  }
  RelExpr RelExpr::tolerance_of(RelExpr operand) {
    return RELID_MAKE(Kind::tolerance_of, {}, pack(operand), {}, 0);
  }
  RelExpr RelExpr::plus(RelExpr lhs, RelExpr rhs) {
    return RELID_MAKE(Kind::plus, {}, pack(lhs, rhs), {}, 0);
  }

#undef RELID_MAKE

  RelExpr::Kind RelExpr::kind() const {
    return node_->kind;
  }
  std::string const& RelExpr::name() const {
    return node_->name;
  }
  std::vector<RelExpr> const& RelExpr::operands() const {
    return node_->operands;
  }
  FactorCount RelExpr::factors() const {
    return node_->factors;
  }
  std::size_t RelExpr::exponent() const {
    return node_->exponent;
  }

  bool operator==(RelExpr const& lhs, RelExpr const& rhs) {
    if (lhs.node_ == rhs.node_) {
      return true;
    }
    auto const& a = *lhs.node_;
    auto const& b = *rhs.node_;
    return a.kind == b.kind && a.name == b.name && a.factors == b.factors
           && a.exponent == b.exponent && a.operands == b.operands;
  }

  std::string_view to_string(Sort sort) {
    switch (sort) {
      case Sort::refl:
        return "REFL";
      case Sort::tol:
        return "TOL";
      case Sort::con:
        return "CON";
    }
    return "?";
  }

  RelKind kind_of(Sort sort) {
    switch (sort) {
      case Sort::refl:
        return RelKind::refl_adm;
      case Sort::tol:
        return RelKind::tolerance;
      case Sort::con:
        return RelKind::congruence;
    }
    return RelKind::refl_adm;
  }

  namespace {
    // Binding strength; smaller binds tighter.
    int level(RelExpr const& e) {
      switch (e.kind()) {
        case RelExpr::Kind::intersect:
          return 1;
        case RelExpr::Kind::compose:
        case RelExpr::Kind::compose_m:
          return 2;
        case RelExpr::Kind::plus:
        case RelExpr::Kind::unite:
          return 3;
        default:
          return 0;
      }
    }

    void print(RelExpr const& e, std::string& out);

    void print_operand(RelExpr const& e, bool parens, std::string& out) {
      if (parens) {
        out += '(';
      }
      print(e, out);
      if (parens) {
        out += ')';
      }
    }

    void print_unary(char const* head, RelExpr const& e, std::string& out) {
      out += head;
      out += '(';
      print(e.operands()[0], out);
      out += ')';
    }

    void print(RelExpr const& e, std::string& out) {
      using K = RelExpr::Kind;
      switch (e.kind()) {
        case K::var:
          out += e.name();
          return;
        case K::delta:
          out += "delta";
          return;
        case K::nabla:
          out += "nabla";
          return;
        case K::converse:
          print_unary("conv", e, out);
          return;
        case K::star:
          print_unary("star", e, out);
          return;
        case K::overline:
          print_unary("cl", e, out);
          return;
        case K::tolerance_of:
          print_unary("tol", e, out);
          return;
        case K::power:
          out += "pow(";
          print(e.operands()[0], out);
          out += ", " + std::to_string(e.exponent()) + ")";
          return;
        default:
          break;
      }
      std::string op;
      switch (e.kind()) {
        case K::intersect:
          op = " & ";
          break;
        case K::unite:
          op = " | ";
          break;
        case K::compose:
          op = " ; ";
          break;
        case K::compose_m:
          op = " ;^" + to_string(e.factors()) + " ";
          break;
        case K::plus:
          op = " + ";
          break;
        default:
          break;
      }
      auto const& lhs = e.operands()[0];
      auto const& rhs = e.operands()[1];
      // Left-associative: the right operand needs parentheses at equal level.
      print_operand(lhs, level(lhs) > level(e), out);
      out += op;
      print_operand(rhs, level(rhs) >= level(e), out);
    }
  }  // namespace

  std::string to_string(RelExpr const& expr) {
    std::string out;
    print(expr, out);
    return out;
  }

  std::string to_string(IdentityStatement const& stmt) {
    std::string out;
    bool        first = true;
    for (auto const& q : stmt.quantifiers) {
      if (!first) {
        out += ", ";
      }
      first = false;
      out += q.name + ":" + std::string(to_string(q.sort));
    }
    out += " |- " + to_string(stmt.lhs);
    out += stmt.relation == Inclusion::included_in ? " <= " : " = ";
    out += to_string(stmt.rhs);
    return out;
  }

}  // namespace relid
