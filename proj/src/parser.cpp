#include <algorithm>
#include <cctype>
#include <charconv>

#include "relid/error.hpp"
#include "relid/expr.hpp"

namespace relid {

  namespace {
    enum class Tok {
      name,
      integer,
      turnstile,  // |-
      subset,     // <=
      equals,     // =
      amp,        // &
      bar,        // |
      semi,       // ;
      semi_hat,   // ;^
      plus,       // +
      lparen,
      rparen,
      comma,
      colon,
      end,
    };

    struct Token {
      Tok         kind;
      std::string text;
      std::size_t pos;
    };

    bool is_reserved(std::string_view s) {
      static constexpr std::string_view words[]
          = {"delta", "nabla", "conv", "star", "cl", "tol", "pow", "inf"};
      return std::find(std::begin(words), std::end(words), s)
             != std::end(words);
    }

    std::vector<Token> tokenize(std::string_view text) {
      std::vector<Token> out;
      std::size_t        i = 0;
      auto               n = text.size();
      while (i < n) {
        auto c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
          ++i;
          continue;
        }
        auto start = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
          while (i < n
                 && (std::isalnum(static_cast<unsigned char>(text[i]))
                     || text[i] == '_')) {
            ++i;
          }
          out.push_back({Tok::name, std::string(text.substr(start, i - start)),
                         start});
          continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
          while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
            ++i;
          }
          out.push_back({Tok::integer,
                         std::string(text.substr(start, i - start)), start});
          continue;
        }
        auto two = text.substr(i, 2);
        if (two == "|-") {
          out.push_back({Tok::turnstile, "|-", start});
          i += 2;
        } else if (two == "<=") {
          out.push_back({Tok::subset, "<=", start});
          i += 2;
        } else if (two == ";^") {
          out.push_back({Tok::semi_hat, ";^", start});
          i += 2;
        } else {
          Tok kind;
          switch (c) {
            case '=':
              kind = Tok::equals;
              break;
            case '&':
              kind = Tok::amp;
              break;
            case '|':
              kind = Tok::bar;
              break;
            case ';':
              kind = Tok::semi;
              break;
            case '+':
              kind = Tok::plus;
              break;
            case '(':
              kind = Tok::lparen;
              break;
            case ')':
              kind = Tok::rparen;
              break;
            case ',':
              kind = Tok::comma;
              break;
            case ':':
              kind = Tok::colon;
              break;
            default:
              throw ParseError(std::string("unexpected character '") + c + "'",
                               start);
          }
          out.push_back({kind, std::string(1, c), start});
          ++i;
        }
      }
      out.push_back({Tok::end, "", n});
      return out;
    }

    class Parser {
     public:
      Parser(std::string_view text, std::vector<std::string> declared)
          : tokens_(tokenize(text)), declared_(std::move(declared)) {}

      IdentityStatement statement() {
        IdentityStatement stmt;
        do {
          auto name = expect(Tok::name, "quantified variable name");
          if (is_reserved(name.text)) {
            throw ParseError("'" + name.text + "' is a reserved word",
                             name.pos);
          }
          if (std::find(declared_.begin(), declared_.end(), name.text)
              != declared_.end()) {
            throw ParseError("duplicate quantifier '" + name.text + "'",
                             name.pos);
          }
          expect(Tok::colon, "':'");
          auto sort = expect(Tok::name, "sort REFL, TOL or CON");
          Sort s;
          if (sort.text == "REFL") {
            s = Sort::refl;
          } else if (sort.text == "TOL") {
            s = Sort::tol;
          } else if (sort.text == "CON") {
            s = Sort::con;
          } else {
            throw ParseError("unknown sort '" + sort.text
                                 + "' (expected REFL, TOL or CON)",
                             sort.pos);
          }
          declared_.push_back(name.text);
          stmt.quantifiers.push_back({name.text, s});
        } while (accept(Tok::comma));
        expect(Tok::turnstile, "'|-'");
        stmt.lhs = expression();
        if (accept(Tok::subset)) {
          stmt.relation = Inclusion::included_in;
        } else if (accept(Tok::equals)) {
          stmt.relation = Inclusion::equals;
        } else {
          throw ParseError("expected '<=' or '='", peek().pos);
        }
        stmt.rhs = expression();
        expect(Tok::end, "end of input");
        return stmt;
      }

      RelExpr standalone() {
        auto e = expression();
        expect(Tok::end, "end of input");
        return e;
      }

     private:
      Token const& peek() const {
        return tokens_[pos_];
      }

      bool accept(Tok kind) {
        if (peek().kind == kind) {
          ++pos_;
          return true;
        }
        return false;
      }

      Token expect(Tok kind, char const* what) {
        if (peek().kind != kind) {
          auto const& t = peek();
          throw ParseError(std::string("expected ") + what + ", found "
                               + (t.kind == Tok::end ? std::string("end of input")
                                                     : "'" + t.text + "'"),
                           t.pos);
        }
        return tokens_[pos_++];
      }

      std::size_t positive_integer() {
        auto t = expect(Tok::integer, "a positive integer");
        std::size_t v  = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(),
                                         t.text.data() + t.text.size(), v);
        if (ec != std::errc() || v == 0) {
          throw ParseError("expected a positive integer", t.pos);
        }
        return v;
      }

      RelExpr expression() {
        auto lhs = sequence();
        while (true) {
          if (accept(Tok::plus)) {
            lhs = RelExpr::plus(lhs, sequence());
          } else if (accept(Tok::bar)) {
            lhs = RelExpr::unite(lhs, sequence());
          } else {
            return lhs;
          }
        }
      }

      RelExpr sequence() {
        auto lhs = conjunction();
        while (true) {
          if (accept(Tok::semi)) {
            lhs = RelExpr::compose(lhs, conjunction());
          } else if (accept(Tok::semi_hat)) {
            FactorCount m;
            if (peek().kind == Tok::name && peek().text == "inf") {
              ++pos_;
              m = FactorCount::infinite();
            } else {
              m = FactorCount(positive_integer());
            }
            lhs = RelExpr::compose_m(lhs, conjunction(), m);
          } else {
            return lhs;
          }
        }
      }

      RelExpr conjunction() {
        auto lhs = primary();
        while (accept(Tok::amp)) {
          lhs = RelExpr::intersect(lhs, primary());
        }
        return lhs;
      }

      RelExpr primary() {
        auto const t = peek();
        if (accept(Tok::lparen)) {
          auto e = expression();
          expect(Tok::rparen, "')'");
          return e;
        }
        if (t.kind != Tok::name) {
          throw ParseError("expected an expression, found "
                               + (t.kind == Tok::end ? std::string("end of input")
                                                     : "'" + t.text + "'"),
                           t.pos);
        }
        ++pos_;
        if (t.text == "delta") {
          return RelExpr::delta();
        }
        if (t.text == "nabla") {
          return RelExpr::nabla();
        }
        if (t.text == "conv" || t.text == "star" || t.text == "cl"
            || t.text == "tol") {
          expect(Tok::lparen, "'('");
          auto e = expression();
          expect(Tok::rparen, "')'");
          if (t.text == "conv") {
            return RelExpr::converse(e);
          }
          if (t.text == "star") {
            return RelExpr::star(e);
          }
          if (t.text == "cl") {
            return RelExpr::overline(e);
          }
          return RelExpr::tolerance_of(e);
        }
        if (t.text == "pow") {
          expect(Tok::lparen, "'('");
          auto e = expression();
          expect(Tok::comma, "','");
          auto h = positive_integer();
          expect(Tok::rparen, "')'");
          return RelExpr::power(e, h);
        }
        if (is_reserved(t.text)) {
          throw ParseError("unexpected '" + t.text + "'", t.pos);
        }
        if (std::find(declared_.begin(), declared_.end(), t.text)
            == declared_.end()) {
          throw ParseError("unknown variable '" + t.text + "'", t.pos);
        }
        return RelExpr::var(t.text);
      }

      std::vector<Token>       tokens_;
      std::size_t              pos_ = 0;
      std::vector<std::string> declared_;
    };
  }  // namespace

  RelExpr parse_expr(std::string_view                text,
                     std::vector<std::string> const& declared) {
    return Parser(text, declared).standalone();
  }

  IdentityStatement parse_identity(std::string_view text) {
    return Parser(text, {}).statement();
  }

}  // namespace relid
