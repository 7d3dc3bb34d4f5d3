#include "relid/term.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "relid/error.hpp"

namespace relid {

  struct Term::Node {
    bool              is_variable = false;
    std::size_t       index       = 0;
    std::string       symbol;
    std::vector<Term> children;
    std::size_t       bound = 0;
    std::size_t       depth = 0;
    std::size_t       nodes = 1;
  };

  Term Term::variable(std::size_t index) {
    auto node         = std::make_shared<Node>();
    node->is_variable = true;
    node->index       = index;
    node->bound       = index + 1;
    return Term(std::move(node));
  }

  Term Term::apply(std::string symbol, std::vector<Term> children) {
    auto node    = std::make_shared<Node>();
    node->symbol = std::move(symbol);
    for (auto const& c : children) {
      node->bound = std::max(node->bound, c.node_->bound);
      node->depth = std::max(node->depth, c.node_->depth + 1);
      node->nodes += c.node_->nodes;
    }
    node->children = std::move(children);
    return Term(std::move(node));
  }

  bool Term::is_variable() const {
    return node_->is_variable;
  }

  std::size_t Term::variable_index() const {
    return node_->index;
  }

  std::string const& Term::symbol() const {
    return node_->symbol;
  }

  std::span<Term const> Term::children() const {
    return node_->children;
  }

  std::size_t Term::variable_bound() const {
    return node_->bound;
  }

  std::size_t Term::depth() const {
    return node_->depth;
  }

  std::size_t Term::node_count() const {
    return node_->nodes;
  }

  bool operator==(Term const& lhs, Term const& rhs) {
    if (lhs.node_ == rhs.node_) {
      return true;
    }
    auto const& a = *lhs.node_;
    auto const& b = *rhs.node_;
    if (a.is_variable != b.is_variable) {
      return false;
    }
    if (a.is_variable) {
      return a.index == b.index;
    }
    return a.symbol == b.symbol && a.children == b.children;
  }

  std::string variable_name(std::size_t index) {
    static constexpr char names[] = {'x', 'y', 'z', 'w'};
    if (index < 4) {
      return std::string(1, names[index]);
    }
    return "v" + std::to_string(index);
  }

  namespace {
    void print(Term const& t, std::string& out) {
      if (t.is_variable()) {
        out += variable_name(t.variable_index());
        return;
      }
      out += t.symbol();
      if (t.children().empty()) {
        return;
      }
      out += '(';
      bool first = true;
      for (auto const& c : t.children()) {
        if (!first) {
          out += ',';
        }
        first = false;
        print(c, out);
      }
      out += ')';
    }

    class TermParser {
     public:
      explicit TermParser(std::string_view text) : text_(text) {}

      Term parse() {
        auto t = term();
        skip_space();
        if (pos_ != text_.size()) {
          throw ParseError("unexpected trailing input", pos_);
        }
        return t;
      }

     private:
      void skip_space() {
        while (pos_ < text_.size()
               && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
      }

      bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
          ++pos_;
          return true;
        }
        return false;
      }

      Term term() {
        skip_space();
        auto start = pos_;
        while (pos_ < text_.size()
               && (std::isalnum(static_cast<unsigned char>(text_[pos_]))
                   || text_[pos_] == '_')) {
          ++pos_;
        }
        if (start == pos_) {
          throw ParseError("expected a variable or operation symbol", pos_);
        }
        std::string name(text_.substr(start, pos_ - start));
        skip_space();
        bool call = pos_ < text_.size() && text_[pos_] == '(';
        if (!call) {
          if (name.size() == 1 && std::string_view("xyzw").find(name[0])
                                      != std::string_view::npos) {
            return Term::variable(std::string_view("xyzw").find(name[0]));
          }
          if (name.size() > 1 && name[0] == 'v') {
            std::size_t index = 0;
            auto [ptr, ec]    = std::from_chars(
                name.data() + 1, name.data() + name.size(), index);
            if (ec == std::errc() && ptr == name.data() + name.size()) {
              return Term::variable(index);
            }
          }
          return Term::apply(std::move(name));
        }
        ++pos_;
        std::vector<Term> children;
        if (!accept(')')) {
          do {
            children.push_back(term());
          } while (accept(','));
          if (!accept(')')) {
            throw ParseError("expected ',' or ')'", pos_);
          }
        }
        return Term::apply(std::move(name), std::move(children));
      }

      std::string_view text_;
      std::size_t      pos_ = 0;
    };
  }  // namespace

  std::string to_string(Term const& term) {
    std::string out;
    print(term, out);
    return out;
  }

  Term parse_term(std::string_view text) {
    return TermParser(text).parse();
  }

}  // namespace relid
