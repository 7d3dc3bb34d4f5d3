#include "relid/algebra.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

#include "relid/detail/fresh_tuples.hpp"
#include "relid/error.hpp"

namespace relid {

  namespace {
    std::size_t checked_power(std::size_t base, std::size_t exponent,
                              std::size_t limit) {
      std::size_t result = 1;
      for (std::size_t i = 0; i < exponent; ++i) {
        if (base != 0 && result > limit / base) {
          return limit + 1;
        }
        result *= base;
      }
      return result;
    }

    struct VectorHash {
      std::size_t operator()(std::vector<Element> const& v) const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (auto x : v) {
          h ^= x;
          h *= 0x100000001b3ULL;
        }
        return static_cast<std::size_t>(h ^ (h >> 29));
      }
    };
  }  // namespace

  FiniteAlgebra::FiniteAlgebra(std::string            name,
                               std::size_t            size,
                               std::vector<Operation> operations)
      : name_(std::move(name)), size_(size), operations_(std::move(operations)) {
    if (size_ == 0) {
      throw InvalidAlgebra("algebra size must be at least 1");
    }
    std::unordered_set<std::string> seen;
    for (auto const& op : operations_) {
      if (op.symbol.empty()) {
        throw InvalidAlgebra("empty operation symbol");
      }
      if (!seen.insert(op.symbol).second) {
        throw InvalidAlgebra("duplicate symbol '" + op.symbol + "'");
      }
      auto expected = checked_power(size_, op.arity, std::size_t(1) << 32);
      if (op.table.size() != expected) {
        throw InvalidAlgebra("table length mismatch for '" + op.symbol
                             + "': expected " + std::to_string(expected)
                             + ", got " + std::to_string(op.table.size()));
      }
      for (auto v : op.table) {
        if (v >= size_) {
          throw InvalidAlgebra("entry out of range in '" + op.symbol
                               + "': " + std::to_string(v));
        }
      }
    }
  }

  Operation const* FiniteAlgebra::find(std::string_view symbol) const {
    auto it = std::find_if(operations_.begin(), operations_.end(),
                           [&](auto const& op) { return op.symbol == symbol; });
    return it == operations_.end() ? nullptr : &*it;
  }

  Element FiniteAlgebra::apply(Operation const&         op,
                               std::span<Element const> args) const {
    std::size_t index = 0;
    for (auto a : args) {
      index = index * size_ + a;
    }
    return op.table[index];
  }

  bool operator==(FiniteAlgebra const& a, FiniteAlgebra const& b) {
    if (a.name_ != b.name_ || a.size_ != b.size_
        || a.operations_.size() != b.operations_.size()) {
      return false;
    }
    for (std::size_t i = 0; i < a.operations_.size(); ++i) {
      auto const& x = a.operations_[i];
      auto const& y = b.operations_[i];
      if (x.symbol != y.symbol || x.arity != y.arity || x.table != y.table) {
        return false;
      }
    }
    return true;
  }

  FiniteAlgebra load_algebra(std::string_view text) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (nlohmann::json::parse_error const& e) {
      throw ParseError(e.what(), e.byte);
    }
    auto require = [](bool ok, char const* what) {
      if (!ok) {
        throw ParseError(what, 0);
      }
    };
    require(doc.is_object(), "algebra must be an object");
    require(doc.contains("name") && doc["name"].is_string(),
            "missing string field 'name'");
    require(doc.contains("size") && doc["size"].is_number_integer(),
            "missing integer field 'size'");
    require(doc.contains("operations") && doc["operations"].is_array(),
            "missing array field 'operations'");
    auto size = doc["size"].get<long long>();
    if (size < 1) {
      throw InvalidAlgebra("algebra size must be at least 1");
    }
    std::vector<Operation> ops;
    for (auto const& o : doc["operations"]) {
      require(o.is_object(), "operation must be an object");
      require(o.contains("symbol") && o["symbol"].is_string(),
              "operation missing string field 'symbol'");
      require(o.contains("arity") && o["arity"].is_number_integer()
                  && o["arity"].get<long long>() >= 0,
              "operation missing non-negative integer field 'arity'");
      require(o.contains("table") && o["table"].is_array(),
              "operation missing array field 'table'");
      Operation op;
      op.symbol = o["symbol"].get<std::string>();
      op.arity  = o["arity"].get<std::size_t>();
      for (auto const& v : o["table"]) {
        require(v.is_number_integer(), "table entries must be integers");
        auto x = v.get<long long>();
        if (x < 0 || x >= size) {
          throw InvalidAlgebra("entry out of range in '" + op.symbol
                               + "': " + std::to_string(x));
        }
        op.table.push_back(static_cast<Element>(x));
      }
      ops.push_back(std::move(op));
    }
    return FiniteAlgebra(doc["name"].get<std::string>(),
                         static_cast<std::size_t>(size), std::move(ops));
  }

  FiniteAlgebra load_algebra_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw Error("cannot open algebra file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return load_algebra(buffer.str());
  }

  std::string dump_algebra(FiniteAlgebra const& alg) {
    nlohmann::ordered_json doc;
    doc["name"]       = alg.name();
    doc["size"]       = alg.size();
    doc["operations"] = nlohmann::ordered_json::array();
    for (auto const& op : alg.operations()) {
      nlohmann::ordered_json o;
      o["symbol"] = op.symbol;
      o["arity"]  = op.arity;
      o["table"]  = op.table;
      doc["operations"].push_back(std::move(o));
    }
    return doc.dump() + "\n";
  }

  Element eval_term(FiniteAlgebra const&     alg,
                    Term const&              term,
                    std::span<Element const> env) {
    if (term.is_variable()) {
      if (term.variable_index() >= env.size()) {
        throw TermError("variable index " + std::to_string(term.variable_index())
                        + " out of range for " + std::to_string(env.size())
                        + " arguments");
      }
      return env[term.variable_index()];
    }
    auto const* op = alg.find(term.symbol());
    if (op == nullptr) {
      throw TermError("unknown symbol '" + term.symbol() + "'");
    }
    if (op->arity != term.children().size()) {
      throw TermError("arity mismatch for '" + term.symbol() + "': expected "
                      + std::to_string(op->arity) + ", got "
                      + std::to_string(term.children().size()));
    }
    std::vector<Element> args;
    args.reserve(op->arity);
    for (auto const& c : term.children()) {
      args.push_back(eval_term(alg, c, env));
    }
    return alg.apply(*op, args);
  }

  std::size_t tuple_count(std::size_t n, std::size_t g, Caps const& caps) {
    auto count = checked_power(n, g, caps.max_vector_length);
    if (count > caps.max_vector_length) {
      throw CapExceeded("vector-length", caps.max_vector_length, count);
    }
    return count;
  }

  std::vector<Element> decode_tuple(std::size_t n, std::size_t g,
                                    std::size_t index) {
    std::vector<Element> tuple(g);
    for (std::size_t i = g; i-- > 0;) {
      tuple[i] = static_cast<Element>(index % n);
      index /= n;
    }
    return tuple;
  }

  namespace {
    std::vector<Element> projection(std::size_t n, std::size_t g,
                                    std::size_t var, std::size_t length) {
      std::size_t stride = 1;
      for (std::size_t i = var + 1; i < g; ++i) {
        stride *= n;
      }
      std::vector<Element> v(length);
      for (std::size_t t = 0; t < length; ++t) {
        v[t] = static_cast<Element>((t / stride) % n);
      }
      return v;
    }

    // Coordinatewise application of op to the given argument vectors.
    std::vector<Element> apply_coordinatewise(
        FiniteAlgebra const&                             alg,
        Operation const&                                 op,
        std::span<std::vector<Element> const* const>     args,
        std::size_t                                      width) {
      std::vector<Element> out(width);
      auto const           n = alg.size();
      if (op.arity == 0) {
        std::fill(out.begin(), out.end(), op.table[0]);
      } else if (op.arity == 1) {
        auto const& a = *args[0];
        for (std::size_t w = 0; w < width; ++w) {
          out[w] = op.table[a[w]];
        }
      } else if (op.arity == 2) {
        auto const& a = *args[0];
        auto const& b = *args[1];
        for (std::size_t w = 0; w < width; ++w) {
          out[w] = op.table[a[w] * n + b[w]];
        }
      } else {
        for (std::size_t w = 0; w < width; ++w) {
          std::size_t index = 0;
          for (auto const* a : args) {
            index = index * n + (*a)[w];
          }
          out[w] = op.table[index];
        }
      }
      return out;
    }

    std::vector<Element> table_of(FiniteAlgebra const& alg, Term const& term,
                                  std::size_t g, std::size_t length) {
      if (term.is_variable()) {
        if (term.variable_index() >= g) {
          throw TermError("variable index "
                          + std::to_string(term.variable_index())
                          + " out of range for arity " + std::to_string(g));
        }
        return projection(alg.size(), g, term.variable_index(), length);
      }
      auto const* op = alg.find(term.symbol());
      if (op == nullptr) {
        throw TermError("unknown symbol '" + term.symbol() + "'");
      }
      if (op->arity != term.children().size()) {
        throw TermError("arity mismatch for '" + term.symbol()
                        + "': expected " + std::to_string(op->arity)
                        + ", got " + std::to_string(term.children().size()));
      }
      std::vector<std::vector<Element>>        children;
      std::vector<std::vector<Element> const*> ptrs;
      children.reserve(op->arity);
      for (auto const& c : term.children()) {
        children.push_back(table_of(alg, c, g, length));
      }
      for (auto const& c : children) {
        ptrs.push_back(&c);
      }
      return apply_coordinatewise(alg, *op, ptrs, length);
    }
  }  // namespace

  FreeElement term_table(FiniteAlgebra const& alg, Term const& term,
                         std::size_t g, Caps const& caps) {
    auto length = tuple_count(alg.size(), g, caps);
    return FreeElement{table_of(alg, term, g, length), term};
  }

  std::vector<FreeElement> generate_subuniverse(
      FiniteAlgebra const&         alg,
      std::size_t                  width,
      std::span<FreeElement const> generators,
      Caps const&                  caps) {
    if (width > caps.max_vector_length) {
      throw CapExceeded("vector-length", caps.max_vector_length, width);
    }
    std::vector<FreeElement> out;
    std::unordered_map<std::vector<Element>, std::size_t, VectorHash> seen;

    auto add = [&](std::vector<Element>&& values, auto&& make_term) {
      if (seen.contains(values)) {
        return;
      }
      if (out.size() >= caps.max_closure_size) {
        throw CapExceeded("closure-size", caps.max_closure_size,
                          out.size() + 1);
      }
      seen.emplace(values, out.size());
      out.push_back(FreeElement{std::move(values), make_term()});
    };

    for (std::size_t i = 0; i < generators.size(); ++i) {
      auto const& v = generators[i].values;
      if (v.size() != width) {
        throw PreconditionError("generator " + std::to_string(i)
                                + " has length " + std::to_string(v.size())
                                + ", expected " + std::to_string(width));
      }
      for (auto x : v) {
        if (x >= alg.size()) {
          throw PreconditionError("generator entry out of range");
        }
      }
      add(std::vector<Element>(v), [i] { return Term::variable(i); });
    }
    for (auto const& op : alg.operations()) {
      if (op.arity == 0) {
        add(apply_coordinatewise(alg, op, {}, width),
            [&op] { return Term::apply(op.symbol); });
      }
    }

    // Semi-naive saturation: when element i is processed, every operation is
    // applied to the tuples over out[0..i] that mention i at least once.
    std::vector<std::vector<Element> const*> args;
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (auto const& op : alg.operations()) {
        if (op.arity == 0) {
          continue;
        }
        auto const r = op.arity;
        detail::for_each_fresh_tuple(
            r, i, [&](std::vector<std::size_t> const& idx) {
              args.clear();
              for (auto j : idx) {
                args.push_back(&out[j].values);
              }
              auto values = apply_coordinatewise(alg, op, args, width);
              add(std::move(values), [&] {
                std::vector<Term> children;
                children.reserve(r);
                for (auto j : idx) {
                  children.push_back(out[j].term);
                }
                return Term::apply(op.symbol, std::move(children));
              });
            });
      }
    }
    return out;
  }

  std::vector<FreeElement> free_algebra(FiniteAlgebra const& alg,
                                        std::size_t          g,
                                        Caps const&          caps) {
    auto                     length = tuple_count(alg.size(), g, caps);
    std::vector<FreeElement> gens;
    for (std::size_t v = 0; v < g; ++v) {
      gens.push_back(FreeElement{projection(alg.size(), g, v, length),
                                 Term::variable(v)});
    }
    return generate_subuniverse(alg, length, gens, caps);
  }

}  // namespace relid
