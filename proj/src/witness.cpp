#include "relid/witness.hpp"

#include "relid/error.hpp"

namespace relid {

  namespace {
    // Term function of a term, evaluated by table lookup.
    class TermFunction {
     public:
      TermFunction(FiniteAlgebra const& alg, Term const& t, std::size_t arity)
          : n_(alg.size()), values_(term_table(alg, t, arity).values) {}

      Element operator()(Element x, Element y, Element z) const {
        return values_[(x * n_ + y) * n_ + z];
      }
      Element operator()(Element x, Element y, Element z, Element w) const {
        return values_[((x * n_ + y) * n_ + z) * n_ + w];
      }

     private:
      std::size_t          n_;
      std::vector<Element> values_;
    };

    class ChainBuilder {
     public:
      explicit ChainBuilder(Element start) {
        chain_.elements.push_back(start);
      }

      std::size_t relation(std::string label, BinRel rel) {
        chain_.labels.push_back(std::move(label));
        chain_.relations.push_back(std::move(rel));
        return chain_.labels.size() - 1;
      }

      void begin_block() {
        ++chain_.blocks;
      }

      void step(Element next, std::size_t rel, bool in_block) {
        auto prev = chain_.elements.back();
        if (!chain_.relations[rel].contains(prev, next)) {
          throw InternalError("witness step " + std::to_string(prev) + " -> "
                              + std::to_string(next) + " is not in "
                              + chain_.labels[rel]);
        }
        chain_.elements.push_back(next);
        chain_.step_relation.push_back(rel);
        chain_.step_block.push_back(in_block ? chain_.blocks : 0);
      }

      // The construction relies on term identities to rejoin the chain.
      void expect_at(Element expected, char const* where) const {
        if (chain_.elements.back() != expected) {
          throw InternalError(std::string("witness chain broken at ") + where);
        }
      }

      WitnessChain release() {
        return std::move(chain_);
      }

     private:
      WitnessChain chain_;
    };

    void require(bool ok, std::string const& what) {
      if (!ok) {
        throw PreconditionError(what);
      }
    }

    void require_refl_adm(FiniteAlgebra const& alg, BinRel const& r,
                          std::string const& name) {
      require(r.size() == alg.size(),
              name + " has the wrong size for the algebra");
      require(is_refl_adm(alg, r),
              name + " is not a reflexive admissible relation");
    }

    struct GummPrep {
      std::vector<TermFunction> j;
      TermFunction              p;
      Element                   a;
      Element                   c;
    };

    GummPrep prepare_gumm(FiniteAlgebra const&      alg,
                          DirectedGummSystem const& sys,
                          TurtRelations const&      rels,
                          TurtInstance const&       inst) {
      require(sys.k >= 2, "witness constructors require k >= 2, got k = "
                              + std::to_string(sys.k));
      require(verify_directed_gumm(alg, sys),
              "terms do not form a directed Gumm system");
      auto const l = rels.s.size();
      require(l >= 1, "at least one S relation is needed");
      require(inst.chain.size() == l + 1,
              "element chain must have " + std::to_string(l + 1) + " entries");
      require_refl_adm(alg, rels.r, "R");
      require_refl_adm(alg, rels.v, "V");
      require_refl_adm(alg, rels.w, "W");
      for (std::size_t h = 0; h < l; ++h) {
        require_refl_adm(alg, rels.s[h], "S" + std::to_string(h + 1));
      }
      for (auto x : inst.chain) {
        require(x < alg.size(), "element out of range");
      }
      require(inst.a < alg.size() && inst.b < alg.size(),
              "element out of range");
      auto const a = inst.a;
      auto const c = inst.chain.back();
      require(inst.chain.front() == a, "chain must start at a");
      require(rels.r.contains(a, c), "(a,c) is not in R");
      require(rels.v.contains(a, inst.b), "(a,b) is not in V");
      require(rels.w.contains(inst.b, c), "(b,c) is not in W");
      for (std::size_t h = 0; h < l; ++h) {
        require(rels.s[h].contains(inst.chain[h], inst.chain[h + 1]),
                "(a_" + std::to_string(h) + ",a_" + std::to_string(h + 1)
                    + ") is not in S" + std::to_string(h + 1));
      }
      GummPrep prep{{}, TermFunction(alg, sys.p, 3), a, c};
      for (auto const& t : sys.j) {
        prep.j.emplace_back(alg, t, 3);
      }
      return prep;
    }

    std::vector<std::size_t> lambda_relations(FiniteAlgebra const& alg,
                                              TurtRelations const& rels,
                                              ChainBuilder&        builder) {
      auto                     theta = tolerance_of(alg, rels.r);
      std::vector<std::size_t> out;
      for (std::size_t h = 0; h < rels.s.size(); ++h) {
        out.push_back(builder.relation("tol(R) & S" + std::to_string(h + 1),
                                       intersect(theta, rels.s[h])));
      }
      return out;
    }

    // One Lambda block: elements f(a_1), ..., f(a_l).
    template <typename F>
    void lambda_block(ChainBuilder&                   builder,
                      std::vector<std::size_t> const& lambda,
                      std::vector<Element> const& chain, F&& f) {
      builder.begin_block();
      for (std::size_t h = 1; h < chain.size(); ++h) {
        builder.step(f(chain[h]), lambda[h - 1], true);
      }
    }
  }  // namespace

  bool is_valid(WitnessChain const& chain) {
    if (chain.elements.size() != chain.step_relation.size() + 1) {
      return false;
    }
    for (std::size_t i = 0; i < chain.step_relation.size(); ++i) {
      auto const& rel = chain.relations.at(chain.step_relation[i]);
      if (!rel.contains(chain.elements[i], chain.elements[i + 1])) {
        return false;
      }
    }
    return true;
  }

  std::string to_string(WitnessChain const& chain) {
    std::string out = std::to_string(chain.elements.front());
    for (std::size_t i = 0; i < chain.step_relation.size(); ++i) {
      out += " -[" + chain.labels[chain.step_relation[i]] + "]-> "
             + std::to_string(chain.elements[i + 1]);
    }
    return out;
  }

  WitnessChain witness_turt(FiniteAlgebra const&      alg,
                            DirectedGummSystem const& sys,
                            TurtRelations const&      rels,
                            TurtInstance const&       inst) {
    auto        prep = prepare_gumm(alg, sys, rels, inst);
    auto const& j    = prep.j;
    auto const  a    = prep.a;
    auto const  c    = prep.c;
    auto const  k    = sys.k;

    ChainBuilder builder(a);
    auto head = builder.relation(
        "R & cl(V | W)",
        intersect(rels.r, refl_adm_closure(alg, unite(rels.v, rels.w))));
    auto lambda = lambda_relations(alg, rels, builder);

    // a = p(a, p(a,a,b), p(a,a,b)) moves to p(a, p(a,b,b), p(a,a,c)) =
    // p(a, a, p(a,a,c)) = j_1(a, a, j_1(a,a,c)).
    auto head_end = prep.p(a, a, prep.p(a, a, c));
    builder.step(head_end, head, false);
    builder.expect_at(j[0](a, a, j[0](a, a, c)), "head");

    // j*(a, a_h, c) with j*(x,y,z) = j_1(x, y, j_1(x,y,z)).
    lambda_block(builder, lambda, inst.chain,
                 [&](Element ah) { return j[0](a, ah, j[0](a, ah, c)); });
    builder.expect_at(j[0](a, c, j[1](a, a, c)), "first block");
    for (std::size_t i = 1; i + 1 < k; ++i) {
      lambda_block(builder, lambda, inst.chain,
                   [&](Element ah) { return j[0](a, c, j[i](a, ah, c)); });
      builder.expect_at(j[0](a, c, j[i + 1](a, a, c)), "outer block");
    }
    builder.expect_at(j[1](a, a, c), "middle");
    for (std::size_t i = 1; i + 1 < k; ++i) {
      lambda_block(builder, lambda, inst.chain,
                   [&](Element ah) { return j[i](a, ah, c); });
      builder.expect_at(j[i + 1](a, a, c), "inner block");
    }
    builder.expect_at(c, "end");
    return builder.release();
  }

  WitnessChain witness_turtt(FiniteAlgebra const&      alg,
                             DirectedGummSystem const& sys,
                             TurtRelations const&      rels,
                             TurtInstance const&       inst) {
    auto        prep = prepare_gumm(alg, sys, rels, inst);
    auto const& j    = prep.j;
    auto const  a    = prep.a;
    auto const  c    = prep.c;
    auto const  k    = sys.k;

    ChainBuilder builder(a);
    auto head = builder.relation(
        "R & conv(R) & cl(conv(V) | W)",
        intersect(intersect(rels.r, converse(rels.r)),
                  refl_adm_closure(alg, unite(converse(rels.v), rels.w))));
    auto lambda = lambda_relations(alg, rels, builder);

    // a = p(a,b,b) = p(a,a,a) = p(a,c,c), each moving to p(a,a,c).
    builder.step(prep.p(a, a, c), head, false);
    builder.expect_at(j[0](a, a, c), "head");
    for (std::size_t i = 0; i + 1 < k; ++i) {
      lambda_block(builder, lambda, inst.chain,
                   [&](Element ah) { return j[i](a, ah, c); });
      builder.expect_at(j[i + 1](a, a, c), "block");
    }
    builder.expect_at(c, "end");
    return builder.release();
  }

  WitnessChain witness_day(FiniteAlgebra const& alg,
                           DaySystem const&     sys,
                           BinRel const&        theta,
                           BinRel const&        s,
                           DayInstance const&   inst) {
    require(sys.k >= 1, "a Day system with k = 0 has no chain form");
    require(verify_day(alg, sys), "terms do not form a Day system");
    require(theta.size() == alg.size() && is_tolerance(alg, theta),
            "Theta is not a tolerance");
    require_refl_adm(alg, s, "S");
    auto const [a, b, c] = inst;
    require(a < alg.size() && b < alg.size() && c < alg.size(),
            "element out of range");
    require(theta.contains(a, c), "(a,c) is not in Theta");
    require(s.contains(a, b), "(a,b) is not in S");
    require(s.contains(c, b), "(b,c) is not in conv(S)");

    std::vector<TermFunction> d;
    for (auto const& t : sys.d) {
      d.emplace_back(alg, t, 4);
    }
    ChainBuilder builder(a);
    auto forward  = builder.relation("Theta & S", intersect(theta, s));
    auto backward = builder.relation("Theta & conv(S)",
                                     intersect(theta, converse(s)));
    for (std::size_t i = 1; i < sys.k; ++i) {
      if (i % 2 == 1) {
        builder.expect_at(d[i](a, a, c, c), "odd step");
        builder.step(d[i](a, b, b, c), forward, false);
      } else {
        builder.expect_at(d[i](a, b, b, c), "even step");
        builder.step(d[i](a, a, c, c), backward, false);
      }
    }
    builder.expect_at(c, "end");
    return builder.release();
  }

}  // namespace relid
