#include "relid/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "relid/catalog.hpp"
#include "relid/check.hpp"
#include "relid/corpus.hpp"
#include "relid/error.hpp"
#include "relid/maltsev.hpp"
#include "relid/witness.hpp"

namespace relid::cli {

  namespace {
    using Json = nlohmann::ordered_json;

    // Input problems detected by the CLI itself.
    class UsageError : public Error {
     public:
      using Error::Error;
    };

    // A search stopped at a resource cap (exit 3).
    class CapReached : public Error {
     public:
      using Error::Error;
    };

    // The requested certificate could not be produced (exit 1).
    class NotPassed : public Error {
     public:
      using Error::Error;
    };

    struct Options {
      std::string              algebra;
      std::string              identity;
      std::string              identity_text;
      std::vector<std::string> sorts;
      std::string              mode    = "exhaustive";
      std::uint64_t            seed    = 0;
      std::size_t              samples = 1000;
      std::size_t              max_k   = 16;
      std::size_t              cap     = 0;
      std::size_t              jobs    = 1;
      std::string              format  = "text";
      bool                     assert_holds = false;
      bool                     timings      = false;
      std::size_t              k            = 2;
      std::size_t              h            = 1;
      std::string              m            = "2";
      std::size_t              length       = 2;
      std::string              kind         = "refl";
      std::string              family       = "dgumm";
      std::string              theorem      = "turt";
      std::vector<std::string> rels;
      std::size_t              a = 0, b = 0, c = 0;
      std::string              chain;
    };

    void render_text(Json const& value, std::string const& indent,
                     std::ostream& out) {
      for (auto const& [key, item] : value.items()) {
        if (item.is_object()) {
          out << indent << key << ":\n";
          render_text(item, indent + "  ", out);
        } else if (item.is_array()) {
          out << indent << key << ":\n";
          for (auto const& x : item) {
            if (x.is_object()) {
              out << indent << "  -\n";
              render_text(x, indent + "    ", out);
            } else {
              out << indent << "  - "
                  << (x.is_string() ? x.get<std::string>() : x.dump()) << "\n";
            }
          }
        } else {
          out << indent << key << ": "
              << (item.is_string() ? item.get<std::string>() : item.dump())
              << "\n";
        }
      }
    }

    std::string render(Json const& report, Options const& opts) {
      std::ostringstream out;
      if (opts.format == "structured") {
        out << report.dump(2) << "\n";
      } else {
        render_text(report, "", out);
      }
      return out.str();
    }

    Caps caps_of(Options const& opts) {
      Caps caps;
      if (opts.cap != 0) {
        caps.max_vector_length = opts.cap;
        caps.max_closure_size  = opts.cap;
      }
      return caps;
    }

    FiniteAlgebra load(Options const& opts) {
      if (opts.algebra.empty()) {
        throw UsageError("--algebra is required");
      }
      if (std::filesystem::exists(opts.algebra)) {
        return load_algebra_file(opts.algebra);
      }
      if (auto builtin = corpus_algebra(opts.algebra)) {
        return *builtin;
      }
      throw UsageError("no algebra file or built-in algebra named '"
                       + opts.algebra + "'");
    }

    Json header(std::string const& command, FiniteAlgebra const& alg) {
      Json report;
      report["command"]   = command;
      report["algebra"]   = alg.name();
      report["size"]      = alg.size();
      return report;
    }

    CatalogParams params_of(Options const& opts) {
      CatalogParams params;
      params.k      = opts.k;
      params.h      = opts.h;
      params.length = opts.length;
      if (opts.m == "inf") {
        params.m = FactorCount::infinite();
      } else {
        std::size_t m = 0;
        try {
          m = std::stoul(opts.m);
        } catch (std::exception const&) {
          throw UsageError("--m must be a positive integer or 'inf'");
        }
        if (m == 0) {
          throw UsageError("--m must be a positive integer or 'inf'");
        }
        params.m = FactorCount(m);
      }
      return params;
    }

    Sort parse_sort(std::string const& s) {
      if (s == "REFL") {
        return Sort::refl;
      }
      if (s == "TOL") {
        return Sort::tol;
      }
      if (s == "CON") {
        return Sort::con;
      }
      throw UsageError("unknown sort '" + s + "' (expected REFL, TOL or CON)");
    }

    std::pair<std::string, std::string> split_binding(std::string const& text,
                                                      char const*        flag) {
      auto eq = text.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw UsageError(std::string(flag) + " expects NAME=VALUE, got '" + text
                         + "'");
      }
      return {text.substr(0, eq), text.substr(eq + 1)};
    }

    Json term_report(std::vector<std::pair<std::string, Term>> const& terms) {
      Json out = Json::object();
      for (auto const& [name, t] : terms) {
        out[name] = to_string(t);
      }
      return out;
    }

    Json gumm_terms(DirectedGummSystem const& sys) {
      std::vector<std::pair<std::string, Term>> terms{{"p", sys.p}};
      for (std::size_t i = 0; i < sys.j.size(); ++i) {
        terms.emplace_back("j" + std::to_string(i + 1), sys.j[i]);
      }
      return term_report(terms);
    }

    Json day_terms(DaySystem const& sys) {
      std::vector<std::pair<std::string, Term>> terms;
      for (std::size_t i = 0; i < sys.d.size(); ++i) {
        terms.emplace_back("d" + std::to_string(i), sys.d[i]);
      }
      return term_report(terms);
    }

    template <typename Result>
    void search_report(Json& report, Result const& result) {
      switch (result.status) {
        case SearchStatus::found:
          report["status"] = "found";
          report["k"]      = result.system->k;
          break;
        case SearchStatus::not_up_to:
          report["status"]     = "not-found";
          report["max_k"]      = result.max_k;
          report["definitive"] = result.definitive;
          if (result.minimal_k) {
            report["minimal_k"] = *result.minimal_k;
          }
          break;
        case SearchStatus::cap_exceeded:
          report["status"] = "cap-exceeded";
          report["detail"] = result.cap_message;
          break;
      }
      report["free_size"]  = result.free_size;
      report["node_count"] = result.node_count;
    }

    int cmd_check(Options const& opts, Json& report) {
      auto alg = load(opts);
      if (opts.identity.empty() == opts.identity_text.empty()) {
        throw UsageError("exactly one of --identity and --identity-text is required");
      }
      IdentityStatement stmt;
      std::string       label = "inline";
      if (!opts.identity.empty()) {
        auto entry = find_in_catalog(opts.identity, params_of(opts));
        if (!entry) {
          throw UsageError("unknown identity label '" + opts.identity + "'");
        }
        label = entry->label;
        stmt  = entry->statement;
      } else {
        stmt = parse_identity(opts.identity_text);
      }
      std::vector<std::pair<std::string, Sort>> overrides;
      for (auto const& s : opts.sorts) {
        auto [name, sort] = split_binding(s, "--sort");
        overrides.emplace_back(name, parse_sort(sort));
      }
      try {
        stmt = with_sorts(std::move(stmt), overrides);
      } catch (PreconditionError const& e) {
        throw UsageError(e.what());
      }

      CheckOptions check;
      if (opts.mode == "exhaustive") {
        check.mode = CheckMode::exhaustive;
      } else if (opts.mode == "sample") {
        check.mode = CheckMode::sample;
      } else {
        throw UsageError("--mode must be 'exhaustive' or 'sample'");
      }
      check.seed    = opts.seed;
      check.samples = opts.samples;
      check.jobs    = std::max<std::size_t>(1, opts.jobs);
      check.caps    = caps_of(opts);

      report             = header("check", alg);
      report["identity"] = label;
      report["statement"] = to_string(stmt);
      report["mode"]      = opts.mode;
      if (check.mode == CheckMode::sample) {
        report["seed"]    = check.seed;
        report["samples"] = check.samples;
      }
      auto verdict       = check_identity(alg, stmt, check);
      report["verdict"] = verdict.holds ? "holds" : "fails";
      report["checked"] = verdict.checked;
      if (verdict.counterexample) {
        auto const& cex = *verdict.counterexample;
        Json        c;
        c["index"]      = cex.index;
        Json assignment = Json::object();
        for (auto const& [name, rel] : cex.assignment) {
          assignment[name] = to_literal(rel);
        }
        c["assignment"] = std::move(assignment);
        c["pair"]       = std::to_string(cex.a) + "-" + std::to_string(cex.c);
        c["in"]         = cex.reversed ? "rhs" : "lhs";
        c["lhs"]        = to_literal(cex.lhs);
        c["rhs"]        = to_literal(cex.rhs);
        report["counterexample"] = std::move(c);
        return opts.assert_holds ? assert_failure : failed;
      }
      return ok;
    }

    int cmd_enumerate(Options const& opts, Json& report) {
      auto    alg = load(opts);
      RelKind kind;
      if (opts.kind == "refl" || opts.kind == "REFL" || opts.kind == "REFL_ADM") {
        kind = RelKind::refl_adm;
      } else if (opts.kind == "tol" || opts.kind == "TOL"
                 || opts.kind == "TOLERANCE") {
        kind = RelKind::tolerance;
      } else if (opts.kind == "con" || opts.kind == "CON"
                 || opts.kind == "CONGRUENCE") {
        kind = RelKind::congruence;
      } else {
        throw UsageError("--kind must be refl, tol or con");
      }
      auto lattice      = enumerate(alg, kind, caps_of(opts));
      report            = header("enumerate", alg);
      report["kind"]    = to_string(kind);
      report["count"]   = lattice.members.size();
      Json members      = Json::array();
      for (auto const& r : lattice.members) {
        members.push_back(to_literal(r));
      }
      report["members"] = std::move(members);
      return ok;
    }

    int cmd_find_terms(Options const& opts, Json& report) {
      auto alg = load(opts);
      report   = header("find-terms", alg);
      report["family"] = opts.family;
      int code         = failed;
      auto finish = [&](auto const& result, auto&& terms) {
        search_report(report, result);
        if (result.status == SearchStatus::found) {
          report["terms"] = terms(*result.system);
          code            = ok;
        } else if (result.status == SearchStatus::cap_exceeded) {
          throw CapReached(result.cap_message);
        }
      };
      if (opts.family == "dgumm") {
        finish(find_directed_gumm(alg, opts.max_k, caps_of(opts)), gumm_terms);
      } else if (opts.family == "day") {
        finish(find_day(alg, opts.max_k, caps_of(opts)), day_terms);
      } else {
        throw UsageError("--family must be 'dgumm' or 'day'");
      }
      return code;
    }

    std::vector<Element> parse_elements(std::string const& text,
                                        std::size_t        n) {
      std::vector<Element> out;
      std::stringstream    in(text);
      std::string          item;
      while (std::getline(in, item, ',')) {
        try {
          auto v = std::stoul(item);
          if (v >= n) {
            throw UsageError("element " + item + " out of range");
          }
          out.push_back(static_cast<Element>(v));
        } catch (std::logic_error const&) {
          throw UsageError("--chain expects comma-separated elements");
        }
      }
      return out;
    }

    Json chain_report(WitnessChain const& chain) {
      Json steps = Json::array();
      for (std::size_t i = 0; i < chain.steps(); ++i) {
        Json s;
        s["from"]  = chain.elements[i];
        s["to"]    = chain.elements[i + 1];
        s["label"] = chain.labels[chain.step_relation[i]];
        s["block"] = chain.step_block[i];
        steps.push_back(std::move(s));
      }
      Json out;
      out["chain"]  = to_string(chain);
      out["blocks"] = chain.blocks;
      out["steps"]  = std::move(steps);
      out["valid"]  = is_valid(chain);
      return out;
    }

    int cmd_witness(Options const& opts, Json& report) {
      auto alg = load(opts);
      std::map<std::string, BinRel> rels;
      for (auto const& r : opts.rels) {
        auto [name, literal] = split_binding(r, "--rel");
        rels.insert_or_assign(name, parse_relation(literal, alg.size()));
      }
      auto get = [&](std::string const& name) {
        auto it = rels.find(name);
        if (it == rels.end()) {
          throw UsageError("missing --rel " + name + "=...");
        }
        return it->second;
      };
      auto check_element = [&](Element x) {
        if (x >= alg.size()) {
          throw UsageError("element " + std::to_string(x) + " out of range");
        }
      };
      report            = header("witness", alg);
      report["theorem"] = opts.theorem;
      auto caps         = caps_of(opts);

      if (opts.theorem == "turt" || opts.theorem == "turtt") {
        auto result = find_directed_gumm(alg, opts.max_k, caps);
        if (result.status == SearchStatus::cap_exceeded) {
          throw CapReached(result.cap_message);
        }
        if (result.status != SearchStatus::found) {
          throw NotPassed("no directed Gumm terms found up to k = "
                          + std::to_string(opts.max_k));
        }
        TurtInstance inst;
        inst.a = opts.a;
        inst.b = opts.b;
        check_element(inst.a);
        check_element(inst.b);
        inst.chain = parse_elements(opts.chain, alg.size());
        if (inst.chain.size() < 2) {
          throw UsageError("--chain needs at least two elements a_0,...,a_l");
        }
        TurtRelations r{get("R"), get("V"), get("W"), {}};
        for (std::size_t h = 1; h < inst.chain.size(); ++h) {
          r.s.push_back(get("S" + std::to_string(h)));
        }
        WitnessChain chain;
        try {
          chain = opts.theorem == "turt"
                      ? witness_turt(alg, *result.system, r, inst)
                      : witness_turtt(alg, *result.system, r, inst);
        } catch (PreconditionError const& e) {
          throw NotPassed(e.what());
        }
        report["k"]     = result.system->k;
        report["terms"] = gumm_terms(*result.system);
        report["a"]     = inst.a;
        report["c"]     = inst.chain.back();
        auto details = chain_report(chain);
        for (auto& [key, value] : details.items()) {
          report[key] = value;
        }
        return ok;
      }
      if (opts.theorem == "day") {
        auto result = find_day(alg, opts.max_k, caps);
        if (result.status == SearchStatus::cap_exceeded) {
          throw CapReached(result.cap_message);
        }
        if (result.status != SearchStatus::found) {
          throw NotPassed("no Day terms found up to k = "
                          + std::to_string(opts.max_k));
        }
        DayInstance inst{static_cast<Element>(opts.a),
                         static_cast<Element>(opts.b),
                         static_cast<Element>(opts.c)};
        check_element(inst.a);
        check_element(inst.b);
        check_element(inst.c);
        WitnessChain chain;
        try {
          chain = witness_day(alg, *result.system, get("Theta"), get("S"), inst);
        } catch (PreconditionError const& e) {
          throw NotPassed(e.what());
        }
        report["k"]     = result.system->k;
        report["terms"] = day_terms(*result.system);
        report["a"]     = inst.a;
        report["c"]     = inst.c;
        auto details = chain_report(chain);
        for (auto& [key, value] : details.items()) {
          report[key] = value;
        }
        return ok;
      }
      throw UsageError("--theorem must be turt, turtt or day");
    }

    int cmd_catalog(Options const& opts, Json& report) {
      report["command"] = "catalog";
      Json entries      = Json::object();
      for (auto const& e : catalog(params_of(opts))) {
        entries[e.label] = to_string(e.statement);
      }
      report["identities"] = std::move(entries);
      return ok;
    }

    void add_common(CLI::App* sub, Options& opts) {
      sub->add_option("--format", opts.format, "Report format")
          ->check(CLI::IsMember({"text", "structured"}));
      sub->add_flag("--timings", opts.timings, "Include elapsed time");
      sub->add_option("--cap", opts.cap,
                      "Limit for vector length and closure size");
    }

    void add_catalog_params(CLI::App* sub, Options& opts) {
      sub->add_option("--k", opts.k, "Number of non-initial terms (k >= 2)");
      sub->add_option("--h", opts.h, "Doubling depth for (a1)-(a3)");
      sub->add_option("--m", opts.m, "Factor count for (A1)-(D5), or inf");
      sub->add_option("--l", opts.length, "Number of S variables in (turt)");
    }
  }  // namespace

  int run(std::vector<std::string> const& args, std::ostream& out,
          std::ostream& err) {
    CLI::App app{"Relation identities and Maltsev conditions on finite algebras",
                 "relid"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    Options opts;

    auto* check = app.add_subcommand("check", "Check a relation identity");
    check->add_option("--algebra", opts.algebra, "Algebra file or built-in name")
        ->required();
    check->add_option("--identity", opts.identity, "Catalog label");
    check->add_option("--identity-text", opts.identity_text, "Inline identity");
    check->add_option("--sort", opts.sorts, "Override a sort: NAME=REFL|TOL|CON");
    check->add_option("--mode", opts.mode, "exhaustive or sample");
    check->add_option("--seed", opts.seed, "Sample seed");
    check->add_option("--samples", opts.samples, "Number of samples");
    check->add_option("--jobs", opts.jobs, "Worker threads");
    check->add_flag("--assert-holds", opts.assert_holds,
                    "Exit with 4 when a counterexample is found");
    add_catalog_params(check, opts);
    add_common(check, opts);

    auto* enumerate_cmd
        = app.add_subcommand("enumerate", "List a relation lattice");
    enumerate_cmd->add_option("--algebra", opts.algebra)->required();
    enumerate_cmd->add_option("--kind", opts.kind, "refl, tol or con");
    add_common(enumerate_cmd, opts);

    auto* find = app.add_subcommand("find-terms", "Search for Maltsev terms");
    find->add_option("--algebra", opts.algebra)->required();
    find->add_option("--family", opts.family, "dgumm or day");
    find->add_option("--max-k", opts.max_k, "Largest k to accept");
    add_common(find, opts);

    auto* witness = app.add_subcommand("witness", "Build a witness chain");
    witness->add_option("--algebra", opts.algebra)->required();
    witness->add_option("--theorem", opts.theorem, "turt, turtt or day");
    witness->add_option("--rel", opts.rels, "Relation binding NAME=LITERAL");
    witness->add_option("--a", opts.a);
    witness->add_option("--b", opts.b);
    witness->add_option("--c", opts.c);
    witness->add_option("--chain", opts.chain, "a_0,...,a_l for turt/turtt");
    witness->add_option("--max-k", opts.max_k, "Largest k to accept");
    add_common(witness, opts);

    auto* list = app.add_subcommand("catalog", "Print the identity catalog");
    add_catalog_params(list, opts);
    add_common(list, opts);

    try {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      app.parse(reversed);
    } catch (CLI::CallForHelp const&) {
      out << app.help();
      return ok;
    } catch (CLI::ParseError const& e) {
      err << "error: " << e.what() << "\n";
      return usage;
    }

    Json report;
    int  code  = ok;
    auto start = std::chrono::steady_clock::now();
    try {
      if (check->parsed()) {
        code = cmd_check(opts, report);
      } else if (enumerate_cmd->parsed()) {
        code = cmd_enumerate(opts, report);
      } else if (find->parsed()) {
        code = cmd_find_terms(opts, report);
      } else if (witness->parsed()) {
        code = cmd_witness(opts, report);
      } else {
        code = cmd_catalog(opts, report);
      }
    } catch (CapExceeded const& e) {
      err << "error: " << e.what() << "\n";
      return cap;
    } catch (CapReached const& e) {
      err << "error: " << e.what() << "\n";
      return cap;
    } catch (NotPassed const& e) {
      err << "error: " << e.what() << "\n";
      return failed;
    } catch (InternalError const& e) {
      err << "internal error: " << e.what() << "\n";
      return failed;
    } catch (Error const& e) {
      err << "error: " << e.what() << "\n";
      return usage;
    }
    if (opts.timings) {
      report["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
    }
    out << render(report, opts);
    return code;
  }

}  // namespace relid::cli
