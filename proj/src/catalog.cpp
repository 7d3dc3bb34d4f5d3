#include "relid/catalog.hpp"

#include "relid/error.hpp"

namespace relid {

  namespace {
    void check_bounds_args(std::size_t h, std::size_t k) {
      if (h < 1 || k < 2) {
        throw PreconditionError("bounds need h >= 1 and k >= 2");
      }
      if (h > 40) {
        throw PreconditionError("h too large");
      }
    }

    std::string lambda_block(std::size_t length) {
      std::string out;
      for (std::size_t i = 1; i <= length; ++i) {
        if (i > 1) {
          out += " ; ";
        }
        out += "tol(R) & S" + std::to_string(i);
      }
      return out;
    }

    std::string s_chain(std::size_t length) {
      std::string out;
      for (std::size_t i = 1; i <= length; ++i) {
        if (i > 1) {
          out += " ; ";
        }
        out += "S" + std::to_string(i);
      }
      return out;
    }

    std::string s_quantifiers(std::size_t length) {
      std::string out;
      for (std::size_t i = 1; i <= length; ++i) {
        out += ", S" + std::to_string(i) + ":REFL";
      }
      return out;
    }
  }  // namespace

  std::size_t q_bound(std::size_t h, std::size_t k) {
    check_bounds_args(h, k);
    return ((std::size_t(1) << (h + 1)) - 2) * (2 * k - 3);
  }

  std::size_t r_bound(std::size_t h, std::size_t k) {
    check_bounds_args(h, k);
    return 1 + ((std::size_t(1) << (h + 1)) - 2) * (k - 1);
  }

  std::vector<CatalogEntry> catalog(CatalogParams const& params) {
    if (params.k < 2) {
      throw PreconditionError("catalog needs k >= 2");
    }
    if (params.h < 1 || params.h > 20) {
      throw PreconditionError("catalog needs 1 <= h <= 20");
    }
    if (!params.m.is_infinite() && params.m.value() < 2) {
      throw PreconditionError("catalog needs m >= 2 or m = inf");
    }
    if (params.length < 1) {
      throw PreconditionError("catalog needs length >= 1");
    }

    auto const k  = params.k;
    auto const m  = to_string(params.m);
    auto const hm = std::to_string(std::size_t(1) << params.h);
    auto const q  = q_bound(params.h, k);
    auto const r  = r_bound(params.h, k);

    std::string const th  = "Theta:TOL, S:REFL |- ";
    std::string const tht = "Theta:TOL, S:REFL, T:REFL |- ";
    std::string const rst = "R:REFL, S:REFL, T:REFL |- ";
    std::string const sm  = " ;^" + m + " ";

    std::vector<std::pair<std::string, std::string>> texts = {
        {"(1.1)", th + "Theta & (S ; S) <= star(Theta & S)"},
        {"(1.2)", th + "Theta & star(S) <= star(Theta & S)"},
        {"(1.3)",
         th + "Theta & (S ; conv(S)) <= star(Theta & S ; Theta & conv(S))"},
        {"(1.4)", tht + "Theta & star(S ; T) <= Theta & cl(S | T) ; "
                        "star(Theta & S ; Theta & T)"},
        {"(1.5)", tht + "Theta & (S ; T) <= Theta & cl(conv(S) | T) ; "
                        "star(Theta & S ; Theta & T)"},
        {"(var-dist)", tht + "Theta & (S ; conv(T)) <= "
                             "star(Theta & S ; Theta & conv(T))"},
        {"(var-perm)", th + "Theta & (S ; S) <= star(Theta & conv(S))"},
        {"(turt)",
         "R:REFL, V:REFL, W:REFL" + s_quantifiers(params.length)
             + " |- R & (V ; W) & (" + s_chain(params.length)
             + ") <= R & cl(V | W) ; pow(" + lambda_block(params.length)
             + ", " + std::to_string(2 * k - 3) + ")"},
        {"(turtt)",
         "R:REFL, V:REFL, W:REFL" + s_quantifiers(params.length)
             + " |- R & (V ; W) & (" + s_chain(params.length)
             + ") <= R & conv(R) & cl(conv(V) | W) ; pow("
             + lambda_block(params.length) + ", " + std::to_string(k - 1)
             + ")"},
        {"(a1)", th + "Theta & (S ;^" + hm + " S) <= pow(Theta & S, "
                     + std::to_string(q + 1) + ")"},
        {"(a2)", rst + "R & (S ;^" + hm + " T) <= R & cl(S | T) ; "
                       "(tol(R) & S ;^" + std::to_string(q) + " tol(R) & T)"},
        {"(a3)", th + "Theta & (S ;^" + hm + " conv(S)) <= "
                      "Theta & conv(S) ;^" + std::to_string(r) + " Theta & S"},
        {"(A1)", th + "Theta & (S" + sm + "S) <= star(Theta & S)"},
        {"(A2)", th + "Theta & (S" + sm + "S) <= Theta & S + Theta & conv(S)"},
        {"(A3)",
         th + "Theta & (S" + sm + "S) <= star(Theta & (conv(S) ; S))"},
        {"(B1)", th + "Theta & (S" + sm + "conv(S)) <= "
                      "Theta & S + Theta & conv(S)"},
        {"(B2)", th + "Theta & (S" + sm + "conv(S)) <= "
                      "star(Theta & (conv(S) ; S))"},
        {"(C1)", rst + "R & (S" + sm + "T) <= R & cl(S | T) ; "
                       "(tol(R) & S + tol(R) & T)"},
        {"(C2)", tht + "Theta & (S" + sm + "T) <= star(Theta & cl(S | T))"},
        {"(C3)", rst + "R & (S" + sm + "T) <= R & (T ; cl(S | T)) ; "
                       "(tol(R) & S + tol(R) & T)"},
        {"(C4)", tht + "Theta & (S" + sm + "T) <= star(Theta & (T ; S))"},
        {"(D1)", rst + "R & (S" + sm + "T) <= R & cl(conv(S) | T) ; "
                       "(tol(R) & S + tol(R) & T)"},
        {"(D2)", rst + "R & (S" + sm + "T) <= R & cl(S | T) & "
                       "cl(conv(S) | T) & cl(S | conv(T)) & "
                       "cl(conv(S) | conv(T)) ; (tol(R) & S + tol(R) & T)"},
        {"(D3)", rst + "R & (S" + sm + "T) <= "
                       "R & cl(S | conv(S) | T | conv(T)) ; "
                       "(tol(R) & S + tol(R) & T + tol(R) & conv(S) + "
                       "tol(R) & conv(T))"},
        {"(D4)", tht + "Theta & (S" + sm + "T) <= Theta & (T ; S) + "
                       "Theta & (T ; conv(T)) + Theta & (conv(S) ; S) + "
                       "Theta & (conv(S) ; T) + Theta & (conv(S) ; conv(T)) + "
                       "Theta & (conv(T) ; S) + Theta & (conv(T) ; T)"},
        {"(D5)", tht + "Theta & (S" + sm + "T) <= "
                       "Theta & ((T + conv(T)) ; S) + Theta & (conv(S) ; S) + "
                       "Theta & (conv(S) ; (T + conv(T)))"},
        {"(day)", th + "Theta & (S ; conv(S)) <= Theta & S ;^"
                      + std::to_string(k - 1) + " Theta & conv(S)"},
    };

    std::vector<CatalogEntry> out;
    out.reserve(texts.size());
    for (auto& [label, text] : texts) {
      out.push_back({label, parse_identity(text)});
    }
    return out;
  }

  std::optional<CatalogEntry> find_in_catalog(std::string_view     label,
                                              CatalogParams const& params) {
    std::string wanted(label);
    if (wanted.empty() || wanted.front() != '(') {
      wanted = "(" + wanted + ")";
    }
    for (auto& entry : catalog(params)) {
      if (entry.label == wanted) {
        return std::move(entry);
      }
    }
    return std::nullopt;
  }

}  // namespace relid
