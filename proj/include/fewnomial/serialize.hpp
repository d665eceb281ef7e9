#ifndef FEWNOMIAL_SERIALIZE_HPP
#define FEWNOMIAL_SERIALIZE_HPP

// JSON encoding of the symbolic types.
//
//   CoeffPoly:   {"nvars": n, "terms": [{"exp": [..], "coef": "<decimal>"}]}
//   LaurentPoly: {"npairs": n, "nvars": v,
//                 "terms": [{"k": [..], "l": [..], "coef": <CoeffPoly>}]}
//
// Coefficients are decimal strings so arbitrary precision survives. "nvars"
// on a LaurentPoly is optional on input; it is needed to type the zero
// polynomial and is otherwise inferred from the first coefficient.

#include <string>

#include "json.hpp"

#include "fewnomial/coeff_poly.hpp"
#include "fewnomial/errors.hpp"
#include "fewnomial/laurent.hpp"

namespace fewnomial {

using Json = nlohmann::ordered_json;

/// Malformed JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

inline Json to_json(const CoeffPoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    terms.push_back({{"exp", e}, {"coef", c.str()}});
  }
  return {{"nvars", p.num_vars()}, {"terms", std::move(terms)}};
}

inline CoeffPoly coeff_poly_from_json(const Json& j) {
  try {
    const auto n = j.at("nvars").get<std::size_t>();
    CoeffPoly p(n);
    for (const auto& t : j.at("terms")) {
      auto e = t.at("exp").get<CoeffExponents>();
      if (e.size() != n) throw ParseError("CoeffPoly: exponent length != nvars");
      for (int v : e) {
        if (v < 0) throw ParseError("CoeffPoly: negative exponent");
      }
      const auto& coef = t.at("coef");
      BigInt c = coef.is_string() ? BigInt(coef.get<std::string>())
                                  : BigInt(coef.get<long long>());
      p.add_term(e, c);
    }
    return p;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("CoeffPoly JSON: ") + ex.what());
  } catch (const std::runtime_error& ex) {
    // cpp_int rejects malformed decimal strings with runtime_error
    if (dynamic_cast<const Error*>(&ex)) throw;
    throw ParseError(std::string("CoeffPoly JSON: bad coefficient: ") +
                     ex.what());
  }
}

inline Json to_json(const LaurentPoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    terms.push_back({{"k", e.k}, {"l", e.l}, {"coef", to_json(c)}});
  }
  return {{"npairs", p.num_pairs()},
          {"nvars", p.coeff_vars()},
          {"terms", std::move(terms)}};
}

inline LaurentPoly laurent_from_json(const Json& j) {
  try {
    const auto n = j.at("npairs").get<std::size_t>();
    const auto& terms = j.at("terms");
    std::size_t nvars = n;
    if (j.contains("nvars")) {
      nvars = j.at("nvars").get<std::size_t>();
    } else if (!terms.empty()) {
      nvars = terms.front().at("coef").at("nvars").get<std::size_t>();
    }
    LaurentPoly p(n, nvars);
    for (const auto& t : terms) {
      auto k = t.at("k").get<std::vector<int>>();
      auto l = t.at("l").get<std::vector<int>>();
      if (k.size() != n || l.size() != n) {
        throw ParseError("LaurentPoly: exponent length != npairs");
      }
      CoeffPoly c = coeff_poly_from_json(t.at("coef"));
      if (c.num_vars() != nvars) {
        throw ParseError("LaurentPoly: coefficient nvars mismatch");
      }
      p.add_term(ExponentPair(std::move(k), std::move(l)), c);
    }
    return p;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("LaurentPoly JSON: ") + ex.what());
  }
}

inline Json to_json(const UnitaryMonomial& m) {
  return {{"k", m.exponent.k}, {"l", m.exponent.l}};
}

inline UnitaryMonomial unitary_from_json(const Json& j) {
  try {
    return {ExponentPair(j.at("k").get<std::vector<int>>(),
                         j.at("l").get<std::vector<int>>())};
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("UnitaryMonomial JSON: ") + ex.what());
  } catch (const DimensionError& ex) {
    throw ParseError(std::string("UnitaryMonomial JSON: ") + ex.what());
  }
}

inline Json to_json(const PDeg& d) { return d.values; }

}  // namespace fewnomial

#endif  // FEWNOMIAL_SERIALIZE_HPP
