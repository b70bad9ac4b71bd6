#pragma once

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "laurent.hpp"

namespace stabkit {

using ojson = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline ojson poly_to_json(const LaurentPoly& f) {
    ojson arr = ojson::array();
    for (auto& [k, c] : f.terms()) {
        ojson exps = ojson::object();
        for (auto& [v, e] : k.mono.entries()) exps[v.name()] = e;
        ojson t = ojson::object();
        t["q"] = k.q;
        t["num"] = c.num();
        t["den"] = c.den();
        t["exps"] = std::move(exps);
        arr.push_back(std::move(t));
    }
    return arr;
}

inline std::string serialize_poly(const LaurentPoly& f) { return poly_to_json(f).dump(); }

inline LaurentPoly poly_from_json(const ojson& j) {
    if (!j.is_array()) throw ParseError("polynomial must be a JSON array");
    LaurentPoly f;
    for (auto& t : j) {
        if (!t.is_object()) throw ParseError("term must be an object");
        for (auto& key : {"q", "num", "den", "exps"})
            if (!t.contains(key)) throw ParseError(std::string("term missing field ") + key);
        for (auto& key : {"q", "num", "den"})
            if (!t[key].is_number_integer()) throw ParseError(std::string("field ") + key + " must be an integer");
        if (!t["exps"].is_object()) throw ParseError("exps must be an object");
        auto den = t["den"].get<std::int64_t>();
        if (den <= 0) throw ParseError("den must be positive");
        std::map<VarId, std::int64_t> exps;
        for (auto& [name, e] : t["exps"].items()) {
            auto v = VarId::parse(name);
            if (!v) throw ParseError("unknown variable name " + name);
            if (!e.is_number_integer()) throw ParseError("exponent must be an integer");
            exps[*v] += e.get<std::int64_t>();
        }
        f += LaurentPoly::term(Rational(t["num"].get<std::int64_t>(), den), t["q"].get<std::int64_t>(), Monomial(exps));
    }
    return f;
}

inline LaurentPoly parse_poly(const std::string& text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return poly_from_json(j);
}

}  // namespace stabkit
