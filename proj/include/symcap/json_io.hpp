#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "symcap/domains.hpp"
#include "symcap/error.hpp"
#include "symcap/rat.hpp"

namespace symcap {

using Json = nlohmann::json;

// Rationals travel as strings so no floating point value ever enters a file.

inline Json to_json(const Rat& r) { return r.str(); }

inline Rat rat_from_json(const Json& j, const std::string& where) {
    if (j.is_string()) {
        try {
            return Rat::parse(j.get<std::string>());
        } catch (const Error& e) {
            throw Error(ErrorCode::Parse, where + ": " + e.what());
        }
    }
    if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
    throw Error(ErrorCode::Parse, where + ": expected a rational string \"p/q\"");
}

inline int int_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return j.get<int>();
    if (j.is_string()) {
        const Rat r = rat_from_json(j, where);
        if (r.is_integer()) return static_cast<int>(r.num());
    }
    throw Error(ErrorCode::Parse, where + ": expected an integer");
}

inline const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::Parse, where + ": missing field '" + key + "'");
    return j.at(key);
}

inline Json to_json(const std::vector<Rat>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

inline std::vector<Rat> rats_from_json(const Json& j, const std::string& where) {
    if (!j.is_array()) throw Error(ErrorCode::Parse, where + ": expected an array");
    std::vector<Rat> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rat_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

inline Json to_json(const Domain& d) {
    return std::visit(
        [](const auto& x) -> Json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Ellipsoid>) return {{"type", "ellipsoid"}, {"coeffs", to_json(x.coeffs)}};
            else if constexpr (std::is_same_v<T, Polydisk>) return {{"type", "polydisk"}, {"widths", to_json(x.widths)}};
            else if constexpr (std::is_same_v<T, Polylike>)
                return {{"type", "polylike"}, {"b", to_json(x.b)}, {"tail", to_json(x.tail)}};
            else if constexpr (std::is_same_v<T, TruncatedEllipsoid>)
                return {{"type", "truncated_ellipsoid"},
                        {"base", to_json(x.base.coeffs)},
                        {"axis", x.axis},
                        {"cut", to_json(x.cut)}};
            else return {{"type", "ball_product"}, {"R", to_json(x.radius)}, {"n", x.n}};
        },
        d);
}

inline Domain domain_from_json(const Json& j, const std::string& where = "domain") {
    const Json& type = field(j, "type", where);
    if (!type.is_string()) throw Error(ErrorCode::Parse, where + ".type: expected a string");
    const std::string t = type.get<std::string>();
    try {
        if (t == "ellipsoid") return Ellipsoid(rats_from_json(field(j, "coeffs", where), where + ".coeffs"));
        if (t == "polydisk") return Polydisk(rats_from_json(field(j, "widths", where), where + ".widths"));
        if (t == "polylike")
            return Polylike(rat_from_json(field(j, "b", where), where + ".b"),
                            rats_from_json(field(j, "tail", where), where + ".tail"));
        if (t == "truncated_ellipsoid")
            return TruncatedEllipsoid(Ellipsoid(rats_from_json(field(j, "base", where), where + ".base")),
                                      int_from_json(field(j, "axis", where), where + ".axis"),
                                      rat_from_json(field(j, "cut", where), where + ".cut"));
        if (t == "ball_product")
            return BallProduct(rat_from_json(field(j, "R", where), where + ".R"),
                               int_from_json(field(j, "n", where), where + ".n"));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Parse) throw;
        throw Error(ErrorCode::Parse, where + ": " + e.what());
    }
    throw Error(ErrorCode::Parse, where + ".type: unknown domain type '" + t + "'");
}

/// Canonical serialization: compact, keys in sorted order, rationals reduced.
inline std::string canonical(const Domain& d) { return to_json(d).dump(); }

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Parse, "cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::Parse, path + ": " + e.what());
    }
}

} // namespace symcap
