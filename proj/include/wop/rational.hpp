#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

#include "json.hpp"

#include "wop/error.hpp"

namespace wop {

// Exact arithmetic for model coefficients, evaluations and scalarized scores.
using Rat = boost::rational<std::int64_t>;

inline double rat_to_double(const Rat& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline std::string rat_to_string(const Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline Rat rat_from_string(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(std::stoll(s));
        std::int64_t num = std::stoll(s.substr(0, slash));
        std::int64_t den = std::stoll(s.substr(slash + 1));
        if (den == 0) throw Error("parse-error", "zero denominator in rational '" + s + "'");
        return Rat(num, den);
    } catch (const std::invalid_argument&) {
        throw Error("parse-error", "bad rational literal '" + s + "'");
    } catch (const std::out_of_range&) {
        throw Error("parse-error", "rational literal out of range '" + s + "'");
    }
}

// Integers serialize as plain JSON numbers, everything else as "p/q".
inline nlohmann::json rat_to_json(const Rat& r) {
    if (r.denominator() == 1) return r.numerator();
    return rat_to_string(r);
}

inline Rat rat_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    throw Error("parse-error", "expected integer or \"p/q\" rational, got " + j.dump());
}

}  // namespace wop
