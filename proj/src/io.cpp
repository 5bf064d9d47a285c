#include "aevt/io.hpp"

#include "aevt/errors.hpp"

#include <algorithm>

namespace aevt {

Rational rational_from_json(const json& j, const std::string& where) {
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) return Rational(j.get<std::uint64_t>());
        return Rational(j.get<std::int64_t>());
    }
    if (j.is_string()) {
        try {
            return Rational::parse(j.get<std::string>());
        } catch (const std::exception& e) {
            throw ConfigInvalid(where + ": malformed rational \"" + j.get<std::string>() + "\"");
        }
    }
    throw ConfigInvalid(where + ": expected a rational as \"p/q\", a decimal string or an integer");
}

std::uint64_t natural_from_json(const json& j, const std::string& where) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
    if (j.is_string()) {
        Rational q = rational_from_json(j, where);
        if (q.is_integer() && q.sign() >= 0 && q.num() <= mpz_class("18446744073709551615"))
            return q.num().get_ui();
    }
    throw ConfigInvalid(where + ": expected a natural number");
}

Point point_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) return point({rational_from_json(j, where)});
    Point p(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        p(static_cast<Eigen::Index>(i)) = rational_from_json(j[i], where + "[" + std::to_string(i) + "]");
    return p;
}

BoxSpace box_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigInvalid(where + ": expected a box object");
    try {
        if (j.contains("center")) {
            require_keys(j, {"center", "radius"}, where);
            return BoxSpace(point_from_json(require(j, "center", where), where + ".center"),
                            rational_from_json(require(j, "radius", where), where + ".radius"));
        }
        require_keys(j, {"lo", "hi"}, where);
        Point lo = point_from_json(require(j, "lo", where), where + ".lo");
        Point hi = point_from_json(require(j, "hi", where), where + ".hi");
        if (lo.size() != hi.size()) throw ConfigInvalid(where + ": lo and hi differ in dimension");
        Rational r = (hi(0) - lo(0)) / 2;
        for (Eigen::Index i = 1; i < lo.size(); ++i)
            if ((hi(i) - lo(i)) / 2 != r) throw ConfigInvalid(where + ": box sides must have equal width");
        return BoxSpace((lo + hi) / Rational(2), r);
    } catch (const ConfigInvalid&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigInvalid(where + ": " + e.what());
    }
}

json to_json(const Rational& q) { return q.to_string(); }

json to_json(const Point& p) {
    json a = json::array();
    for (Eigen::Index i = 0; i < p.size(); ++i) a.push_back(p(i).to_string());
    return a;
}

json to_json(const BoxSpace& b) { return {{"center", to_json(b.center)}, {"radius", to_json(b.radius)}}; }

void require_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigInvalid(where + ": expected an object");
    for (const auto& [key, _] : j.items())
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
            throw ConfigInvalid(where + ": unknown key \"" + key + "\"");
}

const json& require(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw ConfigInvalid(where + ": missing key \"" + key + "\"");
    return j.at(key);
}

} // namespace aevt
