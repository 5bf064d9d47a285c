#pragma once

#include "aevt/metric.hpp"

#include "json.hpp"

#include <initializer_list>
#include <string>

namespace aevt {

using json = nlohmann::ordered_json;

// rationals are "p/q" or decimal strings, or JSON integers; non-integer JSON numbers are rejected
Rational rational_from_json(const json& j, const std::string& where);
std::uint64_t natural_from_json(const json& j, const std::string& where);
Point point_from_json(const json& j, const std::string& where);
// {"lo": r, "hi": r} for intervals, {"lo": [..], "hi": [..]} for equal-width boxes, or {"center": [..], "radius": r}
BoxSpace box_from_json(const json& j, const std::string& where);

json to_json(const Rational& q);
json to_json(const Point& p);
json to_json(const BoxSpace& b);

// ConfigInvalid naming the first key of j outside allowed
void require_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where);
const json& require(const json& j, const char* key, const std::string& where);

} // namespace aevt
