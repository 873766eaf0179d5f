#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "solgap/bound_chain.hpp"

namespace solgap {

using ordered_json = nlohmann::ordered_json;

/// 17-significant-digit decimal rendering of a double.
std::string fmt17(double x);
/// Binary-exact hexadecimal-float rendering of a double.
std::string fmt_hex(double x);

/// Numbers serialize as {"dec": <17-digit string>, "hex": <%a string>} so the
/// decimal form is readable and the hex form reproduces the exact bits.
ordered_json number_json(double x);
double number_from_json(const ordered_json& j);

ordered_json report_to_json(const BoundReport& rep);
BoundReport report_from_json(const ordered_json& j);
std::string report_to_csv(const BoundReport& rep);

/// Curve emission for plotting; when eps_prime is present an admissibility
/// column F >= 1 - eps_prime is included.
ordered_json curve_to_json(const BoundReport& rep, std::optional<double> eps_prime);
std::string curve_to_csv(const BoundReport& rep, std::optional<double> eps_prime);

}  // namespace solgap
