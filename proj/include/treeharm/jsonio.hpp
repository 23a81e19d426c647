#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "treeharm/radial.hpp"
#include "treeharm/spectra.hpp"
#include "treeharm/spherical.hpp"

namespace treeharm {

using ordered_json = nlohmann::ordered_json;

//=========================== canonical emission ===========================//

// 15 significant digits, negative zero normalized; rejects non-finite
// values. The digit count is below the decimal round-trip threshold, so
// parse -> emit of our own output is byte-identical.
std::string format_real(real_t v);

// Deterministic pretty printer over insertion-ordered documents: two-space
// indent, arrays of scalars on one line, reals via format_real.
std::string canonical_dump(const ordered_json& j);

//=========================== value converters ===========================//

std::string format_p(real_t p);  // "inf" at the endpoint exponent
real_t parse_p(const std::string& text);
complex_t parse_complex(const std::string& text);  // "a+bi", either part optional

ordered_json complex_to_json(complex_t z);
ordered_json params_to_json(const TreeParams& params);

ordered_json radial_to_json(const RadialFunction& f);
RadialFunction radial_from_json(const ordered_json& j);

ordered_json to_json(const IntervalUnion& u);
ordered_json to_json(const LpVerdict& verdict);
ordered_json to_json(const NestingStep& step);
ordered_json to_json(const NestingReport& report);
ordered_json to_json(const PDReport& report);

//=============================== CSV rows ===============================//

// One record per row, `kind` discriminator first; quoting per RFC 4180.
std::string csv_row(const std::vector<std::string>& fields);

}  // namespace treeharm
