#include "treeharm/jsonio.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace treeharm {

//=========================== canonical emission ===========================//

std::string format_real(real_t v) {
  if (!std::isfinite(v)) {
    throw ValidationError("non-finite value cannot be serialized");
  }
  if (v == 0.0) v = 0.0;  // collapse negative zero
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

namespace {

bool is_scalar(const ordered_json& j) { return !j.is_object() && !j.is_array(); }

bool all_scalars(const ordered_json& arr) {
  for (const auto& e : arr) {
    if (!is_scalar(e)) return false;
  }
  return true;
}

void emit_scalar(const ordered_json& j, std::string& out) {
  switch (j.type()) {
    case ordered_json::value_t::number_float:
      out += format_real(j.get<double>());
      break;
    case ordered_json::value_t::number_integer:
      out += std::to_string(j.get<long long>());
      break;
    case ordered_json::value_t::number_unsigned:
      out += std::to_string(j.get<unsigned long long>());
      break;
    default:
      out += j.dump();  // null, bool, escaped string
      break;
  }
}

void emit(const ordered_json& j, std::string& out, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close_pad(2 * depth, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad;
      out += ordered_json(key).dump();
      out += ": ";
      emit(value, out, depth + 1);
    }
    out += "\n" + close_pad + "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    if (all_scalars(j)) {
      out += "[";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ", ";
        first = false;
        emit_scalar(e, out);
      }
      out += "]";
      return;
    }
    out += "[\n";
    bool first = true;
    for (const auto& e : j) {
      if (!first) out += ",\n";
      first = false;
      out += pad;
      emit(e, out, depth + 1);
    }
    out += "\n" + close_pad + "]";
  } else {
    emit_scalar(j, out);
  }
}

double number_field(const ordered_json& j, const char* what) {
  if (!j.is_number()) {
    throw ValidationError(std::string(what) + " must be a number");
  }
  return j.get<double>();
}

long long integer_field(const ordered_json& j, const char* what) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) {
    throw ValidationError(std::string(what) + " must be an integer");
  }
  return j.get<long long>();
}

}  // namespace

std::string canonical_dump(const ordered_json& j) {
  std::string out;
  emit(j, out, 0);
  return out;
}

//=========================== value converters ===========================//

std::string format_p(real_t p) {
  if (std::isinf(p) && p > 0) return "inf";
  return format_real(p);
}

real_t parse_p(const std::string& text) {
  if (text == "inf") return std::numeric_limits<real_t>::infinity();
  const char* begin = text.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || std::isnan(v)) {
    throw ValidationError("cannot parse exponent '" + text + "'");
  }
  return v;
}

namespace {

// Double parse over [begin, end) requiring full consumption; empty or
// bare-sign text denotes the implicit unit coefficient of "i".
double parse_part(const std::string& text, bool implicit_unit) {
  if (implicit_unit) {
    if (text.empty() || text == "+") return 1.0;
    if (text == "-") return -1.0;
  }
  const char* begin = text.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw ValidationError("cannot parse number '" + text + "'");
  }
  return v;
}

}  // namespace

complex_t parse_complex(const std::string& raw) {
  std::string text;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  }
  if (text.empty()) throw ValidationError("empty complex literal");
  if (text.back() != 'i') {
    return complex_t(parse_part(text, false), 0.0);
  }
  std::string body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not an exponent sign and not leading.
  for (std::size_t k = body.size(); k-- > 1;) {
    char c = body[k];
    if ((c == '+' || c == '-') &&
        body[k - 1] != 'e' && body[k - 1] != 'E') {
      return complex_t(parse_part(body.substr(0, k), false),
                       parse_part(body.substr(k), true));
    }
  }
  return complex_t(0.0, parse_part(body, true));
}

ordered_json complex_to_json(complex_t z) {
  return ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

ordered_json params_to_json(const TreeParams& params) {
  return ordered_json{
      {"d0", params.d0}, {"d1", params.d1}, {"kappa", params.kappa}};
}

//=========================== radial functions ===========================//

ordered_json radial_to_json(const RadialFunction& f) {
  ordered_json j = params_to_json(f.params);
  ordered_json coeffs = ordered_json::array();
  for (const auto& [r, v] : f.coeffs) {
    coeffs.push_back(ordered_json::array({r, v.real(), v.imag()}));
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

RadialFunction radial_from_json(const ordered_json& j) {
  if (!j.is_object()) throw ValidationError("radial function must be an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "d0" && key != "d1" && key != "kappa" && key != "coeffs") {
      throw ValidationError("unknown radial function field '" + key + "'");
    }
  }
  if (!j.contains("d0") || !j.contains("d1") || !j.contains("kappa") ||
      !j.contains("coeffs")) {
    throw ValidationError("radial function requires d0, d1, kappa, coeffs");
  }
  TreeParams params =
      make_tree_params(static_cast<int>(integer_field(j.at("d0"), "d0")),
                       static_cast<int>(integer_field(j.at("d1"), "d1")),
                       static_cast<int>(integer_field(j.at("kappa"), "kappa")));
  if (!j.at("coeffs").is_array()) {
    throw ValidationError("coeffs must be an array");
  }
  std::map<int, complex_t> coeffs;
  long long prev = -1;
  for (const auto& row : j.at("coeffs")) {
    if (!row.is_array() || row.size() != 3) {
      throw ValidationError("each coefficient must be [radius, re, im]");
    }
    long long r = integer_field(row.at(0), "radius");
    if (r <= prev) {
      throw ValidationError("coefficient radii must be strictly increasing");
    }
    prev = r;
    coeffs[static_cast<int>(r)] =
        complex_t(number_field(row.at(1), "coefficient real part"),
                  number_field(row.at(2), "coefficient imaginary part"));
  }
  return make_radial(params, std::move(coeffs));
}

//============================= report shapes =============================//

ordered_json to_json(const IntervalUnion& u) {
  ordered_json comps = ordered_json::array();
  for (const auto& c : u.components()) {
    comps.push_back(ordered_json::array({c.lo, c.hi}));
  }
  return ordered_json{{"components", std::move(comps)}};
}

ordered_json to_json(const LpVerdict& verdict) {
  ordered_json j;
  j["p"] = std::isinf(verdict.p) ? ordered_json("inf") : ordered_json(verdict.p);
  j["mode"] = verdict.mode == LpMode::LengthExponential ? "length_exponential"
                                                        : "spherical_function";
  j["member"] = verdict.member;
  j["threshold_re"] = verdict.threshold_re;
  if (verdict.integral) j["integral"] = *verdict.integral;
  return j;
}

ordered_json to_json(const NestingStep& step) {
  ordered_json j;
  j["p_from"] = std::isinf(step.p_from) ? ordered_json("inf")
                                        : ordered_json(step.p_from);
  j["p_to"] =
      std::isinf(step.p_to) ? ordered_json("inf") : ordered_json(step.p_to);
  j["spectrum_from"] = to_json(step.spectrum_from);
  j["spectrum_to"] = to_json(step.spectrum_to);
  j["strict"] = step.strict;
  j["witness"] = ordered_json{{"eigenvalue", step.witness_eigenvalue},
                              {"z", complex_to_json(step.witness_parameter)}};
  j["margin_upper"] = step.margin_upper;
  j["margin_lower"] = step.margin_lower;
  return j;
}

ordered_json to_json(const NestingReport& report) {
  ordered_json exps = ordered_json::array();
  for (real_t p : report.exponents) {
    exps.push_back(std::isinf(p) ? ordered_json("inf") : ordered_json(p));
  }
  ordered_json steps = ordered_json::array();
  for (const auto& s : report.steps) steps.push_back(to_json(s));
  return ordered_json{{"exponents", std::move(exps)},
                      {"steps", std::move(steps)},
                      {"all_strict", report.all_strict}};
}

ordered_json to_json(const PDReport& report) {
  return ordered_json{{"radius", report.radius},
                      {"matrix_dim", report.matrix_dim},
                      {"min_eigenvalue", report.min_eigenvalue}};
}

//=============================== CSV rows ===============================//

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  bool first = true;
  for (const auto& field : fields) {
    if (!first) out += ",";
    first = false;
    if (field.find_first_of(",\"\n") != std::string::npos) {
      out += '"';
      for (char c : field) {
        if (c == '"') out += '"';
        out += c;
      }
      out += '"';
    } else {
      out += field;
    }
  }
  out += "\n";
  return out;
}

}  // namespace treeharm
