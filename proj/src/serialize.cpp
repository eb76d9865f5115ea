#include "micromacro/serialize.hpp"

#include <istream>
#include <sstream>

#include "micromacro/errors.hpp"

namespace micromacro {

namespace {

constexpr const char* kFormat = "micromacro-system";
constexpr int kVersion = 1;

std::vector<int> int_array(const Json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_array())
        throw ValidationError(std::string("missing or non-array field: ") + field);
    std::vector<int> out;
    for (const auto& v : j[field]) {
        if (!v.is_number_integer())
            throw ValidationError(std::string("non-integer entry in ") + field);
        out.push_back(v.get<int>());
    }
    return out;
}

}  // namespace

Json system_to_json(const System& s) {
    Json j;
    j["format"] = kFormat;
    j["version"] = kVersion;
    j["n"] = s.n;
    j["alpha"] = s.alpha;
    j["macro"] = s.macro;
    if (s.reversion) j["reversion"] = *s.reversion;
    if (s.macro_values) {
        Json values = Json::array();
        for (const auto& v : *s.macro_values) values.push_back(to_string(v));
        j["macro_values"] = std::move(values);
    }
    if (s.macro_names) j["macro_names"] = *s.macro_names;
    return j;
}

System system_from_json(const Json& j) {
    if (!j.is_object() || j.value("format", "") != kFormat)
        throw ValidationError("not a system document");
    if (j.value("version", 0) != kVersion)
        throw ValidationError("unsupported system document version");
    auto alpha = int_array(j, "alpha");
    auto macro = int_array(j, "macro");
    if (j.contains("n") && j["n"].get<int>() != static_cast<int>(alpha.size()))
        throw ValidationError("declared n disagrees with the alpha array");

    std::optional<std::vector<int>> reversion;
    if (j.contains("reversion")) reversion = int_array(j, "reversion");
    std::optional<std::vector<Rational>> values;
    if (j.contains("macro_values")) {
        values.emplace();
        for (const auto& v : j["macro_values"]) {
            if (!v.is_string()) throw ValidationError("macro_values entries must be strings");
            values->push_back(parse_rational(v.get<std::string>()));
        }
    }
    std::optional<std::vector<std::string>> names;
    if (j.contains("macro_names")) {
        names.emplace();
        for (const auto& v : j["macro_names"]) {
            if (!v.is_string()) throw ValidationError("macro_names entries must be strings");
            names->push_back(v.get<std::string>());
        }
    }
    return validate_system(std::move(alpha), std::move(macro), std::move(reversion),
                           std::move(values), std::move(names));
}

std::string emit_system(const System& s) { return system_to_json(s).dump(2) + "\n"; }

System parse_system(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ValidationError("malformed JSON input");
    return system_from_json(j);
}

System load_system(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_system(buf.str());
}

std::string float_repr(double x) {
    std::ostringstream out;
    out.precision(15);
    out << x;
    return out.str();
}

Json rational_json(const Rational& r) {
    Json j;
    j["exact"] = to_string(r);
    j["approx"] = float_repr(to_double(r));
    return j;
}

Json logvalue_json(const LogValue& v) {
    Json j;
    j["constant"] = to_string(v.constant_part());
    Json terms = Json::object();
    for (const auto& [prime, coeff] : v.log_coeffs())
        terms[prime.get_str()] = to_string(coeff);
    j["log_terms"] = std::move(terms);
    j["approx"] = float_repr(v.to_double());
    j["display"] = v.to_string();
    return j;
}

}  // namespace micromacro
