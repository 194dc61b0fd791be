#include "casimir/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

namespace casimir {

namespace {

enum class Kind { Real, Integer, Text };

struct Field {
    const char* section;
    const char* key;
    Kind kind;
    std::function<void(Params&, const std::string&)> set;
    std::function<std::string(const Params&)> get;
};

std::string format_real(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_real(const std::string& text, const std::string& key) {
    std::string s = text;
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty()) {
        throw ValidationError(key + " expects a number, got '" + text + "'");
    }
    return v;
}

long long parse_integer(const std::string& text, const std::string& key) {
    const double v = parse_real(text, key);
    if (!std::isfinite(v) || std::floor(v) != v || std::abs(v) > 9.007199254740992e15) {
        throw ValidationError(key + " expects an integer, got '" + text + "'");
    }
    return static_cast<long long>(v);
}

template <typename T>
Field real_field(const char* section, const char* key, T Params::*member) {
    return {section, key, Kind::Real,
            [member, key](Params& p, const std::string& v) { p.*member = parse_real(v, key); },
            [member](const Params& p) { return format_real(p.*member); }};
}

Field int_field(const char* section, const char* key, int Params::*member) {
    return {section, key, Kind::Integer,
            [member, key](Params& p, const std::string& v) {
                const long long n = parse_integer(v, key);
                if (n < -2147483647LL || n > 2147483647LL) throw ValidationError(std::string(key) + " out of range");
                p.*member = static_cast<int>(n);
            },
            [member](const Params& p) { return std::to_string(p.*member); }};
}

Field pulse_field_entry(const char* key, double PulseParams::*member) {
    return {"pulse", key, Kind::Real,
            [member, key](Params& p, const std::string& v) { p.pulse.*member = parse_real(v, key); },
            [member](const Params& p) { return format_real(p.pulse.*member); }};
}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = {
        real_field("system", "n_e", &Params::n_e),
        real_field("system", "n_v", &Params::n_v),
        int_field("system", "cross_term_factor", &Params::cross_term_factor),
        int_field("system", "collective_term_factor", &Params::collective_term_factor),
        real_field("electronic", "omega_e", &Params::omega_e),
        real_field("electronic", "d_eg", &Params::d_eg),
        real_field("electronic", "d_gg", &Params::d_gg),
        real_field("electronic", "d_ee", &Params::d_ee),
        real_field("vibrational", "omega_v", &Params::omega_v),
        real_field("vibrational", "d_v", &Params::d_v),
        real_field("cavity", "omega_c", &Params::omega_c),
        real_field("cavity", "lambda_c", &Params::lambda_c),
        real_field("relaxation", "gamma_e", &Params::gamma_e),
        real_field("relaxation", "gamma_c", &Params::gamma_c),
        real_field("relaxation", "gamma_v_total", &Params::gamma_v_total),
        pulse_field_entry("E0", &PulseParams::E0),
        pulse_field_entry("t_start", &PulseParams::t_start),
        pulse_field_entry("sigma", &PulseParams::sigma),
        real_field("integrator", "dt", &Params::dt),
        real_field("integrator", "t_final", &Params::t_final),
        int_field("integrator", "record_stride", &Params::record_stride),
        int_field("dark_bath", "n_dark", &Params::n_dark),
        real_field("dark_bath", "omega_min", &Params::dark_omega_min),
        real_field("dark_bath", "omega_max", &Params::dark_omega_max),
        {"dark_bath", "sampling", Kind::Text,
         [](Params& p, const std::string& v) { p.dark_sampling = dark_sampling_from_string(v); },
         [](const Params& p) { return "\"" + to_string(p.dark_sampling) + "\""; }},
        {"dark_bath", "seed", Kind::Integer,
         [](Params& p, const std::string& v) {
             std::uint64_t n = 0;
             const auto res = std::from_chars(v.data(), v.data() + v.size(), n);
             if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
                 throw ValidationError("seed expects an integer in [0, 2^64), got '" + v + "'");
             }
             p.seed = n;
         },
         [](const Params& p) { return std::to_string(p.seed); }},
    };
    return table;
}

const char* const kSections[] = {"system",     "electronic", "vibrational", "cavity",
                                 "relaxation", "pulse",      "integrator",  "dark_bath"};

bool known_section(const std::string& s) {
    for (const char* name : kSections) {
        if (s == name) return true;
    }
    return false;
}

const Field* find_field(const std::string& section, const std::string& key) {
    for (const Field& f : fields()) {
        if (section == f.section && key == f.key) return &f;
    }
    return nullptr;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// strips a trailing comment that is not inside a quoted string
std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

std::string unquote(const std::string& v, const std::string& origin, int line) {
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
    if (!v.empty() && (v.front() == '"' || v.back() == '"')) {
        throw ConfigError(origin + ":" + std::to_string(line) + ": unterminated string", line);
    }
    return v;
}

}  // namespace

Params parse_config_text(const std::string& text, const std::string& origin) {
    Params p;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    std::vector<std::string> seen;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        const std::string where = origin + ":" + std::to_string(line_no) + ": ";
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where + "malformed section header", line_no);
            section = trim(line.substr(1, line.size() - 2));
            if (!known_section(section)) throw ConfigError(where + "unknown section [" + section + "]", line_no);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'", line_no);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = unquote(trim(line.substr(eq + 1)), origin, line_no);
        if (section.empty()) throw ConfigError(where + "key '" + key + "' outside of any section", line_no);
        if (key.empty() || value.empty()) throw ConfigError(where + "expected 'key = value'", line_no);
        const Field* f = find_field(section, key);
        if (f == nullptr) throw ConfigError(where + "unknown key '" + section + "." + key + "'", line_no);
        const std::string qualified = section + "." + key;
        for (const auto& s : seen) {
            if (s == qualified) throw ConfigError(where + "duplicate key '" + qualified + "'", line_no);
        }
        seen.push_back(qualified);
        try {
            f->set(p, value);
        } catch (const ValidationError& e) {
            throw ConfigError(where + e.what(), line_no);
        }
    }
    validate(p);
    return p;
}

Params parse_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path.string());
}

std::string write_config(const Params& p) {
    std::ostringstream out;
    std::string section;
    for (const Field& f : fields()) {
        if (section != f.section) {
            if (!section.empty()) out << '\n';
            section = f.section;
            out << '[' << section << "]\n";
        }
        out << f.key << " = " << f.get(p) << '\n';
    }
    return out.str();
}

void apply_override(Params& p, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ValidationError("override '" + assignment + "' is not key=value");
    const std::string key = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    const Field* match = nullptr;
    const auto dot = key.find('.');
    if (dot != std::string::npos) {
        match = find_field(key.substr(0, dot), key.substr(dot + 1));
    } else {
        for (const Field& f : fields()) {
            if (key == f.key) {
                if (match != nullptr) throw ValidationError("override key '" + key + "' is ambiguous");
                match = &f;
            }
        }
    }
    if (match == nullptr) throw ValidationError("unknown override key '" + key + "'");
    if (value.empty()) throw ValidationError("override '" + key + "' has no value");
    match->set(p, value.size() >= 2 && value.front() == '"' ? value.substr(1, value.size() - 2) : value);
}

}  // namespace casimir
