#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "casimir/params.hpp"

namespace casimir {

// Malformed configuration text. `line` is 1-based, 0 when not tied to a line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line) : std::runtime_error(what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Configuration files are a TOML subset:
//
//   # comment
//   [cavity]
//   lambda_c = 2e-6
//
// Sections: system, electronic, vibrational, cavity, relaxation, pulse,
// integrator, dark_bath. Unknown sections or keys are errors; missing keys
// keep their defaults. The result is validated.
Params parse_config_text(const std::string& text, const std::string& origin = "<config>");
Params parse_config(const std::filesystem::path& path);

// Canonical text form listing every key; parse_config_text inverts it exactly.
std::string write_config(const Params& p);

// Applies "key=value" where key is either "section.key" or an unambiguous bare
// key such as "lambda_c". Does not validate the resulting Params.
void apply_override(Params& p, const std::string& assignment);

}  // namespace casimir
