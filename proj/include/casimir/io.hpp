#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "casimir/dynamics.hpp"
#include "casimir/sweep.hpp"

namespace casimir {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input data (as opposed to an unreadable file).
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// 17 significant digits: parses back to the identical double.
std::string format_double(double v);

// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

// Hex SHA-1 of "blob <size>\0<contents>", as computed by `git hash-object`.
std::string git_blob_hash(const std::string& contents);

inline const std::vector<std::string>& trajectory_columns() {
    static const std::vector<std::string> cols = {"t_au",     "t_fs",     "P_e",      "re_rho_eg", "im_rho_eg",
                                                  "E_e_cm1",  "E_c_cm1",  "E_B_cm1",  "E_D_cm1",   "q_c",
                                                  "p_c",      "q_B",      "p_B"};
    return cols;
}

inline const std::vector<std::string>& sweep_columns() {
    static const std::vector<std::string> cols = {"param_value", "E_D_5ps_cm1", "E_c_peak_cm1",
                                                  "P_e_max",     "P_e_final",   "status"};
    return cols;
}

std::string trajectory_csv(const Trajectory& traj);

// Trajectory rebuilt from trajectory.csv; energies are converted back to a.u.
// Throws FormatError naming the first bad row (1-based, header is row 1).
Trajectory parse_trajectory_csv(const std::string& text);

std::string sweep_csv(const SweepTable& table);

}  // namespace casimir
