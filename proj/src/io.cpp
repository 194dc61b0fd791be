#include "casimir/io.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include "casimir/units.hpp"

namespace casimir {

std::string format_double(double v) {
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", v);
    return buf.data();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) throw IoError("write to " + tmp.string() + " failed");
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move " + tmp.string() + " to " + path.string());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string git_blob_hash(const std::string& contents) {
    const std::string header = "blob " + std::to_string(contents.size()) + '\0';
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha1(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), header.data(), header.size()) != 1 ||
        EVP_DigestUpdate(ctx.get(), contents.data(), contents.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
        throw IoError("SHA-1 digest failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string out;
    const auto& cols = trajectory_columns();
    for (std::size_t c = 0; c < cols.size(); ++c) {
        out += cols[c];
        out += c + 1 < cols.size() ? ',' : '\n';
    }
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double row[] = {traj.times[i],
                              au_to_fs(traj.times[i]),
                              traj.P_e[i],
                              traj.re_rho_eg[i],
                              traj.im_rho_eg[i],
                              au_to_cm1(traj.E_e[i]),
                              au_to_cm1(traj.E_c[i]),
                              au_to_cm1(traj.E_B[i]),
                              au_to_cm1(traj.E_D[i]),
                              traj.q_c[i],
                              traj.p_c[i],
                              traj.q_B[i],
                              traj.p_B[i]};
        constexpr std::size_t n = std::size(row);
        for (std::size_t c = 0; c < n; ++c) {
            out += format_double(row[c]);
            out += c + 1 < n ? ',' : '\n';
        }
    }
    return out;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace

Trajectory parse_trajectory_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw FormatError("empty trajectory file");
    const auto header = split(line, ',');
    if (header != trajectory_columns()) throw FormatError("row 1: header does not match the trajectory schema");

    Trajectory traj;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        const auto cells = split(line, ',');
        if (cells.size() != header.size()) {
            throw FormatError("row " + std::to_string(row) + ": expected " + std::to_string(header.size()) +
                              " fields, got " + std::to_string(cells.size()));
        }
        double v[13];
        for (std::size_t c = 0; c < cells.size(); ++c) {
            char* end = nullptr;
            v[c] = std::strtod(cells[c].c_str(), &end);
            if (cells[c].empty() || end != cells[c].c_str() + cells[c].size()) {
                throw FormatError("row " + std::to_string(row) + ": bad number in column " + header[c]);
            }
        }
        if (!traj.times.empty() && !(v[0] > traj.times.back())) {
            throw FormatError("row " + std::to_string(row) + ": times not strictly increasing");
        }
        traj.times.push_back(v[0]);
        traj.P_e.push_back(v[2]);
        traj.re_rho_eg.push_back(v[3]);
        traj.im_rho_eg.push_back(v[4]);
        traj.E_e.push_back(cm1_to_au(v[5]));
        traj.E_c.push_back(cm1_to_au(v[6]));
        traj.E_B.push_back(cm1_to_au(v[7]));
        traj.E_D.push_back(cm1_to_au(v[8]));
        traj.q_c.push_back(v[9]);
        traj.p_c.push_back(v[10]);
        traj.q_B.push_back(v[11]);
        traj.p_B.push_back(v[12]);
    }
    if (traj.times.empty()) throw FormatError("trajectory file has no data rows");
    return traj;
}

std::string sweep_csv(const SweepTable& table) {
    std::string out;
    const auto& cols = sweep_columns();
    for (std::size_t c = 0; c < cols.size(); ++c) {
        out += cols[c];
        out += c + 1 < cols.size() ? ',' : '\n';
    }
    for (const SweepRow& r : table.rows) {
        std::string status = r.status;
        for (char& ch : status) {
            if (ch == ',' || ch == '\n') ch = ';';
        }
        out += format_double(r.value) + ',' + format_double(r.E_D_cm1) + ',' + format_double(r.E_c_peak_cm1) + ',' +
               format_double(r.P_e_max) + ',' + format_double(r.P_e_final) + ',' + status + '\n';
    }
    return out;
}

}  // namespace casimir
