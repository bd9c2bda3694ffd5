#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sst/reconstruct.hpp"
#include "sst/signal.hpp"

#include "json.hpp"

namespace sst::io {

inline constexpr const char* kToolVersion = "0.1.0";

/// Numbers are printed with 17 significant digits so round-trips are lossless.
inline std::string fmt_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// FNV-1a 64-bit over a file's bytes, as a hex string.
inline std::string fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for hashing: " + path);
    std::uint64_t h = 1469598103934665603ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::size_t col(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw std::runtime_error("csv: missing column " + name);
    }
    std::vector<double> column(const std::string& name) const {
        std::size_t c = col(name);
        std::vector<double> v;
        v.reserve(rows.size());
        for (const auto& r : rows) v.push_back(r[c]);
        return v;
    }
};

inline void write_csv(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF on every platform
    if (!out) throw std::runtime_error("cannot write " + path);
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << fmt_num(r[i]);
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

/// Reads a CSV with a required header row. Throws with the 1-based row
/// number on any malformed data row.
inline Csv read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Csv csv;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: empty file " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) csv.header.push_back(cell);
    std::size_t rowno = 1;
    while (std::getline(in, line)) {
        ++rowno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ls(line);
        while (std::getline(ls, cell, ',')) {
            try {
                std::size_t pos = 0;
                double v = std::stod(cell, &pos);
                if (pos != cell.size()) throw std::invalid_argument("trailing junk");
                row.push_back(v);
            } catch (const std::exception&) {
                throw std::runtime_error("csv: malformed value in " + path + " at row " +
                                         std::to_string(rowno));
            }
        }
        if (row.size() != csv.header.size())
            throw std::runtime_error("csv: wrong column count in " + path + " at row " +
                                     std::to_string(rowno));
        csv.rows.push_back(std::move(row));
    }
    return csv;
}

/// Loads (t, value) or single-column CSV into a SampledSignal. For a single
/// value column, tau must be supplied. Non-uniform t spacing beyond 1e-9
/// relative is rejected.
inline SampledSignal read_signal_csv(const std::string& path, double tau_flag = -1.0) {
    Csv csv = read_csv(path);
    SampledSignal s;
    bool has_t = false;
    std::size_t tcol = 0, vcol = 0;
    for (std::size_t i = 0; i < csv.header.size(); ++i) {
        if (csv.header[i] == "t") {
            tcol = i;
            has_t = true;
        }
        if (csv.header[i] == "value" || csv.header[i] == "y") vcol = i;
    }
    if (csv.header.size() == 1) vcol = 0;
    if (csv.rows.size() < 2) throw std::runtime_error("signal csv: need at least 2 rows");
    if (has_t) {
        double t0 = csv.rows[0][tcol];
        double t1 = csv.rows[1][tcol];
        double tau = t1 - t0;
        if (!(tau > 0.0)) throw std::runtime_error("signal csv: non-increasing t");
        for (std::size_t r = 1; r < csv.rows.size(); ++r) {
            double dt = csv.rows[r][tcol] - csv.rows[r - 1][tcol];
            if (std::abs(dt - tau) > 1e-9 * std::max(1.0, std::abs(tau)))
                throw std::runtime_error("signal csv: non-uniform t spacing at row " + std::to_string(r + 2));
        }
        s.tau = tau;
        s.t0 = t0 - tau;  // sample l sits at t0 + (l+1) tau
    } else {
        if (!(tau_flag > 0.0)) throw std::invalid_argument("signal csv: single-column input requires --tau");
        s.tau = tau_flag;
    }
    s.values.reserve(csv.rows.size());
    for (const auto& r : csv.rows) s.values.push_back(r[vcol]);
    return s;
}

inline void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

/// Little-endian float32 row-major dump of |s| with a JSON sidecar.
inline void write_sst_binary(const std::string& bin_path, const std::string& json_path,
                             const SstField& s, const ScaleGrid& grid, double tau) {
    std::ofstream out(bin_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + bin_path);
    for (std::size_t n = 0; n < s.s.rows(); ++n) {
        for (std::size_t c = 0; c < s.s.cols(); ++c) {
            float v = static_cast<float>(std::abs(s.s(n, c)));
            out.write(reinterpret_cast<const char*>(&v), sizeof(v));
        }
    }
    nlohmann::json j;
    j["rows_time"] = s.s.rows();
    j["cols_freq_bins"] = s.s.cols();
    j["dtype"] = "float32-le";
    j["content"] = "magnitude";
    j["layout"] = "row-major";
    j["tau"] = tau;
    j["delta_xi"] = s.freq.delta_xi;
    j["gamma"] = s.gamma;
    j["scales"] = grid.scales;
    write_text(json_path, j.dump(2) + "\n");
}

inline void write_decomposition_csv(const std::string& path, const SampledSignal& y,
                                    const Decomposition& dec) {
    const std::size_t n = y.size();
    std::vector<std::string> header{"index", "t", "y", "trend"};
    for (std::size_t k = 0; k < dec.components.size(); ++k) header.push_back("comp_" + std::to_string(k + 1));
    for (std::size_t k = 0; k < dec.components.size(); ++k) header.push_back("am_" + std::to_string(k + 1));
    for (std::size_t k = 0; k < dec.components.size(); ++k) header.push_back("if_" + std::to_string(k + 1));
    for (std::size_t k = 0; k < dec.components.size(); ++k) header.push_back("phase_" + std::to_string(k + 1));
    header.push_back("residual");
    std::vector<std::vector<double>> rows(n);
    for (std::size_t l = 0; l < n; ++l) {
        auto& r = rows[l];
        r.push_back(static_cast<double>(l + 1));
        r.push_back(y.time_at(l));
        r.push_back(y.values[l]);
        r.push_back(dec.trend[l]);
        for (const auto& c : dec.components) r.push_back(c.series[l]);
        for (const auto& c : dec.components) r.push_back(c.am[l]);
        for (const auto& c : dec.components) r.push_back(c.inst_freq[l]);
        for (const auto& c : dec.components) r.push_back(c.phase[l]);
        r.push_back(dec.residual[l]);
    }
    write_csv(path, header, rows);
}

}  // namespace sst::io
