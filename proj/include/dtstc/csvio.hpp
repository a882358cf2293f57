#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "dtstc/simulate.hpp"

namespace dtstc {

// Full-precision shortest round-trip decimal for doubles.
inline std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    for (int prec = 1; prec <= 16; ++prec) {
        char shorter[64];
        std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
        std::sscanf(shorter, "%lf", &back);
        if (back == v) return shorter;
    }
    return buf;
}

// Rows ordered by run, then SNR ascending within each run (runs are built
// with ascending grids, so insertion order is already the contract order).
inline std::string csv_text(const std::vector<RunResult>& runs) {
    std::string out = "scheme,delay_profile,snr_db,bits,errors,ber\n";
    for (const RunResult& run : runs)
        for (const BerPoint& p : run.points) {
            out += run.scheme_label + "," + run.delay_label + "," +
                   format_number(p.snr_db) + "," + std::to_string(p.bits) +
                   "," + std::to_string(p.errors) + "," +
                   format_number(p.ber()) + "\n";
        }
    return out;
}

inline void emit_csv(const std::vector<RunResult>& runs,
                     const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("emit_csv: cannot open " + path);
    const std::string text = csv_text(runs);
    const std::size_t n = std::fwrite(text.data(), 1, text.size(), f);
    std::fclose(f);
    if (n != text.size()) throw std::runtime_error("emit_csv: short write");
}

}  // namespace dtstc
