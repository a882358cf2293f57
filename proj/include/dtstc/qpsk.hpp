#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

namespace dtstc {

using cxd = std::complex<double>;

// Gray-mapped unit-energy QPSK:
//   00 -> (+1+j)/sqrt2   01 -> (-1+j)/sqrt2
//   11 -> (-1-j)/sqrt2   10 -> (+1-j)/sqrt2
// First bit selects the imaginary sign, second bit the real sign.
inline cxd qpsk_map(int b_first, int b_second) {
    constexpr double a = 0.7071067811865475244;
    return {b_second ? -a : a, b_first ? -a : a};
}

// Nearest-point decision; ties resolve toward the lexicographically smallest
// bit pattern (>= 0 decides the 0 bit on each axis).
inline std::array<int, 2> qpsk_demap(cxd x) {
    return {x.imag() < 0.0 ? 1 : 0, x.real() < 0.0 ? 1 : 0};
}

// Symbol index in 0..3 is (b_first << 1) | b_second.
inline cxd qpsk_symbol(int idx) { return qpsk_map((idx >> 1) & 1, idx & 1); }

inline Eigen::VectorXcd bits_to_symbols(const std::vector<int>& bits) {
    if (bits.size() % 2 != 0)
        throw std::invalid_argument("bits_to_symbols: need an even bit count");
    Eigen::VectorXcd s(bits.size() / 2);
    for (Eigen::Index i = 0; i < s.size(); ++i)
        s[i] = qpsk_map(bits[2 * i], bits[2 * i + 1]);
    return s;
}

// N x 4^N matrix of all QPSK symbol vectors; column c stacks the symbols of
// the base-4 digits of c, most significant symbol first.
inline Eigen::MatrixXcd build_candidate_set(int n) {
    if (n < 1) throw std::invalid_argument("build_candidate_set: n must be >= 1");
    const int d = 1 << (2 * n);
    Eigen::MatrixXcd s(n, d);
    for (int c = 0; c < d; ++c)
        for (int i = 0; i < n; ++i)
            s(i, c) = qpsk_symbol((c >> (2 * (n - 1 - i))) & 3);
    return s;
}

// Bits of candidate column c, in transmission order.
inline std::vector<int> candidate_bits(int n, int c) {
    std::vector<int> bits(2 * n);
    for (int i = 0; i < n; ++i) {
        const int idx = (c >> (2 * (n - 1 - i))) & 3;
        bits[2 * i] = (idx >> 1) & 1;
        bits[2 * i + 1] = idx & 1;
    }
    return bits;
}

}  // namespace dtstc
