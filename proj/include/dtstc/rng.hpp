#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace dtstc {

using cxd = std::complex<double>;

// Stateless stream derivation: every (seed, purpose, a, b) tuple names an
// independent RNG stream, so trials can be evaluated in any order with
// identical results.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t purpose,
                                   std::uint64_t a = 0, std::uint64_t b = 0) {
    std::uint64_t s = splitmix64(seed ^ 0x6a09e667f3bcc908ull);
    s = splitmix64(s ^ purpose);
    s = splitmix64(s ^ a);
    s = splitmix64(s ^ b);
    return s;
}

class Rng {
  public:
    explicit Rng(std::uint64_t state) : gen_(state) {}

    Rng(std::uint64_t seed, std::uint64_t purpose, std::uint64_t a = 0,
        std::uint64_t b = 0)
        : gen_(derive_stream(seed, purpose, a, b)) {}

    // Circularly-symmetric complex Gaussian, E|z|^2 = 1.
    cxd normal_complex() {
        return {norm_(gen_) * kInvSqrt2, norm_(gen_) * kInvSqrt2};
    }

    // Complex Gaussian with total variance sigma2 (sigma2/2 per dimension).
    cxd noise(double sigma2) {
        const double s = std::sqrt(sigma2 / 2.0);
        return {norm_(gen_) * s, norm_(gen_) * s};
    }

    int bit() { return static_cast<int>(gen_() & 1ull); }

    double uniform() { return uni_(gen_); }

    std::uint64_t raw() { return gen_(); }

  private:
    static constexpr double kInvSqrt2 = 0.7071067811865475244;
    std::mt19937_64 gen_;
    std::normal_distribution<double> norm_{0.0, 1.0};
    std::uniform_real_distribution<double> uni_{0.0, 1.0};
};

// Stream purposes used by the simulator. Channel/bit/noise streams are keyed
// by (snr index, trial index) only, never by scheme, so compared schemes see
// common random numbers.
enum StreamPurpose : std::uint64_t {
    kStreamBits = 1,
    kStreamChannel = 2,
    kStreamNoise = 3,
    kStreamStaticCode = 4,
    kStreamOptimizerInit = 5,
};

}  // namespace dtstc
