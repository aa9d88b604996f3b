#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace meshplace {

// splitmix64 finalizer; used to derive independent sub-stream seeds from a
// user-facing seed without correlating the streams.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seeded generator with bit-stable draw helpers. std::uniform_*_distribution
// output is implementation-defined, so index/real draws are done by hand to
// keep runs reproducible across standard libraries and platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, n). Requires n > 0.
    std::size_t next_index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

    // Uniform integer in [lo, hi], inclusive.
    int next_int(int lo, int hi) {
        return lo + static_cast<int>(next_index(static_cast<std::size_t>(hi) - lo + 1));
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1), never exactly zero.
    double next_open01() {
        double x;
        do {
            x = next_double();
        } while (x == 0.0);
        return x;
    }

private:
    std::mt19937_64 engine_;
};

// exp(z) from Cody-Waite range reduction and a fixed-order Taylor tail.
// Bit-identical on any IEEE-754 double platform, unlike libm exp, which may
// differ in the last ulp between implementations and would derail seeded
// trajectories that branch on the result.
inline double portable_exp(double z) {
    if (std::isnan(z)) return z;
    if (z > 709.782712893384) return std::numeric_limits<double>::infinity();
    if (z < -745.1332191019412) return 0.0;
    constexpr double kLog2e = 1.4426950408889634074;
    constexpr double kLn2Hi = 6.93147180369123816490e-01;
    constexpr double kLn2Lo = 1.90821492927058770002e-10;
    const double kd = std::floor(z * kLog2e + 0.5);
    const int k = static_cast<int>(kd);
    const double r = (z - kd * kLn2Hi) - kd * kLn2Lo;
    // |r| <= ~0.347, so 13 terms leave the truncation error below 1 ulp.
    double s = 1.0;
    for (int i = 13; i >= 1; --i) s = 1.0 + s * r / i;
    return std::ldexp(s, k);
}

}  // namespace meshplace
