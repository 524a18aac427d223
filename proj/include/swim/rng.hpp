#pragma once

#include <cstdint>
#include <random>

namespace swim {

// splitmix64 finalizer; used to derive decorrelated stream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Deterministic random stream. Wraps mt19937_64 but derives all variates
/// from raw 64-bit draws, so results do not depend on the standard library's
/// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(mix64(seed)) {}

    std::uint64_t u64() { return eng_(); }

    /// Uniform double in [0, 1).
    double unit() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    /// Uniform index in [0, n). Unbiased via rejection.
    std::size_t index(std::size_t n) {
        const std::uint64_t span = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do {
            x = u64();
        } while (x >= limit);
        return static_cast<std::size_t>(x % span);
    }

    /// Standard normal via Box-Muller; the spare value is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * unit() - 1.0;
            v = 2.0 * unit() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Stream for one layer (or other indexed sub-task) of a seeded run. Streams
/// are independent of each other, so layer l's draws never depend on layers
/// after it.
inline Rng substream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(mix64(seed ^ mix64(stream + 1)));
}

}  // namespace swim
