#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace vlcgsm {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Stream key for (master seed, point, batch). Each index passes through the
// splitmix finalizer so neighbouring batches get unrelated streams, and the
// result is identical for any thread count.
inline std::uint64_t derive_stream(std::uint64_t master, std::uint64_t point,
                                   std::uint64_t batch) {
    std::uint64_t k = splitmix64(master);
    k = splitmix64(k ^ splitmix64(point + 0x243F6A8885A308D3ull));
    k = splitmix64(k ^ splitmix64(batch + 0x13198A2E03707344ull));
    return k;
}

// Deterministic uniform/Gaussian source. mt19937_64 output is pinned by the
// standard, and the Marsaglia polar transform below avoids the
// implementation-defined std::normal_distribution, so replaying a stream key
// is bit-exact across platforms.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t key) : eng_(key) {}

    std::uint64_t bits() { return eng_(); }

    // uniform in [0, 1) with 53-bit resolution
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace vlcgsm
