#pragma once

#include <cmath>
#include <cstdint>

namespace credlink {

// SplitMix64 (Steele, Lea & Flood, 2014). Chosen because the whole update is
// a fixed integer mix, so a stream is reproducible from its seed on any
// platform. Gaussian draws use the Marsaglia polar method on top of it.
// Stream definition is versioned as "splitmix64-polar/1" in the README; the
// regression baselines in the tests depend on it.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform on (0, 1): 53-bit mantissa, offset so 0 is never returned.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
    }

    // Standard normal deviate.
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
        const double scale = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * scale;
        has_spare_ = true;
        return u * scale;
    }

    // Derives an independent stream, e.g. one per entity or replication.
    Rng fork(std::uint64_t stream_id) {
        Rng child(state_ ^ (0xD1B54A32D192ED03ull * (stream_id + 1)));
        child.next_u64();
        return child;
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace credlink
