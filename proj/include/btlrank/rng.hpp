#ifndef BTLRANK_RNG_HPP
#define BTLRANK_RNG_HPP

#include <cstdint>

namespace btlrank {

// 64-bit finalizer hash (the SplitMix64 output function). Bijective.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// SplitMix64: counter-based pseudo-random generator. The state is a plain
/// counter advanced by a fixed odd increment; every output is mix64 of the
/// counter, so a stream is fully determined by its starting seed and draws
/// are independent of evaluation order across streams.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        return mix64(state_ += 0x9E3779B97F4A7C15ull);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    bool bernoulli(double p) { return next_double() < p; }

    // Uniform integer in [0, bound) by rejection; bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

private:
    std::uint64_t state_;
};

// Child-stream derivation: fold each tag into the seed through the
// finalizer. Streams split by (seed, tag, ...) never collide in practice.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t tag) {
    return mix64(seed ^ (mix64(tag + 0x9E3779B97F4A7C15ull) + 0x517CC1B727220A95ull));
}

template <class... Tags>
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t tag2, Tags... rest) {
    return stream_seed(stream_seed(seed, tag), tag2, rest...);
}

} // namespace btlrank

#endif // BTLRANK_RNG_HPP
