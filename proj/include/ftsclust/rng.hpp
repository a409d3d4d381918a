#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ftsclust {

// splitmix64 step (Steele, Lea, Flood 2014); used both as a seed scrambler
// and to derive independent substreams from (seed, index) pairs.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic substream seed for worker/replicate/start `index` under a
// user-level `seed`. Same (seed, index) always gives the same stream, so
// parallel and sequential schedules draw identical numbers.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s ^= index * 0xd1b54a32d192ed03ULL;
    std::uint64_t b = splitmix64(s);
    return a ^ (b + 0x2545f4914f6cdd1dULL);
}

// mt19937_64 wrapped with hand-rolled uniform/gaussian transforms. The
// standard distributions are implementation-defined, which would break the
// bit-identical-streams guarantee across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    // Uniform on (0, 1]; the +1 keeps log() in gaussian() finite.
    double uniform() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    // Box-Muller with the spare cached, two uniforms per pair.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // Uniform integer in [0, n); n must be positive. Rejection-free modulo
    // would bias large n, so use Lemire-style rejection.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0ULL - n) % n;
        for (;;) {
            std::uint64_t x = engine_();
            if (x >= threshold) return x % n;
        }
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace ftsclust
