#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace spectra {

// Counter-based pseudorandom stream keyed by (master seed, trial, draw counter).
// Two streams with equal (seed, trial) produce identical draw sequences no
// matter how work is scheduled, which is what makes per-trial parallelism and
// golden tests possible. Values come from a splitmix-style avalanche applied
// to the key triple; Gaussians via Box-Muller on consecutive counters.
class SeedStream {
public:
    SeedStream(std::uint64_t master_seed, std::uint64_t trial)
        : seed_(master_seed), trial_(trial) {}

    std::uint64_t master_seed() const { return seed_; }
    std::uint64_t trial() const { return trial_; }
    std::uint64_t counter() const { return counter_; }

    // uniform on (0, 1]; strictly positive so log() is always safe
    double next_uniform() {
        const std::uint64_t h = next_u64();
        return (static_cast<double>(h >> 11) + 1.0) * 0x1.0p-53;
    }

    // standard normal, one value per call (two counters consumed)
    double next_gaussian() {
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // X + iY with X, Y ~ N(0, component_sd^2); real part drawn first
    std::complex<double> next_complex_gaussian(double component_sd) {
        const double re = component_sd * next_gaussian();
        const double im = component_sd * next_gaussian();
        return {re, im};
    }

private:
    static std::uint64_t mix64(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t next_u64() {
        std::uint64_t h = mix64(seed_);
        h = mix64(h ^ trial_);
        h = mix64(h ^ counter_++);
        return h;
    }

    std::uint64_t seed_;
    std::uint64_t trial_;
    std::uint64_t counter_ = 0;
};

} // namespace spectra
