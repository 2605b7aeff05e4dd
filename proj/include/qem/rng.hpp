#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace qem {

// Deterministic random stream. Wraps mt19937_64 with explicitly pinned
// sampling formulas so that runs are reproducible across standard-library
// implementations (std::normal_distribution is not portable).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Derive an independent stream, e.g. per (seed, n, trial).
    static Rng derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
        std::seed_seq seq{seed, a, b};
        std::mt19937_64 eng(seq);
        Rng r(0);
        r.engine_ = eng;
        return r;
    }

    std::uint64_t raw() { return engine_(); }

    // Uniform in [0, 1).
    double uniform() { return std::ldexp(static_cast<double>(engine_() >> 11), -53); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, bound). Rejection sampling, bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % bound;
    }

    // Standard normal via Box-Muller.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) {
            u1 = uniform();
        }
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace qem
