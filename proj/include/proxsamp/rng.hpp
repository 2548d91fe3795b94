#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>

namespace proxsamp {

/// splitmix64 step (Steele, Lea, Flood 2014); used for seeding and for
/// deriving per-chain stream keys.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Deterministic, platform-independent random stream.
///
/// Generator: xoshiro256++ (Blackman & Vigna), state filled from splitmix64.
/// Per-chain streams come from mixing (seed, chain_id) through splitmix64, so
/// a run is reproducible given the pair alone.  Derived draws use fixed
/// algorithms: uniforms take the top 53 bits shifted into (0,1], normals use
/// the Box-Muller cosine branch (two uniforms per draw, nothing cached),
/// exponentials use inverse transform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : Rng(seed, 0) {}

    Rng(std::uint64_t seed, std::uint64_t chain_id) {
        std::uint64_t key = chain_id;
        std::uint64_t mixed = splitmix64(key);
        std::uint64_t sm = seed ^ mixed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform on (0, 1]; never returns 0, so log() below is safe.
    double uniform01() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (1.0 - uniform01());
    }

    double normal() {
        const double u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * M_PI * u2);
    }

    double exponential() { return -std::log(uniform01()); }

    Eigen::VectorXd gaussian_vector(Eigen::Index dim) {
        Eigen::VectorXd z(dim);
        for (Eigen::Index i = 0; i < dim; ++i) z[i] = normal();
        return z;
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t state_[4];
};

}  // namespace proxsamp
