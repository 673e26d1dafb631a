#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "wdn/common.hpp"

namespace wdn {

/// Deterministic random source. The engine is std::mt19937_64 (bit-exact by
/// the standard); all distributions are implemented here so that streams are
/// reproducible across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t bits() { return eng_(); }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer on [0, n).
    std::uint64_t below(std::uint64_t n) {
        // rejection sampling keeps the stream unbiased
        std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % n;
    }

    /// Standard normal via Box-Muller (pair cached).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1, u2;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    /// Exponential with rate 1 (= Gamma(1,1)), used for Dirichlet draws.
    double exponential() {
        double u;
        do {
            u = uniform();
        } while (u <= 0.0);
        return -std::log(u);
    }

    /// Symmetric Dirichlet(1,...,1) sample of the given dimension.
    std::vector<double> dirichlet(std::size_t dim) {
        std::vector<double> w(dim);
        double sum = 0;
        for (auto& x : w) {
            x = exponential();
            sum += x;
        }
        for (auto& x : w) x /= sum;
        return w;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0;
    bool have_spare_ = false;
};

/// Splits a root seed into an independent per-purpose stream seed.
inline std::uint64_t seed_for(std::uint64_t root, std::string_view tag, std::uint64_t index = 0) {
    std::uint64_t h = fnv1a64(tag);
    h ^= root + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= index * 0xbf58476d1ce4e5b9ull;
    // splitmix64 finalizer
    h ^= h >> 30;
    h *= 0xbf58476d1ce4e5b9ull;
    h ^= h >> 27;
    h *= 0x94d049bb133111ebull;
    h ^= h >> 31;
    return h;
}

} // namespace wdn
