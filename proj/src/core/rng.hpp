#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace decoy {

// Deterministic random source. mt19937_64 has a portable bit stream, but the
// std distributions do not, so the few draws we need are implemented by hand
// to keep seeded runs reproducible across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : m_eng(seed) {}

    std::uint64_t raw() { return m_eng(); }

    // [0, 1) with 53 bits of entropy.
    double uniform01() { return double(m_eng() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // [0, n), unbiased via rejection.
    std::uint64_t below(std::uint64_t n) {
        if(n == 0)
            return 0;
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = m_eng();
        } while(v >= limit);
        return v % n;
    }

    // Standard normal via Box-Muller; caches the second deviate.
    double normal() {
        if(m_have_spare) {
            m_have_spare = false;
            return m_spare;
        }
        double u1, u2;
        do {
            u1 = uniform01();
        } while(u1 <= 0.0);
        u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        m_spare = r * std::sin(a);
        m_have_spare = true;
        return r * std::cos(a);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for(std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }

  private:
    std::mt19937_64 m_eng;
    double m_spare = 0.0;
    bool m_have_spare = false;
};

} // namespace decoy
