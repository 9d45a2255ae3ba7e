#ifndef LPDEC_RNG_HPP
#define LPDEC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace lpdec {

// splitmix64 finalizer; used for seed derivation so that per-block seeds are
// decorrelated even when the inputs are small consecutive integers.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master ^ mix64(index + 1));
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    return mix64(derive_seed(master, a) ^ mix64(b + 0x5851f42d4c957f2dULL));
}

// Seeded generator with portable output. The engine is std::mt19937_64 (fully
// specified by the standard); uniform ints use rejection sampling and normals
// use Box-Muller, both implemented here, so every stream is reproducible
// across platforms and standard libraries. Not thread-safe; one instance per
// worker.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform on [0, 1), 53-bit resolution
    double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // uniform on {0, 1, ..., bound-1}
    std::uint64_t next_below(std::uint64_t bound) {
        // rejection sampling to avoid modulo bias
        const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % bound;
    }

    int next_int(int bound) { return static_cast<int>(next_below(static_cast<std::uint64_t>(bound))); }

    // standard normal via Box-Muller, second value cached
    double next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] so the log is finite
        const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = next_unit();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = next_below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace lpdec

#endif
