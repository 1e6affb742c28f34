#ifndef CHORDALNET_RNG_HPP
#define CHORDALNET_RNG_HPP

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace chordalnet {

// Seeded RNG with platform-independent draws. std::mt19937_64 is fully
// specified by the standard; the distribution helpers here are hand-rolled
// because std::uniform_int_distribution is not reproducible across
// implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0, n) via rejection sampling.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t threshold = (~n + 1) % n; // 2^64 mod n
        for (;;) {
            std::uint64_t r = eng_();
            if (r >= threshold) return r % n;
        }
    }

    int range(int lo, int hi) { // inclusive bounds
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    double unit() { // [0, 1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    bool chance(double p) { return unit() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 eng_;
};

} // namespace chordalnet

#endif
