#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace blowup {

// Seeded RNG with self-contained bounded draws so that identical seeds give
// identical streams on every platform (std::uniform_int_distribution and
// std::shuffle are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next() { return eng_(); }

    // Uniform in [0, n), unbiased by rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        const std::uint64_t limit = n * (~std::uint64_t{0} / n);
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % n;
    }

    int index(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

    // Bernoulli with probability p (p in [0,1]); p == 1 always true.
    bool chance(double p) {
        if (p >= 1.0) return true;
        if (p <= 0.0) return false;
        // 53-bit draw keeps the comparison exact for representable p.
        const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
        return u < p;
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct values from [0, n), in random order.
    std::vector<int> sample_without_replacement(int n, int k) {
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        shuffle(pool);
        pool.resize(k);
        return pool;
    }

    // Independent stream derived from this seed; used to give sub-tasks
    // reproducible randomness regardless of consumption order.
    Rng fork(std::uint64_t stream) const {
        std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return Rng(z ^ (z >> 31));
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

}  // namespace blowup
