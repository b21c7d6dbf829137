#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace dpmos {

// Seeded stream of variates. Draws are built directly from the engine output so
// the sequence does not depend on the standard library's distribution classes.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    double uniform();       // [0, 1)
    double uniform_open();  // (0, 1)
    std::size_t index(std::size_t n);
    bool bernoulli(double p) { return uniform() < p; }

    double laplace(double scale);
    double exponential(double mean);
    double gumbel(double scale);

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[index(i)]);
    }

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

}  // namespace dpmos
