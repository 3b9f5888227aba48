#pragma once

#include <cstdint>
#include <string_view>

namespace natvert {

// Deterministic splittable RNG. Every consumer derives its own stream from
// (seed, purpose string), so results do not depend on evaluation order or
// on which threads run which chunk.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    static Rng derive(std::uint64_t seed, std::string_view purpose) {
        std::uint64_t h = 0xcbf29ce484222325ull ^ seed;
        for (char c : purpose) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ull;
        }
        return Rng(h);
    }

    // splitmix64
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound), bound > 0
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    bool coin() { return next() & 1u; }

private:
    std::uint64_t state_;
};

} // namespace natvert
