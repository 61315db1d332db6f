#pragma once

#include <cstdint>

namespace mwb {

// splitmix64 (Steele, Lea & Flood). Tiny and bit-identical on every
// platform, so seeded corpora and audit samples replay exactly from the
// seed recorded in a report.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform-enough draw in [0, bound); bound >= 1
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    bool coin() { return next() & 1ull; }

private:
    std::uint64_t state_;
};

} // namespace mwb
