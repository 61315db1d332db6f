#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace mwb {

/// Dense affine system over F2, packed 64 variables per word. Small by
/// construction (the witness solvers never need more than a few hundred
/// unknowns), so plain Gaussian elimination is enough.
class LinearSystemF2 {
public:
    explicit LinearSystemF2(int vars);

    int vars() const { return vars_; }
    int equations() const { return static_cast<int>(rows_.size()); }

    void add_equation(std::vector<std::uint64_t> coeffs, bool rhs);

    struct Solution {
        std::vector<std::uint64_t> particular;           // free variables = 0
        std::vector<std::vector<std::uint64_t>> kernel;  // one basis vector per free variable
    };

    /// std::nullopt when inconsistent.
    std::optional<Solution> solve() const;

    static bool get_bit(const std::vector<std::uint64_t>& v, int i) {
        return (v[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1ull;
    }
    static void set_bit(std::vector<std::uint64_t>& v, int i, bool val) {
        std::uint64_t bit = 1ull << (i & 63);
        if (val)
            v[static_cast<std::size_t>(i) >> 6] |= bit;
        else
            v[static_cast<std::size_t>(i) >> 6] &= ~bit;
    }
    static void flip_bit(std::vector<std::uint64_t>& v, int i) {
        v[static_cast<std::size_t>(i) >> 6] ^= 1ull << (i & 63);
    }

private:
    int vars_;
    int words_;
    std::vector<std::vector<std::uint64_t>> rows_;
    std::vector<std::uint8_t> rhs_;
};

} // namespace mwb
