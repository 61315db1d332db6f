#pragma once

#include <cstdint>
#include <vector>

#include "mwb/groupexpr.hpp"

namespace mwb {

enum class Family { ET, EE2 };

struct CorpusParams {
    int max_bricks = 3;
    int max_d = 4;
    Family family = Family::ET;
    int count = 32; // pseudo-random trees appended after the fixed baseline
};

/// Fixed small expressions every corpus starts from.
std::vector<GroupExprPtr> builtin_corpus(Family family);

/// The running example of a composite elementary-type group: two Demushkin
/// bricks and a free brick combined by free products and two semidirect
/// extensions (8 generators).
GroupExprPtr composite_example();

/// Deterministic pseudo-random expression trees (seeded splitmix64): the
/// baseline filtered by params, then `count` generated trees. EE2 trees use
/// only C2 bricks, and a semidirect node only ever wraps a subtree that
/// contains a C2, so every semidirect node has a u-generator. All outputs
/// validate.
std::vector<GroupExprPtr> generate_corpus(std::uint64_t seed, const CorpusParams& params);

} // namespace mwb
