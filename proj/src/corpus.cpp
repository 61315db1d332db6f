#include "mwb/corpus.hpp"

#include "mwb/f2mat.hpp"
#include "mwb/prng.hpp"

namespace mwb {

namespace {

using DC = GroupExpr::DemushkinCase;
constexpr int kInf = OrientationValue::kInfinity;

GroupExprPtr c2() { return GroupExpr::c2(); }

OrientationValue random_orientation(SplitMix64& rng) {
    switch (rng.below(6)) {
    case 0: return OrientationValue::plus1();
    case 1: return OrientationValue::minus1();
    case 2: return OrientationValue::one_plus(2 + static_cast<int>(rng.below(2)));
    case 3: return OrientationValue::minus_one_plus(2 + static_cast<int>(rng.below(2)));
    case 4: return OrientationValue::one_plus(kInf);
    default:
        return OrientationValue::residue(3 + 2 * static_cast<std::int64_t>(rng.below(8)),
                                         4 + static_cast<int>(rng.below(4)));
    }
}

int random_f(SplitMix64& rng) {
    switch (rng.below(3)) {
    case 0: return 2;
    case 1: return 3;
    default: return kInf;
    }
}

GroupExprPtr random_brick(SplitMix64& rng, Family family, int max_d) {
    if (family == Family::EE2) return c2();
    if (rng.coin()) {
        int d = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_d)));
        std::vector<OrientationValue> theta;
        for (int i = 0; i < d; ++i) theta.push_back(random_orientation(rng));
        return GroupExpr::free_group(std::move(theta));
    }
    for (;;) {
        auto dcase = static_cast<DC>(1 + rng.below(4));
        int d;
        switch (dcase) {
        case DC::I:
        case DC::III:
            if (max_d < 2) continue;
            d = 2 * (1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_d / 2))));
            break;
        case DC::II:
            if (max_d < 4) continue;
            d = 2 * (2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_d / 2 - 1))));
            break;
        case DC::IV:
        default:
            d = 2 * static_cast<int>(rng.below(static_cast<std::uint64_t>((max_d + 1) / 2))) + 1;
            break;
        }
        int f = (dcase == DC::IV && d == 1) ? kInf : random_f(rng);
        return GroupExpr::demushkin(dcase, d, f);
    }
}

GroupExprPtr random_tree(SplitMix64& rng, Family family, int max_bricks, int max_d) {
    int bricks = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_bricks)));
    std::vector<GroupExprPtr> forest;
    for (int i = 0; i < bricks; ++i) forest.push_back(random_brick(rng, family, max_d));

    int wraps_left = 1 + static_cast<int>(rng.below(3));
    while (forest.size() > 1 || (wraps_left > 0 && rng.coin())) {
        bool can_wrap = wraps_left > 0;
        if (forest.size() >= 2 && (!can_wrap || rng.coin())) {
            std::size_t i = rng.below(forest.size());
            std::size_t j = rng.below(forest.size() - 1);
            if (j >= i) ++j;
            GroupExprPtr merged = GroupExpr::product(forest[i], forest[j]);
            if (i < j) std::swap(i, j);
            forest.erase(forest.begin() + static_cast<std::ptrdiff_t>(i));
            forest[j] = merged;
        } else if (can_wrap) {
            std::size_t i = rng.below(forest.size());
            // EE2: wrapping preserves the u-generator guarantee because every
            // EE2 subtree here is built from C2 bricks only
            forest[i] = GroupExpr::semidirect(forest[i]);
            --wraps_left;
        } else {
            break;
        }
    }
    return forest.front();
}

} // namespace

GroupExprPtr composite_example() {
    auto inner_prod = GroupExpr::product(
        GroupExpr::demushkin(DC::IV, 3, kInf),
        GroupExpr::free_group({OrientationValue::one_plus(2)}));
    auto mid = GroupExpr::product(GroupExpr::semidirect(inner_prod),
                                  GroupExpr::demushkin(DC::III, 2, 2));
    return GroupExpr::semidirect(mid);
}

std::vector<GroupExprPtr> builtin_corpus(Family family) {
    std::vector<GroupExprPtr> out;
    out.push_back(c2());
    out.push_back(GroupExpr::semidirect(c2()));
    out.push_back(GroupExpr::product(c2(), c2()));
    out.push_back(GroupExpr::semidirect(GroupExpr::product(c2(), c2())));
    out.push_back(GroupExpr::semidirect(GroupExpr::semidirect(c2())));
    out.push_back(GroupExpr::product(GroupExpr::semidirect(c2()), c2()));
    out.push_back(GroupExpr::product(c2(), GroupExpr::product(c2(), c2())));
    if (family == Family::ET) {
        out.push_back(GroupExpr::trivial());
        out.push_back(GroupExpr::free_group({OrientationValue::plus1()}));
        out.push_back(GroupExpr::free_group(
            {OrientationValue::minus1(), OrientationValue::one_plus(2)}));
        out.push_back(GroupExpr::demushkin(DC::I, 2, 2));
        out.push_back(GroupExpr::demushkin(DC::III, 2, 2));
        out.push_back(GroupExpr::demushkin(DC::IV, 3, kInf));
        out.push_back(GroupExpr::demushkin(DC::II, 4, 2));
        out.push_back(GroupExpr::product(GroupExpr::demushkin(DC::III, 2, 2), c2()));
        out.push_back(GroupExpr::semidirect(GroupExpr::demushkin(DC::IV, 3, kInf)));
        out.push_back(composite_example());
    }
    return out;
}

std::vector<GroupExprPtr> generate_corpus(std::uint64_t seed, const CorpusParams& params) {
    if (params.max_bricks < 1 || params.max_d < 1 || params.count < 0)
        throw Error("corpus parameters must be positive");
    std::vector<GroupExprPtr> out;
    for (const auto& expr : builtin_corpus(params.family))
        if (expr->brick_count() <= params.max_bricks) out.push_back(expr);

    SplitMix64 rng(seed);
    for (int i = 0; i < params.count; ++i)
        out.push_back(random_tree(rng, params.family, params.max_bricks, params.max_d));

    for (const auto& expr : out)
        if (!validate(*expr).ok()) throw Error("internal: corpus generated an invalid expression");
    return out;
}

} // namespace mwb
