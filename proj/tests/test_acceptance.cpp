// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line. Everything is exact F2 arithmetic; there are no tolerances.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mwb/audit.hpp"
#include "mwb/corpus.hpp"
#include "mwb/dsl.hpp"
#include "mwb/prng.hpp"
#include "mwb/run.hpp"

using namespace mwb;
using DC = GroupExpr::DemushkinCase;
constexpr int kInf = OrientationValue::kInfinity;

namespace {

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

void report(int criterion, const char* what, bool pass, double ms) {
    std::printf("%s  criterion %d: %s  (%.0f ms)\n", pass ? "PASS" : "FAIL", criterion, what, ms);
    std::fflush(stdout);
}

std::vector<GroupExprPtr> corpus_et() {
    CorpusParams params;
    params.family = Family::ET;
    params.count = 60;
    return generate_corpus(2024, params);
}

} // namespace

TEST_CASE("criterion 1: C(mu) identity suite") {
    Stopwatch watch;
    SplitMix64 rng(101);
    bool pass = true;
    for (int n = 3; n <= 10; ++n) {
        for (int trial = 0; trial < 50; ++trial) {
            UniMatrix a(n + 1);
            for (int i = 1; i <= n; ++i) a.set(i, i + 1, true);
            for (int i = 1; i <= n + 1; ++i)
                for (int j = i + 2; j <= n + 1; ++j) a.set(i, j, rng.coin());
            for (std::int64_t mu : {4, 8, 12, -4, -8}) {
                UniMatrix c = build_c_matrix(a, mu);
                bool ok = commutator(c, a) == power(a, mu) && filtration_level(c).level >= 3;
                pass = pass && ok;
                CHECK(ok);
            }
        }
    }
    report(1, "C(mu) identity and filtration on 2000 random cases", pass, watch.ms());
}

TEST_CASE("criterion 2: dihedral suite") {
    Stopwatch watch;
    bool pass = true;
    for (int n = 2; n <= 12; ++n) {
        for (int variant : {1, 2}) {
            auto [a, b] = dihedral_pair(n, variant);
            std::uint64_t shape = 0;
            for (int i = variant; i <= n; i += 2) shape |= 1ull << (i - 1);
            bool ok = compose(b, b).is_identity() && commutator(b, a) == power(a, -2) &&
                      commutator(compose(a, b), a) == power(a, -2) &&
                      superdiagonal(b) == shape && superdiagonal(a) == (1ull << n) - 1;
            pass = pass && ok;
            CHECK(ok);
        }
    }
    report(2, "dihedral identities and superdiagonal shapes, n = 2..12", pass, watch.ms());
}

TEST_CASE("criterion 3: cup-form cross-checks") {
    Stopwatch watch;
    bool pass = true;
    auto corpus = corpus_et();
    SplitMix64 rng(303);

    // block direct sums on 100 random corpus pairs
    int pairs = 0;
    while (pairs < 100) {
        auto a = corpus[rng.below(corpus.size())];
        auto b = corpus[rng.below(corpus.size())];
        int d = a->generator_count() + b->generator_count();
        if (d == 0 || d > 48) continue;
        ++pairs;
        auto pf = CupForm::extract(presentation(*GroupExpr::product(a, b)));
        auto sum = CupForm::direct_sum(CupForm::extract(presentation(*a)),
                                       CupForm::extract(presentation(*b)));
        for (int trial = 0; trial < 6; ++trial) {
            CohClass x(rng.below(1ull << d), d);
            CohClass y(rng.below(1ull << d), d);
            bool ok = pf.cup(x, y) == sum.cup(x, y);
            pass = pass && ok;
            CHECK(ok);
        }
    }

    // semidirect identities on 100 random semidirect corpus expressions
    int semis = 0;
    while (semis < 100) {
        auto e = corpus[rng.below(corpus.size())];
        if (e->generator_count() + 1 > 62) continue;
        auto expr = std::holds_alternative<GroupExpr::Semidirect>(e->node())
                        ? e
                        : GroupExpr::semidirect(e);
        ++semis;
        int d = expr->generator_count();
        auto form = CupForm::extract(presentation(*expr));
        auto roles = generator_roles(*expr);
        CohClass psi = CohClass::dual(roles.z, d);
        std::uint64_t chi0 = 0;
        for (int u : roles.u_list) chi0 |= 1ull << u;
        bool ok = form.cup(psi, psi) == form.cup(CohClass(chi0, d), psi);
        // injectivity of alpha -> alpha cup psi on inner classes
        std::uint64_t pivots[64] = {0};
        for (int k = 0; k + 1 < d && ok; ++k) {
            std::uint64_t img = form.cup(CohClass::dual(k, d), psi).bits();
            for (int bit = 63; bit >= 0; --bit) {
                if (!((img >> bit) & 1ull)) continue;
                if (!pivots[bit]) break;
                img ^= pivots[bit];
            }
            if (img == 0) {
                ok = false;
                break;
            }
            pivots[63 - __builtin_clzll(img)] = img;
        }
        pass = pass && ok;
        CHECK(ok);
    }

    // the dihedral table, exactly
    auto dform = CupForm::extract(
        presentation(*GroupExpr::product(GroupExpr::c2(), GroupExpr::c2())));
    CohClass x1 = CohClass::dual(0, 2), x2 = CohClass::dual(1, 2);
    bool table = dform.cup(x1, x1).to_text() == "10" && dform.cup(x2, x2).to_text() == "01" &&
                 dform.cup(x1, x2).is_zero() && dform.cup(x1 + x2, x2) == dform.cup(x2, x2) &&
                 dform.cup(x1 + x2, x1 + x2).to_text() == "11";
    pass = pass && table;
    CHECK(table);

    report(3, "block sums, semidirect identities, dihedral table", pass, watch.ms());
}

TEST_CASE("criterion 4: Bockstein equivalence") {
    Stopwatch watch;
    bool pass = true;
    std::uint64_t checked = 0;
    for (const auto& expr : corpus_et()) {
        int d = expr->generator_count();
        if (d > 6) continue;
        Presentation pres = presentation(*expr);
        CupForm form = CupForm::extract(pres);
        for (std::uint64_t bits = 0; bits < (1ull << d); ++bits) {
            CohClass alpha(bits, d);
            bool ok = form.cup(alpha, alpha).is_zero() == bockstein_lift_exists(pres, alpha);
            pass = pass && ok;
            CHECK(ok);
            ++checked;
        }
    }
    CHECK(checked > 200);
    report(4, "cup square vanishes iff a Z/4 lift exists, over the corpus", pass, watch.ms());
}

namespace {

std::vector<std::pair<GroupExprPtr, MasseySequence>> g_inadmissible_from_5;

} // namespace

TEST_CASE("criterion 5: oracle equivalence at n = 3") {
    Stopwatch watch;
    bool pass = true;
    std::uint64_t sequences = 0;
    for (const auto& expr : builtin_corpus(Family::ET)) {
        int d = expr->generator_count();
        if (d < 1 || d > 3) continue;
        Presentation pres = presentation(*expr);
        CupForm form = CupForm::extract(pres);
        for (std::uint64_t a = 1; a < (1ull << d); ++a)
            for (std::uint64_t b = 1; b < (1ull << d); ++b)
                for (std::uint64_t c = 1; c < (1ull << d); ++c) {
                    auto seq = MasseySequence::of(
                        {CohClass(a, d), CohClass(b, d), CohClass(c, d)});
                    ++sequences;
                    bool admissible = is_massey_admissible(form, seq.classes);
                    auto brute = brute_force_search(pres, seq);
                    bool brute_found = brute.verdict == SearchOutcome::Verdict::Found;
                    bool ok = brute.verdict != SearchOutcome::Verdict::BudgetExceeded &&
                              brute_found == admissible;
                    if (brute_found)
                        ok = ok && verify_witness(pres, seq, *brute.witness).verified;
                    bool built = false;
                    try {
                        auto outcome = build_witness(*expr, seq);
                        built = true;
                        ok = ok && verify_witness(pres, seq, outcome.witness).verified;
                    } catch (const InadmissibleError&) {
                    }
                    ok = ok && (built == admissible);
                    if (!admissible) g_inadmissible_from_5.push_back({expr, seq});
                    pass = pass && ok;
                    CHECK(ok);
                }
    }
    CHECK(sequences > 500);
    report(5, "brute force iff admissible iff constructed, n = 3", pass, watch.ms());
}

TEST_CASE("criterion 6: strong-vanishing audits") {
    Stopwatch watch;
    bool pass = true;

    const std::vector<GroupExprPtr> exhaustive_exprs = {
        GroupExpr::c2(),
        GroupExpr::product(GroupExpr::c2(), GroupExpr::c2()),
        GroupExpr::semidirect(GroupExpr::c2()),
        GroupExpr::demushkin(DC::III, 2, 2),
        GroupExpr::demushkin(DC::IV, 3, kInf),
    };
    for (const auto& expr : exhaustive_exprs) {
        for (int n : {3, 4}) {
            auto result = strong_massey_audit(*expr, n, AuditMode::exhaustive_mode());
            bool ok = result.all_witnessed();
            pass = pass && ok;
            CHECK(ok);
        }
    }

    auto composite = composite_example();
    for (int n : {3, 4, 5}) {
        auto result = strong_massey_audit(*composite, n, AuditMode::sampled(200, 4242));
        bool ok = result.sequences_considered >= 200 && result.all_witnessed();
        pass = pass && ok;
        CHECK(ok);
    }

    report(6, "exhaustive and sampled audits all witnessed", pass, watch.ms());
}

TEST_CASE("criterion 7: EE2 corpus audit") {
    Stopwatch watch;
    bool pass = true;

    // 200 seeded EE2 expressions with at most 6 generators
    std::vector<GroupExprPtr> exprs;
    std::uint64_t seed = 700;
    while (exprs.size() < 200) {
        CorpusParams params;
        params.family = Family::EE2;
        params.max_bricks = 3;
        params.count = 64;
        for (const auto& e : generate_corpus(seed, params)) {
            if (e->generator_count() >= 1 && e->generator_count() <= 6) exprs.push_back(e);
            if (exprs.size() == 200) break;
        }
        ++seed;
    }

    std::uint64_t witnessed = 0, fallback = 0;
    for (std::size_t i = 0; i < exprs.size(); ++i) {
        for (int n : {3, 4}) {
            auto result = strong_massey_audit(*exprs[i], n,
                                              AuditMode::sampled(3, 7000 + i));
            bool ok = result.all_witnessed();
            pass = pass && ok;
            CHECK(ok);
            witnessed += result.witnessed;
            fallback += result.fallback;
        }
    }
    bool no_fallback = fallback == 0;
    pass = pass && no_fallback;
    CHECK(no_fallback);
    CHECK(witnessed > 300);

    report(7, "200 EE2 expressions: all witnessed, zero fallbacks", pass, watch.ms());
}

TEST_CASE("criterion 8: negative controls") {
    Stopwatch watch;
    bool pass = true;

    auto c2 = GroupExpr::c2();
    Presentation pres = presentation(*c2);
    for (int n : {3, 4, 5}) {
        std::vector<CohClass> chis(static_cast<std::size_t>(n), CohClass::dual(0, 1));
        auto seq = MasseySequence::of(chis);
        bool ok = brute_force_search(pres, seq).verdict == SearchOutcome::Verdict::None;
        try {
            build_witness(*c2, seq);
            ok = false;
        } catch (const InadmissibleError&) {
        }
        pass = pass && ok;
        CHECK(ok);
    }

    // every inadmissible sequence discovered by criterion 5
    std::uint64_t rechecked = 0;
    for (const auto& [expr, seq] : g_inadmissible_from_5) {
        Presentation p = presentation(*expr);
        bool ok = brute_force_search(p, seq).verdict == SearchOutcome::Verdict::None;
        try {
            build_witness(*expr, seq);
            ok = false;
        } catch (const InadmissibleError&) {
        }
        pass = pass && ok;
        CHECK(ok);
        ++rechecked;
    }
    CHECK(rechecked > 100);

    report(8, "inadmissible sequences: oracle none, builder rejects", pass, watch.ms());
}

TEST_CASE("criterion 9: CLI golden bytes and exit codes") {
    Stopwatch watch;
    bool pass = true;

    auto read_file = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream out;
        out << in.rdbuf();
        return out.str();
    };

    struct Golden {
        const char* file;
        CommandRequest request;
        int exit_code;
    };
    std::vector<Golden> goldens;
    {
        CommandRequest r;
        r.command = "witness";
        r.group_text = "semi(c2)";
        r.classes_text = "[x1*+z*; z*; x1*+z*]";
        r.deterministic = true;
        goldens.push_back({"witness_semi_c2.json", r, 0});
    }
    {
        CommandRequest r;
        r.command = "oracle";
        r.group_text = "c2";
        r.classes_text = "[x1*; x1*; 0]";
        r.deterministic = true;
        goldens.push_back({"oracle_c2_none.json", r, 1});
    }
    {
        CommandRequest r;
        r.command = "describe";
        r.group_text = "semi(c2)";
        r.deterministic = true;
        goldens.push_back({"describe_semi_c2.json", r, 0});
    }

    for (const auto& golden : goldens) {
        auto once = run(golden.request);
        auto twice = run(golden.request);
        bool ok = once.exit_code == golden.exit_code && once.output == twice.output &&
                  once.output == read_file(std::string(MWB_GOLDEN_DIR) + "/" + golden.file);
        pass = pass && ok;
        CHECK(ok);
    }

    // parse errors exit 2
    CommandRequest bad;
    bad.command = "describe";
    bad.group_text = "demushkin(case=1, d=3, f=2)";
    bool code2 = run(bad).exit_code == 2;
    pass = pass && code2;
    CHECK(code2);

    report(9, "byte-identical deterministic reports, contracted exit codes", pass, watch.ms());
}
