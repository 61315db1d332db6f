#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mwb/cohomology.hpp"
#include "mwb/corpus.hpp"
#include "mwb/dsl.hpp"
#include "mwb/prng.hpp"

using namespace mwb;
using DC = GroupExpr::DemushkinCase;
constexpr int kInf = OrientationValue::kInfinity;

namespace {

CupForm form_of(const GroupExprPtr& expr) { return CupForm::extract(presentation(*expr)); }

} // namespace

TEST_CASE("h1 basis dimensions") {
    CHECK(h1_basis(*GroupExpr::c2()).dim() == 1);

    auto dinf = GroupExpr::product(GroupExpr::c2(), GroupExpr::c2());
    auto reg = h1_basis(*dinf);
    CHECK(reg.dim() == 2);
    CHECK(reg.index_of("x1") == 0);
    CHECK(reg.index_of("x2") == 1);
    CHECK(reg.index_of("nope") == -1);

    CHECK(h1_basis(*composite_example()).dim() == 8);

    // chi = x1* + x2* and psi = x2* express the second basis of the
    // dihedral H^1; restriction is coordinate projection
    CohClass chi(0b11, 2), psi(0b10, 2);
    CHECK(chi.restrict(0, 1) == CohClass(1, 1));
    CHECK(psi.restrict(0, 1) == CohClass::zero(1));
    CHECK(psi.restrict(1, 1) == CohClass(1, 1));
    CHECK(chi.to_text(reg) == "x1*+x2*");
    CHECK(CohClass::zero(2).to_text(reg) == "0");
}

TEST_CASE("cup form extraction: dihedral") {
    auto form = form_of(GroupExpr::product(GroupExpr::c2(), GroupExpr::c2()));
    REQUIRE(form.dim() == 2);
    REQUIRE(form.relation_count() == 2);
    CohClass x1 = CohClass::dual(0, 2), x2 = CohClass::dual(1, 2);

    CHECK(form.cup(x1, x2).is_zero());
    CHECK(form.cup(x1, x1).to_text() == "10");
    CHECK(form.cup(x2, x2).to_text() == "01");

    // chi cup psi = psi^2 in the {chi, psi} basis
    CohClass chi = x1 + x2, psi = x2;
    CHECK(form.cup(chi, psi) == form.cup(psi, psi));
    CHECK(form.cup(chi, psi).to_text() == "01");
    CHECK(form.cup(chi, chi).to_text() == "11");
}

TEST_CASE("cup form extraction: one-relator cases") {
    // [x1,x2] x2^-4: off-diagonal 1, diagonal of x2 = (-2 mod 2) = 0
    auto form1 = form_of(GroupExpr::demushkin(DC::I, 2, 2));
    CohClass x1 = CohClass::dual(0, 2), x2 = CohClass::dual(1, 2);
    CHECK(form1.cup(x1, x2).to_text() == "1");
    CHECK(form1.cup(x1, x1).is_zero());
    CHECK(form1.cup(x2, x2).is_zero());

    // case II: chi1 cup chi2 = chi2^2, chi4^2 = 0
    auto form2 = form_of(GroupExpr::demushkin(DC::II, 4, 2));
    CHECK(form2.cup(CohClass::dual(0, 4), CohClass::dual(1, 4)).to_text() == "1");
    CHECK(form2.cup(CohClass::dual(1, 4), CohClass::dual(1, 4)).to_text() == "1");
    CHECK(form2.cup(CohClass::dual(3, 4), CohClass::dual(3, 4)).is_zero());
    CHECK(form2.cup(CohClass::dual(2, 4), CohClass::dual(3, 4)).to_text() == "1");

    // case III: chi1 cup chi2 = chi2^2 generate, chi1^2 = 0
    auto form3 = form_of(GroupExpr::demushkin(DC::III, 2, 2));
    CHECK(form3.cup(x1, x2).to_text() == "1");
    CHECK(form3.cup(x2, x2).to_text() == "1");
    CHECK(form3.cup(x1, x1).is_zero());

    // case IV d=3: chi1^2 = chi2 cup chi3, everything else zero
    auto form4 = form_of(GroupExpr::demushkin(DC::IV, 3, kInf));
    CHECK(form4.cup(CohClass::dual(0, 3), CohClass::dual(0, 3)).to_text() == "1");
    CHECK(form4.cup(CohClass::dual(1, 3), CohClass::dual(2, 3)).to_text() == "1");
    CHECK(form4.cup(CohClass::dual(0, 3), CohClass::dual(1, 3)).is_zero());
    CHECK(form4.cup(CohClass::dual(1, 3), CohClass::dual(1, 3)).is_zero());
}

TEST_CASE("cup form extraction: semidirect over C2") {
    auto form = form_of(GroupExpr::semidirect(GroupExpr::c2()));
    REQUIRE(form.relation_count() == 2);
    CohClass w1 = CohClass::dual(0, 2), psi = CohClass::dual(1, 2);
    // relation 1 = x1^2: diagonal of x1; relation 2 = [x1,z] z^2
    CHECK(form.cup(w1, w1).to_text() == "10");
    CHECK(form.cup(w1, psi).to_text() == "01");
    CHECK(form.cup(psi, psi).to_text() == "01");
    CHECK(form.cup(w1 + psi, psi).is_zero());
}

TEST_CASE("cup symmetry and bilinearity") {
    CorpusParams params;
    params.family = Family::ET;
    params.count = 30;
    SplitMix64 rng(99);
    for (const auto& expr : generate_corpus(5, params)) {
        int d = expr->generator_count();
        if (d == 0 || d > 62) continue;
        auto form = form_of(expr);
        for (int trial = 0; trial < 10; ++trial) {
            CohClass a(rng.below(1ull << d), d);
            CohClass b(rng.below(1ull << d), d);
            CohClass c(rng.below(1ull << d), d);
            CHECK(form.cup(a, b) == form.cup(b, a));
            CHECK(form.cup(a + c, b) == form.cup(a, b) + form.cup(c, b));
        }
    }
}

TEST_CASE("massey admissibility") {
    auto c2form = form_of(GroupExpr::c2());
    CohClass chi = CohClass::dual(0, 1), zero = CohClass::zero(1);
    std::vector<CohClass> ok{chi, zero, chi};
    std::vector<CohClass> bad{chi, chi, zero};
    CHECK(is_massey_admissible(c2form, ok));
    CHECK_FALSE(is_massey_admissible(c2form, bad));

    auto dform = form_of(GroupExpr::product(GroupExpr::c2(), GroupExpr::c2()));
    // chi + psi = x1*, psi = x2*
    std::vector<CohClass> alt{CohClass::dual(0, 2), CohClass::dual(1, 2), CohClass::dual(0, 2)};
    CHECK(is_massey_admissible(dform, alt));

    std::vector<CohClass> tooshort{chi};
    CHECK_THROWS_AS(is_massey_admissible(c2form, tooshort), Error);
}

TEST_CASE("bockstein lift oracle") {
    auto c2 = presentation(*GroupExpr::c2());
    CHECK_FALSE(bockstein_lift_exists(c2, CohClass::dual(0, 1)));
    CHECK(bockstein_lift_exists(c2, CohClass::zero(1)));

    auto free2 = presentation(*GroupExpr::free_group(
        {OrientationValue::minus1(), OrientationValue::one_plus(2)}));
    for (std::uint64_t bits = 0; bits < 4; ++bits)
        CHECK(bockstein_lift_exists(free2, CohClass(bits, 2)));

    auto dinf = presentation(*GroupExpr::product(GroupExpr::c2(), GroupExpr::c2()));
    CHECK_FALSE(bockstein_lift_exists(dinf, CohClass(0b11, 2)));
    CHECK_FALSE(bockstein_lift_exists(dinf, CohClass(0b01, 2)));
    CHECK(bockstein_lift_exists(dinf, CohClass::zero(2)));

    // Z/4 itself: free brick with theta = 1+4, x^2 lifts
    auto z4ish = presentation(*GroupExpr::free_group({OrientationValue::one_plus(2)}));
    CHECK(bockstein_lift_exists(z4ish, CohClass::dual(0, 1)));
}

TEST_CASE("bockstein equivalence with cup squares over the corpus") {
    for (auto family : {Family::EE2, Family::ET}) {
        CorpusParams params;
        params.family = family;
        params.count = 30;
        for (const auto& expr : generate_corpus(11, params)) {
            int d = expr->generator_count();
            if (d > 6) continue;
            Presentation pres = presentation(*expr);
            CupForm form = CupForm::extract(pres);
            for (std::uint64_t bits = 0; bits < (1ull << d); ++bits) {
                CohClass alpha(bits, d);
                CHECK(form.cup(alpha, alpha).is_zero() == bockstein_lift_exists(pres, alpha));
            }
        }
    }
}

TEST_CASE("free product cup form is the block direct sum") {
    CorpusParams params;
    params.family = Family::ET;
    params.count = 20;
    auto corpus = generate_corpus(17, params);
    SplitMix64 rng(18);
    for (std::size_t i = 0; i + 1 < corpus.size(); ++i) {
        auto a = corpus[i];
        auto b = corpus[i + 1];
        int d = a->generator_count() + b->generator_count();
        if (d == 0 || d > 48) continue;
        auto prod_form = form_of(GroupExpr::product(a, b));
        auto sum = CupForm::direct_sum(form_of(a), form_of(b));
        REQUIRE(prod_form.relation_count() == sum.relation_count());
        for (int trial = 0; trial < 12; ++trial) {
            CohClass x(rng.below(1ull << d), d);
            CohClass y(rng.below(1ull << d), d);
            CHECK(prod_form.cup(x, y) == sum.cup(x, y));
        }
    }
}

TEST_CASE("semidirect cup identities") {
    CorpusParams params;
    params.family = Family::ET;
    params.count = 40;
    int seen = 0;
    for (const auto& expr : generate_corpus(29, params)) {
        if (!std::holds_alternative<GroupExpr::Semidirect>(expr->node())) continue;
        int d = expr->generator_count();
        if (d > 62) continue;
        ++seen;
        auto form = form_of(expr);
        auto roles = generator_roles(*expr);
        CohClass psi = CohClass::dual(roles.z, d);
        std::uint64_t chi0 = 0;
        for (int u : roles.u_list) chi0 |= 1ull << u;
        CHECK(form.cup(psi, psi) == form.cup(CohClass(chi0, d), psi));

        // injectivity of alpha -> alpha cup psi on the inner coordinates
        for (std::uint64_t bits = 1; bits < (1ull << std::min(d - 1, 12)); ++bits)
            CHECK_FALSE(form.cup(CohClass(bits, d), psi).is_zero());
    }
    CHECK(seen >= 3);
}

TEST_CASE("semidirect dichotomy as a decision procedure") {
    // over semi(c2): nonzero alpha, alpha' with vanishing cup either both
    // avoid z or differ by chi0 with both hitting z
    auto expr = GroupExpr::semidirect(GroupExpr::c2());
    auto form = form_of(expr);
    auto roles = generator_roles(*expr);
    std::uint64_t chi0 = 0;
    for (int u : roles.u_list) chi0 |= 1ull << u;
    for (std::uint64_t a = 1; a < 4; ++a)
        for (std::uint64_t b = 1; b < 4; ++b) {
            CohClass alpha(a, 2), beta(b, 2);
            if (!form.cup(alpha, beta).is_zero()) continue;
            bool interior = !alpha.get(roles.z) && !beta.get(roles.z);
            bool alternating = alpha.get(roles.z) && beta.get(roles.z) &&
                               (alpha + beta) == CohClass(chi0, 2);
            CHECK((interior || alternating));
        }
}
