#include "mwb/run.hpp"

#include <chrono>
#include <cstdlib>

#include <json.hpp>

#include "mwb/audit.hpp"
#include "mwb/corpus.hpp"
#include "mwb/dsl.hpp"
#include "mwb/prng.hpp"

namespace mwb {

namespace {

using nlohmann::json;

constexpr const char* kSchema = "mwb-report/1";

Family parse_family(const std::string& name) {
    if (name == "ee2") return Family::EE2;
    if (name == "et") return Family::ET;
    throw Error("unknown family '" + name + "' (expected ee2 or et)");
}

std::uint64_t effective_budget(const CommandRequest& request, std::uint64_t fallback) {
    if (request.budget > 0) return request.budget;
    if (const char* env = std::getenv("MWB_BUDGET")) {
        char* end = nullptr;
        auto v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return fallback;
}

json matrices_json(const Presentation& pres, const Witness& witness) {
    json arr = json::array();
    for (const auto& gen : pres.generators) {
        const auto& m = witness.assignment.at(gen.name);
        arr.push_back({{"generator", gen.name}, {"rows", m.text_rows()}});
    }
    return arr;
}

struct SuiteResult {
    std::string name;
    bool pass;
    std::string detail;
};

// --- selftest suites --------------------------------------------------------

SuiteResult suite_f2mat(std::uint64_t seed) {
    SplitMix64 rng(seed ^ 0xf2f2f2f2ull);
    int checks = 0;
    for (int dim = 3; dim <= 8; ++dim) {
        for (int trial = 0; trial < 60; ++trial) {
            UniMatrix a(dim), b(dim);
            for (int i = 1; i <= dim; ++i)
                for (int j = i + 1; j <= dim; ++j) {
                    a.set(i, j, rng.coin());
                    b.set(i, j, rng.coin());
                }
            if (!compose(a, invert(a)).is_identity())
                return {"f2mat-invariants", false, "inverse failed"};
            int la = filtration_level(a).level, lb = filtration_level(b).level;
            if (filtration_level(compose(a, b)).level < std::min(la, lb))
                return {"f2mat-invariants", false, "filtration not sub-multiplicative"};
            if (filtration_level(commutator(a, b)).level < std::min(la + lb, dim))
                return {"f2mat-invariants", false, "central series bound failed"};
            int e = 1;
            while ((1 << e) < dim) ++e;
            if (!power(a, std::int64_t(1) << e).is_identity())
                return {"f2mat-invariants", false, "exponent bound failed"};
            if (superdiagonal(compose(a, b)) != (superdiagonal(a) ^ superdiagonal(b)))
                return {"f2mat-invariants", false, "superdiagonal not additive"};
            checks += 5;
        }
    }
    return {"f2mat-invariants", true, std::to_string(checks) + " checks"};
}

SuiteResult suite_presentation(Family family, std::uint64_t seed) {
    CorpusParams params;
    params.family = family;
    params.count = 24;
    auto corpus = generate_corpus(seed ^ 0x9135ull, params);
    int checks = 0;
    for (const auto& expr : corpus) {
        Presentation pres = presentation(*expr);
        auto bad = normal_form_violations(pres);
        if (!bad.empty())
            return {"presentation-structure", false, group_text(*expr) + ": " + bad.front()};
        // exponents of action factors: even always, divisible by 4 exactly
        // for sources with theta = 1 mod 4
        for (const auto& word : pres.relations)
            for (const auto& factor : word)
                if (factor.kind == Factor::Kind::Action) {
                    auto e = (1 - factor.theta.truncate(3)) & 7ull;
                    if (e & 1) return {"presentation-structure", false, "odd action exponent"};
                    bool mult4 = (e & 3ull) == 0;
                    if (mult4 != (factor.theta.mod4() == 1))
                        return {"presentation-structure", false, "exponent mod 4 mismatch"};
                    ++checks;
                }
        // wrapping in a semidirect adds one generator and one relation per
        // inner generator
        auto wrapped = GroupExpr::semidirect(expr);
        Presentation wpres = presentation(*wrapped);
        if (static_cast<int>(wpres.generators.size()) !=
                static_cast<int>(pres.generators.size()) + 1 ||
            wpres.relations.size() != pres.relations.size() + pres.generators.size())
            return {"presentation-structure", false, "semidirect counting failed"};
        ++checks;
    }
    return {"presentation-structure", true, std::to_string(checks) + " checks"};
}

SuiteResult suite_cup(Family family, std::uint64_t seed) {
    CorpusParams params;
    params.family = family;
    params.count = 40;
    auto corpus = generate_corpus(seed ^ 0xc0bull, params);
    int checks = 0;

    for (std::size_t i = 0; i + 1 < corpus.size(); ++i) {
        const auto& a = corpus[i];
        const auto& b = corpus[i + 1];
        if (a->generator_count() + b->generator_count() > 48) continue;
        auto prod = GroupExpr::product(a, b);
        CupForm pf = CupForm::extract(presentation(*prod));
        CupForm sum = CupForm::direct_sum(CupForm::extract(presentation(*a)),
                                          CupForm::extract(presentation(*b)));
        SplitMix64 rng(seed ^ i);
        int d = pf.dim();
        for (int trial = 0; trial < 8; ++trial) {
            CohClass x(d ? rng.below(1ull << d) : 0, d);
            CohClass y(d ? rng.below(1ull << d) : 0, d);
            if (!(pf.cup(x, y) == sum.cup(x, y)))
                return {"cup-crosschecks", false, "free product block sum failed"};
            ++checks;
        }
    }

    for (const auto& expr : corpus) {
        if (!std::holds_alternative<GroupExpr::Semidirect>(expr->node())) continue;
        Presentation pres = presentation(*expr);
        CupForm form = CupForm::extract(pres);
        GeneratorRoles roles = generator_roles(*expr);
        int d = form.dim();
        CohClass psi = CohClass::dual(roles.z, d);
        std::uint64_t chi0 = 0;
        for (int u : roles.u_list) chi0 |= 1ull << u;
        if (!(form.cup(psi, psi) == form.cup(CohClass(chi0, d), psi)))
            return {"cup-crosschecks", false, "psi^2 != chi0 cup psi on " + group_text(*expr)};
        // alpha -> alpha cup psi injective on inner coordinates: the images
        // of the inner duals must be linearly independent
        std::uint64_t pivots[64] = {0};
        for (int k = 0; k + 1 < d; ++k) {
            std::uint64_t img = form.cup(CohClass::dual(k, d), psi).bits();
            for (int b = 63; b >= 0; --b) {
                if (!((img >> b) & 1ull)) continue;
                if (!pivots[b]) break;
                img ^= pivots[b];
            }
            if (img == 0)
                return {"cup-crosschecks", false,
                        "alpha -> alpha cup psi not injective on " + group_text(*expr)};
            pivots[63 - __builtin_clzll(img)] = img;
        }
        checks += 1;
    }

    // the infinite dihedral table, exactly
    auto dinf = GroupExpr::product(GroupExpr::c2(), GroupExpr::c2());
    CupForm form = CupForm::extract(presentation(*dinf));
    CohClass x1 = CohClass::dual(0, 2), x2 = CohClass::dual(1, 2);
    bool table_ok = form.cup(x1, x1).to_text() == "10" && form.cup(x2, x2).to_text() == "01" &&
                    form.cup(x1, x2).is_zero() &&
                    form.cup(x1 + x2, x2) == form.cup(x2, x2) &&
                    form.cup(x1 + x2, x1 + x2).to_text() == "11";
    if (!table_ok) return {"cup-crosschecks", false, "dihedral table mismatch"};
    ++checks;

    return {"cup-crosschecks", true, std::to_string(checks) + " checks"};
}

SuiteResult suite_bockstein(Family family, std::uint64_t seed) {
    CorpusParams params;
    params.family = family;
    params.count = 24;
    auto corpus = generate_corpus(seed ^ 0xb0cull, params);
    int checks = 0;
    for (const auto& expr : corpus) {
        int d = expr->generator_count();
        if (d > 6) continue;
        Presentation pres = presentation(*expr);
        CupForm form = CupForm::extract(pres);
        for (std::uint64_t bits = 0; bits < (1ull << d); ++bits) {
            CohClass alpha(bits, d);
            bool square_zero = form.cup(alpha, alpha).is_zero();
            if (square_zero != bockstein_lift_exists(pres, alpha))
                return {"bockstein-equivalence", false,
                        group_text(*expr) + " at " + alpha.to_text(h1_basis(pres))};
            ++checks;
        }
    }
    return {"bockstein-equivalence", true, std::to_string(checks) + " checks"};
}

SuiteResult suite_dihedral() {
    for (int n = 2; n <= 12; ++n) {
        for (int variant = 1; variant <= 2; ++variant) {
            auto [a, b] = dihedral_pair(n, variant);
            if (!compose(b, b).is_identity()) return {"dihedral-identities", false, "B^2 != I"};
            if (!(commutator(b, a) == power(a, -2)))
                return {"dihedral-identities", false, "[B,A] != A^-2"};
            if (!(commutator(compose(a, b), a) == power(a, -2)))
                return {"dihedral-identities", false, "[AB,A] != A^-2"};
            std::uint64_t want = 0;
            for (int i = variant; i <= n; i += 2) want |= 1ull << (i - 1);
            if (superdiagonal(b) != want)
                return {"dihedral-identities", false, "B superdiagonal shape"};
            if (superdiagonal(a) != (1ull << n) - 1)
                return {"dihedral-identities", false, "A superdiagonal shape"};
        }
    }
    return {"dihedral-identities", true, "n = 2..12, both variants"};
}

SuiteResult suite_c_matrix(std::uint64_t seed) {
    SplitMix64 rng(seed ^ 0xcafeull);
    int checks = 0;
    for (int n = 3; n <= 8; ++n) {
        for (int trial = 0; trial < 5; ++trial) {
            UniMatrix a(n + 1);
            for (int i = 1; i <= n; ++i) a.set(i, i + 1, true);
            for (int i = 1; i <= n + 1; ++i)
                for (int j = i + 2; j <= n + 1; ++j) a.set(i, j, rng.coin());
            for (std::int64_t mu : {4, 8, -4}) {
                UniMatrix c = build_c_matrix(a, mu);
                if (!(commutator(c, a) == power(a, mu)) || filtration_level(c).level < 3)
                    return {"c-matrix-identity", false, "identity failed"};
                ++checks;
            }
        }
    }
    return {"c-matrix-identity", true, std::to_string(checks) + " checks"};
}

SuiteResult suite_small_audits() {
    struct Item {
        const char* text;
        int n;
    };
    const Item items[] = {{"c2", 3}, {"c2", 4}, {"prod(c2,c2)", 3},
                          {"semi(c2)", 3}, {"semi(c2)", 4}};
    std::uint64_t admissible = 0;
    for (const auto& item : items) {
        auto expr = parse_group(item.text);
        auto report = strong_massey_audit(*expr, item.n, AuditMode::exhaustive_mode());
        if (!report.all_witnessed())
            return {"small-audits", false, std::string(item.text) + " not fully witnessed"};
        admissible += report.admissible;
    }
    return {"small-audits", true, std::to_string(admissible) + " admissible sequences witnessed"};
}

SuiteResult suite_ee2(std::uint64_t seed) {
    CorpusParams params;
    params.family = Family::EE2;
    params.count = 24;
    auto corpus = generate_corpus(seed, params);
    std::uint64_t witnessed = 0, fallback = 0;
    for (const auto& expr : corpus) {
        if (expr->generator_count() > 6 || expr->generator_count() == 0) continue;
        auto report = strong_massey_audit(*expr, 3, AuditMode::sampled(5, seed ^ 0xee2ull));
        if (!report.all_witnessed())
            return {"ee2-fallback-free", false, group_text(*expr) + " not fully witnessed"};
        witnessed += report.witnessed;
        fallback += report.fallback;
    }
    if (fallback != 0) return {"ee2-fallback-free", false, "fallback used on an EE2 expression"};
    return {"ee2-fallback-free", true, std::to_string(witnessed) + " witnesses, 0 fallbacks"};
}

json selftest_payload(const CommandRequest& request, bool& pass) {
    Family family = parse_family(request.family);
    std::uint64_t seed = request.seed;
    std::vector<SuiteResult> suites;
    suites.push_back(suite_f2mat(seed));
    suites.push_back(suite_presentation(family, seed));
    suites.push_back(suite_cup(family, seed));
    suites.push_back(suite_bockstein(family, seed));
    suites.push_back(suite_dihedral());
    suites.push_back(suite_c_matrix(seed));
    suites.push_back(suite_small_audits());
    suites.push_back(suite_ee2(seed));

    pass = true;
    json arr = json::array();
    for (const auto& s : suites) {
        pass = pass && s.pass;
        arr.push_back({{"name", s.name}, {"pass", s.pass}, {"detail", s.detail}});
    }
    return json{{"family", request.family}, {"seed", seed}, {"suites", arr}, {"pass", pass}};
}

// --- command dispatch -------------------------------------------------------

std::string render_table(const json& payload);

RunResult finish(const CommandRequest& request, json payload, int exit_code, double elapsed_ms) {
    payload["schema"] = kSchema;
    payload["command"] = request.command;
    if (!request.deterministic) payload["timing_ms"] = elapsed_ms;
    RunResult out;
    out.exit_code = exit_code;
    if (request.format == "table")
        out.output = render_table(payload);
    else
        out.output = payload.dump(2) + "\n";
    return out;
}

std::string render_table(const json& payload) {
    // human-readable mode; no compatibility promise
    std::string out;
    for (auto it = payload.begin(); it != payload.end(); ++it) {
        out += it.key();
        out += ": ";
        out += it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
        out += "\n";
    }
    return out;
}

RunResult dispatch(const CommandRequest& request) {
    auto started = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         started)
            .count();
    };

    const std::string& cmd = request.command;
    json payload;

    if (cmd == "describe") {
        auto expr = parse_group(request.group_text);
        Presentation pres = presentation(*expr);
        auto reg = h1_basis(pres);
        auto roles = generator_roles(*expr);
        auto check = validate(*expr);
        json gens = json::array();
        for (const auto& g : pres.generators)
            gens.push_back({{"name", g.name}, {"theta", g.theta.to_text()}});
        json rels = json::array();
        for (const auto& w : pres.relations) rels.push_back(word_text(pres, w));
        json uj = json::array(), vj = json::array();
        for (int u : roles.u_list) uj.push_back(reg.names[static_cast<std::size_t>(u)]);
        for (int v : roles.v_list) vj.push_back(reg.names[static_cast<std::size_t>(v)]);

        // the extracted cup tables, one entry per relation: off-diagonal
        // pairs with coefficient 1 and the diagonal (half-exponent) hits
        CupForm form = CupForm::extract(pres);
        int d = form.dim();
        json tables = json::array();
        for (int l = 0; l < form.relation_count(); ++l) {
            json a_pairs = json::array(), b_diag = json::array();
            for (int h = 0; h < d; ++h) {
                CohClass eh = CohClass::dual(h, d);
                if (form.tr(l, eh, eh)) b_diag.push_back(reg.names[static_cast<std::size_t>(h)]);
                for (int hp = h + 1; hp < d; ++hp)
                    if (form.tr(l, eh, CohClass::dual(hp, d)))
                        a_pairs.push_back(reg.names[static_cast<std::size_t>(h)] + "," +
                                          reg.names[static_cast<std::size_t>(hp)]);
            }
            tables.push_back({{"a_pairs", a_pairs}, {"b_diagonal", b_diag}});
        }

        payload = {{"group", group_text(*expr)},
                   {"generators", gens},
                   {"relations", rels},
                   {"h1_dim", static_cast<int>(pres.generators.size())},
                   {"h2_dim", static_cast<int>(pres.relations.size())},
                   {"roles",
                    {{"u", uj},
                     {"v", vj},
                     {"z", roles.z < 0 ? json(nullptr)
                                       : json(reg.names[static_cast<std::size_t>(roles.z)])}}},
                   {"cup_form", tables},
                   {"notes", check.notes}};
        return finish(request, payload, 0, elapsed());
    }

    if (cmd == "cup") {
        auto expr = parse_group(request.group_text);
        Presentation pres = presentation(*expr);
        auto reg = h1_basis(pres);
        auto seq = parse_sequence(request.classes_text, reg);
        if (seq.n() != 2) throw Error("cup expects exactly two classes");
        CupForm form = CupForm::extract(pres);
        H2Class result = form.cup(seq.classes[0], seq.classes[1]);
        payload = {{"group", group_text(*expr)},
                   {"lhs", seq.classes[0].to_text(reg)},
                   {"rhs", seq.classes[1].to_text(reg)},
                   {"h2_coords", result.to_text()},
                   {"vanishes", result.is_zero()}};
        return finish(request, payload, 0, elapsed());
    }

    if (cmd == "admissible") {
        auto expr = parse_group(request.group_text);
        Presentation pres = presentation(*expr);
        auto reg = h1_basis(pres);
        auto seq = parse_sequence(request.classes_text, reg);
        CupForm form = CupForm::extract(pres);
        int failing = -1;
        for (int i = 0; i + 1 < seq.n(); ++i)
            if (!form.cup(seq.classes[static_cast<std::size_t>(i)],
                          seq.classes[static_cast<std::size_t>(i + 1)])
                     .is_zero()) {
                failing = i;
                break;
            }
        payload = {{"group", group_text(*expr)},
                   {"classes", sequence_text(seq, reg)},
                   {"admissible", failing < 0},
                   {"failing_pair_index", failing < 0 ? json(nullptr) : json(failing)}};
        return finish(request, payload, failing < 0 ? 0 : 1, elapsed());
    }

    if (cmd == "witness") {
        auto expr = parse_group(request.group_text);
        Presentation pres = presentation(*expr);
        auto reg = h1_basis(pres);
        auto seq = parse_sequence(request.classes_text, reg);
        try {
            BuildOutcome outcome = build_witness(*expr, seq);
            payload = {{"group", group_text(*expr)},
                       {"classes", sequence_text(seq, reg)},
                       {"n", seq.n()},
                       {"verified", true},
                       {"path", outcome.used_fallback ? "fallback" : "constructive"},
                       {"matrices", matrices_json(pres, outcome.witness)}};
            return finish(request, payload, 0, elapsed());
        } catch (const InadmissibleError& e) {
            payload = {{"group", group_text(*expr)},
                       {"classes", sequence_text(seq, reg)},
                       {"n", seq.n()},
                       {"verified", false},
                       {"error", e.what()}};
            return finish(request, payload, 1, elapsed());
        }
    }

    if (cmd == "oracle") {
        auto expr = parse_group(request.group_text);
        Presentation pres = presentation(*expr);
        auto reg = h1_basis(pres);
        auto seq = parse_sequence(request.classes_text, reg);
        if (request.n > 0 && request.n != seq.n())
            throw Error("--n disagrees with the sequence length");
        auto outcome =
            brute_force_search(pres, seq, effective_budget(request, kDefaultBruteBudget));
        const char* verdict = outcome.verdict == SearchOutcome::Verdict::Found ? "found"
                              : outcome.verdict == SearchOutcome::Verdict::None
                                  ? "none"
                                  : "budget-exceeded";
        payload = {{"group", group_text(*expr)},
                   {"classes", sequence_text(seq, reg)},
                   {"verdict", verdict},
                   {"nodes", outcome.nodes}};
        if (outcome.witness) payload["matrices"] = matrices_json(pres, *outcome.witness);
        return finish(request, payload, outcome.verdict == SearchOutcome::Verdict::Found ? 0 : 1,
                      elapsed());
    }

    if (cmd == "audit") {
        auto expr = parse_group(request.group_text);
        if (request.n < 2) throw Error("audit requires --n >= 2");
        AuditMode mode = request.mode == "sampled"
                             ? AuditMode::sampled(request.count, request.seed)
                             : AuditMode::exhaustive_mode();
        if (request.mode != "sampled" && request.mode != "exhaustive")
            throw Error("audit mode must be exhaustive or sampled");
        auto report = strong_massey_audit(*expr, request.n, mode);
        auto reg = h1_basis(*expr);
        json failures = json::array();
        for (const auto& f : report.failures) {
            failures.push_back(
                {{"sequence", sequence_text(MasseySequence{f.sequence}, reg)}, {"what", f.what}});
        }
        payload = {{"group", group_text(*expr)},
                   {"n", request.n},
                   {"mode", request.mode},
                   {"seed", report.seed},
                   {"sequences_considered", report.sequences_considered},
                   {"admissible", report.admissible},
                   {"witnessed", report.witnessed},
                   {"constructive", report.constructive},
                   {"fallback", report.fallback},
                   {"all_witnessed", report.all_witnessed()},
                   {"failures", failures}};
        return finish(request, payload, report.all_witnessed() ? 0 : 1, elapsed());
    }

    if (cmd == "corpus") {
        CorpusParams params;
        params.family = parse_family(request.family);
        params.count = request.count;
        params.max_bricks = request.max_bricks;
        params.max_d = request.max_d;
        auto corpus = generate_corpus(request.seed, params);
        json exprs = json::array();
        for (const auto& e : corpus) exprs.push_back(group_text(*e));
        payload = {{"family", request.family},
                   {"seed", request.seed},
                   {"count", request.count},
                   {"max_bricks", request.max_bricks},
                   {"max_d", request.max_d},
                   {"expressions", exprs}};
        return finish(request, payload, 0, elapsed());
    }

    if (cmd == "selftest") {
        bool pass = false;
        payload = selftest_payload(request, pass);
        return finish(request, payload, pass ? 0 : 1, elapsed());
    }

    throw Error("unknown command '" + cmd + "'");
}

} // namespace

RunResult run(const CommandRequest& request) {
    try {
        return dispatch(request);
    } catch (const ParseError& e) {
        json payload = {{"schema", kSchema},
                        {"command", request.command},
                        {"error", {{"message", e.what()}, {"line", e.line}, {"col", e.col}}}};
        return {2, payload.dump(2) + "\n"};
    } catch (const std::exception& e) {
        json payload = {{"schema", kSchema},
                        {"command", request.command},
                        {"error", {{"message", e.what()}}}};
        return {2, payload.dump(2) + "\n"};
    }
}

} // namespace mwb
