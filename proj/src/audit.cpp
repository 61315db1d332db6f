#include "mwb/audit.hpp"

#include <chrono>

#include "mwb/gf2solve.hpp"
#include "mwb/prng.hpp"

namespace mwb {

namespace {

void try_sequence(const GroupExpr& expr, const std::vector<CohClass>& classes,
                  AuditReport& report) {
    ++report.admissible;
    try {
        auto outcome = build_witness(expr, MasseySequence::of(classes));
        ++report.witnessed;
        if (outcome.used_fallback)
            ++report.fallback;
        else
            ++report.constructive;
    } catch (const Error& e) {
        report.failures.push_back({classes, e.what()});
    }
}

// Nonzero solutions beta of cup(alpha, beta) = 0, as a kernel basis.
std::vector<std::vector<std::uint64_t>> cup_kernel(const CupForm& form, const CohClass& alpha) {
    LinearSystemF2 sys(form.dim());
    for (int l = 0; l < form.relation_count(); ++l) {
        std::vector<std::uint64_t> coeffs(1, 0);
        for (int k = 0; k < form.dim(); ++k)
            if (form.tr(l, alpha, CohClass::dual(k, form.dim())))
                coeffs[0] |= 1ull << k;
        sys.add_equation(std::move(coeffs), false);
    }
    auto sol = sys.solve();
    return sol ? sol->kernel : std::vector<std::vector<std::uint64_t>>{};
}

} // namespace

AuditReport strong_massey_audit(const GroupExpr& expr, int n, const AuditMode& mode) {
    if (n < 2) throw Error("audit requires n >= 2");
    auto start = std::chrono::steady_clock::now();

    Presentation pres = presentation(expr);
    CupForm form = CupForm::extract(pres);
    int d = static_cast<int>(pres.generators.size());
    std::uint64_t nonzero = (d >= 1) ? ((1ull << d) - 1) : 0;

    AuditReport report;
    report.n = n;
    report.exhaustive = mode.exhaustive;
    report.seed = mode.seed;

    if (mode.exhaustive) {
        double space = 1.0;
        for (int i = 0; i < n; ++i) space *= static_cast<double>(nonzero);
        if (space > 2e7) throw Error("exhaustive audit space too large; use sampled mode");

        std::vector<std::uint64_t> idx(static_cast<std::size_t>(n), 1);
        std::vector<CohClass> classes;
        if (nonzero > 0) {
            for (;;) {
                ++report.sequences_considered;
                classes.clear();
                for (int i = 0; i < n; ++i)
                    classes.push_back(CohClass(idx[static_cast<std::size_t>(i)], d));
                if (is_massey_admissible(form, classes)) try_sequence(expr, classes, report);
                int pos = 0;
                while (pos < n) {
                    if (++idx[static_cast<std::size_t>(pos)] <= nonzero) break;
                    idx[static_cast<std::size_t>(pos)] = 1;
                    ++pos;
                }
                if (pos == n) break;
            }
        }
    } else {
        SplitMix64 rng(mode.seed);
        std::uint64_t attempts = 0;
        std::uint64_t max_attempts = 1000ull * static_cast<std::uint64_t>(mode.sample_count) + 1000;
        while (report.sequences_considered < static_cast<std::uint64_t>(mode.sample_count) &&
               attempts < max_attempts && nonzero > 0) {
            ++attempts;
            std::vector<CohClass> classes;
            classes.push_back(CohClass(1 + rng.below(nonzero), d));
            bool dead = false;
            for (int i = 1; i < n; ++i) {
                auto kernel = cup_kernel(form, classes.back());
                if (kernel.empty()) {
                    dead = true;
                    break;
                }
                std::uint64_t combos = kernel.size() >= 63 ? ~0ull : (1ull << kernel.size());
                std::uint64_t t = 1 + rng.below(combos - 1);
                std::uint64_t bits = 0;
                for (std::size_t b = 0; b < kernel.size() && b < 63; ++b)
                    if ((t >> b) & 1ull) bits ^= kernel[b][0];
                classes.push_back(CohClass(bits, d));
            }
            if (dead) continue;
            ++report.sequences_considered;
            try_sequence(expr, classes, report);
        }
    }

    auto end = std::chrono::steady_clock::now();
    report.elapsed_ms = std::chrono::duration<double, std::milli>(end - start).count();
    return report;
}

} // namespace mwb
