#include "mwb/witness.hpp"

#include "mwb/gf2solve.hpp"

namespace mwb {

namespace {

template <class... Fs> struct Overload : Fs... {
    using Fs::operator()...;
};
template <class... Fs> Overload(Fs...) -> Overload<Fs...>;

using Assignment = std::vector<UniMatrix>;

std::uint64_t mod_mask(int bits) { return (1ull << bits) - 1; }

// -(1 + theta) as a residue, = 0 mod 4 for theta = -1 mod 4
std::uint64_t mu_for_u(const OrientationValue& theta, int bits) {
    std::uint64_t m = (theta.truncate(bits) + 1) & mod_mask(bits);
    return (0 - m) & mod_mask(bits);
}

// theta - 1 as a residue, = 0 mod 4 for theta = +1 mod 4
std::uint64_t mu_for_v(const OrientationValue& theta, int bits) {
    return (theta.truncate(bits) - 1) & mod_mask(bits);
}

Assignment superdiagonal_assignment(int gens, const std::vector<CohClass>& classes) {
    int dim = static_cast<int>(classes.size()) + 1;
    Assignment out(static_cast<std::size_t>(gens), UniMatrix(dim));
    for (int g = 0; g < gens; ++g)
        for (int i = 1; i < dim; ++i)
            out[static_cast<std::size_t>(g)].set(i, i + 1,
                                                 classes[static_cast<std::size_t>(i - 1)].get(g));
    return out;
}

Witness package(const Presentation& pres, const Assignment& asg) {
    Witness w;
    for (std::size_t g = 0; g < pres.generators.size(); ++g)
        w.assignment.emplace(pres.generators[g].name, asg[g]);
    return w;
}

Assignment unpack(const Presentation& pres, const Witness& w, int dim) {
    Assignment out;
    out.reserve(pres.generators.size());
    for (const auto& gen : pres.generators) {
        auto it = w.assignment.find(gen.name);
        if (it == w.assignment.end())
            throw Error("missing generator assignment: " + gen.name);
        if (it->second.dim() != dim) throw Error("assignment dimension mismatch: " + gen.name);
        out.push_back(it->second);
    }
    return out;
}

} // namespace

MasseySequence MasseySequence::of(std::vector<CohClass> classes) {
    if (classes.size() < 2) throw Error("sequence length must be at least 2");
    if (classes.size() + 1 > UniMatrix::kMaxDim)
        throw Error("sequence length exceeds supported matrix dimension");
    for (const auto& c : classes)
        if (c.dim() != classes.front().dim()) throw Error("class dimension mismatch");
    return MasseySequence{std::move(classes)};
}

int truncation_bits(int n) {
    int k = 0;
    while ((1 << k) < n + 2) ++k;
    return k + 2;
}

UniMatrix evaluate_word(const Word& word, const std::vector<UniMatrix>& gens, int bits) {
    if (gens.empty()) throw Error("empty assignment");
    UniMatrix value(gens.front().dim());
    for (const auto& factor : word) {
        switch (factor.kind) {
        case Factor::Kind::Square: {
            const UniMatrix& u = gens[static_cast<std::size_t>(factor.a)];
            value = compose(value, compose(u, u));
            break;
        }
        case Factor::Kind::Commutator:
            value = compose(value, commutator(gens[static_cast<std::size_t>(factor.a)],
                                              gens[static_cast<std::size_t>(factor.b)]));
            break;
        case Factor::Kind::Action: {
            const UniMatrix& y = gens[static_cast<std::size_t>(factor.a)];
            const UniMatrix& v = gens[static_cast<std::size_t>(factor.b)];
            std::uint64_t e = (1 - factor.theta.truncate(bits)) & mod_mask(bits);
            value = compose(value, compose(commutator(y, v), power(v, static_cast<std::int64_t>(e))));
            break;
        }
        }
    }
    return value;
}

WitnessReport verify_witness(const Presentation& pres, const MasseySequence& seq,
                             const Witness& witness) {
    int n = seq.n();
    int dim = n + 1;
    int bits = truncation_bits(n);
    if (seq.class_dim() != static_cast<int>(pres.generators.size()))
        throw Error("sequence registry does not match the presentation");
    Assignment gens = unpack(pres, witness, dim);

    WitnessReport report;
    for (std::size_t l = 0; l < pres.relations.size(); ++l) {
        UniMatrix value = evaluate_word(pres.relations[l], gens, bits);
        if (!value.is_identity())
            report.relation_failures.push_back({static_cast<int>(l), value});
    }
    for (std::size_t g = 0; g < pres.generators.size(); ++g) {
        std::uint64_t expected = 0;
        for (int i = 0; i < n; ++i)
            if (seq.classes[static_cast<std::size_t>(i)].get(static_cast<int>(g)))
                expected |= 1ull << i;
        std::uint64_t actual = superdiagonal(gens[g]);
        if (expected != actual)
            report.superdiagonal_failures.push_back({pres.generators[g].name, expected, actual});
    }
    report.verified = report.relation_failures.empty() && report.superdiagonal_failures.empty();
    return report;
}

UniMatrix build_c_matrix(const UniMatrix& a, std::int64_t mu) {
    int dim = a.dim();
    if (superdiagonal(a) != mod_mask(dim - 1))
        throw Error("build_c_matrix requires an all-ones superdiagonal");
    if (mu % 4 != 0) throw Error("build_c_matrix requires mu = 0 mod 4");

    UniMatrix target = power(a, mu);
    UniMatrix p = compose(target, a); // A^(mu+1); [C,A] = A^mu iff C A = A^(mu+1) C

    // unknowns: entries of C at offsets >= 3
    std::vector<std::pair<int, int>> pos;
    std::vector<std::vector<int>> var(static_cast<std::size_t>(dim + 1),
                                      std::vector<int>(static_cast<std::size_t>(dim + 1), -1));
    for (int i = 1; i <= dim; ++i)
        for (int j = i + 3; j <= dim; ++j) {
            var[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                static_cast<int>(pos.size());
            pos.emplace_back(i, j);
        }

    int words = (static_cast<int>(pos.size()) + 63) / 64 + 1;
    LinearSystemF2 sys(static_cast<int>(pos.size()));
    for (int i = 1; i <= dim; ++i) {
        for (int j = i + 1; j <= dim; ++j) {
            std::vector<std::uint64_t> coeffs(static_cast<std::size_t>(words), 0);
            bool rhs = false;
            for (int k = i; k <= j; ++k) {
                if (a.get(k, j)) {
                    // C[i,k] * A[k,j]
                    if (k == i)
                        rhs ^= 1;
                    else if (k - i >= 3)
                        LinearSystemF2::flip_bit(
                            coeffs, var[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
                }
                if (p.get(i, k)) {
                    // P[i,k] * C[k,j]
                    if (k == j)
                        rhs ^= 1;
                    else if (j - k >= 3)
                        LinearSystemF2::flip_bit(
                            coeffs, var[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
                }
            }
            sys.add_equation(std::move(coeffs), rhs);
        }
    }

    auto sol = sys.solve();
    if (!sol) throw Error("internal: no C(mu) with [C,A] = A^mu exists for this A");

    UniMatrix c(dim);
    for (std::size_t v = 0; v < pos.size(); ++v)
        if (LinearSystemF2::get_bit(sol->particular, static_cast<int>(v)))
            c.set(pos[v].first, pos[v].second, true);

    if (!(commutator(c, a) == target) || filtration_level(c).level < 3)
        throw Error("internal: C(mu) post-verification failed");
    return c;
}

DihedralPair dihedral_pair(int n, int variant) {
    if (n < 2) throw Error("dihedral_pair requires n >= 2");
    if (variant != 1 && variant != 2) throw Error("dihedral variant must be 1 or 2");
    int dim = n + 1;
    UniMatrix odd(dim), even(dim);
    for (int i = 1; i <= n; ++i) {
        if (i % 2 == 1)
            odd.set(i, i + 1, true);
        else
            even.set(i, i + 1, true);
    }
    // B = image of the first involution, A = image of their product; the
    // relation [x, x y] = (x y)^-2 in C2 * C2 then gives [B,A] = A^-2.
    const UniMatrix& b = (variant == 1) ? odd : even;
    const UniMatrix& other = (variant == 1) ? even : odd;
    return DihedralPair{compose(b, other), b};
}

SemidirectCase classify_semidirect_sequence(const GeneratorRoles& roles, const CupForm& form,
                                            const MasseySequence& seq) {
    if (roles.z < 0) throw Error("classification requires a semidirect expression");
    for (const auto& c : seq.classes) {
        if (c.dim() != form.dim()) throw Error("class dimension mismatch");
        if (c.is_zero()) throw Error("classification requires nonzero classes");
    }

    bool all_zero = true, all_one = true;
    for (const auto& c : seq.classes) {
        if (c.get(roles.z))
            all_zero = false;
        else
            all_one = false;
    }
    if (all_zero) return {SemidirectCase::Kind::Interior, seq.classes.front()};
    if (!all_one) return {SemidirectCase::Kind::Inadmissible, CohClass::zero(form.dim())};

    std::uint64_t chi0 = 0;
    for (int u : roles.u_list) chi0 |= 1ull << u;
    CohClass chi0_class(chi0, form.dim());
    for (std::size_t i = 0; i + 1 < seq.classes.size(); ++i)
        if (!(seq.classes[i + 1] == seq.classes[i] + chi0_class))
            return {SemidirectCase::Kind::Inadmissible, CohClass::zero(form.dim())};
    return {SemidirectCase::Kind::Alternating, seq.classes.front()};
}

// ---------------------------------------------------------------------------
// Layered lifting solver

namespace {

struct LiftCore {
    const Presentation& pres;
    const std::vector<CohClass>& classes;
    std::uint64_t budget;

    int n, dim, bits, gens;
    Assignment asg;
    std::uint64_t nodes = 0;
    bool budget_hit = false;

    LiftCore(const Presentation& p, const std::vector<CohClass>& cls, std::uint64_t b)
        : pres(p), classes(cls), budget(b), n(static_cast<int>(cls.size())), dim(n + 1),
          bits(truncation_bits(n)), gens(static_cast<int>(p.generators.size())),
          asg(superdiagonal_assignment(gens, cls)) {}

    // offset-k entries of every relation value, flattened
    std::vector<std::uint64_t> discrepancy(int k, int words) const {
        std::vector<std::uint64_t> out(static_cast<std::size_t>(words), 0);
        int bit = 0;
        for (const auto& word : pres.relations) {
            UniMatrix value = evaluate_word(word, asg, bits);
            for (int i = 1; i + k <= dim; ++i) {
                if (value.get(i, i + k)) LinearSystemF2::set_bit(out, bit, true);
                ++bit;
            }
        }
        return out;
    }

    int entries_per_gen(int layer) const { return dim - layer; }

    void apply_layer(int layer, const std::vector<std::uint64_t>& choice) {
        int per = entries_per_gen(layer);
        for (int g = 0; g < gens; ++g)
            for (int t = 0; t < per; ++t)
                asg[static_cast<std::size_t>(g)].set(t + 1, t + 1 + layer,
                                                     LinearSystemF2::get_bit(choice, g * per + t));
    }

    void clear_layer(int layer) {
        int per = entries_per_gen(layer);
        for (int g = 0; g < gens; ++g)
            for (int t = 0; t < per; ++t)
                asg[static_cast<std::size_t>(g)].set(t + 1, t + 1 + layer, false);
    }

    // Clear the offset-(layer+1) discrepancies by choosing offset-layer
    // entries; descend recursively, backtracking over the solution kernel.
    bool dfs(int layer) {
        if (layer > n - 1) return true;
        int vars = gens * entries_per_gen(layer);
        int target_off = layer + 1;
        int eq_count = static_cast<int>(pres.relations.size()) * (dim - target_off);
        int eq_words = (eq_count + 63) / 64 + 1;
        int var_words = (vars + 63) / 64 + 1;

        std::vector<std::uint64_t> base = discrepancy(target_off, eq_words);
        // probe the affine map one variable at a time
        std::vector<std::vector<std::uint64_t>> cols;
        cols.reserve(static_cast<std::size_t>(vars));
        for (int v = 0; v < vars; ++v) {
            std::vector<std::uint64_t> e(static_cast<std::size_t>(var_words), 0);
            LinearSystemF2::set_bit(e, v, true);
            apply_layer(layer, e);
            auto d = discrepancy(target_off, eq_words);
            clear_layer(layer);
            for (int w = 0; w < eq_words; ++w)
                d[static_cast<std::size_t>(w)] ^= base[static_cast<std::size_t>(w)];
            cols.push_back(std::move(d));
        }

        LinearSystemF2 sys(vars);
        for (int e = 0; e < eq_count; ++e) {
            std::vector<std::uint64_t> coeffs(static_cast<std::size_t>(var_words), 0);
            for (int v = 0; v < vars; ++v)
                if (LinearSystemF2::get_bit(cols[static_cast<std::size_t>(v)], e))
                    LinearSystemF2::set_bit(coeffs, v, true);
            sys.add_equation(std::move(coeffs), LinearSystemF2::get_bit(base, e));
        }

        auto sol = sys.solve();
        if (!sol) return false;

        int kdim = static_cast<int>(sol->kernel.size());
        std::uint64_t combos = kdim >= 63 ? ~0ull : (1ull << kdim);
        for (std::uint64_t t = 0; t < combos; ++t) {
            if (++nodes > budget) {
                budget_hit = true;
                return false;
            }
            std::vector<std::uint64_t> choice = sol->particular;
            for (int b = 0; b < kdim && b < 63; ++b)
                if ((t >> b) & 1ull)
                    for (int w = 0; w < var_words; ++w)
                        choice[static_cast<std::size_t>(w)] ^=
                            sol->kernel[static_cast<std::size_t>(b)][static_cast<std::size_t>(w)];
            apply_layer(layer, choice);
            if (dfs(layer + 1)) return true;
            clear_layer(layer);
            if (budget_hit) return false;
        }
        return false;
    }

    std::optional<Assignment> run() {
        // the offset-2 discrepancy is independent of every free entry: it is
        // exactly the consecutive-cup obstruction
        if (n >= 2) {
            int eq_words = (static_cast<int>(pres.relations.size()) * (dim - 2)) / 64 + 2;
            auto d2 = discrepancy(2, eq_words);
            for (auto w : d2)
                if (w) return std::nullopt;
        }
        if (!dfs(2)) return std::nullopt;
        return asg;
    }
};

struct LiftResult {
    std::optional<Assignment> assignment;
    bool budget_hit = false;
    std::uint64_t nodes = 0;
};

LiftResult lift_solve(const Presentation& pres, const std::vector<CohClass>& classes,
                      std::uint64_t budget) {
    LiftCore core(pres, classes, budget);
    LiftResult result;
    result.assignment = core.run();
    result.budget_hit = core.budget_hit;
    result.nodes = core.nodes;
    return result;
}

} // namespace

SearchOutcome solve_by_lifting(const Presentation& pres, const MasseySequence& seq,
                               std::uint64_t node_budget) {
    if (seq.class_dim() != static_cast<int>(pres.generators.size()))
        throw Error("sequence registry does not match the presentation");
    auto result = lift_solve(pres, seq.classes, node_budget);
    SearchOutcome out;
    out.nodes = result.nodes;
    if (result.assignment) {
        out.verdict = SearchOutcome::Verdict::Found;
        out.witness = package(pres, *result.assignment);
        auto report = verify_witness(pres, seq, *out.witness);
        if (!report.verified) throw Error("internal: lifting produced an unverified witness");
    } else {
        out.verdict = result.budget_hit ? SearchOutcome::Verdict::BudgetExceeded
                                        : SearchOutcome::Verdict::None;
    }
    return out;
}

SearchOutcome brute_force_search(const Presentation& pres, const MasseySequence& seq,
                                 std::uint64_t node_budget) {
    if (seq.class_dim() != static_cast<int>(pres.generators.size()))
        throw Error("sequence registry does not match the presentation");
    int n = seq.n();
    int dim = n + 1;
    int bits = truncation_bits(n);
    int gens = static_cast<int>(pres.generators.size());

    // free positions: strictly above the superdiagonal, row-major
    std::vector<std::pair<int, int>> pos;
    for (int i = 1; i <= dim; ++i)
        for (int j = i + 2; j <= dim; ++j) pos.emplace_back(i, j);
    int per = static_cast<int>(pos.size());
    int total_bits = gens * per;
    std::uint64_t total = total_bits >= 63 ? ~0ull : (1ull << total_bits);

    Assignment base = superdiagonal_assignment(gens, seq.classes);
    std::vector<std::uint64_t> counter(static_cast<std::size_t>(total_bits / 64 + 1), 0);

    SearchOutcome out;
    for (std::uint64_t tried = 0; tried < total; ++tried) {
        if (++out.nodes > node_budget) {
            out.verdict = SearchOutcome::Verdict::BudgetExceeded;
            return out;
        }
        Assignment asg = base;
        for (int bit = 0; bit < total_bits; ++bit) {
            if (!LinearSystemF2::get_bit(counter, bit)) continue;
            auto [i, j] = pos[static_cast<std::size_t>(bit % per)];
            asg[static_cast<std::size_t>(bit / per)].set(i, j, true);
        }
        bool ok = true;
        for (const auto& word : pres.relations) {
            if (!evaluate_word(word, asg, bits).is_identity()) {
                ok = false;
                break;
            }
        }
        if (ok) {
            out.verdict = SearchOutcome::Verdict::Found;
            out.witness = package(pres, asg);
            return out;
        }
        // increment the candidate counter
        for (std::size_t w = 0; w < counter.size(); ++w)
            if (++counter[w] != 0) break;
    }
    out.verdict = SearchOutcome::Verdict::None;
    return out;
}

// ---------------------------------------------------------------------------
// Recursive construction

namespace {

struct BuildCtx {
    bool used_fallback = false;
};

Assignment build_sub(BuildCtx& ctx, const GroupExpr& expr, const std::vector<CohClass>& classes);

Assignment alternating_assignment(const Presentation& lp, const GeneratorRoles& roles,
                                  const std::vector<CohClass>& classes) {
    int length = static_cast<int>(classes.size());
    int bits = truncation_bits(length);
    int z = roles.z;
    int u1 = roles.u_list.front();

    int variant = classes.front().get(u1) ? 1 : 2;
    auto [a, b] = dihedral_pair(length, variant);
    UniMatrix ab = compose(a, b);

    std::map<std::uint64_t, UniMatrix> c_cache;
    auto c_of = [&](std::uint64_t mu) -> const UniMatrix& {
        auto it = c_cache.find(mu);
        if (it == c_cache.end())
            it = c_cache
                     .emplace(mu, mu == 0 ? UniMatrix::identity(length + 1)
                                          : build_c_matrix(a, static_cast<std::int64_t>(mu)))
                     .first;
        return it->second;
    };

    Assignment asg(static_cast<std::size_t>(z + 1), UniMatrix(length + 1));
    for (int g = 0; g < z; ++g) {
        const auto& theta = lp.generators[static_cast<std::size_t>(g)].theta;
        if (theta.mod4() == -1) {
            const UniMatrix& base = (classes.front().get(g) == classes.front().get(u1)) ? b : ab;
            asg[static_cast<std::size_t>(g)] = compose(base, c_of(mu_for_u(theta, bits)));
        } else {
            const UniMatrix& c = c_of(mu_for_v(theta, bits));
            asg[static_cast<std::size_t>(g)] = classes.front().get(g) ? compose(a, c) : c;
        }
    }
    asg[static_cast<std::size_t>(z)] = a;
    return asg;
}

Assignment build_nonzero(BuildCtx& ctx, const GroupExpr& expr,
                         const std::vector<CohClass>& classes) {
    int gens = expr.generator_count();
    return std::visit(
        Overload{
            [&](const GroupExpr::Free&) {
                return superdiagonal_assignment(gens, classes);
            },
            [&](const GroupExpr::Demushkin&) {
                if (expr.is_c2()) return superdiagonal_assignment(gens, classes);
                Presentation lp = presentation(expr);
                auto result = lift_solve(lp, classes, kDefaultLiftBudget);
                if (!result.assignment)
                    throw Error(result.budget_hit
                                    ? "internal: Demushkin brick solver exceeded its budget"
                                    : "internal: Demushkin brick solver found no witness");
                return std::move(*result.assignment);
            },
            [&](const GroupExpr::FreeProduct& p) {
                int cl = p.left->generator_count();
                int cr = p.right->generator_count();
                std::vector<CohClass> left, right;
                for (const auto& c : classes) {
                    left.push_back(c.restrict(0, cl));
                    right.push_back(c.restrict(cl, cr));
                }
                Assignment la = build_sub(ctx, *p.left, left);
                Assignment ra = build_sub(ctx, *p.right, right);
                la.insert(la.end(), ra.begin(), ra.end());
                return la;
            },
            [&](const GroupExpr::Semidirect& s) {
                int ci = s.inner->generator_count();
                Presentation lp = presentation(expr);
                if (lp.relations.empty()) // no inner generators: free-like
                    return superdiagonal_assignment(gens, classes);

                bool z_somewhere = false;
                for (const auto& c : classes) z_somewhere = z_somewhere || c.get(ci);
                if (!z_somewhere) {
                    std::vector<CohClass> inner_classes;
                    for (const auto& c : classes) inner_classes.push_back(c.restrict(0, ci));
                    Assignment asg = build_sub(ctx, *s.inner, inner_classes);
                    asg.push_back(UniMatrix(static_cast<int>(classes.size()) + 1)); // z -> I
                    return asg;
                }

                GeneratorRoles roles = generator_roles(expr);
                if (roles.u_list.empty()) {
                    // inner image lies inside 1+4Z_2: the constructive case
                    // analysis does not apply, search instead
                    ctx.used_fallback = true;
                    auto result = lift_solve(lp, classes, kDefaultLiftBudget);
                    if (!result.assignment)
                        throw Error(result.budget_hit
                                        ? "internal: semidirect fallback exceeded its budget"
                                        : "internal: semidirect fallback found no witness");
                    return std::move(*result.assignment);
                }

                CupForm form = CupForm::extract(lp);
                auto seq = MasseySequence{classes};
                SemidirectCase kind = classify_semidirect_sequence(roles, form, seq);
                if (kind.kind != SemidirectCase::Kind::Alternating)
                    throw Error("internal: admissible restriction classified as " +
                                std::string(kind.kind == SemidirectCase::Kind::Interior
                                                ? "interior despite a z-coordinate"
                                                : "inadmissible"));
                return alternating_assignment(lp, roles, classes);
            },
        },
        expr.node());
}

// Zero classes split the sequence into independent runs assembled inside
// the block-diagonal subgroup {M : M_ik = 0 for i <= j < k, j a zero slot}.
Assignment build_sub(BuildCtx& ctx, const GroupExpr& expr,
                     const std::vector<CohClass>& classes) {
    int gens = expr.generator_count();
    int length = static_cast<int>(classes.size());

    bool any_zero = false;
    for (const auto& c : classes) any_zero = any_zero || c.is_zero();
    if (!any_zero && length >= 2) return build_nonzero(ctx, expr, classes);
    if (!any_zero && length == 1) return superdiagonal_assignment(gens, classes);

    Assignment out(static_cast<std::size_t>(gens), UniMatrix(length + 1));
    int i = 0;
    while (i < length) {
        if (classes[static_cast<std::size_t>(i)].is_zero()) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < length && !classes[static_cast<std::size_t>(j + 1)].is_zero()) ++j;
        std::vector<CohClass> run(classes.begin() + i, classes.begin() + j + 1);

        Assignment sub;
        if (run.size() == 1) {
            sub = superdiagonal_assignment(gens, run);
        } else if (run.size() == 2) {
            Presentation lp = presentation(expr);
            auto result = lift_solve(lp, run, kDefaultLiftBudget);
            if (!result.assignment)
                throw Error("internal: U3 solve failed on a run with vanishing cup");
            sub = std::move(*result.assignment);
        } else {
            sub = build_nonzero(ctx, expr, run);
        }

        int sub_dim = static_cast<int>(run.size()) + 1;
        for (int g = 0; g < gens; ++g)
            for (int r = 1; r <= sub_dim; ++r)
                for (int c = r + 1; c <= sub_dim; ++c)
                    if (sub[static_cast<std::size_t>(g)].get(r, c))
                        out[static_cast<std::size_t>(g)].set(i + r, i + c, true);
        i = j + 1;
    }
    return out;
}

} // namespace

BuildOutcome build_witness(const GroupExpr& expr, const MasseySequence& seq) {
    Presentation pres = presentation(expr);
    if (seq.class_dim() != static_cast<int>(pres.generators.size()))
        throw Error("sequence registry does not match the expression");
    CupForm form = CupForm::extract(pres);
    if (!is_massey_admissible(form, seq.classes))
        throw InadmissibleError("sequence fails the consecutive cup condition");

    BuildCtx ctx;
    Assignment asg = build_sub(ctx, expr, seq.classes);
    BuildOutcome out{package(pres, asg), ctx.used_fallback};
    auto report = verify_witness(pres, seq, out.witness);
    if (!report.verified) throw Error("internal: constructed witness failed verification");
    return out;
}

} // namespace mwb
