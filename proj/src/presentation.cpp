#include "mwb/presentation.hpp"

#include "mwb/f2mat.hpp"

namespace mwb {

namespace {

template <class... Fs> struct Overload : Fs... {
    using Fs::operator()...;
};
template <class... Fs> Overload(Fs...) -> Overload<Fs...>;

} // namespace

Factor Factor::action(int y, int v, OrientationValue theta_y) {
    if (theta_y.is_exactly_one()) return commutator(y, v);
    return {Kind::Action, y, v, theta_y};
}

int Presentation::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (generators[i].name == name) return static_cast<int>(i);
    return -1;
}

namespace {

using DC = GroupExpr::DemushkinCase;

std::vector<OrientationValue> demushkin_orientation(DC dcase, int d, int f) {
    std::vector<OrientationValue> theta(static_cast<std::size_t>(d), OrientationValue::plus1());
    switch (dcase) {
    case DC::I:
        theta[0] = OrientationValue::one_plus(f);
        break;
    case DC::II:
        theta[0] = OrientationValue::minus1();
        theta[2] = OrientationValue::one_plus(f);
        break;
    case DC::III:
        theta[0] = OrientationValue::minus_one_plus(f);
        break;
    case DC::IV:
        theta[0] = OrientationValue::minus1();
        if (d >= 3) theta[1] = OrientationValue::one_plus(f);
        break;
    }
    return theta;
}

// The single defining relation of a Demushkin brick whose generators
// occupy global indices base..base+d-1, written in normal form.
Word demushkin_relation(DC dcase, int d, int base,
                        const std::vector<OrientationValue>& theta) {
    Word w;
    auto act = [&](int y, int v) {
        w.push_back(Factor::action(base + y, base + v, theta[static_cast<std::size_t>(y)]));
    };
    int tail_start = 0; // first local index of the plain commutator tail
    switch (dcase) {
    case DC::I:
        act(0, 1);
        tail_start = 2;
        break;
    case DC::II:
        act(0, 1);
        act(2, 3);
        tail_start = 4;
        break;
    case DC::III:
        act(0, 1);
        tail_start = 2;
        break;
    case DC::IV:
        w.push_back(Factor::square(base));
        if (d >= 3) act(1, 2);
        tail_start = 3;
        break;
    }
    for (int k = tail_start; k + 1 < d; k += 2) act(k, k + 1);
    return w;
}

struct Walker {
    int total_semis;
    int brick_gen = 0;
    int semi_seen = 0;
    Presentation pres;

    void walk(const GroupExpr& expr) {
        std::visit(
            Overload{
                [&](const GroupExpr::Free& f) {
                    for (const auto& theta : f.theta)
                        pres.generators.push_back({next_brick_name(), theta});
                },
                [&](const GroupExpr::Demushkin& dm) {
                    int base = static_cast<int>(pres.generators.size());
                    auto theta = demushkin_orientation(dm.dcase, dm.d, dm.f);
                    for (int k = 0; k < dm.d; ++k)
                        pres.generators.push_back({next_brick_name(), theta[static_cast<std::size_t>(k)]});
                    pres.relations.push_back(demushkin_relation(dm.dcase, dm.d, base, theta));
                },
                [&](const GroupExpr::FreeProduct& p) {
                    walk(*p.left);
                    walk(*p.right);
                },
                [&](const GroupExpr::Semidirect& s) {
                    int inner_base = static_cast<int>(pres.generators.size());
                    walk(*s.inner);
                    int z = static_cast<int>(pres.generators.size());
                    pres.generators.push_back({next_z_name(), OrientationValue::plus1()});
                    for (int y = inner_base; y < z; ++y)
                        pres.relations.push_back({Factor::action(y, z, pres.generators[static_cast<std::size_t>(y)].theta)});
                },
            },
            expr.node());
    }

    std::string next_brick_name() { return "x" + std::to_string(++brick_gen); }
    std::string next_z_name() {
        ++semi_seen;
        return total_semis == 1 ? "z" : "z" + std::to_string(semi_seen);
    }
};

} // namespace

Presentation presentation(const GroupExpr& expr) {
    auto check = validate(expr);
    if (!check.ok())
        throw Error("invalid expression: " + check.violations.front().path + ": " +
                    check.violations.front().message);
    Walker walker{expr.semidirect_count(), 0, 0, {}};
    walker.walk(expr);
    return std::move(walker.pres);
}

std::string word_text(const Presentation& pres, const Word& word) {
    std::string out;
    auto name = [&](int g) { return pres.generators[static_cast<std::size_t>(g)].name; };
    for (const auto& factor : word) {
        if (!out.empty()) out += " ";
        switch (factor.kind) {
        case Factor::Kind::Square:
            out += name(factor.a) + "^2";
            break;
        case Factor::Kind::Commutator:
            out += "[" + name(factor.a) + "," + name(factor.b) + "]";
            break;
        case Factor::Kind::Action:
            out += "[" + name(factor.a) + "," + name(factor.b) + "] " + name(factor.b) + "^" +
                   std::to_string(1 - factor.theta.exact_value());
            break;
        }
    }
    if (out.empty()) out = "1";
    return out;
}

GeneratorRoles generator_roles(const GroupExpr& expr) {
    Presentation pres = presentation(expr);
    GeneratorRoles roles;
    int z = std::holds_alternative<GroupExpr::Semidirect>(expr.node())
                ? static_cast<int>(pres.generators.size()) - 1
                : -1;
    roles.z = z;
    for (int g = 0; g < static_cast<int>(pres.generators.size()); ++g) {
        if (g == z) continue;
        if (pres.generators[static_cast<std::size_t>(g)].theta.mod4() == -1)
            roles.u_list.push_back(g);
        else
            roles.v_list.push_back(g);
    }
    return roles;
}

std::vector<std::string> normal_form_violations(const Presentation& pres) {
    std::vector<std::string> out;
    auto theta_of = [&](int g) { return pres.generators[static_cast<std::size_t>(g)].theta; };
    for (std::size_t l = 0; l < pres.relations.size(); ++l) {
        for (const auto& factor : pres.relations[l]) {
            std::string where = "relation " + std::to_string(l + 1) + ": ";
            switch (factor.kind) {
            case Factor::Kind::Square:
                if (!theta_of(factor.a).is_exactly_minus_one())
                    out.push_back(where + "square of a generator with theta != -1");
                break;
            case Factor::Kind::Commutator:
                if (!theta_of(factor.a).is_exactly_one())
                    out.push_back(where + "plain commutator whose source has theta != 1");
                if (!theta_of(factor.b).is_exactly_one())
                    out.push_back(where + "plain commutator whose target has theta != 1");
                break;
            case Factor::Kind::Action:
                if (!theta_of(factor.b).is_exactly_one())
                    out.push_back(where + "action factor whose target has theta != 1");
                if (!(factor.theta == theta_of(factor.a)))
                    out.push_back(where + "action exponent disagrees with theta of the source");
                break;
            }
        }
    }
    return out;
}

} // namespace mwb
