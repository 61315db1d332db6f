#include "mwb/groupexpr.hpp"

#include "mwb/f2mat.hpp"

namespace mwb {

namespace {

template <class... Fs> struct Overload : Fs... {
    using Fs::operator()...;
};
template <class... Fs> Overload(Fs...) -> Overload<Fs...>;

} // namespace

GroupExprPtr GroupExpr::trivial() {
    return std::make_shared<GroupExpr>(Free{{}});
}

GroupExprPtr GroupExpr::c2() {
    return std::make_shared<GroupExpr>(
        Demushkin{DemushkinCase::IV, 1, OrientationValue::kInfinity});
}

GroupExprPtr GroupExpr::free_group(std::vector<OrientationValue> theta) {
    return std::make_shared<GroupExpr>(Free{std::move(theta)});
}

GroupExprPtr GroupExpr::demushkin(DemushkinCase dcase, int d, int f) {
    return std::make_shared<GroupExpr>(Demushkin{dcase, d, f});
}

GroupExprPtr GroupExpr::product(GroupExprPtr left, GroupExprPtr right) {
    if (!left || !right) throw Error("null free-product factor");
    return std::make_shared<GroupExpr>(FreeProduct{std::move(left), std::move(right)});
}

GroupExprPtr GroupExpr::semidirect(GroupExprPtr inner) {
    if (!inner) throw Error("null semidirect inner expression");
    return std::make_shared<GroupExpr>(Semidirect{std::move(inner)});
}

bool GroupExpr::is_c2() const {
    const auto* d = std::get_if<Demushkin>(&node_);
    return d && d->dcase == DemushkinCase::IV && d->d == 1;
}

bool GroupExpr::is_trivial_brick() const {
    const auto* f = std::get_if<Free>(&node_);
    return f && f->theta.empty();
}

int GroupExpr::generator_count() const {
    return std::visit(
        Overload{
            [](const Free& f) { return static_cast<int>(f.theta.size()); },
            [](const Demushkin& d) { return d.d; },
            [](const FreeProduct& p) {
                return p.left->generator_count() + p.right->generator_count();
            },
            [](const Semidirect& s) { return s.inner->generator_count() + 1; },
        },
        node_);
}

int GroupExpr::brick_count() const {
    return std::visit(
        Overload{
            [](const Free& f) { return f.theta.empty() ? 0 : 1; },
            [](const Demushkin&) { return 1; },
            [](const FreeProduct& p) { return p.left->brick_count() + p.right->brick_count(); },
            [](const Semidirect& s) { return s.inner->brick_count(); },
        },
        node_);
}

int GroupExpr::semidirect_count() const {
    return std::visit(
        Overload{
            [](const Free&) { return 0; },
            [](const Demushkin&) { return 0; },
            [](const FreeProduct& p) {
                return p.left->semidirect_count() + p.right->semidirect_count();
            },
            [](const Semidirect& s) { return s.inner->semidirect_count() + 1; },
        },
        node_);
}

bool GroupExpr::contains_demushkin_d2() const {
    return std::visit(
        Overload{
            [](const Free&) { return false; },
            [](const Demushkin& d) { return d.d >= 2; },
            [](const FreeProduct& p) {
                return p.left->contains_demushkin_d2() || p.right->contains_demushkin_d2();
            },
            [](const Semidirect& s) { return s.inner->contains_demushkin_d2(); },
        },
        node_);
}

bool GroupExpr::contains_c2() const {
    return std::visit(
        Overload{
            [](const Free&) { return false; },
            [this](const Demushkin&) { return is_c2(); },
            [](const FreeProduct& p) { return p.left->contains_c2() || p.right->contains_c2(); },
            [](const Semidirect& s) { return s.inner->contains_c2(); },
        },
        node_);
}

namespace {

void validate_walk(const GroupExpr& expr, const std::string& path, ValidationResult& out) {
    using DC = GroupExpr::DemushkinCase;
    std::visit(
        Overload{
            [&](const GroupExpr::Free&) {
                // orientation values are validated at construction
            },
            [&](const GroupExpr::Demushkin& d) {
                auto fail = [&](const std::string& msg) {
                    out.violations.push_back({path, msg});
                };
                if (d.f != OrientationValue::kInfinity && (d.f < 2 || d.f > 60))
                    fail("f must be an integer >= 2 or infinity");
                switch (d.dcase) {
                case DC::I:
                    if (d.d < 2 || d.d % 2 != 0) fail("case I requires d even, d >= 2");
                    break;
                case DC::II:
                    if (d.d % 2 != 0) fail("case II requires d even");
                    else if (d.d == 2)
                        fail("case II with d = 2 is rejected; use case III with f = inf "
                             "for the relation [x1,x2]x2^2");
                    else if (d.d < 4)
                        fail("case II requires d >= 4");
                    break;
                case DC::III:
                    if (d.d < 2 || d.d % 2 != 0) fail("case III requires d even, d >= 2");
                    break;
                case DC::IV:
                    if (d.d < 1 || d.d % 2 != 1) fail("case IV requires d odd, d >= 1");
                    if (d.d == 1 && d.f != OrientationValue::kInfinity)
                        fail("case IV with d = 1 forces f = inf");
                    if (d.d == 1 && d.f == OrientationValue::kInfinity)
                        out.notes.push_back(path + ": cyclic of order 2");
                    break;
                }
            },
            [&](const GroupExpr::FreeProduct& p) {
                validate_walk(*p.left, path + ".left", out);
                validate_walk(*p.right, path + ".right", out);
            },
            [&](const GroupExpr::Semidirect& s) {
                validate_walk(*s.inner, path + ".inner", out);
            },
        },
        expr.node());
}

} // namespace

ValidationResult validate(const GroupExpr& expr) {
    ValidationResult out;
    validate_walk(expr, "expr", out);
    return out;
}

} // namespace mwb
