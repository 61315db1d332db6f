#include "mwb/dsl.hpp"

#include <cctype>

namespace mwb {

namespace {

template <class... Fs> struct Overload : Fs... {
    using Fs::operator()...;
};
template <class... Fs> Overload(Fs...) -> Overload<Fs...>;

class Cursor {
public:
    explicit Cursor(const std::string& text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            advance();
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool try_eat(std::string_view token) {
        skip_ws();
        std::size_t p = pos_;
        for (char c : token) {
            if (p >= text_.size() || text_[p] != c) return false;
            ++p;
        }
        while (pos_ < p) advance();
        return true;
    }

    void expect(std::string_view token) {
        if (!try_eat(token)) fail("expected '" + std::string(token) + "'");
    }

    std::int64_t parse_int() {
        skip_ws();
        bool neg = false;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
            neg = text_[pos_] == '-';
            advance();
        }
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected an integer");
        std::int64_t value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            if (value > (std::int64_t(1) << 56)) fail("integer too large");
            advance();
        }
        return neg ? -value : value;
    }

    std::string parse_name() {
        skip_ws();
        if (pos_ >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_])))
            fail("expected a generator name");
        std::string name;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])))) {
            name += text_[pos_];
            advance();
        }
        return name;
    }

    [[noreturn]] void fail(const std::string& message) { throw ParseError(message, line_, col_); }

    int line() const { return line_; }
    int col() const { return col_; }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

int parse_f(Cursor& cur) {
    if (cur.try_eat("inf")) return OrientationValue::kInfinity;
    std::int64_t f = cur.parse_int();
    if (f < 2 || f > 60) cur.fail("f must be an integer >= 2 (and <= 60) or 'inf'");
    return static_cast<int>(f);
}

OrientationValue parse_theta(Cursor& cur) {
    if (cur.try_eat("res:")) {
        std::int64_t r = cur.parse_int();
        cur.expect("/");
        std::int64_t k = cur.parse_int();
        if ((r & 1) == 0) cur.fail("residue must be odd");
        if (k < 2 || k > 62) cur.fail("residue precision must be in [2, 62]");
        return OrientationValue::residue(r, static_cast<int>(k));
    }
    bool neg = cur.try_eat("-");
    cur.expect("1");
    if (cur.try_eat("+2^")) {
        int f = parse_f(cur);
        return neg ? OrientationValue::minus_one_plus(f) : OrientationValue::one_plus(f);
    }
    return neg ? OrientationValue::minus1() : OrientationValue::plus1();
}

GroupExprPtr parse_expr(Cursor& cur) {
    if (cur.try_eat("c2")) return GroupExpr::c2();
    if (cur.try_eat("triv")) return GroupExpr::trivial();
    if (cur.try_eat("free(")) {
        std::int64_t d = cur.parse_int();
        if (d < 0 || d > 62) cur.fail("free rank must be in [0, 62]");
        cur.expect(";");
        std::vector<OrientationValue> theta;
        if (d > 0) {
            theta.push_back(parse_theta(cur));
            while (cur.try_eat(",")) theta.push_back(parse_theta(cur));
        }
        if (static_cast<std::int64_t>(theta.size()) != d)
            cur.fail("free(d; ...) lists " + std::to_string(theta.size()) +
                     " orientations for d = " + std::to_string(d));
        cur.expect(")");
        return GroupExpr::free_group(std::move(theta));
    }
    if (cur.try_eat("demushkin(")) {
        cur.expect("case");
        cur.expect("=");
        std::int64_t c = cur.parse_int();
        if (c < 1 || c > 4) cur.fail("case must be 1..4");
        cur.expect(",");
        cur.expect("d");
        cur.expect("=");
        std::int64_t d = cur.parse_int();
        if (d < 1 || d > 62) cur.fail("d must be in [1, 62]");
        cur.expect(",");
        cur.expect("f");
        cur.expect("=");
        int f = parse_f(cur);
        cur.expect(")");
        return GroupExpr::demushkin(static_cast<GroupExpr::DemushkinCase>(c),
                                    static_cast<int>(d), f);
    }
    if (cur.try_eat("prod(")) {
        auto left = parse_expr(cur);
        cur.expect(",");
        auto right = parse_expr(cur);
        cur.expect(")");
        return GroupExpr::product(std::move(left), std::move(right));
    }
    if (cur.try_eat("semi(")) {
        auto inner = parse_expr(cur);
        cur.expect(")");
        return GroupExpr::semidirect(std::move(inner));
    }
    cur.fail("expected an expression: c2, triv, free(...), demushkin(...), prod(...), semi(...)");
}

} // namespace

GroupExprPtr parse_group(const std::string& text) {
    Cursor cur(text);
    auto expr = parse_expr(cur);
    if (!cur.at_end()) cur.fail("trailing input after expression");
    auto check = validate(*expr);
    if (!check.ok())
        throw ParseError(check.violations.front().path + ": " + check.violations.front().message,
                         1, 1);
    return expr;
}

MasseySequence parse_sequence(const std::string& text, const BasisRegistry& registry) {
    Cursor cur(text);
    cur.expect("[");
    std::vector<CohClass> classes;
    do {
        if (cur.try_eat("0")) {
            classes.push_back(CohClass::zero(registry.dim()));
            continue;
        }
        std::uint64_t bits = 0;
        do {
            std::string name = cur.parse_name();
            cur.expect("*");
            int idx = registry.index_of(name);
            if (idx < 0) cur.fail("unknown generator '" + name + "'");
            bits ^= 1ull << idx;
        } while (cur.try_eat("+"));
        classes.push_back(CohClass(bits, registry.dim()));
    } while (cur.try_eat(";"));
    cur.expect("]");
    if (!cur.at_end()) cur.fail("trailing input after sequence");
    if (classes.size() < 2) cur.fail("sequence length must be at least 2");
    return MasseySequence::of(std::move(classes));
}

std::string group_text(const GroupExpr& expr) {
    return std::visit(
        Overload{
            [&](const GroupExpr::Free& f) -> std::string {
                if (f.theta.empty()) return "triv";
                std::string out = "free(" + std::to_string(f.theta.size()) + ";";
                for (std::size_t i = 0; i < f.theta.size(); ++i) {
                    if (i) out += ",";
                    out += f.theta[i].to_text();
                }
                return out + ")";
            },
            [&](const GroupExpr::Demushkin& d) -> std::string {
                if (expr.is_c2()) return "c2";
                std::string f = d.f == OrientationValue::kInfinity ? "inf" : std::to_string(d.f);
                return "demushkin(case=" + std::to_string(static_cast<int>(d.dcase)) +
                       ",d=" + std::to_string(d.d) + ",f=" + f + ")";
            },
            [&](const GroupExpr::FreeProduct& p) -> std::string {
                return "prod(" + group_text(*p.left) + "," + group_text(*p.right) + ")";
            },
            [&](const GroupExpr::Semidirect& s) -> std::string {
                return "semi(" + group_text(*s.inner) + ")";
            },
        },
        expr.node());
}

std::string sequence_text(const MasseySequence& seq, const BasisRegistry& registry) {
    std::string out = "[";
    for (int i = 0; i < seq.n(); ++i) {
        if (i) out += "; ";
        out += seq.classes[static_cast<std::size_t>(i)].to_text(registry);
    }
    return out + "]";
}

} // namespace mwb
