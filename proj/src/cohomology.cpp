#include "mwb/cohomology.hpp"

#include "mwb/f2mat.hpp"
#include "mwb/gf2solve.hpp"

namespace mwb {

int BasisRegistry::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    return -1;
}

BasisRegistry h1_basis(const Presentation& pres) {
    BasisRegistry reg;
    reg.names.reserve(pres.generators.size());
    for (const auto& g : pres.generators) reg.names.push_back(g.name);
    return reg;
}

BasisRegistry h1_basis(const GroupExpr& expr) { return h1_basis(presentation(expr)); }

CohClass::CohClass(std::uint64_t bits, int dim) : bits_(bits), dim_(dim) {
    if (dim < 0 || dim > 64) throw Error("class dimension out of range");
    if (dim < 64 && (bits >> dim) != 0) throw Error("class coordinates exceed dimension");
}

CohClass CohClass::restrict(int offset, int count) const {
    if (offset < 0 || count < 0 || offset + count > dim_)
        throw Error("restriction slice out of range");
    std::uint64_t mask = count == 64 ? ~0ull : ((1ull << count) - 1);
    return CohClass((bits_ >> offset) & mask, count);
}

std::string CohClass::to_text(const BasisRegistry& reg) const {
    if (reg.dim() != dim_) throw Error("registry dimension mismatch");
    if (is_zero()) return "0";
    std::string out;
    for (int i = 0; i < dim_; ++i) {
        if (!get(i)) continue;
        if (!out.empty()) out += "+";
        out += reg.names[static_cast<std::size_t>(i)] + "*";
    }
    return out;
}

CohClass operator+(CohClass a, CohClass b) {
    if (a.dim_ != b.dim_) throw Error("class dimension mismatch");
    return CohClass(a.bits_ ^ b.bits_, a.dim_);
}

std::string H2Class::to_text() const {
    std::string out(static_cast<std::size_t>(m_), '0');
    for (int l = 0; l < m_; ++l)
        if (get(l)) out[static_cast<std::size_t>(l)] = '1';
    return out;
}

H2Class operator+(H2Class a, H2Class b) {
    if (a.m_ != b.m_) throw Error("H2 dimension mismatch");
    return H2Class(a.bits_ ^ b.bits_, a.m_);
}

CupForm CupForm::extract(const Presentation& pres) {
    auto bad = normal_form_violations(pres);
    if (!bad.empty()) throw Error("presentation not in normal form: " + bad.front());
    int d = static_cast<int>(pres.generators.size());
    if (d > 64) throw Error("more than 64 generators unsupported");
    if (pres.relations.size() > 64) throw Error("more than 64 relations unsupported");

    CupForm form;
    form.dim_ = d;
    for (const auto& word : pres.relations) {
        std::vector<std::uint64_t> sym(static_cast<std::size_t>(d), 0);
        auto flip = [&](int h, int hp) {
            sym[static_cast<std::size_t>(h)] ^= 1ull << hp;
            if (h != hp) sym[static_cast<std::size_t>(hp)] ^= 1ull << h;
        };
        for (const auto& factor : word) {
            switch (factor.kind) {
            case Factor::Kind::Square:
                flip(factor.a, factor.a);
                break;
            case Factor::Kind::Commutator:
                flip(factor.a, factor.b);
                break;
            case Factor::Kind::Action: {
                flip(factor.a, factor.b);
                // e = 1 - theta(y); the diagonal picks up e/2 mod 2, which
                // is 1 exactly when theta(y) = -1 mod 4
                if (factor.theta.mod4() == -1) flip(factor.b, factor.b);
                break;
            }
            }
        }
        form.sym_.push_back(std::move(sym));
    }
    return form;
}

bool CupForm::tr(int l, const CohClass& a, const CohClass& b) const {
    if (a.dim() != dim_ || b.dim() != dim_) throw Error("class dimension mismatch");
    const auto& sym = sym_[static_cast<std::size_t>(l)];
    std::uint64_t acc = 0;
    std::uint64_t sel = a.bits();
    while (sel) {
        int h = __builtin_ctzll(sel);
        sel &= sel - 1;
        acc ^= static_cast<std::uint64_t>(
            __builtin_parityll(sym[static_cast<std::size_t>(h)] & b.bits()));
    }
    return acc & 1ull;
}

H2Class CupForm::cup(const CohClass& a, const CohClass& b) const {
    std::uint64_t bits = 0;
    for (int l = 0; l < relation_count(); ++l)
        if (tr(l, a, b)) bits |= 1ull << l;
    return H2Class(bits, relation_count());
}

CupForm CupForm::direct_sum(const CupForm& a, const CupForm& b) {
    CupForm out;
    out.dim_ = a.dim_ + b.dim_;
    if (out.dim_ > 64) throw Error("direct sum exceeds 64 generators");
    for (const auto& sym : a.sym_) {
        auto rows = sym;
        rows.resize(static_cast<std::size_t>(out.dim_), 0);
        out.sym_.push_back(std::move(rows));
    }
    for (const auto& sym : b.sym_) {
        std::vector<std::uint64_t> rows(static_cast<std::size_t>(out.dim_), 0);
        for (int h = 0; h < b.dim_; ++h)
            rows[static_cast<std::size_t>(a.dim_ + h)] = sym[static_cast<std::size_t>(h)]
                                                         << a.dim_;
        out.sym_.push_back(std::move(rows));
    }
    return out;
}

H2Class cup(const CupForm& form, const CohClass& a, const CohClass& b) {
    return form.cup(a, b);
}

bool is_massey_admissible(const CupForm& form, std::span<const CohClass> seq) {
    if (seq.size() < 2) throw Error("sequence length must be at least 2");
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        if (!form.cup(seq[i], seq[i + 1]).is_zero()) return false;
    return true;
}

bool bockstein_lift_exists(const Presentation& pres, const CohClass& alpha) {
    int d = static_cast<int>(pres.generators.size());
    if (alpha.dim() != d) throw Error("class dimension mismatch");

    // Write the unknown as alpha + 2t with t in F2^d. Each relation gives
    // c + 2 * <e mod 2, t> = 0 in Z/4, where e is the exponent-sum vector
    // and c = <e, alpha> mod 4.
    LinearSystemF2 sys(d);
    for (const auto& word : pres.relations) {
        std::vector<std::uint32_t> expo(static_cast<std::size_t>(d), 0);
        for (const auto& factor : word) {
            switch (factor.kind) {
            case Factor::Kind::Square:
                expo[static_cast<std::size_t>(factor.a)] += 2;
                break;
            case Factor::Kind::Commutator:
                break;
            case Factor::Kind::Action: {
                auto t2 = static_cast<std::uint32_t>(factor.theta.truncate(2)); // 1 or 3
                expo[static_cast<std::size_t>(factor.b)] += (4 + 1 - t2) & 3;
                break;
            }
            }
        }
        std::uint32_t c = 0;
        std::vector<std::uint64_t> coeffs(1, 0);
        for (int k = 0; k < d; ++k) {
            std::uint32_t e = expo[static_cast<std::size_t>(k)] & 3;
            if (alpha.get(k)) c += e;
            if (e & 1) coeffs[0] |= 1ull << k;
        }
        c &= 3;
        if (c & 1) return false; // odd constant, 2t never cancels it
        sys.add_equation(coeffs, (c >> 1) & 1);
    }
    return sys.solve().has_value();
}

} // namespace mwb
