#include "mwb/gf2solve.hpp"

#include "mwb/f2mat.hpp"

namespace mwb {

LinearSystemF2::LinearSystemF2(int vars)
    : vars_(vars), words_((vars + 63) / 64) {
    if (vars < 0) throw Error("negative variable count");
    if (words_ == 0) words_ = 1;
}

void LinearSystemF2::add_equation(std::vector<std::uint64_t> coeffs, bool rhs) {
    coeffs.resize(static_cast<std::size_t>(words_), 0);
    rows_.push_back(std::move(coeffs));
    rhs_.push_back(rhs ? 1 : 0);
}

std::optional<LinearSystemF2::Solution> LinearSystemF2::solve() const {
    auto rows = rows_;
    auto rhs = rhs_;
    const int m = static_cast<int>(rows.size());

    std::vector<int> pivot_col; // per reduced row, in elimination order
    int rank = 0;
    for (int col = 0; col < vars_ && rank < m; ++col) {
        int sel = -1;
        for (int r = rank; r < m; ++r) {
            if (get_bit(rows[static_cast<std::size_t>(r)], col)) {
                sel = r;
                break;
            }
        }
        if (sel < 0) continue;
        std::swap(rows[static_cast<std::size_t>(sel)], rows[static_cast<std::size_t>(rank)]);
        std::swap(rhs[static_cast<std::size_t>(sel)], rhs[static_cast<std::size_t>(rank)]);
        for (int r = 0; r < m; ++r) {
            if (r == rank) continue;
            if (get_bit(rows[static_cast<std::size_t>(r)], col)) {
                for (int w = 0; w < words_; ++w)
                    rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(w)] ^=
                        rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(w)];
                rhs[static_cast<std::size_t>(r)] ^= rhs[static_cast<std::size_t>(rank)];
            }
        }
        pivot_col.push_back(col);
        ++rank;
    }

    for (int r = rank; r < m; ++r)
        if (rhs[static_cast<std::size_t>(r)]) return std::nullopt;

    Solution sol;
    sol.particular.assign(static_cast<std::size_t>(words_), 0);
    for (int r = 0; r < rank; ++r)
        if (rhs[static_cast<std::size_t>(r)])
            set_bit(sol.particular, pivot_col[static_cast<std::size_t>(r)], true);

    std::vector<bool> is_pivot(static_cast<std::size_t>(vars_), false);
    for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
    for (int col = 0; col < vars_; ++col) {
        if (is_pivot[static_cast<std::size_t>(col)]) continue;
        std::vector<std::uint64_t> basis(static_cast<std::size_t>(words_), 0);
        set_bit(basis, col, true);
        for (int r = 0; r < rank; ++r)
            if (get_bit(rows[static_cast<std::size_t>(r)], col))
                set_bit(basis, pivot_col[static_cast<std::size_t>(r)], true);
        sol.kernel.push_back(std::move(basis));
    }
    return sol;
}

} // namespace mwb
