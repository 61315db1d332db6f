#include "mwb/f2mat.hpp"

namespace mwb {

namespace {

void check_dim(int dim) {
    if (dim < 2 || dim > UniMatrix::kMaxDim)
        throw Error("UniMatrix dim must be in [2, 64], got " + std::to_string(dim));
}

void check_same_dim(const UniMatrix& a, const UniMatrix& b) {
    if (a.dim() != b.dim())
        throw Error("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                    std::to_string(b.dim()));
}

} // namespace

UniMatrix::UniMatrix(int dim) : dim_(dim), rows_(static_cast<std::size_t>(dim)) {
    check_dim(dim);
    for (int i = 0; i < dim; ++i)
        rows_[static_cast<std::size_t>(i)] = 1ull << i;
}

UniMatrix UniMatrix::elementary(int dim, int i, int j) {
    UniMatrix m(dim);
    m.set(i, j, true);
    return m;
}

bool UniMatrix::get(int i, int j) const {
    if (i < 1 || j < 1 || i > dim_ || j > dim_)
        throw Error("entry index out of range");
    return (rows_[static_cast<std::size_t>(i - 1)] >> (j - 1)) & 1ull;
}

void UniMatrix::set(int i, int j, bool v) {
    if (i < 1 || j > dim_ || i >= j)
        throw Error("only strictly upper entries are writable");
    std::uint64_t bit = 1ull << (j - 1);
    if (v)
        rows_[static_cast<std::size_t>(i - 1)] |= bit;
    else
        rows_[static_cast<std::size_t>(i - 1)] &= ~bit;
}

bool UniMatrix::is_identity() const {
    for (int i = 0; i < dim_; ++i)
        if (rows_[static_cast<std::size_t>(i)] != (1ull << i)) return false;
    return true;
}

std::vector<std::string> UniMatrix::text_rows() const {
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(dim_));
    for (int i = 1; i <= dim_; ++i) {
        std::string row(static_cast<std::size_t>(dim_), '0');
        for (int j = 1; j <= dim_; ++j)
            if (get(i, j)) row[static_cast<std::size_t>(j - 1)] = '1';
        out.push_back(std::move(row));
    }
    return out;
}

UniMatrix compose(const UniMatrix& a, const UniMatrix& b) {
    check_same_dim(a, b);
    UniMatrix c(a.dim());
    // Row i of a*b is the XOR of the rows of b selected by row i of a.
    for (int i = 1; i <= a.dim(); ++i) {
        std::uint64_t acc = 0;
        std::uint64_t sel = a.row_bits(i);
        while (sel) {
            int k = __builtin_ctzll(sel);
            sel &= sel - 1;
            acc ^= b.row_bits(k + 1);
        }
        for (int j = i + 1; j <= a.dim(); ++j)
            c.set(i, j, (acc >> (j - 1)) & 1ull);
    }
    return c;
}

UniMatrix invert(const UniMatrix& a) {
    // (I+N)^-1 = I + N + N^2 + ... over F2, N nilpotent.
    int dim = a.dim();
    UniMatrix result(dim);
    // term = N^k, accumulated via repeated left-multiplication by N. N is
    // represented as a (non-unitriangular) bit matrix directly.
    std::vector<std::uint64_t> n(static_cast<std::size_t>(dim)), term;
    for (int i = 1; i <= dim; ++i)
        n[static_cast<std::size_t>(i - 1)] = a.row_bits(i) ^ (1ull << (i - 1));
    term = n;
    for (;;) {
        bool nonzero = false;
        for (int i = 1; i <= dim; ++i) {
            std::uint64_t bits = term[static_cast<std::size_t>(i - 1)];
            if (!bits) continue;
            nonzero = true;
            for (int j = i + 1; j <= dim; ++j)
                if ((bits >> (j - 1)) & 1ull) result.toggle(i, j);
        }
        if (!nonzero) break;
        std::vector<std::uint64_t> next(static_cast<std::size_t>(dim));
        for (int i = 0; i < dim; ++i) {
            std::uint64_t acc = 0;
            std::uint64_t sel = term[static_cast<std::size_t>(i)];
            while (sel) {
                int k = __builtin_ctzll(sel);
                sel &= sel - 1;
                acc ^= n[static_cast<std::size_t>(k)];
            }
            next[static_cast<std::size_t>(i)] = acc;
        }
        term = std::move(next);
    }
    return result;
}

UniMatrix commutator(const UniMatrix& a, const UniMatrix& b) {
    check_same_dim(a, b);
    return compose(compose(a, b), compose(invert(a), invert(b)));
}

UniMatrix power(const UniMatrix& a, std::int64_t e) {
    UniMatrix base = a;
    std::uint64_t k;
    if (e < 0) {
        base = invert(a);
        k = static_cast<std::uint64_t>(-(e + 1)) + 1; // avoids overflow at INT64_MIN
    } else {
        k = static_cast<std::uint64_t>(e);
    }
    UniMatrix result(a.dim());
    while (k) {
        if (k & 1ull) result = compose(result, base);
        k >>= 1;
        if (!k) break;
        base = compose(base, base);
        if (base.is_identity()) break; // every remaining factor is I
    }
    return result;
}

FiltrationLevel filtration_level(const UniMatrix& a) {
    for (int off = 1; off < a.dim(); ++off)
        for (int i = 1; i + off <= a.dim(); ++i)
            if (a.get(i, i + off)) return FiltrationLevel{off};
    return FiltrationLevel{a.dim()};
}

std::uint64_t superdiagonal(const UniMatrix& a) {
    std::uint64_t bits = 0;
    for (int i = 1; i < a.dim(); ++i)
        if (a.get(i, i + 1)) bits |= 1ull << (i - 1);
    return bits;
}

} // namespace mwb
