#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mwb {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Element of the unipotent upper-triangular group U_dim(F2).
///
/// Rows are bit-packed: bit c (0-based) of row r is the entry (r+1, c+1),
/// so dims up to 64 fit one word per row. Entries on the diagonal are 1
/// and below it 0, always; only strictly-upper entries are writable.
///
/// Commutator convention throughout the library: [g,h] = g h g^-1 h^-1.
/// The opposite convention [g,h] = g^-1 h^-1 g h, common elsewhere,
/// satisfies [g,h]_opp = our [g^-1, h^-1].
class UniMatrix {
public:
    static constexpr int kMaxDim = 64;

    explicit UniMatrix(int dim);

    static UniMatrix identity(int dim) { return UniMatrix(dim); }
    /// I + E_ij (1-based indices, i < j).
    static UniMatrix elementary(int dim, int i, int j);

    int dim() const { return dim_; }

    bool get(int i, int j) const; // 1-based, any position
    void set(int i, int j, bool v); // strictly upper positions only
    void toggle(int i, int j) { set(i, j, !get(i, j)); }

    bool is_identity() const;

    /// Canonical text form: one string of '0'/'1' per row, column 1 first.
    std::vector<std::string> text_rows() const;

    std::uint64_t row_bits(int i) const { return rows_[static_cast<std::size_t>(i - 1)]; }

    friend bool operator==(const UniMatrix& a, const UniMatrix& b) = default;

private:
    int dim_;
    std::vector<std::uint64_t> rows_;
};

/// Matrix product over F2. Both operands must share dim.
UniMatrix compose(const UniMatrix& a, const UniMatrix& b);

UniMatrix invert(const UniMatrix& a);

/// a b a^-1 b^-1.
UniMatrix commutator(const UniMatrix& a, const UniMatrix& b);

/// a^e by square-and-multiply; negative e via invert, a^0 = I.
UniMatrix power(const UniMatrix& a, std::int64_t e);

/// Term of the descending central series a matrix belongs to.
/// level k in [1, dim]; k = dim encodes the identity (U_(dim) = {I} when
/// dim = n+1). M has level >= k iff every entry (i,j) with 0 < j-i < k
/// vanishes.
struct FiltrationLevel {
    int level = 1;
    friend bool operator==(const FiltrationLevel&, const FiltrationLevel&) = default;
};

FiltrationLevel filtration_level(const UniMatrix& a);

/// Entries (i, i+1), packed: bit i-1 = entry (i, i+1). Length dim-1.
std::uint64_t superdiagonal(const UniMatrix& a);

} // namespace mwb
