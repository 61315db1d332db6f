#pragma once

#include <cstdint>
#include <string>

namespace mwb {

/// A 2-adic unit in symbolic canonical form: one of 1, -1, 1+2^f,
/// -1+2^f (f in [2, inf]), or an explicit odd residue r declared to
/// K bits of precision. Truncation to a machine residue happens on
/// demand, so no precision is committed before a computation fixes
/// the matrix size it acts on; 2^inf reads as 0.
class OrientationValue {
public:
    static constexpr int kInfinity = -1;

    enum class Form : std::uint8_t { Plus1, Minus1, OnePlus, MinusOnePlus, Residue };

    static OrientationValue plus1();
    static OrientationValue minus1();
    static OrientationValue one_plus(int f);
    static OrientationValue minus_one_plus(int f);
    static OrientationValue residue(std::int64_t r, int precision);

    Form form() const { return form_; }
    int f() const { return f_; }
    std::int64_t residue_value() const { return residue_; }
    int precision() const { return precision_; }

    /// Residue mod 2^bits, bits in [1, 62]. Always odd.
    std::uint64_t truncate(int bits) const;

    /// +1 or -1 (the class mod 4; well-defined for every form).
    int mod4() const;

    bool is_exactly_one() const;
    bool is_exactly_minus_one() const;

    /// The value as a plain integer (2^inf = 0). Exact for every form
    /// since f is capped well below 63.
    std::int64_t exact_value() const;

    std::string to_text() const;

    friend bool operator==(const OrientationValue&, const OrientationValue&) = default;

private:
    OrientationValue(Form form, int f, std::int64_t r, int precision)
        : form_(form), f_(f), residue_(r), precision_(precision) {}

    Form form_;
    int f_ = kInfinity;
    std::int64_t residue_ = 0;
    int precision_ = 0;
};

} // namespace mwb
