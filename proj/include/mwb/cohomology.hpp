#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mwb/presentation.hpp"

namespace mwb {

/// Ordered generator names; H^1 coordinates are taken against this order.
struct BasisRegistry {
    std::vector<std::string> names;

    int dim() const { return static_cast<int>(names.size()); }
    int index_of(std::string_view name) const;
};

BasisRegistry h1_basis(const Presentation& pres);
BasisRegistry h1_basis(const GroupExpr& expr);

/// An element of H^1 in dual-basis coordinates, packed in one word.
class CohClass {
public:
    CohClass() = default;
    CohClass(std::uint64_t bits, int dim);

    static CohClass zero(int dim) { return CohClass(0, dim); }
    static CohClass dual(int index, int dim) { return CohClass(1ull << index, dim); }

    int dim() const { return dim_; }
    std::uint64_t bits() const { return bits_; }
    bool get(int i) const { return (bits_ >> i) & 1ull; }
    bool is_zero() const { return bits_ == 0; }

    /// Coordinate projection onto a contiguous sub-brick slice.
    CohClass restrict(int offset, int count) const;

    std::string to_text(const BasisRegistry& reg) const; // "x1*+z*" or "0"

    friend CohClass operator+(CohClass a, CohClass b);
    friend bool operator==(const CohClass&, const CohClass&) = default;

private:
    std::uint64_t bits_ = 0;
    int dim_ = 0;
};

/// An element of H^2 in tr_l coordinates (one bit per relation).
class H2Class {
public:
    H2Class() = default;
    H2Class(std::uint64_t bits, int m) : bits_(bits), m_(m) {}

    int relation_count() const { return m_; }
    std::uint64_t bits() const { return bits_; }
    bool get(int l) const { return (bits_ >> l) & 1ull; }
    bool is_zero() const { return bits_ == 0; }

    std::string to_text() const; // '0'/'1' per relation, relation 1 first

    friend H2Class operator+(H2Class a, H2Class b);
    friend bool operator==(const H2Class&, const H2Class&) = default;

private:
    std::uint64_t bits_ = 0;
    int m_ = 0;
};

/// The per-relation bilinear tables realizing cup products into H^2, read
/// off a normal-form presentation: a commutator [y,v] contributes to the
/// off-diagonal entry (y,v), an even power v^e contributes e/2 to the
/// diagonal entry of v, a square u^2 contributes 1 to the diagonal of u.
class CupForm {
public:
    static CupForm extract(const Presentation& pres);

    int dim() const { return dim_; }
    int relation_count() const { return static_cast<int>(sym_.size()); }

    bool tr(int l, const CohClass& a, const CohClass& b) const;
    H2Class cup(const CohClass& a, const CohClass& b) const;

    /// Block direct sum (used by free-product cross-checks).
    static CupForm direct_sum(const CupForm& a, const CupForm& b);

private:
    int dim_ = 0;
    // per relation: dim rows; bit h' of row h = S_{h,h'} (symmetric, with
    // the diagonal carrying the half-exponent table)
    std::vector<std::vector<std::uint64_t>> sym_;
};

H2Class cup(const CupForm& form, const CohClass& a, const CohClass& b);

/// Every consecutive cup product vanishes. Requires length >= 2.
bool is_massey_admissible(const CupForm& form, std::span<const CohClass> seq);

/// Whether alpha lifts to a homomorphism into Z/4: solvability of the
/// affine system with one unknown value per generator, congruent to
/// alpha mod 2, and one equation per relation (the signed exponent sums
/// evaluated in Z/4 must vanish; commutators contribute nothing since
/// Z/4 is abelian). Independent of the cup-form path on purpose.
bool bockstein_lift_exists(const Presentation& pres, const CohClass& alpha);

} // namespace mwb
