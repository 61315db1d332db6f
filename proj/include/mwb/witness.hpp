#pragma once

#include <map>
#include <optional>

#include "mwb/cohomology.hpp"
#include "mwb/f2mat.hpp"

namespace mwb {

struct InadmissibleError : Error {
    using Error::Error;
};

/// Sequence of H^1 classes over a fixed registry; length n >= 2.
struct MasseySequence {
    std::vector<CohClass> classes;

    int n() const { return static_cast<int>(classes.size()); }
    int class_dim() const { return classes.empty() ? 0 : classes.front().dim(); }

    static MasseySequence of(std::vector<CohClass> classes);
};

/// Generator -> matrix assignment claimed to be a homomorphism into
/// U_{n+1}(F2) with prescribed superdiagonals.
struct Witness {
    std::map<std::string, UniMatrix> assignment;
};

struct WitnessReport {
    struct RelationFailure {
        int relation; // 0-based index into the presentation
        UniMatrix value;
    };
    struct SuperdiagonalFailure {
        std::string generator;
        std::uint64_t expected;
        std::uint64_t actual;
    };

    bool verified = false;
    std::vector<RelationFailure> relation_failures;
    std::vector<SuperdiagonalFailure> superdiagonal_failures;
};

/// Truncation width for 2-adic exponents acting inside U_{n+1}: enough
/// bits that every exponent residue acts exactly on a group of exponent
/// dividing 2^ceil(log2(n+1)).
int truncation_bits(int n);

/// Evaluate a relation word under an index-keyed assignment, exponents
/// truncated to `bits`.
UniMatrix evaluate_word(const Word& word, const std::vector<UniMatrix>& gens, int bits);

WitnessReport verify_witness(const Presentation& pres, const MasseySequence& seq,
                             const Witness& witness);

/// A matrix C in the third filtration term with [C, A] = A^mu, for A with
/// all-ones superdiagonal and mu = 0 mod 4. Post-verified before return.
UniMatrix build_c_matrix(const UniMatrix& a, std::int64_t mu);

/// Involution B and all-ones-superdiagonal A with [B,A] = A^-2, built from
/// the two alternating witnesses of the free product of two C2's. Variant 1
/// gives B the superdiagonal (1,0,1,...), variant 2 gives (0,1,0,...).
struct DihedralPair {
    UniMatrix a;
    UniMatrix b;
};
DihedralPair dihedral_pair(int n, int variant);

/// Dichotomy for all-nonzero sequences over a semidirect product: either
/// every class lives on the inner factor, or every class hits z and
/// consecutive classes differ by chi_0 (the sum of the u-duals).
struct SemidirectCase {
    enum class Kind { Interior, Alternating, Inadmissible };
    Kind kind = Kind::Inadmissible;
    CohClass base; // Alternating: the first class
};
SemidirectCase classify_semidirect_sequence(const GeneratorRoles& roles, const CupForm& form,
                                            const MasseySequence& seq);

struct SearchOutcome {
    enum class Verdict { Found, None, BudgetExceeded };
    Verdict verdict = Verdict::None;
    std::optional<Witness> witness;
    std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultLiftBudget = 1'000'000;
inline constexpr std::uint64_t kDefaultBruteBudget = 1ull << 22;

/// Layered solver over the central series: superdiagonals are forced, each
/// deeper diagonal's discrepancies are affine in the previous diagonal's
/// free entries, solved per layer with depth-first backtracking over the
/// kernels of earlier layers. Free variables are taken 0 first, then
/// enumerated lexicographically.
SearchOutcome solve_by_lifting(const Presentation& pres, const MasseySequence& seq,
                               std::uint64_t node_budget = kDefaultLiftBudget);

/// Exhaustive enumeration over all entries strictly above the forced
/// superdiagonal, in lexicographic order; complete within budget.
SearchOutcome brute_force_search(const Presentation& pres, const MasseySequence& seq,
                                 std::uint64_t node_budget = kDefaultBruteBudget);

struct BuildOutcome {
    Witness witness;
    bool used_fallback = false; // a semidirect node without u-generator was searched
};

/// Recursive construction of a verified witness for an admissible sequence
/// over an elementary-type expression. Throws InadmissibleError when the
/// consecutive cup products do not vanish.
BuildOutcome build_witness(const GroupExpr& expr, const MasseySequence& seq);

} // namespace mwb
