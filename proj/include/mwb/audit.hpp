#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mwb/witness.hpp"

namespace mwb {

struct AuditMode {
    bool exhaustive = true;
    int sample_count = 200; // sampled mode: admissible sequences to draw
    std::uint64_t seed = 0;

    static AuditMode exhaustive_mode() { return {true, 0, 0}; }
    static AuditMode sampled(int count, std::uint64_t seed) { return {false, count, seed}; }
};

struct AuditFailure {
    std::vector<CohClass> sequence;
    std::string what;
};

struct AuditReport {
    int n = 0;
    bool exhaustive = true;
    std::uint64_t seed = 0;
    std::uint64_t sequences_considered = 0; // exhaustive: full enumeration count
    std::uint64_t admissible = 0;
    std::uint64_t witnessed = 0;
    std::uint64_t constructive = 0;
    std::uint64_t fallback = 0;
    std::vector<AuditFailure> failures;
    double elapsed_ms = 0.0;

    bool all_witnessed() const { return witnessed == admissible && failures.empty(); }
};

/// Check strong n-Massey vanishing at desk scale: every admissible sequence
/// of nonzero classes must yield a witness that verifies. Exhaustive mode
/// enumerates all (2^d - 1)^n sequences; sampled mode draws admissible
/// sequences directly (each next class uniform in the kernel of cupping
/// with its predecessor), so the sample is never vacuous.
AuditReport strong_massey_audit(const GroupExpr& expr, int n, const AuditMode& mode);

} // namespace mwb
