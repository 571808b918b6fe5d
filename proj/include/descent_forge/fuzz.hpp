// Randomized search for violations of the verified statements.
//
// Random structure-constant tables are rejection-sampled into unital
// associative algebras, paired by random injective unital morphisms, and every
// instance that earns a certificate is pushed through the full verification
// suite. Each candidate is generated from its own deterministic stream, so a
// violation is reproducible from (seed, index) alone; the offending instance
// text is embedded verbatim as well.
#pragma once

#include "descent_forge/report.hpp"

namespace descent {

struct FuzzViolation {
    u64 seed = 0;
    u32 index = 0;  // candidate index within the run
    std::string message;
    std::string instance_text;
};

struct FuzzOptions {
    u64 subspace_budget = default_subspace_budget;
    u64 endo_budget = default_endo_budget;
    // Upper bound on candidate draws for the whole run; the report states
    // whether the requested number of certified instances was reached.
    u32 max_candidates = 100000;
};

struct FuzzReport {
    u32 requested = 0;  // target number of certified instances
    u32 certified = 0;
    u32 candidates = 0;          // candidate indices consumed
    u32 skipped_unbuildable = 0;  // no valid algebra pair/morphism found
    u32 skipped_uncertified = 0;  // built but no certificate
    u32 skipped_budget = 0;       // a guard cut the suite short
    std::vector<FuzzViolation> violations;
    bool clean() const { return violations.empty(); }
};

FuzzReport fuzz(u32 p, u32 max_dim_s, u32 max_dim_b, u32 count, u64 seed,
                const FuzzOptions& options = {});

// Deliberately corrupts one entry of a coring endomorphism on a fixed small
// instance and reports whether the verification layer catches it. `caught`
// must be true; `message` localizes the first detected defect.
struct MutationResult {
    bool caught = false;
    std::string message;
};
MutationResult mutation_self_test();

}  // namespace descent
