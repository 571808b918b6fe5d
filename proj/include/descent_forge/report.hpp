// Machine-readable verification reports: one JSON document per instance,
// aggregating the library's constructions and the licensed verdicts.
//
// Verdicts are asserted (pass/fail) only when a verified certificate licenses
// the statement's hypotheses; otherwise the raw outcome is reported with
// status "observed". Reports are deterministic functions of (instance text,
// seed, version): wall-clock timings are zeroed unless explicitly requested.
#pragma once

#include <json.hpp>

#include "descent_forge/comonadicity.hpp"
#include "descent_forge/instance.hpp"

namespace descent {

using Json = nlohmann::ordered_json;

inline constexpr const char* report_version = "0.1.0";

enum class Suite { all, gamma, comatrix, prop31, comonadicity };
std::optional<Suite> suite_from_name(const std::string& name);

struct RunOptions {
    Suite which = Suite::all;
    // Record wall-clock milliseconds; breaks byte-for-byte reproducibility.
    bool record_timing = false;
};

struct VerificationReport {
    Json json;
    bool verdict_failure = false;  // an asserted verdict (or licensed check) failed
    std::string budget_guard;      // nonempty when a guard cut the run short
};

// Runs the selected suite on a parsed instance. Top-level keys are always
// `instance, certificate, monoids, gamma, gamma0, prop31, verdicts, timing,
// version`, in that order; sections outside the suite are null. Throws Error
// for unusable inputs (non-injective extension; a comatrix block whose
// evaluation algebra differs from the declared extension). Budget violations
// yield a partial report with the guard message recorded under "timing".
VerificationReport run_suite(const InstanceSpec& spec, const RunOptions& opts = {});

// FNV-1a hash of the bytes the report depends on (source, seed, version).
std::string content_hash(const InstanceSpec& spec);

}  // namespace descent
