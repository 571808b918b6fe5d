// Instance definition files: a prime modulus, named algebra presentations,
// one ring extension, optional evaluation bimodule for the comatrix suite,
// and run budgets. The format is a small TOML-style text (sections, scalar
// keys, nested integer arrays) chosen so fixtures diff cleanly.
#pragma once

#include "descent_forge/comonadicity.hpp"

namespace descent {

struct InstanceSpec {
    std::string name;
    u32 p = 2;
    Extension extension;
    std::optional<Bimodule> evaluation;  // module behind a comatrix block
    u64 subspace_budget = default_subspace_budget;
    u64 endo_budget = default_endo_budget;
    u64 seed = 0;
    std::string source;  // exact input bytes, embedded in reports
};

struct ParseError {
    u32 line = 0;  // 1-based, 0 = not tied to a line
    std::string field;
    std::string message;
    std::string describe() const;
};

struct ParseResult {
    std::optional<InstanceSpec> spec;
    std::vector<ParseError> errors;
    bool ok() const { return spec.has_value(); }
};

ParseResult parse_instance(const std::string& text);

// Canonical text of an instance; parse_instance(serialize_instance(s)) is an
// identity on the underlying data.
std::string serialize_instance(const InstanceSpec& s);

// The shipped instance family. Names: id-ext(p), split2(p), dual-numbers(p),
// field4, mat2(p), diag-mat2(p), comatrix-mat2(p), comatrix-diag-mat2(p).
std::optional<std::string> builtin_instance(const std::string& name);
std::vector<std::string> builtin_names(u32 p);

}  // namespace descent
