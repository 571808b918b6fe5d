#include "descent_forge/fuzz.hpp"

#include <random>

#include "descent_forge/descent.hpp"

namespace descent {

namespace {

constexpr u64 stream_mix = 0x9E3779B97F4A7C15ull;

u32 draw(std::mt19937_64& rng, u32 bound) { return static_cast<u32>(rng() % bound); }

// Random structure constants; the unit is solved for linearly and the table
// kept only when the result validates as a unital associative algebra.
std::optional<FiniteAlgebra> random_algebra(std::mt19937_64& rng, PrimeField f, u32 dim,
                                            u32 attempts) {
    for (u32 a = 0; a < attempts; ++a) {
        std::vector<Vec> sc(size_t(dim) * dim, Vec(dim, 0));
        for (Vec& v : sc)
            for (u32& x : v) x = draw(rng, f.p());
        // u is a unit iff sum_i u_i (e_i e_j) = e_j = sum_i u_i (e_j e_i) for
        // all j: a linear system in the coordinates of u.
        Matrix sys(2 * dim * dim, dim, f);
        Vec rhs(size_t(2) * dim * dim, 0);
        for (u32 j = 0; j < dim; ++j)
            for (u32 r = 0; r < dim; ++r) {
                for (u32 i = 0; i < dim; ++i) {
                    sys(j * dim + r, i) = sc[size_t(i) * dim + j][r];
                    sys(dim * dim + j * dim + r, i) = sc[size_t(j) * dim + i][r];
                }
                rhs[j * dim + r] = r == j ? 1 : 0;
                rhs[size_t(dim) * dim + j * dim + r] = r == j ? 1 : 0;
            }
        auto unit = solve_linear(sys, rhs);
        if (!unit) continue;
        FiniteAlgebra cand(f, dim, sc, unit->particular);
        if (!validate_algebra(cand).empty()) continue;
        return cand;
    }
    return std::nullopt;
}

std::optional<Extension> random_embedding(std::mt19937_64& rng, const FiniteAlgebra& b,
                                          const FiniteAlgebra& s, u32 attempts) {
    for (u32 a = 0; a < attempts; ++a) {
        Matrix m(s.dim(), b.dim(), s.field());
        for (u32 r = 0; r < s.dim(); ++r)
            for (u32 c = 0; c < b.dim(); ++c) m(r, c) = draw(rng, s.field().p());
        Extension i(b, s, m);
        if (!validate_morphism(i).empty() || !i.injective()) continue;
        return i;
    }
    return std::nullopt;
}

// One complete construction attempt from the candidate's private stream.
std::optional<InstanceSpec> build_candidate(u64 seed, u32 index, u32 p, u32 max_ds,
                                            u32 max_db, const FuzzOptions& opt) {
    std::mt19937_64 rng(seed * stream_mix + index + 1);
    PrimeField f(p);
    u32 ds = 1 + draw(rng, max_ds);
    u32 db = 1 + draw(rng, max_db);
    if (db > ds) db = ds;
    auto s = random_algebra(rng, f, ds, 200);
    if (!s) return std::nullopt;
    auto b = random_algebra(rng, f, db, 200);
    if (!b) return std::nullopt;
    auto i = random_embedding(rng, *b, *s, 500);
    if (!i) return std::nullopt;
    InstanceSpec spec;
    spec.name = "fuzz-" + std::to_string(index);
    spec.p = p;
    spec.extension = *i;
    spec.subspace_budget = opt.subspace_budget;
    spec.endo_budget = opt.endo_budget;
    spec.seed = seed;
    spec.source = serialize_instance(spec);
    return spec;
}

std::string failure_summary(const Json& j) {
    std::string out = "asserted checks failed:";
    for (const auto& [k, v] : j["verdicts"].items())
        if (v["status"] == "fail") out += " " + k;
    const Json& c = j["certificate"];
    if (!c.is_null()) {
        if (c["present"] == true && c["verified"] == false) out += " certificate-verification";
        if (c["conservative"] == false) out += " conservativity";
        if (!c["adjunction_unit"].is_null() && c["adjunction_unit"]["ok"] == false)
            out += " adjunction-unit";
        if (!c["equalizer_preservation"].is_null() &&
            c["equalizer_preservation"]["all_preserved"] == false)
            out += " equalizer-preservation";
    }
    return out;
}

}  // namespace

FuzzReport fuzz(u32 p, u32 max_dim_s, u32 max_dim_b, u32 count, u64 seed,
                const FuzzOptions& options) {
    if (!is_prime(p)) throw Error("modulus must be prime");
    if (max_dim_s == 0 || max_dim_b == 0) throw Error("dimension bounds must be positive");
    FuzzReport rep;
    rep.requested = count;
    for (u32 index = 0; rep.certified < count && index < options.max_candidates; ++index) {
        rep.candidates = index + 1;
        std::optional<InstanceSpec> spec =
            build_candidate(seed, index, p, max_dim_s, max_dim_b, options);
        if (!spec) {
            ++rep.skipped_unbuildable;
            continue;
        }
        try {
            VerificationReport vr = run_suite(*spec);
            if (!vr.budget_guard.empty()) {
                ++rep.skipped_budget;
                continue;
            }
            if (vr.json["certificate"]["present"] != true) {
                ++rep.skipped_uncertified;
                continue;
            }
            ++rep.certified;
            if (vr.verdict_failure)
                rep.violations.push_back(
                    {seed, index, failure_summary(vr.json), spec->source});
        } catch (const BudgetError&) {
            ++rep.skipped_budget;
        } catch (const Error& e) {
            // Includes InternalError: a mathematically guaranteed identity
            // failed while processing a well-formed instance.
            rep.violations.push_back({seed, index, e.what(), spec->source});
        }
    }
    return rep;
}

MutationResult mutation_self_test() {
    MutationResult res;
    auto text = builtin_instance("split2(2)");
    if (!text) throw InternalError("self-test instance unavailable");
    ParseResult pr = parse_instance(*text);
    if (!pr.ok()) throw InternalError("self-test instance does not parse");
    SweedlerCoring sc = build_sweedler(pr.spec->extension);
    std::vector<Matrix> endos = coring_endomorphisms(sc.coring);
    Matrix g = endos.front();
    for (const Matrix& e : endos)
        if (!e.is_identity()) g = e;
    const PrimeField& f = g.field();
    for (u32 r = 0; r < g.rows(); ++r)
        for (u32 c = 0; c < g.cols(); ++c) {
            Matrix bad = g;
            bad(r, c) = f.add(bad(r, c), 1);
            bool still_valid = false;
            for (const Matrix& e : endos) still_valid = still_valid || bad == e;
            if (still_valid) continue;  // the flip landed on another valid map
            std::string where =
                "entry (" + std::to_string(r) + ", " + std::to_string(c) + ")";
            std::vector<std::string> defects = validate_coring_morphism(sc.coring, bad);
            if (!defects.empty()) {
                res.caught = true;
                res.message = "corruption at " + where + " detected: " + defects.front();
                return res;
            }
            try {
                DescentConditions dc = descent_conditions(sc, bad);
                if (!dc.agree || !dc.twist_equalizer_equals_j ||
                    !dc.counit_is_left_multiplication) {
                    res.caught = true;
                    res.message =
                        "corruption at " + where + " detected by the descent conditions";
                    return res;
                }
            } catch (const Error& e) {
                res.caught = true;
                res.message = "corruption at " + where + " detected: " + e.what();
                return res;
            }
            res.caught = false;
            res.message = "corruption at " + where + " went undetected";
            return res;
        }
    res.caught = false;
    res.message = "no corruptible entry found";
    return res;
}

}  // namespace descent
