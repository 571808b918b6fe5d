// Acceptance gate: one pass/fail line per criterion, exit code = number of
// failed criteria. Each criterion re-derives its expected values from scratch
// on the shipped instance corpus; runtime bounds are pinned alongside each
// check.
#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <vector>

#include "descent_forge/comonadicity.hpp"
#include "descent_forge/descent.hpp"
#include "descent_forge/fuzz.hpp"
#include "descent_forge/instance.hpp"

using namespace descent;

namespace {

const std::vector<std::string> shipped = {
    "id-ext(2)",        "split2(2)", "split2(3)",  "dual-numbers(2)",
    "field4",           "mat2(2)",   "diag-mat2(2)", "comatrix-mat2(2)",
    "comatrix-diag-mat2(2)",
};

InstanceSpec load(const std::string& name) {
    auto text = builtin_instance(name);
    if (!text) throw Error("missing built-in " + name);
    ParseResult r = parse_instance(*text);
    if (!r.ok()) throw Error("built-in " + name + " does not parse");
    return *r.spec;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    long ms() const {
        return static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                     std::chrono::steady_clock::now() - t0)
                                     .count());
    }
};

struct Outcome {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        ok = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
};

// 1. Exact coactions: counit and coassociativity identities on every shipped
//    instance, for the canonical coring and (where defined) the comatrix one.
Outcome criterion1() {
    constexpr long bound_ms = 5000;
    Timer t;
    Outcome o;
    for (const std::string& name : shipped) {
        InstanceSpec s = load(name);
        SweedlerCoring sc = build_sweedler(s.extension);
        if (!validate_sweedler(sc).empty()) o.fail(name + ": canonical coring axioms");
        if (s.evaluation) {
            ComatrixCoring cc = build_comatrix(*s.evaluation);
            if (!validate_coring(cc.coring).empty()) o.fail(name + ": comatrix coring axioms");
        }
    }
    long ms = t.ms();
    if (ms >= bound_ms) o.fail("took " + std::to_string(ms) + " ms (bound 5000)");
    o.detail = o.ok ? std::to_string(ms) + " ms, 9 instances" : o.detail;
    return o;
}

// 2. The subbimodule-to-endomorphism translation is a bijective monoid
//    morphism, with the invariants construction as a retraction, on four
//    certified instances with frozen cardinalities.
Outcome criterion2() {
    constexpr long bound_ms = 60000;  // per instance
    struct Row {
        std::string name;
        u32 expected_left;  // 0 = only require >= 2
    };
    const std::vector<Row> rows = {
        {"split2(3)", 2}, {"dual-numbers(2)", 2}, {"mat2(2)", 6}, {"diag-mat2(2)", 0}};
    Outcome o;
    long worst = 0;
    for (const Row& row : rows) {
        Timer t;
        InstanceSpec s = load(row.name);
        if (!certify(s.extension, s.subspace_budget))
            o.fail(row.name + ": no certificate");
        SweedlerCoring sc = build_sweedler(s.extension);
        SubBimoduleMonoid monoid = subbimodule_monoid(s.extension, s.subspace_budget);
        std::vector<Matrix> endos = coring_endomorphisms(sc.coring, s.endo_budget);
        GammaWitness w = verify_gamma_iso(sc, monoid, endos, Side::left);
        if (!(w.unit_to_identity && w.respects_products && w.bijective))
            o.fail(row.name + ": not a bijective monoid morphism");
        for (u32 k = 0; k < w.domain.size(); ++k)
            if (w.forward[k] == no_index || w.backward[w.forward[k]] != k)
                o.fail(row.name + ": invariants do not retract the translation");
        u32 nl = static_cast<u32>(w.domain.size());
        if (row.expected_left ? nl != row.expected_left : nl < 2)
            o.fail(row.name + ": left-invertible count " + std::to_string(nl));
        if (nl != endos.size()) o.fail(row.name + ": endomorphism count mismatch");
        if (row.name == "mat2(2)") {
            // Order 6, closed, and non-abelian pins the symmetric group S_3.
            bool closed = true, abelian = true;
            for (u32 a : monoid.left)
                for (u32 b : monoid.left) {
                    u32 c = monoid.table.at(a, b);
                    if (std::find(monoid.left.begin(), monoid.left.end(), c) ==
                        monoid.left.end())
                        closed = false;
                    if (c != monoid.table.at(b, a)) abelian = false;
                }
            if (!(monoid.left.size() == 6 && closed && !abelian))
                o.fail("mat2(2): translation monoid is not S_3");
        }
        worst = std::max(worst, t.ms());
        if (t.ms() >= bound_ms) o.fail(row.name + ": exceeded 60 s");
    }
    if (o.ok) o.detail = "4 instances, worst " + std::to_string(worst) + " ms";
    return o;
}

// 3. The four descent conditions agree on every coring endomorphism of every
//    shipped instance, and the twisted counit equals left multiplication by
//    the invariants, entrywise.
Outcome criterion3() {
    constexpr long bound_ms = 60000;
    Timer t;
    Outcome o;
    u32 checked = 0;
    for (const std::string& name : shipped) {
        InstanceSpec s = load(name);
        SweedlerCoring sc = build_sweedler(s.extension);
        for (const Matrix& g : coring_endomorphisms(sc.coring, s.endo_budget)) {
            DescentConditions dc = descent_conditions(sc, g);
            if (!dc.agree) o.fail(name + ": conditions disagree");
            if (!dc.counit_is_left_multiplication)
                o.fail(name + ": twisted counit is not left multiplication");
            ++checked;
        }
    }
    long ms = t.ms();
    if (ms >= bound_ms) o.fail("took " + std::to_string(ms) + " ms (bound 60000)");
    if (o.ok) o.detail = std::to_string(checked) + " endomorphisms, " + std::to_string(ms) + " ms";
    return o;
}

// 4. The equalizer of the twisted comodule recovers the invariants
//    subbimodule exactly, for every endomorphism of every shipped instance.
Outcome criterion4() {
    constexpr long bound_ms = 30000;
    Timer t;
    Outcome o;
    u32 checked = 0;
    for (const std::string& name : shipped) {
        InstanceSpec s = load(name);
        SweedlerCoring sc = build_sweedler(s.extension);
        for (const Matrix& g : coring_endomorphisms(sc.coring, s.endo_budget)) {
            DescentConditions dc = descent_conditions(sc, g);
            if (!dc.twist_equalizer_equals_j)
                o.fail(name + ": twist equalizer differs from the invariants");
            ++checked;
        }
    }
    long ms = t.ms();
    if (ms >= bound_ms) o.fail("took " + std::to_string(ms) + " ms (bound 30000)");
    if (o.ok) o.detail = std::to_string(checked) + " endomorphisms, " + std::to_string(ms) + " ms";
    return o;
}

// 5. The right-handed translation reverses products, exhaustively on the
//    smallest noncommutative table.
Outcome criterion5() {
    constexpr long bound_ms = 60000;
    Timer t;
    Outcome o;
    InstanceSpec s = load("mat2(2)");
    SweedlerCoring sc = build_sweedler(s.extension);
    SubBimoduleMonoid monoid = subbimodule_monoid(s.extension, s.subspace_budget);
    u32 pairs = 0;
    for (u32 a : monoid.right)
        for (u32 b : monoid.right) {
            SubBimodule prod =
                subbimodule_product(monoid.elements[a], monoid.elements[b]);
            Matrix lhs = gamma_prime(sc, prod);
            Matrix rhs = gamma_prime(sc, monoid.elements[b]) *
                         gamma_prime(sc, monoid.elements[a]);
            if (lhs != rhs) o.fail("pair (" + std::to_string(a) + ", " + std::to_string(b) + ")");
            ++pairs;
        }
    long ms = t.ms();
    if (ms >= bound_ms) o.fail("took " + std::to_string(ms) + " ms (bound 60000)");
    if (o.ok) o.detail = std::to_string(pairs) + " pairs, " + std::to_string(ms) + " ms";
    return o;
}

// 6. The comatrix translation on the diagonal instance with the column plane:
//    evaluation is an isomorphism, transport embeds the endomorphisms, the
//    two translations agree through it, and the invertibles form the
//    two-element group of coring automorphisms.
Outcome criterion6() {
    constexpr long bound_ms = 60000;
    Timer t;
    Outcome o;
    InstanceSpec s = load("comatrix-diag-mat2(2)");
    SweedlerCoring sc = build_sweedler(s.extension);
    ComatrixCoring cc = build_comatrix(*s.evaluation);
    if (!((cc.end.xi * cc.end.xi_inv).is_identity() &&
          (cc.end.xi_inv * cc.end.xi).is_identity()))
        o.fail("evaluation map is not bijective");

    std::vector<Matrix> endos0 = coring_endomorphisms(cc.coring, s.endo_budget);
    MonoidTable table0 = composition_table(endos0);
    std::vector<Matrix> hats;
    for (const Matrix& g : endos0) hats.push_back(hat_map(sc, cc, g));
    for (u32 a = 0; a < hats.size(); ++a)
        for (u32 b = 0; b < hats.size(); ++b) {
            if (a < b && hats[a] == hats[b]) o.fail("transport is not injective");
            if (hats[table0.at(a, b)] != hats[a] * hats[b])
                o.fail("transport is not multiplicative");
        }

    TriangleReport tri = triangle_check(sc, cc, s.subspace_budget);
    if (tri.checked == 0 || !tri.violations.empty())
        o.fail("translations do not agree through the transport");

    SubBimoduleMonoid monoid = subbimodule_monoid(s.extension, s.subspace_budget);
    std::vector<u32> auts = invertible_elements(table0);
    if (auts.size() != 2) o.fail("automorphism count " + std::to_string(auts.size()));
    if (monoid.invertible.size() != 2)
        o.fail("invertible count " + std::to_string(monoid.invertible.size()));
    std::vector<u32> images;
    for (u32 idx : monoid.invertible) {
        Matrix g = gamma0(cc, monoid.elements[idx], Side::left);
        u32 found = no_index;
        for (u32 k = 0; k < endos0.size(); ++k)
            if (endos0[k] == g) found = k;
        if (found == no_index ||
            std::find(auts.begin(), auts.end(), found) == auts.end())
            o.fail("an invertible element does not map to an automorphism");
        images.push_back(found);
    }
    if (images.size() == 2 && images[0] == images[1]) o.fail("group map is not injective");
    // A two-element group is the group of order 2; onto follows from the
    // counts and injectivity.
    long ms = t.ms();
    if (ms >= bound_ms) o.fail("took " + std::to_string(ms) + " ms (bound 60000)");
    if (o.ok) o.detail = std::to_string(endos0.size()) + " transported endomorphisms, " +
                         std::to_string(ms) + " ms";
    return o;
}

// 7. On every certified shipped instance the invertibles map bijectively onto
//    the coring automorphisms.
Outcome criterion7() {
    constexpr long bound_ms = 60000;
    Timer t;
    Outcome o;
    u32 groups = 0;
    for (const std::string& name : shipped) {
        InstanceSpec s = load(name);
        auto cert = s.evaluation ? certify(s.extension, *s.evaluation, s.subspace_budget)
                                 : certify(s.extension, s.subspace_budget);
        if (!cert) {
            o.fail(name + ": no certificate");
            continue;
        }
        InvWitness w = inv_group(s.extension, s.subspace_budget, s.endo_budget);
        if (!(w.into_automorphisms && w.bijective))
            o.fail(name + ": invertibles are not carried onto the automorphisms");
        ++groups;
    }
    long ms = t.ms();
    if (ms >= bound_ms) o.fail("took " + std::to_string(ms) + " ms (bound 60000)");
    if (o.ok) o.detail = std::to_string(groups) + " instances, " + std::to_string(ms) + " ms";
    return o;
}

// 8. Every shipped instance earns a verifiable certificate, and the
//    comparison unit is bijective on every cyclic module of the base.
Outcome criterion8() {
    constexpr long bound_ms = 60000;
    Timer t;
    Outcome o;
    u32 modules = 0;
    for (const std::string& name : shipped) {
        InstanceSpec s = load(name);
        auto cert = s.evaluation ? certify(s.extension, *s.evaluation, s.subspace_budget)
                                 : certify(s.extension, s.subspace_budget);
        if (!cert) {
            o.fail(name + ": no certificate");
            continue;
        }
        if (!verify_certificate(*cert, s.subspace_budget).empty())
            o.fail(name + ": certificate fails re-verification");
        AdjunctionUnitReport unit = adjunction_unit_check(s.extension, s.subspace_budget);
        if (!unit.ok()) o.fail(name + ": comparison unit not bijective on a cyclic module");
        modules += unit.modules_checked;
    }
    long ms = t.ms();
    if (ms >= bound_ms) o.fail("took " + std::to_string(ms) + " ms (bound 60000)");
    if (o.ok) o.detail = std::to_string(modules) + " cyclic modules, " + std::to_string(ms) + " ms";
    return o;
}

// 9. One hundred random certified instances in characteristic 2 with
//    dimensions at most 2 produce no violations, and a deliberately corrupted
//    endomorphism is caught.
Outcome criterion9() {
    constexpr long bound_ms = 600000;
    Timer t;
    Outcome o;
    FuzzReport r = fuzz(2, 2, 2, 100, 42);
    if (r.certified != 100)
        o.fail("only " + std::to_string(r.certified) + " certified instances");
    if (!r.clean()) {
        for (const FuzzViolation& v : r.violations)
            o.fail("index " + std::to_string(v.index) + ": " + v.message);
    }
    MutationResult m = mutation_self_test();
    if (!m.caught) o.fail("mutation not caught: " + m.message);
    long ms = t.ms();
    if (ms >= bound_ms) o.fail("took " + std::to_string(ms) + " ms (bound 600000)");
    if (o.ok)
        o.detail = std::to_string(r.certified) + " certified over " +
                   std::to_string(r.candidates) + " candidates, " + std::to_string(ms) + " ms";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"coring axioms hold exactly on every shipped instance", criterion1},
        {"translation is a bijective monoid morphism with frozen cardinalities", criterion2},
        {"the four descent conditions agree and the counit identity is exact", criterion3},
        {"twisted-comodule equalizers recover the invariants", criterion4},
        {"right-handed translation reverses products exhaustively", criterion5},
        {"comatrix transport suite on the diagonal instance", criterion6},
        {"invertibles map bijectively onto automorphisms when certified", criterion7},
        {"certificates verify and comparison units are bijective", criterion8},
        {"randomized search finds no violations and catches mutations", criterion9},
    };
    int failures = 0;
    for (u32 k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::cout << (o.ok ? "[PASS] " : "[FAIL] ") << (k + 1) << ". " << criteria[k].first
                  << (o.detail.empty() ? "" : " — " + o.detail) << "\n";
        if (!o.ok) ++failures;
    }
    std::cout << (failures == 0 ? "all criteria satisfied"
                                : std::to_string(failures) + " criteria failed")
              << "\n";
    return failures;
}
