#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "descent_forge/coring.hpp"
#include "descent_forge/endalg.hpp"
#include "descent_forge/instance.hpp"
#include "descent_forge/report.hpp"

using namespace descent;

namespace {

bool has_error_containing(const ParseResult& r, const std::string& needle) {
    for (const ParseError& e : r.errors)
        if (e.describe().find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("a hand-written instance file parses") {
    const std::string text = R"(
# the two-dimensional split extension of the prime field
[instance]
name = "demo"
p = 3
seed = 7

[algebra.k]
dim = 1
unit = [1]
mul = [[1]]

[algebra.kk]
dim = 2
unit = [1, 1]
mul = [
  [1, 0], [0, 0],
  [0, 0], [0, 1],
]

[extension]
base = "k"
target = "kk"
map = [[1, 1]]

[budgets]
subspace = 500
endo = 64
)";
    ParseResult r = parse_instance(text);
    REQUIRE(r.ok());
    const InstanceSpec& s = *r.spec;
    CHECK(s.name == "demo");
    CHECK(s.p == 3);
    CHECK(s.seed == 7);
    CHECK(s.extension.source().dim() == 1);
    CHECK(s.extension.target().dim() == 2);
    CHECK(s.extension.matrix().col(0) == Vec{1, 1});
    CHECK(!s.evaluation.has_value());
    CHECK(s.subspace_budget == 500);
    CHECK(s.endo_budget == 64);
    CHECK(s.source == text);
    CHECK(validate_morphism(s.extension).empty());
}

TEST_CASE("negative entries are reduced into the field") {
    const std::string text = R"(
[instance]
p = 5
[algebra.k]
dim = 1
unit = [1]
mul = [[-4]]
[extension]
base = "k"
target = "k"
map = [[6]]
)";
    ParseResult r = parse_instance(text);
    REQUIRE(r.ok());
    CHECK(r.spec->extension.source().basis_product(0, 0) == Vec{1});
    CHECK(r.spec->extension.matrix()(0, 0) == 1);
}

TEST_CASE("a composite modulus is rejected with the canonical message") {
    const std::string text = "[instance]\np = 4\n";
    ParseResult r = parse_instance(text);
    CHECK(!r.ok());
    REQUIRE(r.errors.size() == 1);
    CHECK(r.errors[0].message == "modulus must be prime");
    CHECK(r.errors[0].line == 2);
    CHECK(r.errors[0].field == "instance.p");
}

TEST_CASE("structural problems are reported with located diagnostics") {
    SUBCASE("key outside any section") {
        ParseResult r = parse_instance("p = 2\n");
        CHECK(!r.ok());
        CHECK(has_error_containing(r, "line 1"));
        CHECK(has_error_containing(r, "outside any section"));
    }
    SUBCASE("unterminated string") {
        ParseResult r = parse_instance("[instance]\nname = \"oops\np = 2\n");
        CHECK(!r.ok());
        CHECK(has_error_containing(r, "unterminated string"));
    }
    SUBCASE("missing extension section") {
        ParseResult r = parse_instance("[instance]\np = 2\n");
        CHECK(!r.ok());
        CHECK(has_error_containing(r, "extension"));
        CHECK(has_error_containing(r, "missing section"));
    }
    SUBCASE("missing algebra section named by the extension") {
        ParseResult r = parse_instance(
            "[instance]\np = 2\n[extension]\nbase = \"k\"\ntarget = \"k\"\nmap = [[1]]\n");
        CHECK(!r.ok());
        CHECK(has_error_containing(r, "algebra.k"));
    }
    SUBCASE("wrong row count in a matrix") {
        ParseResult r = parse_instance(R"(
[instance]
p = 2
[algebra.k]
dim = 1
unit = [1]
mul = [[1], [1]]
[extension]
base = "k"
target = "k"
map = [[1]]
)");
        CHECK(!r.ok());
        CHECK(has_error_containing(r, "expected 1 rows, got 2"));
    }
}

TEST_CASE("an inconsistent multiplication table names the offending triple") {
    // Truncated polynomials F_2[x]/(x^3) with basis 1, x, x^2. The template is
    // valid; corrupting x * x^2 from 0 to 1 keeps the unit laws but breaks
    // associativity at (x, x, x^2): (x x) x^2 = 0 while x (x x^2) = x.
    const std::string text = R"(
[instance]
p = 2
[algebra.bad]
dim = 3
unit = [1, 0, 0]
mul = [
  [1, 0, 0], [0, 1, 0], [0, 0, 1],
  [0, 1, 0], [0, 0, 1], [0, 0, 0],
  [0, 0, 1], [0, 0, 0], [0, 0, 0],
]
[extension]
base = "bad"
target = "bad"
map = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
)";
    ParseResult good = parse_instance(text);
    CHECK(good.ok());

    std::string bad = text;
    size_t pos = bad.find("[0, 0, 1], [0, 0, 0],");
    REQUIRE(pos != std::string::npos);
    bad.replace(pos, std::string("[0, 0, 1], [0, 0, 0],").size(), "[0, 0, 1], [1, 0, 0],");
    ParseResult r = parse_instance(bad);
    CHECK(!r.ok());
    CHECK(has_error_containing(r, "associativity fails at (e_1, e_1, e_2)"));
}

TEST_CASE("a non-multiplicative extension map is rejected") {
    const std::string text = R"(
[instance]
p = 2
[algebra.k]
dim = 1
unit = [1]
mul = [[1]]
[algebra.d]
dim = 2
unit = [1, 0]
mul = [
  [1, 0], [0, 1],
  [0, 1], [0, 0],
]
[extension]
base = "k"
target = "d"
map = [[0, 1]]
)";
    ParseResult r = parse_instance(text);
    CHECK(!r.ok());
    CHECK(has_error_containing(r, "f(1) != 1"));
}

TEST_CASE("comatrix blocks build a validated evaluation bimodule") {
    auto text = builtin_instance("comatrix-diag-mat2(2)");
    REQUIRE(text.has_value());
    ParseResult r = parse_instance(*text);
    REQUIRE(r.ok());
    const InstanceSpec& s = *r.spec;
    REQUIRE(s.evaluation.has_value());
    CHECK(s.evaluation->dim() == 2);
    CHECK(s.evaluation->left_alg().dim() == 2);
    CHECK(s.evaluation->right_alg().dim() == 1);
    CHECK(validate_bimodule(*s.evaluation).empty());
    // The declared extension must be the evaluation map of the module.
    EndAlgebra e = end_algebra(*s.evaluation);
    CHECK(e.unit_map.matrix() == s.extension.matrix());
    CHECK(e.algebra == s.extension.target());
}

TEST_CASE("a corrupted comatrix action stack is rejected") {
    auto text = builtin_instance("comatrix-diag-mat2(2)");
    REQUIRE(text.has_value());
    // Make the left action of the first idempotent non-multiplicative.
    std::string bad = *text;
    size_t pos = bad.find("left = [\n  [1, 0],");
    REQUIRE(pos != std::string::npos);
    bad.replace(pos, std::string("left = [\n  [1, 0],").size(), "left = [\n  [1, 1],");
    ParseResult r = parse_instance(bad);
    CHECK(!r.ok());
    CHECK(has_error_containing(r, "comatrix"));
}

TEST_CASE("serialization round-trips through the parser") {
    for (const std::string& name : builtin_names(2)) {
        CAPTURE(name);
        auto text = builtin_instance(name);
        REQUIRE(text.has_value());
        ParseResult r = parse_instance(*text);
        REQUIRE(r.ok());
        CHECK(serialize_instance(*r.spec) == *text);
        CHECK(r.spec->name == name);
        CHECK(r.spec->p == 2);
    }
    for (const std::string& name : builtin_names(3)) {
        CAPTURE(name);
        auto text = builtin_instance(name);
        REQUIRE(text.has_value());
        ParseResult r = parse_instance(*text);
        REQUIRE(r.ok());
        CHECK(serialize_instance(*r.spec) == *text);
        CHECK(r.spec->p == 3);
    }
}

TEST_CASE("built-in instances have the expected shapes") {
    struct Row {
        std::string name;
        u32 base_dim, target_dim;
    };
    const std::vector<Row> rows = {
        {"id-ext(2)", 1, 1},     {"split2(2)", 1, 2},    {"dual-numbers(2)", 1, 2},
        {"field4", 1, 2},        {"mat2(2)", 1, 4},      {"diag-mat2(2)", 2, 4},
        {"comatrix-mat2(2)", 1, 4}, {"comatrix-diag-mat2(2)", 2, 4},
    };
    for (const Row& row : rows) {
        CAPTURE(row.name);
        auto text = builtin_instance(row.name);
        REQUIRE(text.has_value());
        ParseResult r = parse_instance(*text);
        REQUIRE(r.ok());
        CHECK(r.spec->extension.source().dim() == row.base_dim);
        CHECK(r.spec->extension.target().dim() == row.target_dim);
        CHECK(r.spec->extension.injective());
        CHECK(validate_morphism(r.spec->extension).empty());
    }
    CHECK(builtin_names(2).size() == 8);
    CHECK(builtin_names(3).size() == 7);  // field4 only lives over F_2
}

TEST_CASE("unknown built-in names are refused") {
    CHECK(!builtin_instance("mat3(2)").has_value());
    CHECK(!builtin_instance("mat2(4)").has_value());  // composite parameter
    CHECK(!builtin_instance("mat2").has_value());
    CHECK(!builtin_instance("").has_value());
    CHECK(!builtin_instance("field4(2)").has_value());
}

namespace {

InstanceSpec parsed(const std::string& builtin) {
    auto text = builtin_instance(builtin);
    REQUIRE(text.has_value());
    ParseResult r = parse_instance(*text);
    REQUIRE(r.ok());
    return *r.spec;
}

}  // namespace

TEST_CASE("reports are byte-deterministic with the pinned key order") {
    InstanceSpec s = parsed("split2(2)");
    VerificationReport a = run_suite(s);
    VerificationReport b = run_suite(s);
    CHECK(a.json.dump() == b.json.dump());
    std::vector<std::string> keys;
    for (auto& [k, v] : a.json.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"instance", "certificate", "monoids", "gamma",
                                           "gamma0", "prop31", "verdicts", "timing",
                                           "version"});
    CHECK(a.json["version"] == report_version);
    CHECK(a.json["timing"]["recorded"] == false);
    CHECK(a.json["timing"]["total_ms"] == 0);
    CHECK(a.json["instance"]["hash"].get<std::string>().size() == 16);
    CHECK(a.json["instance"]["source"] == s.source);
}

TEST_CASE("content hash tracks source, seed and version") {
    InstanceSpec s = parsed("split2(2)");
    std::string h = content_hash(s);
    InstanceSpec reseeded = s;
    reseeded.seed = 1;
    CHECK(content_hash(reseeded) != h);
    InstanceSpec edited = s;
    edited.source += "# comment\n";
    CHECK(content_hash(edited) != h);
    CHECK(content_hash(s) == h);
}

TEST_CASE("certified left evidence asserts left statements and observes right ones") {
    VerificationReport rep = run_suite(parsed("split2(3)"));
    CHECK(!rep.verdict_failure);
    CHECK(rep.budget_guard.empty());
    const Json& j = rep.json;
    CHECK(j["certificate"]["present"] == true);
    CHECK(j["certificate"]["verified"] == true);
    CHECK(j["certificate"]["licenses_left"] == true);
    CHECK(j["certificate"]["licenses_right"] == false);
    CHECK(j["verdicts"]["gamma_monoid_isomorphism"]["status"] == "pass");
    CHECK(j["verdicts"]["gamma_retraction"]["status"] == "pass");
    CHECK(j["verdicts"]["gamma_prime_antiisomorphism"]["status"] == "observed");
    CHECK(j["verdicts"]["gamma_prime_antiisomorphism"]["holds"] == true);
    CHECK(j["verdicts"]["invertibles_group_isomorphism"]["status"] == "pass");
    CHECK(j["verdicts"]["descent_conditions_equivalent"]["status"] == "pass");
    // |I^l| = |End| = 2 on this instance.
    CHECK(j["monoids"]["subbimodules"]["left_invertible"].size() == 2);
    CHECK(j["monoids"]["endomorphisms"]["count"] == 2);
    CHECK(j["prop31"]["all_agree"] == true);
    CHECK(j["prop31"]["identities_hold"] == true);
    CHECK(j["prop31"]["rows"].size() == 2);
}

TEST_CASE("suite selection nulls the sections it does not run") {
    InstanceSpec s = parsed("split2(2)");
    SUBCASE("prop31") {
        VerificationReport rep = run_suite(s, {.which = Suite::prop31});
        CHECK(rep.json["gamma"].is_null());
        CHECK(rep.json["gamma0"].is_null());
        CHECK(!rep.json["prop31"].is_null());
        CHECK(rep.json["verdicts"].size() == 1);
        CHECK(rep.json["certificate"]["conservative"].is_null());
    }
    SUBCASE("gamma") {
        VerificationReport rep = run_suite(s, {.which = Suite::gamma});
        CHECK(!rep.json["gamma"].is_null());
        CHECK(rep.json["prop31"].is_null());
        CHECK(rep.json["verdicts"].size() == 4);
    }
    SUBCASE("comonadicity") {
        VerificationReport rep = run_suite(s, {.which = Suite::comonadicity});
        CHECK(rep.json["monoids"].is_null());
        CHECK(rep.json["gamma"].is_null());
        CHECK(rep.json["verdicts"].empty());
        CHECK(rep.json["certificate"]["conservative"] == true);
        CHECK(rep.json["certificate"]["adjunction_unit"]["ok"] == true);
        CHECK(rep.json["certificate"]["equalizer_preservation"]["all_preserved"] == true);
    }
    SUBCASE("comatrix without a comatrix block") {
        VerificationReport rep = run_suite(s, {.which = Suite::comatrix});
        CHECK(rep.json["gamma0"].is_null());
        CHECK(rep.json["verdicts"].empty());
        CHECK(!rep.verdict_failure);
    }
}

TEST_CASE("the comatrix suite transports the monoid onto the evaluation coring") {
    VerificationReport rep = run_suite(parsed("comatrix-diag-mat2(2)"));
    CHECK(!rep.verdict_failure);
    const Json& g0 = rep.json["gamma0"];
    REQUIRE(!g0.is_null());
    CHECK(g0["evaluation_iso_bijective"] == true);
    CHECK(g0["endomorphisms"]["count"] == 4);
    CHECK(g0["left"]["bijective"] == true);
    CHECK(g0["left"]["respects_products"] == true);
    CHECK(g0["group"]["bijective"] == true);
    CHECK(g0["group"]["automorphisms"].size() == 2);
    CHECK(g0["hat"]["injective"] == true);
    CHECK(g0["hat"]["multiplicative"] == true);
    CHECK(g0["triangle"]["checked"] == 4);
    CHECK(g0["triangle"]["violations"].empty());
    CHECK(g0["module_evidence"]["left_module_faithfully_flat"] == true);
    CHECK(rep.json["verdicts"]["gamma0_monoid_isomorphism"]["status"] == "pass");
    CHECK(rep.json["verdicts"]["gamma0_group_isomorphism"]["status"] == "pass");
    CHECK(rep.json["verdicts"]["evaluation_module_group_isomorphism"]["status"] == "pass");
    CHECK(rep.json["verdicts"]["gamma0_prime_antiisomorphism"]["status"] == "observed");
    CHECK(rep.json["verdicts"]["gamma0_prime_antiisomorphism"]["holds"] == true);
}

TEST_CASE("a comatrix block that is not the evaluation map of the module is refused") {
    InstanceSpec s = parsed("comatrix-diag-mat2(2)");
    // Swapping the two base idempotents is still a valid injective morphism,
    // but no longer the evaluation map of the declared module.
    Matrix swapped = s.extension.matrix();
    swapped.set_col(0, s.extension.matrix().col(1));
    swapped.set_col(1, s.extension.matrix().col(0));
    s.extension = Extension(s.extension.source(), s.extension.target(), swapped);
    REQUIRE(validate_morphism(s.extension).empty());
    CHECK_THROWS_AS(run_suite(s), Error);
}

TEST_CASE("budget violations yield a partial report naming the guard") {
    InstanceSpec s = parsed("mat2(2)");
    s.subspace_budget = 3;
    VerificationReport rep = run_suite(s);
    CHECK(!rep.budget_guard.empty());
    CHECK(rep.json["timing"]["budget_guard"] == rep.budget_guard);
    CHECK(!rep.json["certificate"].is_null());
    CHECK(rep.json["monoids"].is_null());  // enumeration was cut short
    CHECK(!rep.verdict_failure);
    CHECK(rep.json["verdicts"].empty());
}

TEST_CASE("suite names resolve") {
    CHECK(suite_from_name("all") == Suite::all);
    CHECK(suite_from_name("gamma") == Suite::gamma);
    CHECK(suite_from_name("comatrix") == Suite::comatrix);
    CHECK(suite_from_name("prop31") == Suite::prop31);
    CHECK(suite_from_name("comonadicity") == Suite::comonadicity);
    CHECK(!suite_from_name("everything").has_value());
}
