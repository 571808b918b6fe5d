// Faithful flatness and retraction witnesses, conservativity, equalizer
// preservation, certificates and the adjunction unit on cyclic modules.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "descent_forge/comonadicity.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace descent;
using namespace testhelp;

namespace {

// Non-injective morphism F_2 x F_2 -> F_2, first-coordinate projection.
Extension projection_map(PrimeField f) {
    Matrix pr(1, 2, f);
    pr(0, 0) = 1;
    return Extension(product_field_algebra(f), field_algebra(f), pr);
}

}  // namespace

TEST_CASE("faithful flatness over a field and over the diagonal") {
    PrimeField f(2);
    auto pl = is_faithfully_flat(plane_module(f), Side::left);
    REQUIRE(pl.has_value());
    CHECK(pl->simples_checked == 1);
    CHECK(is_faithfully_flat(plane_module(f), Side::right).has_value());

    // S = M_2 is free of rank two over the diagonal on both legs.
    Extension d = diag_in_mat2(f);
    auto right_leg = is_faithfully_flat(extension_bimodule_sb(d), Side::right);
    REQUIRE(right_leg.has_value());
    CHECK(right_leg->side == Side::right);
    CHECK(right_leg->simples_checked == 2);
    auto left_leg = is_faithfully_flat(extension_bimodule_bs(d), Side::left);
    REQUIRE(left_leg.has_value());
    CHECK(left_leg->simples_checked == 2);

    // The column module is free of rank one as a left module.
    CHECK(is_faithfully_flat(column_module(f), Side::left).has_value());
}

TEST_CASE("flatness fails without a dual-basis lift") {
    PrimeField f(2);
    FiniteAlgebra b = dual_numbers_algebra(f);
    // M = B/(x): the section would need sigma(1) in the annihilator of x
    // that still covers 1, which is impossible.
    QuotientModule m = quotient_left_module(b, Subspace::span_of_vecs({{0, 1}}, 2, f));
    CHECK(m.module.dim() == 1);
    CHECK_FALSE(is_faithfully_flat(m.module, Side::left).has_value());

    // The zero module is flat but not faithful.
    Bimodule zero = left_module(b, 0, std::vector<Matrix>(2, Matrix(0, 0, f)));
    CHECK_FALSE(is_faithfully_flat(zero, Side::left).has_value());
}

TEST_CASE("bimodule retractions of the unit") {
    PrimeField f(2);
    auto id = is_direct_summand(identity_extension(f));
    REQUIRE(id.has_value());
    CHECK(id->is_identity());

    for (const Extension& i : {split_pair(f), dual_numbers_over_field(f),
                               field_in_mat2(f), diag_in_mat2(f)}) {
        auto pi = is_direct_summand(i);
        REQUIRE(pi.has_value());
        CHECK((*pi * i.matrix()).is_identity());
    }
    // No retraction can split a non-injective unit.
    CHECK_FALSE(is_direct_summand(projection_map(f)).has_value());
}

TEST_CASE("conservativity over cyclic modules") {
    PrimeField f(2);
    ConservativityLog field_base = is_conservative(split_pair(f));
    CHECK(field_base.conservative());
    CHECK(field_base.ideals_checked == 1);

    ConservativityLog diag = is_conservative(diag_in_mat2(f));
    CHECK(diag.conservative());
    CHECK(diag.ideals_checked == 3);

    // Projection onto the first factor kills the module supported on the
    // second: the first coordinate line is the counterexample ideal.
    ConservativityLog bad = is_conservative(projection_map(f));
    CHECK_FALSE(bad.conservative());
    CHECK(bad.ideals_checked == 2);
    CHECK(*bad.counterexample == Subspace::span_of_vecs({{1, 0}}, 2, f));
}

TEST_CASE("equalizer preservation on twist comodules") {
    for (const Extension& i : {split_pair(PrimeField(3)), dual_numbers_over_field(PrimeField(2)),
                               diag_in_mat2(PrimeField(2))}) {
        SweedlerCoring sc = build_sweedler(i);
        for (const Matrix& g : coring_endomorphisms(sc.coring)) {
            Comodule y = twist_comodule(sc, g);
            CHECK(validate_comodule(y).empty());
            EqualizerReport rep = preserves_equalizer(i, y);
            CHECK(rep.preserved());
            CHECK(rep.split_fork);
            CHECK(rep.invariants_dim == j_of(sc, g, Side::left).space.dim());
        }
    }
}

TEST_CASE("equalizer preservation on comparison comodules") {
    PrimeField f(2);
    for (const Extension& i : {split_pair(f), dual_numbers_over_field(f), diag_in_mat2(f)}) {
        const FiniteAlgebra& b = i.source();
        for (const Subspace& ideal : left_ideals(b)) {
            if (ideal.dim() == b.dim()) continue;
            QuotientModule x = quotient_left_module(b, ideal);
            Comodule y = comparison_comodule(i, x.module);
            CHECK(validate_comodule(y).empty());
            EqualizerReport rep = preserves_equalizer(i, y);
            CHECK(rep.preserved());
            CHECK(rep.split_fork);
            CHECK(rep.invariants_dim == x.module.dim());
        }
    }
}

TEST_CASE("certificates select evidence in fixed order and re-verify") {
    PrimeField f(2);
    for (const Extension& i : {identity_extension(f), split_pair(f),
                               dual_numbers_over_field(f), gf4_over_gf2(),
                               field_in_mat2(f), diag_in_mat2(f)}) {
        auto c = certify(i);
        REQUIRE(c.has_value());
        // Every built-in is free over its base, so the first kind wins even
        // when retraction evidence also exists.
        CHECK(c->kind == EvidenceKind::left_faithfully_flat);
        CHECK(c->licenses_left());
        CHECK_FALSE(c->licenses_right());
        CHECK(verify_certificate(*c).empty());
    }
    CHECK_FALSE(certify(projection_map(f)).has_value());
}

TEST_CASE("certified instances are conservative and preserve the equalizers in use") {
    PrimeField f(2);
    for (const Extension& i : {split_pair(f), dual_numbers_over_field(f), diag_in_mat2(f)}) {
        REQUIRE(certify(i).has_value());
        CHECK(is_conservative(i).conservative());
        SweedlerCoring sc = build_sweedler(i);
        for (const Matrix& g : coring_endomorphisms(sc.coring))
            CHECK(preserves_equalizer(i, twist_comodule(sc, g)).preserved());
    }
}

TEST_CASE("module evidence kinds for the evaluation coring") {
    PrimeField f(2);
    ComatrixCoring cc = build_comatrix(column_module(f));
    auto c = certify(cc.end.unit_map, cc.module);
    REQUIRE(c.has_value());
    CHECK(c->kind == EvidenceKind::left_faithfully_flat);

    // Exercise the module branch directly by assembling the certificate the
    // branch would produce.
    auto w = is_faithfully_flat(cc.module, Side::left);
    REQUIRE(w.has_value());
    Certificate mc;
    mc.extension = cc.end.unit_map;
    mc.kind = EvidenceKind::left_ff_module;
    mc.flatness = w;
    mc.module = cc.module;
    CHECK(verify_certificate(mc).empty());
    CHECK_FALSE(mc.licenses_left());
    CHECK_FALSE(mc.licenses_right());

    auto wd = is_faithfully_flat(dual_module(cc.module).module, Side::right);
    REQUIRE(wd.has_value());
    Certificate dc;
    dc.extension = cc.end.unit_map;
    dc.kind = EvidenceKind::right_ff_dual_module;
    dc.flatness = wd;
    dc.module = cc.module;
    CHECK(verify_certificate(dc).empty());
}

TEST_CASE("tampered witnesses fail re-verification") {
    PrimeField f(2);
    Extension i = dual_numbers_over_field(f);
    auto pi = is_direct_summand(i);
    REQUIRE(pi.has_value());
    Certificate c;
    c.extension = i;
    c.kind = EvidenceKind::bimodule_retraction;
    c.retraction = pi;
    CHECK(verify_certificate(c).empty());
    (*c.retraction)(0, 0) = 0;  // break pi o i = id
    CHECK_FALSE(verify_certificate(c).empty());

    auto cert = certify(i);
    REQUIRE(cert.has_value());
    Certificate broken = *cert;
    REQUIRE(broken.flatness.has_value());
    broken.flatness->section(0, 0) = broken.flatness->section(0, 0) == 0 ? 1 : 0;
    CHECK_FALSE(verify_certificate(broken).empty());
}

TEST_CASE("adjunction unit is bijective on cyclic modules of certified instances") {
    PrimeField f(2);
    struct Row {
        Extension ext;
        u32 count;
    };
    std::vector<Row> rows = {{split_pair(f), 1},
                             {dual_numbers_over_field(f), 1},
                             {diag_in_mat2(f), 3},
                             {field_in_mat2(f), 1}};
    for (const Row& r : rows) {
        AdjunctionUnitReport rep = adjunction_unit_check(r.ext);
        CHECK(rep.ok());
        CHECK(rep.modules_checked == r.count);
    }
    AdjunctionUnitReport bad = adjunction_unit_check(projection_map(f));
    CHECK_FALSE(bad.ok());
}
