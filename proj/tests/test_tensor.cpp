// Tensor quotients, induced maps, dual modules and endomorphism algebras.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "descent_forge/endalg.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace descent;
using namespace testhelp;

TEST_CASE("tensoring over the base field imposes no relations") {
    PrimeField f(2);
    Extension i = dual_numbers_over_field(f);
    TensorQuotient t = tensor_over(extension_bimodule_sb(i), extension_bimodule_bs(i));
    CHECK(t.full_dim() == 4);
    CHECK(t.relations().rows() == 0);
    CHECK(t.dim() == 4);

    // pure is bilinear.
    Vec x = {1, 1}, y = {0, 1}, z = {1, 0};
    Vec lhs = t.pure2(add_vec(f, x, y), z);
    Vec rhs = add_vec(f, t.pure2(x, z), t.pure2(y, z));
    CHECK(lhs == rhs);
}

TEST_CASE("pure tensors satisfy the balanced identity") {
    for (u32 p : {2u, 3u}) {
        PrimeField f(p);
        Extension i = diag_in_mat2(f);
        Bimodule sb = extension_bimodule_sb(i), bs = extension_bimodule_bs(i);
        TensorQuotient t = tensor_over(sb, bs);
        const FiniteAlgebra& s = i.target();
        for (u32 x = 0; x < s.dim(); ++x)
            for (u32 b = 0; b < i.source().dim(); ++b)
                for (u32 y = 0; y < s.dim(); ++y) {
                    Vec ux = unit_vec(s.dim(), x), uy = unit_vec(s.dim(), y);
                    Vec ub = unit_vec(i.source().dim(), b);
                    CHECK(t.pure2(sb.act_right(ux, ub), uy) ==
                          t.pure2(ux, bs.act_left(ub, uy)));
                }
    }
}

TEST_CASE("dimension of M_2 tensored with itself over the diagonal") {
    // Writing S = M_2(F_p) with matrix-unit basis E_rc and B the diagonal
    // subalgebra, E_ij (x) E_kl survives in S (x)_B S exactly when j = k, so
    // the quotient has one basis class per index chain (i,j,l): 2^3 = 8,
    // independently of p.
    for (u32 p : {2u, 3u}) {
        PrimeField f(p);
        Extension i = diag_in_mat2(f);
        Bimodule sb = extension_bimodule_sb(i), bs = extension_bimodule_bs(i);
        TensorQuotient t = tensor_over(sb, bs);
        CHECK(t.full_dim() == 16);
        CHECK(t.dim() == 8);

        // Independent oracle: accumulate the balanced relations directly in
        // the full tensor space and count their rank.
        EchelonAccumulator acc(16, f);
        for (u32 x = 0; x < 4; ++x)
            for (u32 b = 0; b < 2; ++b)
                for (u32 y = 0; y < 4; ++y) {
                    Vec ux = unit_vec(4, x), uy = unit_vec(4, y);
                    Vec ub = unit_vec(2, b);
                    Vec rel = sub_vec(f, kron_vec(f, sb.act_right(ux, ub), uy),
                                      kron_vec(f, ux, bs.act_left(ub, uy)));
                    acc.insert(rel);
                }
        CHECK(acc.rank() == 8);
        CHECK(t.dim() == t.full_dim() - acc.rank());
    }
}

TEST_CASE("chain quotient agrees with iterated binary quotients") {
    PrimeField f(2);
    Extension i = diag_in_mat2(f);
    Bimodule sb = extension_bimodule_sb(i);
    Bimodule bb = extension_bimodule_bb(i);
    Bimodule bs = extension_bimodule_bs(i);

    TensorQuotient chain = tensor_chain({sb, bb, bs});
    TensorQuotient left = tensor_over(tensor_over(sb, bb).space(), bs);
    // Index-chain count (i,j),(j,k),(k,l): 2^4 = 16.
    CHECK(chain.dim() == 16);
    CHECK(left.dim() == 16);
}

TEST_CASE("outer actions descend to the quotient") {
    PrimeField f(2);
    Extension i = diag_in_mat2(f);
    const FiniteAlgebra& s = i.target();
    Bimodule sb = extension_bimodule_sb(i), bs = extension_bimodule_bs(i);
    TensorQuotient t = tensor_over(sb, bs);
    CHECK(validate_bimodule(t.space()).empty());
    CHECK(t.space().left_alg() == s);
    CHECK(t.space().right_alg() == s);
    for (u32 a = 0; a < s.dim(); ++a)
        for (u32 x = 0; x < s.dim(); ++x)
            for (u32 y = 0; y < s.dim(); ++y) {
                Vec ua = unit_vec(4, a), ux = unit_vec(4, x), uy = unit_vec(4, y);
                CHECK(t.space().act_left(ua, t.pure2(ux, uy)) ==
                      t.pure2(s.mul(ua, ux), uy));
                CHECK(t.space().act_right(t.pure2(ux, uy), ua) ==
                      t.pure2(ux, s.mul(uy, ua)));
            }
}

TEST_CASE("contraction against the base algebra is an isomorphism") {
    PrimeField f(2);
    Extension i = diag_in_mat2(f);
    Bimodule sb = extension_bimodule_sb(i);
    Bimodule b_reg = regular_bimodule(i.source());
    TensorQuotient t = tensor_over(sb, b_reg);
    // s (x) b -> s . i(b) is well defined and bijective onto S.
    Matrix full(4, t.full_dim(), f);
    for (u32 s = 0; s < 4; ++s)
        for (u32 b = 0; b < 2; ++b)
            full.set_col(s * 2 + b, sb.act_right(unit_vec(4, s), unit_vec(2, b)));
    Matrix contract = induced_map_to_space(t, full);
    CHECK(t.dim() == 4);
    CHECK(contract.rank() == 4);
}

TEST_CASE("tensoring an algebra with itself over itself collapses") {
    PrimeField f(2);
    Bimodule reg = regular_bimodule(matrix_algebra(f, 2));
    TensorQuotient t = tensor_over(reg, reg);
    CHECK(t.dim() == 4);
    for (u32 x = 0; x < 4; ++x) {
        Vec ux = unit_vec(4, x);
        CHECK(t.pure2(ux, unit_vec(4, 0) /* E_11 */) ==
              t.pure2(reg.act_right(ux, unit_vec(4, 0)), {1, 0, 0, 1}));
    }
}

TEST_CASE("maps that do not kill the relations are rejected") {
    PrimeField f(2);
    Extension i = diag_in_mat2(f);
    TensorQuotient t = tensor_over(extension_bimodule_sb(i), extension_bimodule_bs(i));
    REQUIRE(t.relations().rows() > 0);
    CHECK_THROWS_AS(induced_map_to_space(t, Matrix::identity(16, f)), InternalError);
}

TEST_CASE("dual of the regular module recovers the algebra") {
    PrimeField f(2);
    FiniteAlgebra a = dual_numbers_algebra(f);
    Bimodule reg = regular_bimodule(a);
    DualModule dual = dual_module(reg);
    CHECK(dual.module.dim() == 2);
    CHECK(validate_bimodule(dual.module).empty());
    auto db = dual_basis(reg, dual);
    REQUIRE(db.has_value());
    // sum m_t . f_t(x) = x, re-checked here against eval.
    for (u32 j = 0; j < 2; ++j) {
        Vec acc(2, 0);
        for (size_t t = 0; t < db->elements.size(); ++t) {
            Vec fx = dual.eval(db->functionals[t], unit_vec(2, j));
            acc = add_vec(f, acc, reg.act_right(db->elements[t], fx));
        }
        CHECK(acc == unit_vec(2, j));
    }
}

TEST_CASE("module killed by the radical admits no dual basis") {
    PrimeField f(2);
    FiniteAlgebra a = dual_numbers_algebra(f);
    FiniteAlgebra k = field_algebra(f);
    // M = F_2 with x acting as zero on the right.
    Bimodule m(k, a, 1, {Matrix::identity(1, f)},
               {Matrix::identity(1, f), Matrix(1, 1, f)});
    REQUIRE(validate_bimodule(m).empty());
    DualModule dual = dual_module(m);
    CHECK(dual.module.dim() == 1);   // f(m) must land in the span of x
    CHECK(dual.maps[0](0, 0) == 0);  // coefficient of 1 vanishes
    CHECK(dual.maps[0](1, 0) == 1);

    // Exhaustive oracle: no element of M (x)_A M* evaluates to the identity.
    TensorQuotient t = tensor_over(m, dual.module);
    u64 total = 1;
    for (u32 d = 0; d < t.dim(); ++d) total *= 2;
    bool any_identity = false;
    for (u64 code = 0; code < total; ++code) {
        Vec coords(t.dim());
        for (u32 d = 0; d < t.dim(); ++d) coords[d] = (code >> d) & 1;
        Vec rep = t.section().apply(coords);
        // xi(u) as a 1x1 endomorphism: entry = sum_{mi,ft} rep . m f(e_0).
        u32 entry = 0;
        for (u32 mi = 0; mi < 1; ++mi)
            for (u32 ft = 0; ft < 1; ++ft) {
                Vec fx = dual.eval(unit_vec(1, ft), unit_vec(1, 0));
                Vec mv = m.act_right(unit_vec(1, mi), fx);
                entry = f.add(entry, f.mul(rep[mi * 1 + ft], mv[0]));
            }
        if (entry == 1) any_identity = true;
    }
    CHECK_FALSE(any_identity);
    CHECK_FALSE(dual_basis(m, dual).has_value());
    CHECK_THROWS_AS(end_algebra(m), Error);
}

TEST_CASE("endomorphisms of the column module form a matrix algebra") {
    PrimeField f(2);
    FiniteAlgebra b = diagonal_algebra(f, 2);
    FiniteAlgebra k = field_algebra(f);
    // M = F_2^2, diagonal acting coordinatewise on the left.
    Matrix e11(2, 2, f), e22(2, 2, f);
    e11(0, 0) = 1;
    e22(1, 1) = 1;
    Bimodule m(b, k, 2, {e11, e22}, {Matrix::identity(2, f)});
    REQUIRE(validate_bimodule(m).empty());

    EndAlgebra ea = end_algebra(m);
    CHECK(ea.algebra == matrix_algebra(f, 2));
    CHECK(ea.rep.size() == 4);
    CHECK(ea.unit_map.injective());
    CHECK(ea.unit_map.image() ==
          Subspace::span_of_vecs({unit_vec(4, 0), unit_vec(4, 3)}, 4, f));
    CHECK(ea.dual.module.dim() == 2);
    CHECK(ea.m_mstar.dim() == 4);
    CHECK(ea.xi.rank() == 4);
    CHECK((ea.xi * ea.xi_inv).is_identity());

    auto db = dual_basis(m, ea.dual);
    CHECK(db.has_value());

    // Right S-action on the dual: (f . s)(x) = f(s x).
    for (u32 kk = 0; kk < 4; ++kk)
        for (u32 ft = 0; ft < 2; ++ft)
            for (u32 x = 0; x < 2; ++x) {
                Vec fs = ea.dual_right_s[kk].apply(unit_vec(2, ft));
                Vec lhs = ea.dual.eval(fs, unit_vec(2, x));
                Vec rhs = ea.dual.eval(unit_vec(2, ft), ea.rep[kk].apply(unit_vec(2, x)));
                CHECK(lhs == rhs);
            }

    // The endomorphism attached to i(b) is the original left action.
    for (u32 j = 0; j < 2; ++j) {
        Vec s = ea.unit_map.apply(unit_vec(2, j));
        CHECK(vec_of(ea.endo(s)) == vec_of(m.left_action_basis(j)));
    }
}

TEST_CASE("end_algebra of the regular module is the opposite-acting copy") {
    // For M = A over A, endomorphisms commuting with right multiplication are
    // exactly left multiplications, so S has A's dimension and i is bijective.
    PrimeField f(3);
    FiniteAlgebra a = product_field_algebra(f);
    Bimodule reg = regular_bimodule(a);
    EndAlgebra ea = end_algebra(reg);
    CHECK(ea.algebra.dim() == 2);
    CHECK(ea.unit_map.injective());
    CHECK(ea.unit_map.image() == Subspace::full(2, f));
    CHECK(ea.xi.rank() == 2);
}
