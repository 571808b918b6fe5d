// Shared ring-extension fixtures for the test suite.
#pragma once

#include "descent_forge/endalg.hpp"

namespace testhelp {

using namespace descent;

// B = S = F_p, identity map.
inline Extension identity_extension(PrimeField f) {
    FiniteAlgebra k = field_algebra(f);
    return Extension(k, k, Matrix::identity(1, f));
}

// F_p embedded diagonally in F_p x F_p.
inline Extension split_pair(PrimeField f) {
    FiniteAlgebra b = field_algebra(f);
    FiniteAlgebra s = product_field_algebra(f);
    Matrix m(2, 1, f);
    m(0, 0) = 1;
    m(1, 0) = 1;
    return Extension(b, s, m);
}

// F_p inside F_p[x]/(x^2) as constants.
inline Extension dual_numbers_over_field(PrimeField f) {
    FiniteAlgebra b = field_algebra(f);
    FiniteAlgebra s = dual_numbers_algebra(f);
    Matrix m(2, 1, f);
    m(0, 0) = 1;
    return Extension(b, s, m);
}

// F_2 inside F_4.
inline Extension gf4_over_gf2() {
    PrimeField f(2);
    FiniteAlgebra b = field_algebra(f);
    FiniteAlgebra s = gf4_algebra();
    Matrix m(2, 1, f);
    m(0, 0) = 1;
    return Extension(b, s, m);
}

// F_p as scalar matrices in M_2(F_p).
inline Extension field_in_mat2(PrimeField f) {
    FiniteAlgebra b = field_algebra(f);
    FiniteAlgebra s = matrix_algebra(f, 2);
    Matrix m(4, 1, f);
    m(0, 0) = 1;  // E_11 + E_22
    m(3, 0) = 1;
    return Extension(b, s, m);
}

// Diagonal matrices inside M_2(F_p).
inline Extension diag_in_mat2(PrimeField f) {
    FiniteAlgebra b = diagonal_algebra(f, 2);
    FiniteAlgebra s = matrix_algebra(f, 2);
    Matrix m(4, 2, f);
    m(0, 0) = 1;  // (1,0) -> E_11
    m(3, 1) = 1;  // (0,1) -> E_22
    return Extension(b, s, m);
}

// Column space F_p^2 as a (diagonal, F_p)-bimodule: the diagonal entries act
// coordinatewise on the left, scalars on the right.
inline Bimodule column_module(PrimeField f) {
    FiniteAlgebra b = diagonal_algebra(f, 2);
    FiniteAlgebra k = field_algebra(f);
    Matrix e11(2, 2, f), e22(2, 2, f);
    e11(0, 0) = 1;
    e22(1, 1) = 1;
    return Bimodule(b, k, 2, {e11, e22}, {Matrix::identity(2, f)});
}

// F_p^2 with scalars acting on both sides; End is the full 2x2 matrix algebra.
inline Bimodule plane_module(PrimeField f) {
    FiniteAlgebra k = field_algebra(f);
    Matrix id = Matrix::identity(2, f);
    return Bimodule(k, k, 2, {id}, {id});
}

// B itself as a (B,B)-bimodule by multiplication.
inline Bimodule regular_module(const FiniteAlgebra& b) {
    std::vector<Matrix> lact, ract;
    for (u32 t = 0; t < b.dim(); ++t) {
        lact.push_back(b.left_mult_basis(t));
        ract.push_back(b.right_mult_basis(t));
    }
    return Bimodule(b, b, b.dim(), std::move(lact), std::move(ract));
}

}  // namespace testhelp
