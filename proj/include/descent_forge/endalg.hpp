// Endomorphism algebras of right modules, dual modules and dual bases.
//
// For a (B,A)-bimodule M: the dual M* = Hom_A(M_A, A_A) is an (A,B)-bimodule
// via (a.f.b)(m) = a f(b m); S = End_A(M) is an algebra under composition,
// with B mapping in through the left action. The evaluation map
//     xi : M (x)_A M* -> S,  xi(m (x) f) = [x -> m . f(x)]
// is bijective precisely when M_A is finitely generated projective, which is
// also when a dual basis exists.
#pragma once

#include "descent_forge/tensor.hpp"

namespace descent {

struct DualModule {
    Bimodule module;            // M* as an (A,B)-bimodule
    std::vector<Matrix> maps;   // basis functionals as A.dim x M.dim matrices
    // Evaluate a functional (coordinates in M*) on a module element.
    Vec eval(const Vec& f_coords, const Vec& m) const;
};
DualModule dual_module(const Bimodule& m);

// Pairs (element, functional) with sum_t m_t . f_t(x) = x for all x.
struct DualBasis {
    std::vector<Vec> elements;
    std::vector<Vec> functionals;
};
// Present iff M_A is finitely generated projective (solved as the linear
// system xi(u) = id).
std::optional<DualBasis> dual_basis(const Bimodule& m, const DualModule& dual);

struct EndAlgebra {
    FiniteAlgebra algebra;      // S = End_A(M); product = composition
    std::vector<Matrix> rep;    // basis elements as endomorphism matrices
    Extension unit_map;         // i : B -> S induced by the left action
    DualModule dual;            // M*
    std::vector<Matrix> dual_right_s;  // right S-action on M*: f -> f o s
    TensorQuotient m_mstar;     // M (x)_A M*
    Matrix xi;                  // S.dim x m_mstar.dim
    Matrix xi_inv;

    // Endomorphism matrix of an element given by S-coordinates.
    Matrix endo(const Vec& s_coords) const;
    // S-coordinates of an endomorphism matrix; Error when the matrix does
    // not commute with the right A-action.
    Vec coords_of(const Matrix& endomorphism) const;
};

// Errors when M_A is not finitely generated projective (xi not bijective).
EndAlgebra end_algebra(const Bimodule& m);

}  // namespace descent
