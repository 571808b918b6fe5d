// Finite-dimensional unital associative algebras over F_p, presented by
// structure constants, together with algebra morphisms and ideal machinery.
#pragma once

#include <string>
#include <vector>

#include "descent_forge/subspace.hpp"

namespace descent {

struct AlgebraDefect {
    enum Kind { associativity, left_unit, right_unit } kind;
    u32 i = 0, j = 0, k = 0;  // offending basis indices (unit laws use i only)
    std::string describe() const;
};

class FiniteAlgebra {
public:
    FiniteAlgebra() : field_(2), dim_(0) {}
    // struct_consts[i*dim+j] = coordinates of e_i * e_j. Not validated here;
    // see validate_algebra.
    FiniteAlgebra(PrimeField field, u32 dim, std::vector<Vec> struct_consts, Vec unit);

    const PrimeField& field() const { return field_; }
    u32 dim() const { return dim_; }
    const Vec& unit() const { return unit_; }
    const Vec& basis_product(u32 i, u32 j) const { return sc_[size_t(i) * dim_ + j]; }

    Vec mul(const Vec& x, const Vec& y) const;
    // Matrix of y -> x*y resp. x -> x*y.
    Matrix left_mult(const Vec& x) const;
    Matrix right_mult(const Vec& y) const;
    const Matrix& left_mult_basis(u32 i) const { return lmat_[i]; }
    const Matrix& right_mult_basis(u32 j) const { return rmat_[j]; }

    bool operator==(const FiniteAlgebra&) const = default;

private:
    PrimeField field_;
    u32 dim_;
    std::vector<Vec> sc_;
    Vec unit_;
    std::vector<Matrix> lmat_, rmat_;
};

// Exhaustive check of associativity on basis triples and both unit laws.
// Empty result iff the presentation is a unital associative algebra.
std::vector<AlgebraDefect> validate_algebra(const FiniteAlgebra& a);

struct MorphismDefect {
    enum Kind { multiplicative, unital } kind;
    u32 i = 0, j = 0;
    std::string describe() const;
};

class AlgebraMorphism {
public:
    AlgebraMorphism() = default;
    // matrix is target.dim x source.dim; column j = image of e_j.
    AlgebraMorphism(FiniteAlgebra source, FiniteAlgebra target, Matrix matrix);

    const FiniteAlgebra& source() const { return source_; }
    const FiniteAlgebra& target() const { return target_; }
    const Matrix& matrix() const { return matrix_; }
    Vec apply(const Vec& x) const { return matrix_.apply(x); }
    bool injective() const { return matrix_.rank() == source_.dim(); }
    // Image of the unit subalgebra i(B) as a subspace of the target.
    Subspace image() const;

    bool operator==(const AlgebraMorphism&) const = default;

private:
    FiniteAlgebra source_, target_;
    Matrix matrix_;
};

std::vector<MorphismDefect> validate_morphism(const AlgebraMorphism& f);

// Ring extensions are morphisms used in the i : B -> S role.
using Extension = AlgebraMorphism;

// --- Built-in algebra constructions -----------------------------------------

FiniteAlgebra field_algebra(PrimeField f);                   // F_p
FiniteAlgebra product_field_algebra(PrimeField f);           // F_p x F_p
FiniteAlgebra dual_numbers_algebra(PrimeField f);            // F_p[x]/(x^2)
FiniteAlgebra gf4_algebra();                                 // F_4 over F_2
FiniteAlgebra matrix_algebra(PrimeField f, u32 n);           // M_n(F_p), basis E_11,E_12,...
FiniteAlgebra diagonal_algebra(PrimeField f, u32 n);         // diagonal in M_n

// --- Ideals and cyclic modules ----------------------------------------------

// All subspaces closed under left (resp. right) multiplication, in the
// canonical subspace order. budget guards the subspace enumeration.
std::vector<Subspace> left_ideals(const FiniteAlgebra& a, u64 budget = 0);
std::vector<Subspace> right_ideals(const FiniteAlgebra& a, u64 budget = 0);
// Maximal elements among the proper ideals in the given list.
std::vector<Subspace> maximal_proper(const std::vector<Subspace>& ideals, u32 ambient);

}  // namespace descent
