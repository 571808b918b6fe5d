// (B,A)-bimodules presented by one action matrix per algebra basis element.
#pragma once

#include "descent_forge/algebra.hpp"

namespace descent {

struct BimoduleDefect {
    enum Kind {
        left_not_multiplicative,
        left_not_unital,
        right_not_antimultiplicative,
        right_not_unital,
        actions_do_not_commute
    } kind;
    u32 i = 0, j = 0;
    std::string describe() const;
};

class Bimodule {
public:
    Bimodule() : dim_(0) {}
    // left_action[i] = matrix of m -> e_i . m  (e_i basis of left_alg);
    // right_action[j] = matrix of m -> m . e_j (e_j basis of right_alg).
    Bimodule(FiniteAlgebra left_alg, FiniteAlgebra right_alg, u32 dim,
             std::vector<Matrix> left_action, std::vector<Matrix> right_action);

    const FiniteAlgebra& left_alg() const { return left_; }
    const FiniteAlgebra& right_alg() const { return right_; }
    u32 dim() const { return dim_; }
    const PrimeField& field() const { return left_.field(); }

    const Matrix& left_action_basis(u32 i) const { return lact_[i]; }
    const Matrix& right_action_basis(u32 j) const { return ract_[j]; }
    // Action by a general algebra element (coordinates).
    Matrix left_action(const Vec& b) const;
    Matrix right_action(const Vec& a) const;
    Vec act_left(const Vec& b, const Vec& m) const { return left_action(b).apply(m); }
    Vec act_right(const Vec& m, const Vec& a) const { return right_action(a).apply(m); }

    bool operator==(const Bimodule&) const = default;

private:
    FiniteAlgebra left_, right_;
    u32 dim_;
    std::vector<Matrix> lact_, ract_;
};

// Left action an algebra morphism, right action an anti-morphism, unital on
// both sides, and the two actions commute. Empty result iff valid.
std::vector<BimoduleDefect> validate_bimodule(const Bimodule& m);

// A linear map of bimodules; commutes with both actions when source and
// target share the acting algebras.
struct BimoduleMap {
    Bimodule source;
    Bimodule target;
    Matrix matrix;  // target.dim x source.dim
};
// Defect descriptions (empty iff the map is a bimodule map).
std::vector<std::string> validate_bimodule_map(const BimoduleMap& f);

// --- Constructions ------------------------------------------------------------

// A as an (A,A)-bimodule by multiplication.
Bimodule regular_bimodule(const FiniteAlgebra& a);
// Restrict the left (resp. right) action along an algebra morphism into the
// currently acting algebra.
Bimodule restrict_left(const Bimodule& m, const AlgebraMorphism& f);
Bimodule restrict_right(const Bimodule& m, const AlgebraMorphism& f);
// One-sided modules, padded with the trivial F_p-action on the other side.
Bimodule left_module(const FiniteAlgebra& a, u32 dim, std::vector<Matrix> action);
Bimodule right_module(const FiniteAlgebra& a, u32 dim, std::vector<Matrix> action);
// S as an (S,B)- or (B,S)-bimodule along i : B -> S.
Bimodule extension_bimodule_sb(const Extension& i);
Bimodule extension_bimodule_bs(const Extension& i);
// S as a (B,B)-bimodule along i.
Bimodule extension_bimodule_bb(const Extension& i);

// Quotient of a left module by an invariant subspace (used for B/L).
struct QuotientModule {
    Bimodule module;  // left module on the quotient space
    Matrix project;   // quotient.dim x ambient
    Matrix section;   // ambient x quotient.dim, project*section = id
};
QuotientModule quotient_left_module(const FiniteAlgebra& a, const Subspace& invariant);
QuotientModule quotient_right_module(const FiniteAlgebra& a, const Subspace& invariant);

// Projection/section pair for an arbitrary subspace quotient F^n / W.
struct SpaceQuotient {
    Matrix project;
    Matrix section;
};
SpaceQuotient quotient_of(const Subspace& w, u32 ambient, PrimeField f);

}  // namespace descent
