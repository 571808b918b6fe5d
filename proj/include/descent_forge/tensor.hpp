// Tensor products over algebras, materialized as explicit quotients.
//
// M_1 (x)_{B_1} M_2 (x)_{B_2} ... (x) M_k is represented on the full tensor
// space F^(d_1 d_2 ... d_k) modulo the span of the balanced relations
//   (x . b) (x) y - x (x) (b . y)
// at every junction. The quotient carries an explicit projection and a
// section (coset representatives), so maps on quotients are plain matrices.
// Any map defined through a representative must kill the relation span; the
// induced_* helpers assert this, turning well-definedness into a runtime
// check instead of a proof obligation.
#pragma once

#include "descent_forge/bimodule.hpp"

namespace descent {

class TensorQuotient {
public:
    TensorQuotient() = default;

    u32 dim() const { return project_.rows(); }
    u32 full_dim() const { return full_dim_; }
    const Matrix& project() const { return project_; }
    const Matrix& section() const { return section_; }
    // RREF rows spanning ker(project), i.e. the balanced relations.
    const Matrix& relations() const { return relations_; }
    const Bimodule& space() const { return space_; }
    const std::vector<Bimodule>& factors() const { return factors_; }
    const PrimeField& field() const { return space_.field(); }

    // Class of a pure tensor, given coordinates in each factor.
    Vec pure(const std::vector<Vec>& parts) const;
    Vec pure2(const Vec& a, const Vec& b) const { return pure({a, b}); }
    Vec pure3(const Vec& a, const Vec& b, const Vec& c) const { return pure({a, b, c}); }

    friend TensorQuotient tensor_chain(std::vector<Bimodule> factors);

private:
    std::vector<Bimodule> factors_;
    u32 full_dim_ = 0;
    Matrix project_, section_, relations_;
    Bimodule space_;
};

// Build the chain quotient; adjacent factors must agree on the linking
// algebra (factors[t].right_alg == factors[t+1].left_alg).
TensorQuotient tensor_chain(std::vector<Bimodule> factors);
TensorQuotient tensor_over(const Bimodule& m, const Bimodule& n);

// Induced map between quotients from a map of full tensor spaces. Throws
// InternalError unless full_map sends src relations into ker(dst.project).
Matrix induced_map(const TensorQuotient& src, const Matrix& full_map,
                   const TensorQuotient& dst);
// Induced map from a quotient into a plain space (full_map : F^src.full -> F^m).
Matrix induced_map_to_space(const TensorQuotient& src, const Matrix& full_map);

}  // namespace descent
