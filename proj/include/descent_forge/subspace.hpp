// Canonical subspaces of F_p^n: every subspace is stored as the unique RREF
// basis of its row space, so equality is entrywise comparison.
#pragma once

#include <functional>

#include "descent_forge/matrix.hpp"

namespace descent {

class Subspace {
public:
    Subspace() = default;
    static Subspace span_of(const Matrix& vectors_as_rows);
    static Subspace span_of_vecs(const std::vector<Vec>& vecs, u32 ambient, PrimeField f);
    static Subspace zero(u32 ambient, PrimeField f);
    static Subspace full(u32 ambient, PrimeField f);

    u32 dim() const { return basis_.rows(); }
    u32 ambient_dim() const { return basis_.cols(); }
    const Matrix& basis() const { return basis_; }
    const std::vector<u32>& pivots() const { return pivots_; }
    const PrimeField& field() const { return basis_.field(); }

    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;
    // Coordinates w.r.t. the RREF basis; requires contains(v). For an RREF
    // basis these are just the entries of v at the pivot columns.
    Vec coords(const Vec& v) const;
    // Inclusion matrix ambient x dim (columns = basis vectors).
    Matrix inclusion() const;

    Subspace sum(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;

    bool operator==(const Subspace&) const = default;
    bool operator<(const Subspace& o) const;  // deterministic total order

private:
    Matrix basis_;  // RREF rows, no zero rows
    std::vector<u32> pivots_;
};

// Number of k-dimensional subspaces of F_p^n.
u64 gaussian_binomial(u32 n, u32 k, u32 p);
// Total number of subspaces of F_p^n (sum over k). Saturates at u64 max.
u64 count_subspaces(u32 n, u32 p);

// Visit every subspace of F_p^n exactly once, in a fixed deterministic order:
// dimension ascending, then pivot-column set lexicographic, then free RREF
// entries as a little-endian base-p counter. Throws BudgetError when the
// precomputed count exceeds budget (0 = unlimited).
void for_each_subspace(u32 n, PrimeField f, u64 budget,
                       const std::function<void(const Subspace&)>& visit);

}  // namespace descent
