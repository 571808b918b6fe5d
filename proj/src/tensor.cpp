#include "descent_forge/tensor.hpp"

namespace descent {

namespace {

// Pairwise balanced-relation span for one junction, as RREF rows in the
// (d_t * d_{t+1})-dimensional pair space.
Matrix junction_relations(const Bimodule& mt, const Bimodule& mn) {
    const FiniteAlgebra& b = mt.right_alg();
    if (!(b == mn.left_alg()))
        throw Error("tensor junction: algebras do not match");
    const PrimeField& f = mt.field();
    EchelonAccumulator acc(mt.dim() * mn.dim(), f);
    for (u32 bi = 0; bi < b.dim(); ++bi) {
        const Matrix& rho = mt.right_action_basis(bi);
        const Matrix& lam = mn.left_action_basis(bi);
        for (u32 x = 0; x < mt.dim(); ++x) {
            Vec xb = rho.col(x);  // (e_x . b)
            for (u32 y = 0; y < mn.dim(); ++y) {
                Vec by = lam.col(y);  // (b . e_y)
                Vec v = sub_vec(f, kron_vec(f, xb, unit_vec(mn.dim(), y)),
                                kron_vec(f, unit_vec(mt.dim(), x), by));
                acc.insert(std::move(v));
            }
        }
    }
    return acc.basis();
}

}  // namespace

TensorQuotient tensor_chain(std::vector<Bimodule> factors) {
    if (factors.empty()) throw Error("tensor_chain: no factors");
    const PrimeField& f = factors[0].field();
    u64 full = 1;
    for (const Bimodule& m : factors) {
        if (!(m.field() == f)) throw Error("tensor_chain: field mismatch");
        full *= m.dim();
    }
    MemoryGuard::check(full * full * sizeof(u32), "tensor_chain");
    u32 full_dim = static_cast<u32>(full);

    // Accumulate relations of every junction, embedded into the full space by
    // tensoring with unit vectors on the remaining legs.
    EchelonAccumulator acc(full_dim, f);
    u32 pre = 1;
    for (size_t t = 0; full_dim != 0 && t + 1 < factors.size(); ++t) {
        Matrix pair_rel = junction_relations(factors[t], factors[t + 1]);
        u32 mid = factors[t].dim() * factors[t + 1].dim();
        u32 post = static_cast<u32>(full / (u64(pre) * mid));
        for (u32 r = 0; r < pair_rel.rows(); ++r) {
            Vec v = pair_rel.row(r);
            for (u32 a = 0; a < pre; ++a)
                for (u32 c = 0; c < post; ++c)
                    acc.insert(kron_vec(f, unit_vec(pre, a), kron_vec(f, v, unit_vec(post, c))));
        }
        pre *= factors[t].dim();
    }

    TensorQuotient tq;
    tq.relations_ = acc.basis();
    Subspace rel_space = Subspace::span_of(tq.relations_);
    SpaceQuotient sq = quotient_of(rel_space, full_dim, f);
    tq.project_ = std::move(sq.project);
    tq.section_ = std::move(sq.section);
    tq.full_dim_ = full_dim;

    // Outer actions descend to the quotient; assert well-definedness.
    const Bimodule& first = factors.front();
    const Bimodule& last = factors.back();
    u32 rest_after = first.dim() == 0 ? 0 : full_dim / first.dim();
    u32 rest_before = last.dim() == 0 ? 0 : full_dim / last.dim();
    std::vector<Matrix> lact, ract;
    for (u32 i = 0; i < first.left_alg().dim(); ++i) {
        Matrix fullmap =
            Matrix::kron(first.left_action_basis(i), Matrix::identity(rest_after, f));
        for (u32 r = 0; r < tq.relations_.rows(); ++r)
            if (!is_zero_vec(tq.project_.apply(fullmap.apply(tq.relations_.row(r)))))
                throw InternalError("outer left action does not preserve relations");
        lact.push_back(tq.project_ * fullmap * tq.section_);
    }
    for (u32 j = 0; j < last.right_alg().dim(); ++j) {
        Matrix fullmap =
            Matrix::kron(Matrix::identity(rest_before, f), last.right_action_basis(j));
        for (u32 r = 0; r < tq.relations_.rows(); ++r)
            if (!is_zero_vec(tq.project_.apply(fullmap.apply(tq.relations_.row(r)))))
                throw InternalError("outer right action does not preserve relations");
        ract.push_back(tq.project_ * fullmap * tq.section_);
    }
    tq.space_ = Bimodule(first.left_alg(), last.right_alg(), tq.project_.rows(),
                         std::move(lact), std::move(ract));
    tq.factors_ = std::move(factors);
    return tq;
}

TensorQuotient tensor_over(const Bimodule& m, const Bimodule& n) {
    return tensor_chain({m, n});
}

Vec TensorQuotient::pure(const std::vector<Vec>& parts) const {
    if (parts.size() != factors_.size()) throw Error("pure: wrong arity");
    Vec v = parts[0];
    if (v.size() != factors_[0].dim()) throw Error("pure: factor 0 dimension");
    for (size_t t = 1; t < parts.size(); ++t) {
        if (parts[t].size() != factors_[t].dim())
            throw Error("pure: factor " + std::to_string(t) + " dimension");
        v = kron_vec(field(), v, parts[t]);
    }
    return project_.apply(v);
}

Matrix induced_map(const TensorQuotient& src, const Matrix& full_map,
                   const TensorQuotient& dst) {
    if (full_map.cols() != src.full_dim() || full_map.rows() != dst.full_dim())
        throw Error("induced_map: full map shape mismatch");
    for (u32 r = 0; r < src.relations().rows(); ++r)
        if (!is_zero_vec(dst.project().apply(full_map.apply(src.relations().row(r)))))
            throw InternalError("induced_map: relations not preserved");
    return dst.project() * full_map * src.section();
}

Matrix induced_map_to_space(const TensorQuotient& src, const Matrix& full_map) {
    if (full_map.cols() != src.full_dim())
        throw Error("induced_map_to_space: full map shape mismatch");
    for (u32 r = 0; r < src.relations().rows(); ++r)
        if (!is_zero_vec(full_map.apply(src.relations().row(r))))
            throw InternalError("induced_map_to_space: relations not preserved");
    return full_map * src.section();
}

}  // namespace descent
