#include "descent_forge/bimodule.hpp"

namespace descent {

std::string BimoduleDefect::describe() const {
    switch (kind) {
        case left_not_multiplicative:
            return "lambda(e_i e_j) != lambda(e_i) lambda(e_j) at (" + std::to_string(i) +
                   ", " + std::to_string(j) + ")";
        case left_not_unital:
            return "lambda(1) != id";
        case right_not_antimultiplicative:
            return "rho(e_i e_j) != rho(e_j) rho(e_i) at (" + std::to_string(i) + ", " +
                   std::to_string(j) + ")";
        case right_not_unital:
            return "rho(1) != id";
        case actions_do_not_commute:
            return "lambda(e_i) rho(e_j) != rho(e_j) lambda(e_i) at (" + std::to_string(i) +
                   ", " + std::to_string(j) + ")";
    }
    return "?";
}

Bimodule::Bimodule(FiniteAlgebra left_alg, FiniteAlgebra right_alg, u32 dim,
                   std::vector<Matrix> left_action, std::vector<Matrix> right_action)
    : left_(std::move(left_alg)),
      right_(std::move(right_alg)),
      dim_(dim),
      lact_(std::move(left_action)),
      ract_(std::move(right_action)) {
    if (lact_.size() != left_.dim() || ract_.size() != right_.dim())
        throw Error("bimodule needs one action matrix per algebra basis element");
    for (const Matrix& m : lact_)
        if (m.rows() != dim_ || m.cols() != dim_) throw Error("left action matrix shape");
    for (const Matrix& m : ract_)
        if (m.rows() != dim_ || m.cols() != dim_) throw Error("right action matrix shape");
    if (!(left_.field() == right_.field())) throw Error("bimodule field mismatch");
}

Matrix Bimodule::left_action(const Vec& b) const {
    Matrix m(dim_, dim_, field());
    for (u32 i = 0; i < left_.dim(); ++i)
        if (b[i] != 0) m = m + lact_[i].scaled(b[i]);
    return m;
}

Matrix Bimodule::right_action(const Vec& a) const {
    Matrix m(dim_, dim_, field());
    for (u32 j = 0; j < right_.dim(); ++j)
        if (a[j] != 0) m = m + ract_[j].scaled(a[j]);
    return m;
}

std::vector<BimoduleDefect> validate_bimodule(const Bimodule& m) {
    std::vector<BimoduleDefect> out;
    const FiniteAlgebra& b = m.left_alg();
    const FiniteAlgebra& a = m.right_alg();
    for (u32 i = 0; i < b.dim(); ++i)
        for (u32 j = 0; j < b.dim(); ++j) {
            Matrix lhs = m.left_action(b.basis_product(i, j));
            Matrix rhs = m.left_action_basis(i) * m.left_action_basis(j);
            if (!(lhs == rhs)) out.push_back({BimoduleDefect::left_not_multiplicative, i, j});
        }
    if (!m.left_action(b.unit()).is_identity())
        out.push_back({BimoduleDefect::left_not_unital, 0, 0});
    for (u32 i = 0; i < a.dim(); ++i)
        for (u32 j = 0; j < a.dim(); ++j) {
            Matrix lhs = m.right_action(a.basis_product(i, j));
            Matrix rhs = m.right_action_basis(j) * m.right_action_basis(i);
            if (!(lhs == rhs))
                out.push_back({BimoduleDefect::right_not_antimultiplicative, i, j});
        }
    if (!m.right_action(a.unit()).is_identity())
        out.push_back({BimoduleDefect::right_not_unital, 0, 0});
    for (u32 i = 0; i < b.dim(); ++i)
        for (u32 j = 0; j < a.dim(); ++j) {
            Matrix lhs = m.left_action_basis(i) * m.right_action_basis(j);
            Matrix rhs = m.right_action_basis(j) * m.left_action_basis(i);
            if (!(lhs == rhs)) out.push_back({BimoduleDefect::actions_do_not_commute, i, j});
        }
    return out;
}

std::vector<std::string> validate_bimodule_map(const BimoduleMap& f) {
    std::vector<std::string> out;
    if (f.matrix.rows() != f.target.dim() || f.matrix.cols() != f.source.dim()) {
        out.push_back("matrix shape mismatch");
        return out;
    }
    if (!(f.source.left_alg() == f.target.left_alg()) ||
        !(f.source.right_alg() == f.target.right_alg())) {
        out.push_back("acting algebras differ between source and target");
        return out;
    }
    for (u32 i = 0; i < f.source.left_alg().dim(); ++i)
        if (!(f.matrix * f.source.left_action_basis(i) ==
              f.target.left_action_basis(i) * f.matrix))
            out.push_back("does not commute with left action of e_" + std::to_string(i));
    for (u32 j = 0; j < f.source.right_alg().dim(); ++j)
        if (!(f.matrix * f.source.right_action_basis(j) ==
              f.target.right_action_basis(j) * f.matrix))
            out.push_back("does not commute with right action of e_" + std::to_string(j));
    return out;
}

Bimodule regular_bimodule(const FiniteAlgebra& a) {
    std::vector<Matrix> l, r;
    for (u32 i = 0; i < a.dim(); ++i) {
        l.push_back(a.left_mult_basis(i));
        r.push_back(a.right_mult_basis(i));
    }
    return Bimodule(a, a, a.dim(), std::move(l), std::move(r));
}

Bimodule restrict_left(const Bimodule& m, const AlgebraMorphism& f) {
    if (!(f.target() == m.left_alg())) throw Error("restrict_left: morphism target mismatch");
    std::vector<Matrix> l;
    for (u32 i = 0; i < f.source().dim(); ++i)
        l.push_back(m.left_action(f.apply(unit_vec(f.source().dim(), i))));
    std::vector<Matrix> r;
    for (u32 j = 0; j < m.right_alg().dim(); ++j) r.push_back(m.right_action_basis(j));
    return Bimodule(f.source(), m.right_alg(), m.dim(), std::move(l), std::move(r));
}

Bimodule restrict_right(const Bimodule& m, const AlgebraMorphism& f) {
    if (!(f.target() == m.right_alg())) throw Error("restrict_right: morphism target mismatch");
    std::vector<Matrix> r;
    for (u32 j = 0; j < f.source().dim(); ++j)
        r.push_back(m.right_action(f.apply(unit_vec(f.source().dim(), j))));
    std::vector<Matrix> l;
    for (u32 i = 0; i < m.left_alg().dim(); ++i) l.push_back(m.left_action_basis(i));
    return Bimodule(m.left_alg(), f.source(), m.dim(), std::move(l), std::move(r));
}

Bimodule left_module(const FiniteAlgebra& a, u32 dim, std::vector<Matrix> action) {
    FiniteAlgebra triv = field_algebra(a.field());
    std::vector<Matrix> r = {Matrix::identity(dim, a.field())};
    return Bimodule(a, triv, dim, std::move(action), std::move(r));
}

Bimodule right_module(const FiniteAlgebra& a, u32 dim, std::vector<Matrix> action) {
    FiniteAlgebra triv = field_algebra(a.field());
    std::vector<Matrix> l = {Matrix::identity(dim, a.field())};
    return Bimodule(triv, a, dim, std::move(l), std::move(action));
}

Bimodule extension_bimodule_sb(const Extension& i) {
    return restrict_right(regular_bimodule(i.target()), i);
}

Bimodule extension_bimodule_bs(const Extension& i) {
    return restrict_left(regular_bimodule(i.target()), i);
}

Bimodule extension_bimodule_bb(const Extension& i) {
    return restrict_left(restrict_right(regular_bimodule(i.target()), i), i);
}

SpaceQuotient quotient_of(const Subspace& w, u32 ambient, PrimeField f) {
    if (w.ambient_dim() != ambient) throw Error("quotient_of: ambient mismatch");
    const Matrix& rel = w.basis();
    std::vector<bool> is_pivot(ambient, false);
    for (u32 c : w.pivots()) is_pivot[c] = true;
    std::vector<u32> free_cols;
    for (u32 c = 0; c < ambient; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    u32 q = static_cast<u32>(free_cols.size());
    // project = select free coordinates after eliminating pivot coordinates
    // with the RREF rows of w; section places quotient coordinates at the
    // free positions. Then ker(project) = w and project*section = id.
    Matrix project(q, ambient, f);
    for (u32 t = 0; t < q; ++t) {
        project(t, free_cols[t]) = 1;
        for (u32 r = 0; r < rel.rows(); ++r)
            project(t, w.pivots()[r]) = f.neg(rel(r, free_cols[t]));
    }
    Matrix section(ambient, q, f);
    for (u32 t = 0; t < q; ++t) section(free_cols[t], t) = 1;
    return {std::move(project), std::move(section)};
}

QuotientModule quotient_left_module(const FiniteAlgebra& a, const Subspace& invariant) {
    SpaceQuotient sq = quotient_of(invariant, a.dim(), a.field());
    std::vector<Matrix> act;
    for (u32 i = 0; i < a.dim(); ++i) {
        // Well-defined because the subspace is a left ideal.
        const Matrix& l = a.left_mult_basis(i);
        for (u32 r = 0; r < invariant.dim(); ++r)
            if (!is_zero_vec(sq.project.apply(l.apply(invariant.basis().row(r)))))
                throw Error("quotient_left_module: subspace is not invariant");
        act.push_back(sq.project * l * sq.section);
    }
    QuotientModule qm;
    qm.module = left_module(a, sq.project.rows(), std::move(act));
    qm.project = sq.project;
    qm.section = sq.section;
    return qm;
}

QuotientModule quotient_right_module(const FiniteAlgebra& a, const Subspace& invariant) {
    SpaceQuotient sq = quotient_of(invariant, a.dim(), a.field());
    std::vector<Matrix> act;
    for (u32 i = 0; i < a.dim(); ++i) {
        // Well-defined because the subspace is a right ideal.
        const Matrix& r = a.right_mult_basis(i);
        for (u32 k = 0; k < invariant.dim(); ++k)
            if (!is_zero_vec(sq.project.apply(r.apply(invariant.basis().row(k)))))
                throw Error("quotient_right_module: subspace is not invariant");
        act.push_back(sq.project * r * sq.section);
    }
    QuotientModule qm;
    qm.module = right_module(a, sq.project.rows(), std::move(act));
    qm.project = sq.project;
    qm.section = sq.section;
    return qm;
}

}  // namespace descent
