#include "descent_forge/algebra.hpp"

namespace descent {

std::string AlgebraDefect::describe() const {
    switch (kind) {
        case associativity:
            return "associativity fails at (e_" + std::to_string(i) + ", e_" +
                   std::to_string(j) + ", e_" + std::to_string(k) + ")";
        case left_unit:
            return "left unit law fails at e_" + std::to_string(i);
        case right_unit:
            return "right unit law fails at e_" + std::to_string(i);
    }
    return "?";
}

FiniteAlgebra::FiniteAlgebra(PrimeField field, u32 dim, std::vector<Vec> struct_consts,
                             Vec unit)
    : field_(field), dim_(dim), sc_(std::move(struct_consts)), unit_(std::move(unit)) {
    if (dim_ == 0) throw Error("algebra dimension must be >= 1");
    if (sc_.size() != size_t(dim_) * dim_) throw Error("struct_consts must have dim^2 entries");
    for (auto& v : sc_) {
        if (v.size() != dim_) throw Error("struct_consts entry has wrong length");
        for (auto& x : v) x %= field_.p();
    }
    if (unit_.size() != dim_) throw Error("unit vector has wrong length");
    for (auto& x : unit_) x %= field_.p();
    // Cache multiplication matrices by basis element.
    for (u32 i = 0; i < dim_; ++i) {
        Matrix l(dim_, dim_, field_), r(dim_, dim_, field_);
        for (u32 j = 0; j < dim_; ++j) {
            const Vec& pij = basis_product(i, j);  // e_i * e_j
            const Vec& pji = basis_product(j, i);  // e_j * e_i
            for (u32 k = 0; k < dim_; ++k) {
                l(k, j) = pij[k];
                r(k, j) = pji[k];
            }
        }
        lmat_.push_back(std::move(l));
        rmat_.push_back(std::move(r));
    }
}

Vec FiniteAlgebra::mul(const Vec& x, const Vec& y) const {
    if (x.size() != dim_ || y.size() != dim_) throw Error("algebra mul: wrong length");
    Vec r(dim_, 0);
    for (u32 i = 0; i < dim_; ++i) {
        if (x[i] == 0) continue;
        for (u32 j = 0; j < dim_; ++j) {
            if (y[j] == 0) continue;
            u32 c = field_.mul(x[i], y[j]);
            const Vec& pij = basis_product(i, j);
            for (u32 k = 0; k < dim_; ++k) r[k] = field_.add(r[k], field_.mul(c, pij[k]));
        }
    }
    return r;
}

Matrix FiniteAlgebra::left_mult(const Vec& x) const {
    Matrix m(dim_, dim_, field_);
    for (u32 i = 0; i < dim_; ++i)
        if (x[i] != 0) m = m + lmat_[i].scaled(x[i]);
    return m;
}

Matrix FiniteAlgebra::right_mult(const Vec& y) const {
    Matrix m(dim_, dim_, field_);
    for (u32 j = 0; j < dim_; ++j)
        if (y[j] != 0) m = m + rmat_[j].scaled(y[j]);
    return m;
}

std::vector<AlgebraDefect> validate_algebra(const FiniteAlgebra& a) {
    std::vector<AlgebraDefect> out;
    u32 d = a.dim();
    for (u32 i = 0; i < d; ++i)
        for (u32 j = 0; j < d; ++j)
            for (u32 k = 0; k < d; ++k) {
                Vec lhs = a.mul(a.basis_product(i, j), unit_vec(d, k));
                Vec rhs = a.mul(unit_vec(d, i), a.basis_product(j, k));
                if (lhs != rhs) out.push_back({AlgebraDefect::associativity, i, j, k});
            }
    for (u32 i = 0; i < d; ++i) {
        if (a.mul(a.unit(), unit_vec(d, i)) != unit_vec(d, i))
            out.push_back({AlgebraDefect::left_unit, i, 0, 0});
        if (a.mul(unit_vec(d, i), a.unit()) != unit_vec(d, i))
            out.push_back({AlgebraDefect::right_unit, i, 0, 0});
    }
    return out;
}

std::string MorphismDefect::describe() const {
    switch (kind) {
        case multiplicative:
            return "f(e_i e_j) != f(e_i) f(e_j) at (" + std::to_string(i) + ", " +
                   std::to_string(j) + ")";
        case unital:
            return "f(1) != 1";
    }
    return "?";
}

AlgebraMorphism::AlgebraMorphism(FiniteAlgebra source, FiniteAlgebra target, Matrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != target_.dim() || matrix_.cols() != source_.dim())
        throw Error("morphism matrix must be target.dim x source.dim");
    if (!(matrix_.field() == source_.field()) || !(source_.field() == target_.field()))
        throw Error("morphism field mismatch");
}

Subspace AlgebraMorphism::image() const {
    std::vector<Vec> cols;
    for (u32 j = 0; j < matrix_.cols(); ++j) cols.push_back(matrix_.col(j));
    return Subspace::span_of_vecs(cols, target_.dim(), matrix_.field());
}

std::vector<MorphismDefect> validate_morphism(const AlgebraMorphism& f) {
    std::vector<MorphismDefect> out;
    u32 d = f.source().dim();
    for (u32 i = 0; i < d; ++i)
        for (u32 j = 0; j < d; ++j) {
            Vec lhs = f.apply(f.source().basis_product(i, j));
            Vec rhs = f.target().mul(f.apply(unit_vec(d, i)), f.apply(unit_vec(d, j)));
            if (lhs != rhs) out.push_back({MorphismDefect::multiplicative, i, j});
        }
    if (f.apply(f.source().unit()) != f.target().unit())
        out.push_back({MorphismDefect::unital, 0, 0});
    return out;
}

FiniteAlgebra field_algebra(PrimeField f) {
    return FiniteAlgebra(f, 1, {Vec{1}}, Vec{1});
}

FiniteAlgebra product_field_algebra(PrimeField f) {
    // e_0 = (1,0), e_1 = (0,1); componentwise product.
    std::vector<Vec> sc = {Vec{1, 0}, Vec{0, 0}, Vec{0, 0}, Vec{0, 1}};
    return FiniteAlgebra(f, 2, sc, Vec{1, 1});
}

FiniteAlgebra dual_numbers_algebra(PrimeField f) {
    // e_0 = 1, e_1 = x with x^2 = 0.
    std::vector<Vec> sc = {Vec{1, 0}, Vec{0, 1}, Vec{0, 1}, Vec{0, 0}};
    return FiniteAlgebra(f, 2, sc, Vec{1, 0});
}

FiniteAlgebra gf4_algebra() {
    // F_4 = F_2[x]/(x^2+x+1): e_0 = 1, e_1 = x, x^2 = x + 1.
    std::vector<Vec> sc = {Vec{1, 0}, Vec{0, 1}, Vec{0, 1}, Vec{1, 1}};
    return FiniteAlgebra(PrimeField(2), 2, sc, Vec{1, 0});
}

FiniteAlgebra matrix_algebra(PrimeField f, u32 n) {
    // Basis E_{rc} ordered row-major: index r*n + c. E_{ab} E_{cd} = [b=c] E_{ad}.
    u32 d = n * n;
    std::vector<Vec> sc(size_t(d) * d, Vec(d, 0));
    for (u32 a = 0; a < n; ++a)
        for (u32 b = 0; b < n; ++b)
            for (u32 c = 0; c < n; ++c)
                for (u32 e = 0; e < n; ++e)
                    if (b == c) sc[size_t(a * n + b) * d + (c * n + e)][a * n + e] = 1;
    Vec unit(d, 0);
    for (u32 a = 0; a < n; ++a) unit[a * n + a] = 1;
    return FiniteAlgebra(f, d, sc, unit);
}

FiniteAlgebra diagonal_algebra(PrimeField f, u32 n) {
    std::vector<Vec> sc(size_t(n) * n, Vec(n, 0));
    for (u32 i = 0; i < n; ++i) sc[size_t(i) * n + i][i] = 1;
    return FiniteAlgebra(f, n, sc, Vec(n, 1));
}

namespace {

std::vector<Subspace> ideals_impl(const FiniteAlgebra& a, bool left, u64 budget) {
    std::vector<Subspace> out;
    for_each_subspace(a.dim(), a.field(), budget, [&](const Subspace& s) {
        for (u32 i = 0; i < a.dim(); ++i) {
            const Matrix& m = left ? a.left_mult_basis(i) : a.right_mult_basis(i);
            for (u32 r = 0; r < s.dim(); ++r)
                if (!s.contains(m.apply(s.basis().row(r)))) return;
        }
        out.push_back(s);
    });
    return out;
}

}  // namespace

std::vector<Subspace> left_ideals(const FiniteAlgebra& a, u64 budget) {
    return ideals_impl(a, true, budget);
}

std::vector<Subspace> right_ideals(const FiniteAlgebra& a, u64 budget) {
    return ideals_impl(a, false, budget);
}

std::vector<Subspace> maximal_proper(const std::vector<Subspace>& ideals, u32 ambient) {
    std::vector<Subspace> out;
    for (const Subspace& s : ideals) {
        if (s.dim() == ambient) continue;  // not proper
        bool maximal = true;
        for (const Subspace& t : ideals) {
            if (t.dim() == ambient || t == s) continue;
            if (t.contains(s) && t.dim() > s.dim()) {
                maximal = false;
                break;
            }
        }
        if (maximal) out.push_back(s);
    }
    return out;
}

}  // namespace descent
