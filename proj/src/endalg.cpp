#include "descent_forge/endalg.hpp"

namespace descent {

namespace {

// Kernel of the linear conditions "X * A_t = B_t * X for all t" on
// rows x cols matrices X, returned as a canonical list of matrices.
std::vector<Matrix> intertwiner_basis(u32 rows, u32 cols, PrimeField f,
                                      const std::vector<Matrix>& a,
                                      const std::vector<Matrix>& b) {
    u32 nvar = rows * cols;
    std::vector<Vec> eq_rows;
    for (size_t t = 0; t < a.size(); ++t) {
        // Entry (r, c) of X A_t - B_t X, as a linear form in X.
        for (u32 r = 0; r < rows; ++r)
            for (u32 c = 0; c < cols; ++c) {
                Vec row(nvar, 0);
                for (u32 k = 0; k < cols; ++k)
                    row[size_t(r) * cols + k] = f.add(row[size_t(r) * cols + k], a[t](k, c));
                for (u32 k = 0; k < rows; ++k)
                    row[size_t(k) * cols + c] =
                        f.sub(row[size_t(k) * cols + c], b[t](r, k));
                eq_rows.push_back(std::move(row));
            }
    }
    Matrix sys = Matrix::from_rows(eq_rows, nvar, f);
    Matrix null = sys.kernel();
    std::vector<Matrix> basis;
    for (u32 r = 0; r < null.rows(); ++r) basis.push_back(unvec(null.row(r), rows, cols, f));
    return basis;
}

}  // namespace

Vec DualModule::eval(const Vec& f_coords, const Vec& m) const {
    const PrimeField& f = module.field();
    Vec out(module.left_alg().dim(), 0);
    for (size_t t = 0; t < maps.size(); ++t) {
        if (f_coords[t] == 0) continue;
        out = add_vec(f, out, scale_vec(f, f_coords[t], maps[t].apply(m)));
    }
    return out;
}

DualModule dual_module(const Bimodule& m) {
    const FiniteAlgebra& a = m.right_alg();
    const PrimeField& f = m.field();
    u32 n = m.dim(), da = a.dim();
    // f(x . e_t) = f(x) . e_t  <=>  F rho_M(e_t) = R_A(e_t) F.
    std::vector<Matrix> rho, rmul;
    for (u32 t = 0; t < da; ++t) {
        rho.push_back(m.right_action_basis(t));
        rmul.push_back(a.right_mult_basis(t));
    }
    std::vector<Matrix> basis = intertwiner_basis(da, n, f, rho, rmul);
    u32 r = static_cast<u32>(basis.size());

    Subspace span = [&] {
        std::vector<Vec> rows;
        for (const Matrix& bmat : basis) rows.push_back(vec_of(bmat));
        return Subspace::span_of_vecs(rows, da * n, f);
    }();
    auto coords_of = [&](const Matrix& fn) { return span.coords(vec_of(fn)); };

    std::vector<Matrix> lact, ract;
    for (u32 i = 0; i < da; ++i) {
        Matrix act(r, r, f);
        for (u32 t = 0; t < r; ++t) act.set_col(t, coords_of(a.left_mult_basis(i) * basis[t]));
        lact.push_back(std::move(act));
    }
    const FiniteAlgebra& b = m.left_alg();
    for (u32 j = 0; j < b.dim(); ++j) {
        Matrix act(r, r, f);
        for (u32 t = 0; t < r; ++t) act.set_col(t, coords_of(basis[t] * m.left_action_basis(j)));
        ract.push_back(std::move(act));
    }
    DualModule dm;
    dm.module = Bimodule(a, b, r, std::move(lact), std::move(ract));
    dm.maps = std::move(basis);
    return dm;
}

namespace {

// xi as a map from the full M (x) M* space into raw endomorphism matrices.
Matrix xi_full_map(const Bimodule& m, const DualModule& dual) {
    const PrimeField& f = m.field();
    u32 n = m.dim();
    u32 r = dual.module.dim();
    Matrix out(n * n, n * r, f);
    for (u32 mi = 0; mi < n; ++mi)
        for (u32 ft = 0; ft < r; ++ft) {
            // endo x -> e_mi . f_ft(x): column j is rho(F e_j) applied to e_mi.
            Matrix endo(n, n, f);
            for (u32 j = 0; j < n; ++j) {
                Vec fx = dual.maps[ft].col(j);  // f(e_j) in A coords
                endo.set_col(j, m.right_action(fx).apply(unit_vec(n, mi)));
            }
            out.set_col(mi * r + ft, vec_of(endo));
        }
    return out;
}

}  // namespace

std::optional<DualBasis> dual_basis(const Bimodule& m, const DualModule& dual) {
    const PrimeField& f = m.field();
    u32 n = m.dim(), r = dual.module.dim();
    TensorQuotient t = tensor_over(m, dual.module);
    Matrix xi_q = induced_map_to_space(t, xi_full_map(m, dual));
    auto sol = solve_linear(xi_q, vec_of(Matrix::identity(n, f)));
    if (!sol) return std::nullopt;
    Vec rep = t.section().apply(sol->particular);
    DualBasis db;
    for (u32 mi = 0; mi < n; ++mi)
        for (u32 ft = 0; ft < r; ++ft) {
            u32 c = rep[size_t(mi) * r + ft];
            if (c == 0) continue;
            db.elements.push_back(scale_vec(f, c, unit_vec(n, mi)));
            db.functionals.push_back(unit_vec(r, ft));
        }
    // The defining identity must now hold exactly.
    for (u32 j = 0; j < n; ++j) {
        Vec acc(n, 0);
        for (size_t tt = 0; tt < db.elements.size(); ++tt) {
            Vec fx = dual.eval(db.functionals[tt], unit_vec(n, j));
            acc = add_vec(f, acc, m.right_action(fx).apply(db.elements[tt]));
        }
        if (acc != unit_vec(n, j)) throw InternalError("dual basis identity failed");
    }
    return db;
}

Matrix EndAlgebra::endo(const Vec& s_coords) const {
    const PrimeField& f = algebra.field();
    Matrix m(rep[0].rows(), rep[0].cols(), f);
    for (size_t k = 0; k < rep.size(); ++k)
        if (s_coords[k] != 0) m = m + rep[k].scaled(s_coords[k]);
    return m;
}

Vec EndAlgebra::coords_of(const Matrix& endomorphism) const {
    const PrimeField& f = algebra.field();
    u32 n = rep[0].rows();
    Matrix cols(n * n, algebra.dim(), f);
    for (u32 k = 0; k < algebra.dim(); ++k) cols.set_col(k, vec_of(rep[k]));
    auto sol = solve_linear(cols, vec_of(endomorphism));
    if (!sol)
        throw Error("coords_of: matrix is not an endomorphism of the right module");
    return sol->particular;
}

EndAlgebra end_algebra(const Bimodule& m) {
    const PrimeField& f = m.field();
    const FiniteAlgebra& a = m.right_alg();
    const FiniteAlgebra& b = m.left_alg();
    u32 n = m.dim();

    // S = End_A(M): T rho(e_t) = rho(e_t) T.
    std::vector<Matrix> rho;
    for (u32 t = 0; t < a.dim(); ++t) rho.push_back(m.right_action_basis(t));
    std::vector<Matrix> basis = intertwiner_basis(n, n, f, rho, rho);
    u32 d = static_cast<u32>(basis.size());
    if (d == 0) throw Error("end_algebra: End_A(M) is zero");

    std::vector<Vec> rows;
    for (const Matrix& t : basis) rows.push_back(vec_of(t));
    Subspace span = Subspace::span_of_vecs(rows, n * n, f);
    auto coords_of = [&](const Matrix& t) { return span.coords(vec_of(t)); };

    std::vector<Vec> sc(size_t(d) * d);
    for (u32 i = 0; i < d; ++i)
        for (u32 j = 0; j < d; ++j) sc[size_t(i) * d + j] = coords_of(basis[i] * basis[j]);
    FiniteAlgebra s(f, d, std::move(sc), coords_of(Matrix::identity(n, f)));
    if (!validate_algebra(s).empty()) throw InternalError("End_A(M) table is not an algebra");

    Matrix imat(d, b.dim(), f);
    for (u32 j = 0; j < b.dim(); ++j) imat.set_col(j, coords_of(m.left_action_basis(j)));
    Extension i(b, s, imat);
    if (!validate_morphism(i).empty())
        throw InternalError("B -> End_A(M) is not an algebra morphism");

    EndAlgebra out;
    out.algebra = s;
    out.rep = basis;
    out.unit_map = i;
    out.dual = dual_module(m);
    u32 r = out.dual.module.dim();

    std::vector<Vec> dual_rows;
    for (const Matrix& fn : out.dual.maps) dual_rows.push_back(vec_of(fn));
    Subspace dual_span = Subspace::span_of_vecs(dual_rows, a.dim() * n, f);
    for (u32 k = 0; k < d; ++k) {
        Matrix act(r, r, f);
        for (u32 t = 0; t < r; ++t) act.set_col(t, dual_span.coords(vec_of(out.dual.maps[t] * basis[k])));
        out.dual_right_s.push_back(std::move(act));
    }

    out.m_mstar = tensor_over(m, out.dual.module);
    Matrix xi_raw = induced_map_to_space(out.m_mstar, xi_full_map(m, out.dual));
    // Express images in S coordinates.
    Matrix xi(d, out.m_mstar.dim(), f);
    for (u32 c = 0; c < out.m_mstar.dim(); ++c) xi.set_col(c, span.coords(xi_raw.col(c)));
    out.xi = std::move(xi);
    auto inv = out.xi.inverse();
    if (!inv)
        throw Error("end_algebra: M is not finitely generated projective as a right module "
                    "(evaluation map not bijective)");
    out.xi_inv = std::move(*inv);
    return out;
}

}  // namespace descent
