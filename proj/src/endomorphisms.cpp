// Coring endomorphisms: exact linear solve for the bimodule and counit
// conditions, then enumeration of the affine solution space filtered by the
// quadratic comultiplication condition.
#include <algorithm>
#include <map>

#include "descent_forge/coring.hpp"

namespace descent {

namespace {

// Append the rows of "g A = B g" (entrywise) to the system.
void add_commutation_rows(std::vector<Vec>& rows, std::vector<u32>& rhs, u32 n,
                          const PrimeField& f, const Matrix& a, const Matrix& b) {
    for (u32 r = 0; r < n; ++r)
        for (u32 c = 0; c < n; ++c) {
            Vec row(size_t(n) * n, 0);
            for (u32 k = 0; k < n; ++k) {
                row[size_t(r) * n + k] = f.add(row[size_t(r) * n + k], a(k, c));
                row[size_t(k) * n + c] = f.sub(row[size_t(k) * n + c], b(r, k));
            }
            rows.push_back(std::move(row));
            rhs.push_back(0);
        }
}

}  // namespace

std::vector<Matrix> coring_endomorphisms(const Coring& c, u64 max_candidates) {
    const PrimeField& f = c.carrier.field();
    const FiniteAlgebra& r = c.ring();
    u32 n = c.carrier.dim();
    u32 nvar = n * n;

    std::vector<Vec> rows;
    std::vector<u32> rhs;
    for (u32 s = 0; s < r.dim(); ++s) {
        add_commutation_rows(rows, rhs, n, f, c.carrier.left_action_basis(s),
                             c.carrier.left_action_basis(s));
        add_commutation_rows(rows, rhs, n, f, c.carrier.right_action_basis(s),
                             c.carrier.right_action_basis(s));
    }
    // eps g = eps, one affine row per entry.
    for (u32 a = 0; a < r.dim(); ++a)
        for (u32 col = 0; col < n; ++col) {
            Vec row(nvar, 0);
            for (u32 k = 0; k < n; ++k) row[size_t(k) * n + col] = c.counit(a, k);
            rows.push_back(std::move(row));
            rhs.push_back(c.counit(a, col));
        }

    Matrix sys = Matrix::from_rows(rows, nvar, f);
    auto sol = solve_linear(sys, rhs);
    if (!sol) throw InternalError("identity endomorphism must solve the linear system");

    u32 kdim = sol->kernel.rows();
    u64 count = 1;
    for (u32 t = 0; t < kdim && count <= max_candidates; ++t) count *= f.p();
    if (count > max_candidates)
        throw BudgetError("endomorphism solution space too large", count, max_candidates);

    // Quadratic filter: Delta g = (g (x) g) Delta, column by column. With
    // row-major flattening, (g (x) g) acting on a full-space representative X
    // is g X g^T.
    std::vector<Matrix> rep;
    for (u32 col = 0; col < n; ++col)
        rep.push_back(unvec(c.square.section().apply(c.comult.col(col)), n, n, f));
    const Matrix& project = c.square.project();

    std::vector<Matrix> found;
    Vec digits(kdim, 0);
    while (true) {
        Vec gv = sol->particular;
        for (u32 t = 0; t < kdim; ++t)
            if (digits[t] != 0) gv = add_vec(f, gv, scale_vec(f, digits[t], sol->kernel.row(t)));
        Matrix g = unvec(gv, n, n, f);
        bool ok = true;
        for (u32 col = 0; col < n && ok; ++col) {
            Vec lhs = c.comult.apply(g.col(col));
            Vec rhs_vec = project.apply(vec_of(g * rep[col] * g.transpose()));
            ok = lhs == rhs_vec;
        }
        if (ok) found.push_back(std::move(g));

        u32 t = 0;
        while (t < kdim) {
            digits[t] = f.add(digits[t], 1);
            if (digits[t] != 0) break;
            ++t;
        }
        if (t == kdim) break;
    }

    std::sort(found.begin(), found.end(),
              [](const Matrix& a, const Matrix& b) { return vec_of(a) < vec_of(b); });
    return found;
}

MonoidTable composition_table(const std::vector<Matrix>& elements) {
    std::map<Vec, u32> index;
    for (u32 t = 0; t < elements.size(); ++t) index[vec_of(elements[t])] = t;

    MonoidTable table;
    table.size = static_cast<u32>(elements.size());
    table.table.assign(size_t(table.size) * table.size, 0);
    bool has_identity = false;
    for (u32 i = 0; i < table.size; ++i) {
        if (elements[i].is_identity()) {
            table.identity = i;
            has_identity = true;
        }
        for (u32 j = 0; j < table.size; ++j) {
            auto it = index.find(vec_of(elements[i] * elements[j]));
            if (it == index.end()) throw InternalError("composition left the element set");
            table.table[size_t(i) * table.size + j] = it->second;
        }
    }
    if (!has_identity) throw InternalError("element set lacks the identity");
    return table;
}

std::vector<std::string> validate_monoid(const MonoidTable& t) {
    std::vector<std::string> defects;
    for (u32 i = 0; i < t.size; ++i) {
        if (t.at(t.identity, i) != i || t.at(i, t.identity) != i) {
            defects.push_back("identity laws fail at element " + std::to_string(i));
            break;
        }
    }
    for (u32 i = 0; i < t.size; ++i)
        for (u32 j = 0; j < t.size; ++j)
            for (u32 k = 0; k < t.size; ++k)
                if (t.at(t.at(i, j), k) != t.at(i, t.at(j, k))) {
                    defects.push_back("associativity fails at (" + std::to_string(i) + "," +
                                      std::to_string(j) + "," + std::to_string(k) + ")");
                    return defects;
                }
    return defects;
}

std::vector<u32> invertible_elements(const MonoidTable& t) {
    std::vector<u32> inv;
    for (u32 i = 0; i < t.size; ++i)
        for (u32 j = 0; j < t.size; ++j)
            if (t.at(i, j) == t.identity && t.at(j, i) == t.identity) {
                inv.push_back(i);
                break;
            }
    return inv;
}

}  // namespace descent
