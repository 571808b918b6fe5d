#include "descent_forge/subspace.hpp"

#include <algorithm>

namespace descent {

Subspace Subspace::span_of(const Matrix& vectors_as_rows) {
    Echelon e = vectors_as_rows.echelon();
    Subspace s;
    s.basis_ = e.rref;
    s.pivots_ = e.pivots;
    return s;
}

Subspace Subspace::span_of_vecs(const std::vector<Vec>& vecs, u32 ambient, PrimeField f) {
    return span_of(Matrix::from_rows(vecs, ambient, f));
}

Subspace Subspace::zero(u32 ambient, PrimeField f) {
    Subspace s;
    s.basis_ = Matrix(0, ambient, f);
    return s;
}

Subspace Subspace::full(u32 ambient, PrimeField f) {
    Subspace s;
    s.basis_ = Matrix::identity(ambient, f);
    for (u32 i = 0; i < ambient; ++i) s.pivots_.push_back(i);
    return s;
}

bool Subspace::contains(const Vec& v) const {
    if (v.size() != ambient_dim()) throw Error("subspace membership: wrong ambient");
    Vec w = v;
    const PrimeField& f = field();
    for (u32 r = 0; r < basis_.rows(); ++r) {
        u32 c = w[pivots_[r]];
        if (c == 0) continue;
        for (u32 j = pivots_[r]; j < ambient_dim(); ++j)
            w[j] = f.sub(w[j], f.mul(c, basis_(r, j)));
    }
    return is_zero_vec(w);
}

bool Subspace::contains(const Subspace& other) const {
    for (u32 r = 0; r < other.dim(); ++r)
        if (!contains(other.basis_.row(r))) return false;
    return true;
}

Vec Subspace::coords(const Vec& v) const {
    if (!contains(v)) throw Error("coords: vector outside subspace");
    Vec c(dim());
    for (u32 r = 0; r < dim(); ++r) c[r] = v[pivots_[r]];
    return c;
}

Matrix Subspace::inclusion() const { return basis_.transpose(); }

Subspace Subspace::sum(const Subspace& other) const {
    return span_of(Matrix::vstack(basis_, other.basis_));
}

Subspace Subspace::intersect(const Subspace& other) const {
    // x in U cap W  <=>  x = a^T U = b^T W; solve [U^T | -W^T] null space.
    if (ambient_dim() != other.ambient_dim()) throw Error("intersect: ambient mismatch");
    const PrimeField& f = field();
    if (dim() == 0 || other.dim() == 0) return zero(ambient_dim(), f);
    Matrix lhs = Matrix::hstack(basis_.transpose(), other.basis_.transpose().scaled(f.neg(1)));
    Matrix null = lhs.kernel();  // rows: (a | b)
    std::vector<Vec> vecs;
    for (u32 r = 0; r < null.rows(); ++r) {
        Vec a(dim());
        for (u32 i = 0; i < dim(); ++i) a[i] = null(r, i);
        Vec x = basis_.transpose().apply(a);
        vecs.push_back(std::move(x));
    }
    return span_of_vecs(vecs, ambient_dim(), f);
}

bool Subspace::operator<(const Subspace& o) const {
    if (dim() != o.dim()) return dim() < o.dim();
    if (pivots_ != o.pivots_) return pivots_ < o.pivots_;
    for (u32 r = 0; r < dim(); ++r)
        for (u32 c = 0; c < ambient_dim(); ++c)
            if (basis_(r, c) != o.basis_(r, c)) return basis_(r, c) < o.basis_(r, c);
    return false;
}

u64 gaussian_binomial(u32 n, u32 k, u32 p) {
    if (k > n) return 0;
    // Integer recurrence [n k] = [n-1 k-1] + p^k [n-1 k].
    std::vector<std::vector<u64>> g(n + 1, std::vector<u64>(k + 1, 0));
    for (u32 i = 0; i <= n; ++i) g[i][0] = 1;
    for (u32 j = 1; j <= k; ++j) {
        u64 pj = 1;
        for (u32 t = 0; t < j; ++t) pj *= p;
        for (u32 i = j; i <= n; ++i) g[i][j] = g[i - 1][j - 1] + pj * g[i - 1][j];
    }
    return g[n][k];
}

u64 count_subspaces(u32 n, u32 p) {
    u64 total = 0;
    for (u32 k = 0; k <= n; ++k) total += gaussian_binomial(n, k, p);
    return total;
}

namespace {

// Free positions of an RREF shape with the given pivot columns: (row, col)
// with col > pivot(row) and col not a pivot, listed row-major.
std::vector<std::pair<u32, u32>> free_positions(u32 n, const std::vector<u32>& pivots) {
    std::vector<bool> is_pivot(n, false);
    for (u32 c : pivots) is_pivot[c] = true;
    std::vector<std::pair<u32, u32>> free;
    for (u32 r = 0; r < pivots.size(); ++r)
        for (u32 c = pivots[r] + 1; c < n; ++c)
            if (!is_pivot[c]) free.emplace_back(r, c);
    return free;
}

}  // namespace

void for_each_subspace(u32 n, PrimeField f, u64 budget,
                       const std::function<void(const Subspace&)>& visit) {
    u64 total = count_subspaces(n, f.p());
    if (budget != 0 && total > budget)
        throw BudgetError("subspace enumeration too large", total, budget);

    for (u32 k = 0; k <= n; ++k) {
        // Pivot-column combinations in lexicographic order.
        std::vector<u32> piv(k);
        for (u32 i = 0; i < k; ++i) piv[i] = i;
        while (true) {
            auto free = free_positions(n, piv);
            std::vector<u32> digits(free.size(), 0);
            while (true) {
                Matrix b(k, n, f);
                for (u32 r = 0; r < k; ++r) b(r, piv[r]) = 1;
                for (size_t t = 0; t < free.size(); ++t)
                    b(free[t].first, free[t].second) = digits[t];
                visit(Subspace::span_of(b));
                // Little-endian base-p increment.
                size_t t = 0;
                while (t < digits.size()) {
                    if (++digits[t] < f.p()) break;
                    digits[t++] = 0;
                }
                if (t == digits.size()) break;
            }
            if (k == 0) break;
            // Next combination.
            i64 i = static_cast<i64>(k) - 1;
            while (i >= 0 && piv[static_cast<size_t>(i)] == n - k + static_cast<u32>(i)) --i;
            if (i < 0) break;
            ++piv[static_cast<size_t>(i)];
            for (u32 j = static_cast<u32>(i) + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
        }
    }
}

}  // namespace descent
