#include "descent_forge/matrix.hpp"

#include <string>

namespace descent {

bool is_zero_vec(const Vec& v) {
    for (u32 x : v)
        if (x != 0) return false;
    return true;
}

Matrix::Matrix(u32 rows, u32 cols, PrimeField field)
    : rows_(rows), cols_(cols), field_(field) {
    MemoryGuard::check(u64(rows) * cols * sizeof(u32), "matrix");
    a_.assign(size_t(rows) * cols, 0);
}

Matrix Matrix::identity(u32 n, PrimeField field) {
    Matrix m(n, n, field);
    for (u32 i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, u32 cols, PrimeField field) {
    Matrix m(static_cast<u32>(rows.size()), cols, field);
    for (u32 r = 0; r < m.rows_; ++r) {
        if (rows[r].size() != cols) throw Error("from_rows: ragged row");
        m.set_row(r, rows[r]);
    }
    return m;
}

Matrix Matrix::col_vector(const Vec& v, PrimeField field) {
    Matrix m(static_cast<u32>(v.size()), 1, field);
    for (u32 r = 0; r < m.rows_; ++r) m(r, 0) = v[r] % field.p();
    return m;
}

Vec Matrix::row(u32 r) const {
    Vec v(cols_);
    for (u32 c = 0; c < cols_; ++c) v[c] = (*this)(r, c);
    return v;
}

Vec Matrix::col(u32 c) const {
    Vec v(rows_);
    for (u32 r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

void Matrix::set_row(u32 r, const Vec& v) {
    for (u32 c = 0; c < cols_; ++c) (*this)(r, c) = v[c] % field_.p();
}

void Matrix::set_col(u32 c, const Vec& v) {
    for (u32 r = 0; r < rows_; ++r) (*this)(r, c) = v[r] % field_.p();
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_ || !(field_ == o.field_))
        throw Error("matrix product shape mismatch: " + std::to_string(rows_) + "x" +
                    std::to_string(cols_) + " * " + std::to_string(o.rows_) + "x" +
                    std::to_string(o.cols_));
    Matrix r(rows_, o.cols_, field_);
    const u64 p = field_.p();
    for (u32 i = 0; i < rows_; ++i)
        for (u32 k = 0; k < cols_; ++k) {
            u64 aik = (*this)(i, k);
            if (aik == 0) continue;
            for (u32 j = 0; j < o.cols_; ++j) {
                u64 acc = r(i, j) + aik * o(k, j);
                r(i, j) = static_cast<u32>(acc % p);
            }
        }
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || !(field_ == o.field_))
        throw Error("matrix sum shape mismatch");
    Matrix r(rows_, cols_, field_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_.add(a_[i], o.a_[i]);
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || !(field_ == o.field_))
        throw Error("matrix difference shape mismatch");
    Matrix r(rows_, cols_, field_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_.sub(a_[i], o.a_[i]);
    return r;
}

Vec Matrix::apply(const Vec& v) const {
    if (v.size() != cols_) throw Error("matrix apply shape mismatch");
    Vec r(rows_, 0);
    const u64 p = field_.p();
    for (u32 i = 0; i < rows_; ++i) {
        u64 acc = 0;
        for (u32 c = 0; c < cols_; ++c) acc += u64((*this)(i, c)) * v[c];
        r[i] = static_cast<u32>(acc % p);
    }
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(cols_, rows_, field_);
    for (u32 i = 0; i < rows_; ++i)
        for (u32 j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

Matrix Matrix::scaled(u32 c) const {
    Matrix r(rows_, cols_, field_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_.mul(a_[i], c);
    return r;
}

bool Matrix::is_zero() const {
    for (u32 x : a_)
        if (x != 0) return false;
    return true;
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (u32 i = 0; i < rows_; ++i)
        for (u32 j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
    return true;
}

Matrix Matrix::kron(const Matrix& a, const Matrix& b) {
    if (!(a.field_ == b.field_)) throw Error("kron field mismatch");
    Matrix r(a.rows_ * b.rows_, a.cols_ * b.cols_, a.field_);
    for (u32 i = 0; i < a.rows_; ++i)
        for (u32 j = 0; j < a.cols_; ++j) {
            u32 aij = a(i, j);
            if (aij == 0) continue;
            for (u32 k = 0; k < b.rows_; ++k)
                for (u32 l = 0; l < b.cols_; ++l)
                    r(i * b.rows_ + k, j * b.cols_ + l) = a.field_.mul(aij, b(k, l));
        }
    return r;
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || !(a.field_ == b.field_)) throw Error("hstack mismatch");
    Matrix r(a.rows_, a.cols_ + b.cols_, a.field_);
    for (u32 i = 0; i < a.rows_; ++i) {
        for (u32 j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
        for (u32 j = 0; j < b.cols_; ++j) r(i, a.cols_ + j) = b(i, j);
    }
    return r;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.cols_ || !(a.field_ == b.field_)) throw Error("vstack mismatch");
    Matrix r(a.rows_ + b.rows_, a.cols_, a.field_);
    for (u32 i = 0; i < a.rows_; ++i)
        for (u32 j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
    for (u32 i = 0; i < b.rows_; ++i)
        for (u32 j = 0; j < a.cols_; ++j) r(a.rows_ + i, j) = b(i, j);
    return r;
}

Echelon Matrix::echelon() const {
    EchelonAccumulator acc(cols_, field_);
    for (u32 r = 0; r < rows_; ++r) acc.insert(row(r));
    Matrix rref = acc.basis();
    Echelon e;
    e.rref = rref;
    for (u32 r = 0; r < rref.rows(); ++r) {
        u32 c = 0;
        while (c < rref.cols() && rref(r, c) == 0) ++c;
        e.pivots.push_back(c);
    }
    return e;
}

u32 Matrix::rank() const { return echelon().rref.rows(); }

Matrix Matrix::kernel() const {
    Echelon e = echelon();
    u32 rk = e.rref.rows();
    std::vector<bool> is_pivot(cols_, false);
    for (u32 c : e.pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (u32 c = 0; c < cols_; ++c) {
        if (is_pivot[c]) continue;
        Vec v(cols_, 0);
        v[c] = 1;
        for (u32 r = 0; r < rk; ++r) v[e.pivots[r]] = field_.neg(e.rref(r, c));
        basis.push_back(std::move(v));
    }
    // Already independent; normalize to RREF for a canonical answer.
    Matrix k = from_rows(basis, cols_, field_);
    return k.echelon().rref;
}

std::optional<Matrix> Matrix::inverse() const {
    if (rows_ != cols_) return std::nullopt;
    // Row-reduce [A | I].
    Matrix aug = hstack(*this, identity(rows_, field_));
    EchelonAccumulator acc(aug.cols(), field_);
    for (u32 r = 0; r < rows_; ++r) acc.insert(aug.row(r));
    Matrix rref = acc.basis();
    if (rref.rows() != rows_) return std::nullopt;
    for (u32 r = 0; r < rows_; ++r) {
        for (u32 c = 0; c < cols_; ++c)
            if (rref(r, c) != (r == c ? 1u : 0u)) return std::nullopt;
    }
    Matrix inv(rows_, cols_, field_);
    for (u32 r = 0; r < rows_; ++r)
        for (u32 c = 0; c < cols_; ++c) inv(r, c) = rref(r, cols_ + c);
    return inv;
}

Vec kron_vec(const PrimeField& f, const Vec& a, const Vec& b) {
    Vec r(a.size() * b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i * b.size() + j] = f.mul(a[i], b[j]);
    }
    return r;
}

Vec add_vec(const PrimeField& f, const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error("vector sum size mismatch");
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
    return r;
}

Vec sub_vec(const PrimeField& f, const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error("vector difference size mismatch");
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = f.sub(a[i], b[i]);
    return r;
}

Vec scale_vec(const PrimeField& f, u32 c, const Vec& a) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = f.mul(c, a[i]);
    return r;
}

Vec unit_vec(u32 n, u32 i) {
    Vec v(n, 0);
    v[i] = 1;
    return v;
}

std::optional<LinearSolution> solve_linear(const Matrix& a, const Vec& b) {
    if (b.size() != a.rows()) throw Error("solve_linear shape mismatch");
    // Reduce [A | b]; inconsistent iff a pivot lands in the b column.
    Matrix aug = Matrix::hstack(a, Matrix::col_vector(b, a.field()));
    Echelon e = aug.echelon();
    Vec x(a.cols(), 0);
    for (u32 r = 0; r < e.rref.rows(); ++r) {
        u32 piv = e.pivots[r];
        if (piv == a.cols()) return std::nullopt;
        x[piv] = e.rref(r, a.cols());
    }
    return LinearSolution{std::move(x), a.kernel()};
}

EchelonAccumulator::EchelonAccumulator(u32 width, PrimeField field)
    : width_(width), field_(field) {}

void EchelonAccumulator::reduce(Vec& v) const {
    for (size_t r = 0; r < rows_.size(); ++r) {
        u32 c = v[pivot_of_[r]];
        if (c == 0) continue;
        const Vec& row = rows_[r];
        for (u32 j = pivot_of_[r]; j < width_; ++j)
            v[j] = field_.sub(v[j], field_.mul(c, row[j]));
    }
}

bool EchelonAccumulator::insert(Vec v) {
    if (v.size() != width_) throw Error("accumulator width mismatch");
    reduce(v);
    u32 piv = width_;
    for (u32 j = 0; j < width_; ++j)
        if (v[j] != 0) {
            piv = j;
            break;
        }
    if (piv == width_) return false;
    u32 scale = field_.inv(v[piv]);
    for (u32 j = piv; j < width_; ++j) v[j] = field_.mul(v[j], scale);
    // Eliminate the new pivot from existing rows to stay fully reduced.
    for (size_t r = 0; r < rows_.size(); ++r) {
        u32 c = rows_[r][piv];
        if (c == 0) continue;
        for (u32 j = piv; j < width_; ++j)
            rows_[r][j] = field_.sub(rows_[r][j], field_.mul(c, v[j]));
    }
    // Insert keeping pivots sorted.
    size_t pos = 0;
    while (pos < pivot_of_.size() && pivot_of_[pos] < piv) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(v));
    pivot_of_.insert(pivot_of_.begin() + pos, piv);
    return true;
}

bool EchelonAccumulator::contains(Vec v) const {
    if (v.size() != width_) throw Error("accumulator width mismatch");
    reduce(v);
    return is_zero_vec(v);
}

Matrix EchelonAccumulator::basis() const {
    Matrix m(static_cast<u32>(rows_.size()), width_, field_);
    for (u32 r = 0; r < m.rows(); ++r) m.set_row(r, rows_[r]);
    return m;
}

}  // namespace descent

namespace descent {

Vec vec_of(const Matrix& m) {
    Vec v(size_t(m.rows()) * m.cols());
    for (u32 r = 0; r < m.rows(); ++r)
        for (u32 c = 0; c < m.cols(); ++c) v[size_t(r) * m.cols() + c] = m(r, c);
    return v;
}

Matrix unvec(const Vec& v, u32 rows, u32 cols, PrimeField f) {
    Matrix m(rows, cols, f);
    for (u32 r = 0; r < rows; ++r)
        for (u32 c = 0; c < cols; ++c) m(r, c) = v[size_t(r) * cols + c];
    return m;
}

}  // namespace descent
