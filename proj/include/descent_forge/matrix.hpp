// Dense exact matrices over F_p with reduced-row-echelon primitives.
//
// Conventions used throughout the library:
//   * vectors are coordinate columns, stored as Vec (std::vector<u32>);
//   * a matrix represents a linear map source -> target with shape
//     (target dim) x (source dim), applied by apply();
//   * kron uses the row-major pairing ((i,k),(j,l)) -> A(i,j)*B(k,l), so that
//     kron(A,B) * (v (x) w) = (A v) (x) (B w) with (v (x) w)[i*n+j] = v_i w_j.
#pragma once

#include <optional>
#include <vector>

#include "descent_forge/fp.hpp"

namespace descent {

using Vec = std::vector<u32>;

bool is_zero_vec(const Vec& v);

struct Echelon;

class Matrix {
public:
    Matrix() : rows_(0), cols_(0), field_(2) {}
    Matrix(u32 rows, u32 cols, PrimeField field);

    static Matrix identity(u32 n, PrimeField field);
    static Matrix from_rows(const std::vector<Vec>& rows, u32 cols, PrimeField field);
    static Matrix col_vector(const Vec& v, PrimeField field);

    u32 rows() const { return rows_; }
    u32 cols() const { return cols_; }
    const PrimeField& field() const { return field_; }

    u32 operator()(u32 r, u32 c) const { return a_[size_t(r) * cols_ + c]; }
    u32& operator()(u32 r, u32 c) { return a_[size_t(r) * cols_ + c]; }

    Vec row(u32 r) const;
    Vec col(u32 c) const;
    void set_row(u32 r, const Vec& v);
    void set_col(u32 c, const Vec& v);

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    bool operator==(const Matrix& o) const = default;

    Vec apply(const Vec& v) const;
    Matrix transpose() const;
    Matrix scaled(u32 c) const;
    bool is_zero() const;
    bool is_identity() const;

    static Matrix kron(const Matrix& a, const Matrix& b);
    static Matrix hstack(const Matrix& a, const Matrix& b);
    static Matrix vstack(const Matrix& a, const Matrix& b);

    Echelon echelon() const;

    u32 rank() const;
    // Rows span the null space {x : A x = 0}; returned in RREF form.
    Matrix kernel() const;
    std::optional<Matrix> inverse() const;

private:
    u32 rows_, cols_;
    PrimeField field_;
    std::vector<u32> a_;
};

struct Echelon {
    Matrix rref;              // reduced row-echelon form, zero rows dropped
    std::vector<u32> pivots;  // strictly increasing pivot columns
};

// Row-major flattening of a matrix and its inverse; with this convention
// kron(A, B) applied to vec_of(X) equals vec_of(A * X * B^T).
Vec vec_of(const Matrix& m);
Matrix unvec(const Vec& v, u32 rows, u32 cols, PrimeField f);

Vec kron_vec(const PrimeField& f, const Vec& a, const Vec& b);
Vec add_vec(const PrimeField& f, const Vec& a, const Vec& b);
Vec sub_vec(const PrimeField& f, const Vec& a, const Vec& b);
Vec scale_vec(const PrimeField& f, u32 c, const Vec& a);
Vec unit_vec(u32 n, u32 i);

// Affine solution set of A x = b: one particular solution plus the kernel of
// A. Empty optional when the system is inconsistent.
struct LinearSolution {
    Vec particular;
    Matrix kernel;  // rows span the homogeneous solutions
};
std::optional<LinearSolution> solve_linear(const Matrix& a, const Vec& b);

// Incremental row-space accumulator: insert vectors, query span membership,
// extract the canonical RREF basis at the end. Used for relation spans and
// image computations where generators arrive one by one.
class EchelonAccumulator {
public:
    EchelonAccumulator(u32 width, PrimeField field);
    // Returns true when v enlarged the span.
    bool insert(Vec v);
    bool contains(Vec v) const;
    u32 rank() const { return static_cast<u32>(rows_.size()); }
    u32 width() const { return width_; }
    // Canonical RREF basis of the accumulated span.
    Matrix basis() const;

private:
    void reduce(Vec& v) const;
    u32 width_;
    PrimeField field_;
    std::vector<Vec> rows_;       // echelon rows, pivot normalized to 1
    std::vector<u32> pivot_of_;   // pivot column per row
};

}  // namespace descent
