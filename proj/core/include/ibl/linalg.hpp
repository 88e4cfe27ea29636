#pragma once

#include "ibl/scalar.hpp"

#include <map>
#include <optional>
#include <vector>

namespace ibl {

/* Dense exact matrix, row-major. */
class Matrix
{
public:
    Matrix() = default;
    Matrix(int rows, int cols) : r_(rows), c_(cols), a_(size_t(rows) * cols) {}
    static Matrix identity(int n);

    int rows() const { return r_; }
    int cols() const { return c_; }
    Scalar& operator()(int i, int j) { return a_[size_t(i) * c_ + j]; }
    const Scalar& operator()(int i, int j) const { return a_[size_t(i) * c_ + j]; }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Scalar& x) const;
    std::vector<Scalar> operator*(const std::vector<Scalar>& v) const;
    Matrix transpose() const;
    bool is_zero() const;
    bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

private:
    int r_ = 0, c_ = 0;
    std::vector<Scalar> a_;
};

/* Reduced row echelon form; pivots receives pivot columns. */
Matrix rref(Matrix m, std::vector<int>* pivots = nullptr);
int rank(const Matrix& m);
/* Kernel basis (column vectors) read off the reduced echelon form. */
std::vector<std::vector<Scalar>> kernel_basis(const Matrix& m);
/* Basis of the column space in reduced echelon form. */
std::vector<std::vector<Scalar>> image_basis(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);
/* Columns as a matrix. */
Matrix from_columns(const std::vector<std::vector<Scalar>>& cols, int rows);

using SparseVec = std::map<int, Scalar>;

/* Column-stored sparse matrix. */
struct SparseMatrix
{
    int rows = 0, cols = 0;
    std::vector<SparseVec> columns;

    SparseMatrix() = default;
    SparseMatrix(int r, int c) : rows(r), cols(c), columns(c) {}
    void add(int i, int j, const Scalar& x);
    SparseVec apply(const SparseVec& v) const;
    Matrix dense() const;
};

/* Incrementally maintained echelon basis; pivot = smallest supported index. */
class EchelonBasis
{
public:
    /* Returns true iff v was independent (and then stores it). */
    bool insert(SparseVec v);
    SparseVec reduce(SparseVec v) const;
    bool contains(const SparseVec& v) const { return reduce(v).empty(); }
    int dim() const { return int(rows_.size()); }
    const std::map<int, SparseVec>& rows() const { return rows_; }

private:
    std::map<int, SparseVec> rows_;  // pivot -> row with leading coefficient 1
};

int rank(const SparseMatrix& m);
std::vector<SparseVec> kernel_basis(const SparseMatrix& m);
std::vector<SparseVec> image_basis(const SparseMatrix& m);

void axpy(SparseVec& y, const Scalar& a, const SparseVec& x);

}  // namespace ibl
