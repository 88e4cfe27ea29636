#include "ibl/linalg.hpp"

#include <stdexcept>

namespace ibl {

Matrix Matrix::identity(int n)
{
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const
{
    if (c_ != o.r_)
        throw std::invalid_argument("matrix product: shape mismatch");
    Matrix m(r_, o.c_);
    for (int i = 0; i < r_; ++i)
        for (int k = 0; k < c_; ++k) {
            const Scalar& x = (*this)(i, k);
            if (x == 0)
                continue;
            for (int j = 0; j < o.c_; ++j)
                if (o(k, j) != 0)
                    m(i, j) += x * o(k, j);
        }
    return m;
}

Matrix Matrix::operator+(const Matrix& o) const
{
    if (r_ != o.r_ || c_ != o.c_)
        throw std::invalid_argument("matrix sum: shape mismatch");
    Matrix m = *this;
    for (size_t i = 0; i < a_.size(); ++i)
        m.a_[i] += o.a_[i];
    return m;
}

Matrix Matrix::operator-(const Matrix& o) const
{
    return *this + o * Scalar(-1);
}

Matrix Matrix::operator*(const Scalar& x) const
{
    Matrix m = *this;
    for (auto& v : m.a_)
        v *= x;
    return m;
}

std::vector<Scalar> Matrix::operator*(const std::vector<Scalar>& v) const
{
    if (int(v.size()) != c_)
        throw std::invalid_argument("matrix-vector product: shape mismatch");
    std::vector<Scalar> r(r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j)
            if (v[j] != 0)
                r[i] += (*this)(i, j) * v[j];
    return r;
}

Matrix Matrix::transpose() const
{
    Matrix m(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j)
            m(j, i) = (*this)(i, j);
    return m;
}

bool Matrix::is_zero() const
{
    for (const auto& x : a_)
        if (x != 0)
            return false;
    return true;
}

Matrix rref(Matrix m, std::vector<int>* pivots)
{
    int row = 0;
    if (pivots)
        pivots->clear();
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = -1;
        for (int i = row; i < m.rows(); ++i)
            if (m(i, col) != 0) {
                p = i;
                break;
            }
        if (p < 0)
            continue;
        if (p != row)
            for (int j = 0; j < m.cols(); ++j)
                std::swap(m(p, j), m(row, j));
        Scalar inv = 1 / m(row, col);
        for (int j = col; j < m.cols(); ++j)
            m(row, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0)
                continue;
            Scalar f = m(i, col);
            for (int j = col; j < m.cols(); ++j)
                if (m(row, j) != 0)
                    m(i, j) -= f * m(row, j);
        }
        if (pivots)
            pivots->push_back(col);
        ++row;
    }
    return m;
}

int rank(const Matrix& m)
{
    std::vector<int> piv;
    rref(m, &piv);
    return int(piv.size());
}

std::vector<std::vector<Scalar>> kernel_basis(const Matrix& m)
{
    std::vector<int> piv;
    Matrix r = rref(m, &piv);
    std::vector<bool> is_piv(m.cols(), false);
    for (int p : piv)
        is_piv[p] = true;
    std::vector<std::vector<Scalar>> out;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_piv[f])
            continue;
        std::vector<Scalar> v(m.cols());
        v[f] = 1;
        for (size_t i = 0; i < piv.size(); ++i)
            v[piv[i]] = -r(int(i), f);
        out.push_back(v);
    }
    return out;
}

std::vector<std::vector<Scalar>> image_basis(const Matrix& m)
{
    std::vector<int> piv;
    Matrix r = rref(m.transpose(), &piv);
    std::vector<std::vector<Scalar>> out;
    for (size_t i = 0; i < piv.size(); ++i) {
        std::vector<Scalar> v(m.rows());
        for (int j = 0; j < m.rows(); ++j)
            v[j] = r(int(i), j);
        out.push_back(v);
    }
    return out;
}

std::optional<Matrix> inverse(const Matrix& m)
{
    if (m.rows() != m.cols())
        return std::nullopt;
    int n = m.rows();
    Matrix aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    std::vector<int> piv;
    Matrix r = rref(aug, &piv);
    if (int(piv.size()) < n || piv[n - 1] != n - 1)
        return std::nullopt;
    Matrix inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            inv(i, j) = r(i, n + j);
    return inv;
}

Matrix from_columns(const std::vector<std::vector<Scalar>>& cols, int rows)
{
    Matrix m(rows, int(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
        for (int i = 0; i < rows; ++i)
            m(i, int(j)) = cols[j][i];
    return m;
}

void axpy(SparseVec& y, const Scalar& a, const SparseVec& x)
{
    if (a == 0)
        return;
    for (const auto& [i, v] : x) {
        auto [it, fresh] = y.try_emplace(i, 0);
        it->second += a * v;
        if (it->second == 0)
            y.erase(it);
    }
}

void SparseMatrix::add(int i, int j, const Scalar& x)
{
    if (x == 0)
        return;
    auto& col = columns[j];
    Scalar& s = col[i];
    s += x;
    if (s == 0)
        col.erase(i);
}

SparseVec SparseMatrix::apply(const SparseVec& v) const
{
    SparseVec r;
    for (const auto& [j, x] : v)
        axpy(r, x, columns[j]);
    return r;
}

Matrix SparseMatrix::dense() const
{
    Matrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (const auto& [i, x] : columns[j])
            m(i, j) = x;
    return m;
}

SparseVec EchelonBasis::reduce(SparseVec v) const
{
    auto it = v.begin();
    while (it != v.end()) {
        auto r = rows_.find(it->first);
        if (r == rows_.end()) {
            ++it;
            continue;
        }
        int key = it->first;
        Scalar f = it->second;
        axpy(v, -f, r->second);
        it = v.upper_bound(key);
    }
    return v;
}

bool EchelonBasis::insert(SparseVec v)
{
    v = reduce(std::move(v));
    if (v.empty())
        return false;
    Scalar inv = 1 / v.begin()->second;
    for (auto& [i, x] : v)
        x *= inv;
    rows_.emplace(v.begin()->first, std::move(v));
    return true;
}

static std::vector<SparseVec> row_equations(const SparseMatrix& m)
{
    std::vector<SparseVec> rows(m.rows);
    for (int j = 0; j < m.cols; ++j)
        for (const auto& [i, x] : m.columns[j])
            rows[i][j] = x;
    return rows;
}

int rank(const SparseMatrix& m)
{
    EchelonBasis e;
    for (const auto& col : m.columns)
        e.insert(col);
    return e.dim();
}

std::vector<SparseVec> kernel_basis(const SparseMatrix& m)
{
    EchelonBasis e;
    for (auto& r : row_equations(m))
        e.insert(std::move(r));
    /* full back-substitution, largest pivot first */
    std::map<int, SparseVec> rows = e.rows();
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        int p = it->first;
        for (auto jt = rows.begin(); jt->first < p; ++jt) {
            auto f = jt->second.find(p);
            if (f != jt->second.end()) {
                Scalar c = f->second;
                axpy(jt->second, -c, it->second);
            }
        }
    }
    std::vector<bool> is_piv(m.cols, false);
    for (const auto& [p, r] : rows)
        is_piv[p] = true;
    /* column f -> list of (pivot, coefficient) */
    std::vector<std::vector<std::pair<int, Scalar>>> free_entries(m.cols);
    for (const auto& [p, r] : rows)
        for (const auto& [j, x] : r)
            if (j != p)
                free_entries[j].push_back({p, x});
    std::vector<SparseVec> out;
    for (int f = 0; f < m.cols; ++f) {
        if (is_piv[f])
            continue;
        SparseVec v;
        v[f] = 1;
        for (const auto& [p, x] : free_entries[f])
            v[p] = -x;
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<SparseVec> image_basis(const SparseMatrix& m)
{
    EchelonBasis e;
    for (const auto& col : m.columns)
        e.insert(col);
    std::vector<SparseVec> out;
    for (const auto& [p, r] : e.rows())
        out.push_back(r);
    return out;
}

}  // namespace ibl
