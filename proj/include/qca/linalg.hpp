#pragma once

#include "qca/qrational.hpp"

#include <map>
#include <string>
#include <vector>

namespace qca {

using Vec = std::vector<QRational>;
using SparseVec = std::map<int, QRational>;

bool is_zero(const Vec& v);
SparseVec to_sparse(const Vec& v);
Vec to_dense(const SparseVec& v, int dim);

// Sparse matrix over Q(q), row-major; entries absent are zero.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols);
    static Matrix identity(int d);
    static Matrix scalar(int d, const QRational& c);
    static Matrix from_dense(const std::vector<Vec>& rows);

    int rows() const { return r_; }
    int cols() const { return c_; }
    QRational at(int r, int c) const;
    void set(int r, int c, const QRational& v);
    void add_to(int r, int c, const QRational& v);
    const SparseVec& row(int r) const { return rows_[static_cast<size_t>(r)]; }

    bool is_zero() const;
    size_t nnz() const;
    bool is_diagonal() const;

    Matrix operator-() const;
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const QRational& c, const Matrix& a);
    friend bool operator==(const Matrix& a, const Matrix& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.rows_ == b.rows_; }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    Vec apply(const Vec& v) const;
    Matrix transpose() const;
    static Matrix kron(const Matrix& a, const Matrix& b);
    std::vector<Vec> dense() const;
    std::string str() const;

private:
    int r_ = 0, c_ = 0;
    std::vector<SparseVec> rows_;
};

// Incrementally maintained reduced row echelon form: every stored row has a
// pivot entry 1 and all other stored rows vanish in that column.
class Echelon {
public:
    explicit Echelon(int cols = 0) : cols_(cols) {}

    int cols() const { return cols_; }
    int rank() const { return static_cast<int>(rows_.size()); }
    // true when v was independent of the stored rows
    bool insert(SparseVec v);
    bool insert(const Vec& v) { return insert(to_sparse(v)); }
    // remainder after reduction
    SparseVec reduce(SparseVec v) const;
    bool contains(const Vec& v) const { return reduce(to_sparse(v)).empty(); }
    const std::vector<SparseVec>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return piv_; }
    // basis of {x : row . x = 0 for every stored row}
    std::vector<Vec> nullspace() const;

private:
    int cols_;
    std::vector<SparseVec> rows_;
    std::vector<int> piv_;
    std::map<int, size_t> where_;  // pivot column -> row index
};

int rank(const std::vector<Vec>& rows);
// basis of the right kernel {x : A x = 0}
std::vector<Vec> kernel(const Matrix& a);
std::vector<Vec> kernel(const std::vector<Vec>& rows, int cols);

enum class SolveStatus { Unique, NoSolution, Underdetermined };

struct LinearSolution {
    SolveStatus status;
    Vec x;             // filled when unique
    int nullity = 0;   // dimension of the solution space when consistent
};

// Solves A x = b given as augmented rows [A | b].
LinearSolution solve_augmented(const std::vector<SparseVec>& rows, int unknowns);

}  // namespace qca
