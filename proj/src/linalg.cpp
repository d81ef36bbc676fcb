#include "qca/linalg.hpp"

#include <stdexcept>

namespace qca {

bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

SparseVec to_sparse(const Vec& v) {
    SparseVec s;
    for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) s.emplace(static_cast<int>(i), v[i]);
    return s;
}

Vec to_dense(const SparseVec& v, int dim) {
    Vec d(static_cast<size_t>(dim));
    for (const auto& [i, x] : v) d.at(static_cast<size_t>(i)) = x;
    return d;
}

namespace {

void axpy(SparseVec& y, const QRational& a, const SparseVec& x) {
    for (const auto& [i, v] : x) {
        auto [it, fresh] = y.emplace(i, a * v);
        if (fresh) continue;
        it->second += a * v;
        if (it->second.is_zero()) y.erase(it);
    }
}

}  // namespace

Matrix::Matrix(int rows, int cols) : r_(rows), c_(cols), rows_(static_cast<size_t>(rows)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix size");
}

Matrix Matrix::identity(int d) { return scalar(d, QRational(1)); }

Matrix Matrix::scalar(int d, const QRational& c) {
    Matrix m(d, d);
    if (!c.is_zero())
        for (int i = 0; i < d; ++i) m.rows_[static_cast<size_t>(i)].emplace(i, c);
    return m;
}

Matrix Matrix::from_dense(const std::vector<Vec>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    Matrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != c) throw std::invalid_argument("ragged rows");
        m.rows_[static_cast<size_t>(i)] = to_sparse(rows[static_cast<size_t>(i)]);
    }
    return m;
}

QRational Matrix::at(int r, int c) const {
    const auto& row = rows_.at(static_cast<size_t>(r));
    auto it = row.find(c);
    return it == row.end() ? QRational() : it->second;
}

void Matrix::set(int r, int c, const QRational& v) {
    if (c < 0 || c >= c_) throw std::out_of_range("matrix column");
    auto& row = rows_.at(static_cast<size_t>(r));
    if (v.is_zero())
        row.erase(c);
    else
        row[c] = v;
}

void Matrix::add_to(int r, int c, const QRational& v) {
    if (v.is_zero()) return;
    set(r, c, at(r, c) + v);
}

bool Matrix::is_zero() const {
    for (const auto& r : rows_)
        if (!r.empty()) return false;
    return true;
}

size_t Matrix::nnz() const {
    size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
}

bool Matrix::is_diagonal() const {
    for (int i = 0; i < r_; ++i)
        for (const auto& [j, v] : rows_[static_cast<size_t>(i)])
            if (j != i) return false;
    return true;
}

Matrix Matrix::operator-() const {
    Matrix m = *this;
    for (auto& r : m.rows_)
        for (auto& [j, v] : r) v = -v;
    return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix size mismatch");
    Matrix m = a;
    for (size_t i = 0; i < m.rows_.size(); ++i) axpy(m.rows_[i], QRational(1), b.rows_[i]);
    return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix size mismatch");
    Matrix m = a;
    for (size_t i = 0; i < m.rows_.size(); ++i) axpy(m.rows_[i], QRational(-1), b.rows_[i]);
    return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matrix size mismatch");
    Matrix m(a.r_, b.c_);
    for (size_t i = 0; i < a.rows_.size(); ++i) {
        SparseVec& out = m.rows_[i];
        for (const auto& [k, x] : a.rows_[i]) axpy(out, x, b.rows_[static_cast<size_t>(k)]);
    }
    return m;
}

Matrix operator*(const QRational& c, const Matrix& a) {
    if (c.is_zero()) return Matrix(a.r_, a.c_);
    Matrix m = a;
    for (auto& r : m.rows_)
        for (auto& [j, v] : r) v *= c;
    return m;
}

Vec Matrix::apply(const Vec& v) const {
    if (static_cast<int>(v.size()) != c_) throw std::invalid_argument("vector size mismatch");
    Vec out(static_cast<size_t>(r_));
    for (int i = 0; i < r_; ++i) {
        QRational acc;
        for (const auto& [j, x] : rows_[static_cast<size_t>(i)]) {
            const QRational& y = v[static_cast<size_t>(j)];
            if (!y.is_zero()) acc += x * y;
        }
        out[static_cast<size_t>(i)] = acc;
    }
    return out;
}

Matrix Matrix::transpose() const {
    Matrix m(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (const auto& [j, v] : rows_[static_cast<size_t>(i)]) m.rows_[static_cast<size_t>(j)].emplace(i, v);
    return m;
}

Matrix Matrix::kron(const Matrix& a, const Matrix& b) {
    Matrix m(a.r_ * b.r_, a.c_ * b.c_);
    for (int i = 0; i < a.r_; ++i)
        for (const auto& [j, x] : a.rows_[static_cast<size_t>(i)])
            for (int k = 0; k < b.r_; ++k) {
                SparseVec& out = m.rows_[static_cast<size_t>(i * b.r_ + k)];
                for (const auto& [l, y] : b.rows_[static_cast<size_t>(k)]) out.emplace(j * b.c_ + l, x * y);
            }
    return m;
}

std::vector<Vec> Matrix::dense() const {
    std::vector<Vec> d;
    for (const auto& r : rows_) d.push_back(to_dense(r, c_));
    return d;
}

std::string Matrix::str() const {
    std::string s;
    for (const auto& r : rows_) {
        s += "[";
        for (int j = 0; j < c_; ++j) {
            auto it = r.find(j);
            s += (j ? ", " : "") + (it == r.end() ? std::string("0") : it->second.str());
        }
        s += "]\n";
    }
    return s;
}

// ---------------------------------------------------------------- Echelon

SparseVec Echelon::reduce(SparseVec v) const {
    // rows are fully reduced, so one pass over v's pivot columns suffices
    for (size_t k = 0; k < piv_.size(); ++k) {
        auto it = v.find(piv_[k]);
        if (it == v.end()) continue;
        QRational c = it->second;
        axpy(v, -c, rows_[k]);
    }
    return v;
}

bool Echelon::insert(SparseVec v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    int p = v.begin()->first;
    QRational inv = v.begin()->second.inverse();
    for (auto& [j, x] : v) x *= inv;
    for (auto& r : rows_) {
        auto it = r.find(p);
        if (it == r.end()) continue;
        QRational c = it->second;
        axpy(r, -c, v);
    }
    where_[p] = rows_.size();
    rows_.push_back(std::move(v));
    piv_.push_back(p);
    return true;
}

std::vector<Vec> Echelon::nullspace() const {
    std::vector<Vec> out;
    for (int f = 0; f < cols_; ++f) {
        if (where_.count(f)) continue;
        Vec x(static_cast<size_t>(cols_));
        x[static_cast<size_t>(f)] = QRational(1);
        for (size_t k = 0; k < rows_.size(); ++k) {
            auto it = rows_[k].find(f);
            if (it != rows_[k].end()) x[static_cast<size_t>(piv_[k])] = -it->second;
        }
        out.push_back(std::move(x));
    }
    return out;
}

int rank(const std::vector<Vec>& rows) {
    if (rows.empty()) return 0;
    Echelon e(static_cast<int>(rows[0].size()));
    for (const auto& r : rows) e.insert(r);
    return e.rank();
}

std::vector<Vec> kernel(const Matrix& a) {
    Echelon e(a.cols());
    for (int i = 0; i < a.rows(); ++i) e.insert(a.row(i));
    return e.nullspace();
}

std::vector<Vec> kernel(const std::vector<Vec>& rows, int cols) {
    Echelon e(cols);
    for (const auto& r : rows) e.insert(r);
    return e.nullspace();
}

LinearSolution solve_augmented(const std::vector<SparseVec>& rows, int unknowns) {
    Echelon e(unknowns + 1);
    for (const auto& r : rows) e.insert(r);
    LinearSolution s;
    for (int p : e.pivots())
        if (p == unknowns) {
            s.status = SolveStatus::NoSolution;
            return s;
        }
    s.nullity = unknowns - e.rank();
    if (s.nullity > 0) {
        s.status = SolveStatus::Underdetermined;
        return s;
    }
    s.status = SolveStatus::Unique;
    s.x.assign(static_cast<size_t>(unknowns), QRational());
    for (size_t k = 0; k < e.rows().size(); ++k) {
        auto it = e.rows()[k].find(unknowns);
        // [A | b] . (x, -1) = 0, so a reduced row reads x_p - c = 0
        if (it != e.rows()[k].end()) s.x[static_cast<size_t>(e.pivots()[k])] = it->second;
    }
    return s;
}

}  // namespace qca
