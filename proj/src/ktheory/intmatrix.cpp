#include "occ/intmatrix.hpp"

#include <sstream>
#include <stdexcept>

namespace occ {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    a_.reserve(r_ * c_);
    for (const auto& row : rows) {
        if (row.size() != c_) throw std::invalid_argument("ragged matrix literal");
        for (long v : row) a_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVec>& cols) {
    IntMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntVec IntMatrix::column(std::size_t j) const {
    IntVec v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

IntVec IntMatrix::row(std::size_t i) const {
    return IntVec(a_.begin() + static_cast<std::ptrdiff_t>(i * c_),
                  a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * c_));
}

IntVec IntMatrix::apply(const IntVec& x) const {
    if (x.size() != c_) throw std::invalid_argument("apply: dimension mismatch");
    IntVec y(r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j)
            if (sgn(x[j]) != 0) y[i] += (*this)(i, j) * x[j];
    return y;
}

bool IntMatrix::is_zero() const {
    for (const auto& v : a_)
        if (sgn(v) != 0) return false;
    return true;
}

IntMatrix IntMatrix::hcat(const IntMatrix& b) const {
    if (b.r_ != r_) throw std::invalid_argument("hcat: row mismatch");
    IntMatrix m(r_, c_ + b.c_);
    for (std::size_t i = 0; i < r_; ++i) {
        for (std::size_t j = 0; j < c_; ++j) m(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < b.c_; ++j) m(i, c_ + j) = b(i, j);
    }
    return m;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < r_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

void IntMatrix::add_row(std::size_t i, std::size_t j, const Int& k) {
    if (sgn(k) == 0) return;
    for (std::size_t t = 0; t < c_; ++t)
        if (sgn((*this)(j, t)) != 0) (*this)(i, t) += k * (*this)(j, t);
}

void IntMatrix::add_col(std::size_t i, std::size_t j, const Int& k) {
    if (sgn(k) == 0) return;
    for (std::size_t t = 0; t < r_; ++t)
        if (sgn((*this)(t, j)) != 0) (*this)(t, i) += k * (*this)(t, j);
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t t = 0; t < c_; ++t) (*this)(i, t) = -(*this)(i, t);
}

void IntMatrix::negate_col(std::size_t i) {
    for (std::size_t t = 0; t < r_; ++t) (*this)(t, i) = -(*this)(t, i);
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.c_ != y.r_) throw std::invalid_argument("multiply: dimension mismatch");
    IntMatrix z(x.r_, y.c_);
    for (std::size_t i = 0; i < x.r_; ++i)
        for (std::size_t k = 0; k < x.c_; ++k) {
            const Int& v = x(i, k);
            if (sgn(v) == 0) continue;
            for (std::size_t j = 0; j < y.c_; ++j)
                if (sgn(y(k, j)) != 0) z(i, j) += v * y(k, j);
        }
    return z;
}

IntMatrix operator-(const IntMatrix& x, const IntMatrix& y) {
    if (x.r_ != y.r_ || x.c_ != y.c_) throw std::invalid_argument("subtract: shape mismatch");
    IntMatrix z = x;
    for (std::size_t t = 0; t < z.a_.size(); ++t) z.a_[t] -= y.a_[t];
    return z;
}

IntMatrix operator+(const IntMatrix& x, const IntMatrix& y) {
    if (x.r_ != y.r_ || x.c_ != y.c_) throw std::invalid_argument("add: shape mismatch");
    IntMatrix z = x;
    for (std::size_t t = 0; t < z.a_.size(); ++t) z.a_[t] += y.a_[t];
    return z;
}

bool operator==(const IntMatrix& x, const IntMatrix& y) {
    return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < r_; ++i) {
        os << '[';
        for (std::size_t j = 0; j < c_; ++j) os << (j ? " " : "") << (*this)(i, j);
        os << "]\n";
    }
    return os.str();
}

Int determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
    std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(m(k, k)) == 0) {
            std::size_t p = k + 1;
            while (p < n && sgn(m(p, k)) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = t;
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

}  // namespace occ
