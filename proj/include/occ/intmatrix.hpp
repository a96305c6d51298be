#pragma once
#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace occ {

using Int = mpz_class;
using IntVec = std::vector<Int>;

inline int cmpabs(const Int& a, const Int& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

// Dense row-major matrix over arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_columns(std::size_t rows, const std::vector<IntVec>& cols);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    Int& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    IntMatrix transpose() const;
    IntVec column(std::size_t j) const;
    IntVec row(std::size_t i) const;
    IntVec apply(const IntVec& x) const;
    bool is_zero() const;

    // Horizontal concatenation [A | B].
    IntMatrix hcat(const IntMatrix& b) const;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    // row i += k * row j
    void add_row(std::size_t i, std::size_t j, const Int& k);
    // col i += k * col j
    void add_col(std::size_t i, std::size_t j, const Int& k);
    void negate_row(std::size_t i);
    void negate_col(std::size_t i);

    friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
    friend IntMatrix operator-(const IntMatrix& x, const IntMatrix& y);
    friend IntMatrix operator+(const IntMatrix& x, const IntMatrix& y);
    friend bool operator==(const IntMatrix& x, const IntMatrix& y);

    std::string str() const;

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<Int> a_;
};

// Exact determinant by fraction-free elimination (Bareiss).
Int determinant(const IntMatrix& a);

}  // namespace occ
