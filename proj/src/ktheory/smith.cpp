#include <algorithm>

#include "occ/ktheory.hpp"

namespace occ {

namespace {

// Elimination state: P*A*Q = S is maintained along with the inverses of P and Q.
struct Smith {
    IntMatrix S, P, Pinv, Q, Qinv;

    explicit Smith(const IntMatrix& a)
        : S(a),
          P(IntMatrix::identity(a.rows())),
          Pinv(IntMatrix::identity(a.rows())),
          Q(IntMatrix::identity(a.cols())),
          Qinv(IntMatrix::identity(a.cols())) {}

    void add_row(std::size_t i, std::size_t j, const Int& k) {
        S.add_row(i, j, k);
        P.add_row(i, j, k);
        Pinv.add_col(j, i, -k);
    }
    void add_col(std::size_t i, std::size_t j, const Int& k) {
        S.add_col(i, j, k);
        Q.add_col(i, j, k);
        Qinv.add_row(j, i, -k);
    }
    void swap_rows(std::size_t i, std::size_t j) {
        S.swap_rows(i, j);
        P.swap_rows(i, j);
        Pinv.swap_cols(i, j);
    }
    void swap_cols(std::size_t i, std::size_t j) {
        S.swap_cols(i, j);
        Q.swap_cols(i, j);
        Qinv.swap_rows(i, j);
    }
    void negate_row(std::size_t i) {
        S.negate_row(i);
        P.negate_row(i);
        Pinv.negate_col(i);
    }

    // Moves the smallest nonzero entry of the trailing block to (t,t); false if none.
    bool pivot_block(std::size_t t) {
        std::size_t bi = 0, bj = 0;
        bool found = false;
        for (std::size_t i = t; i < S.rows(); ++i)
            for (std::size_t j = t; j < S.cols(); ++j) {
                if (sgn(S(i, j)) == 0) continue;
                if (!found || cmpabs(S(i, j), S(bi, bj)) < 0) {
                    bi = i;
                    bj = j;
                    found = true;
                }
            }
        if (!found) return false;
        swap_rows(t, bi);
        swap_cols(t, bj);
        return true;
    }

    // Moves the smallest nonzero entry of row t / column t to (t,t) if it beats the pivot.
    void pivot_cross(std::size_t t) {
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < S.rows(); ++i)
            if (sgn(S(i, t)) != 0 && cmpabs(S(i, t), S(bi, bj)) < 0) bi = i, bj = t;
        for (std::size_t j = t + 1; j < S.cols(); ++j)
            if (sgn(S(t, j)) != 0 && cmpabs(S(t, j), S(bi, bj)) < 0) bi = t, bj = j;
        swap_rows(t, bi);
        swap_cols(t, bj);
    }

    bool clear_cross(std::size_t t) {
        bool clear = true;
        for (std::size_t i = t + 1; i < S.rows(); ++i) {
            if (sgn(S(i, t)) == 0) continue;
            Int q = S(i, t) / S(t, t);
            add_row(i, t, -q);
            if (sgn(S(i, t)) != 0) clear = false;
        }
        for (std::size_t j = t + 1; j < S.cols(); ++j) {
            if (sgn(S(t, j)) == 0) continue;
            Int q = S(t, j) / S(t, t);
            add_col(j, t, -q);
            if (sgn(S(t, j)) != 0) clear = false;
        }
        return clear;
    }

    // Row index of a trailing entry not divisible by the pivot, or rows() if none.
    std::size_t indivisible(std::size_t t) const {
        for (std::size_t i = t + 1; i < S.rows(); ++i)
            for (std::size_t j = t + 1; j < S.cols(); ++j)
                if (!mpz_divisible_p(S(i, j).get_mpz_t(), S(t, t).get_mpz_t())) return i;
        return S.rows();
    }

    void run() {
        std::size_t n = std::min(S.rows(), S.cols());
        for (std::size_t t = 0; t < n; ++t) {
            if (!pivot_block(t)) break;
            for (;;) {
                if (!clear_cross(t)) {
                    pivot_cross(t);
                    continue;
                }
                std::size_t i = indivisible(t);
                if (i == S.rows()) break;
                add_row(t, i, 1);
                pivot_cross(t);
            }
            if (sgn(S(t, t)) < 0) negate_row(t);
        }
    }
};

}  // namespace

std::size_t SmithForm::rank() const {
    std::size_t r = 0;
    for (const auto& d : diag)
        if (sgn(d) != 0) ++r;
    return r;
}

SmithForm smith_form(const IntMatrix& a) {
    Smith s(a);
    s.run();
    SmithForm f;
    std::size_t n = std::min(a.rows(), a.cols());
    f.diag.resize(n);
    for (std::size_t t = 0; t < n; ++t) f.diag[t] = s.S(t, t);
    f.U = s.Pinv;
    f.V = s.Qinv;
    f.P = std::move(s.P);
    f.Q = std::move(s.Q);
    f.S = std::move(s.S);
    return f;
}

}  // namespace occ
