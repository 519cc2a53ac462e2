#ifndef TAMEKIT_LINALG_HPP
#define TAMEKIT_LINALG_HPP

#include <optional>
#include <vector>

#include "tamekit/coeff.hpp"

namespace tame {

// Dense exact linear algebra over a coefficient field; small systems only
// (linear parts of endomorphisms, Vandermonde solves, Waring systems).
struct CMat {
    std::size_t rows = 0, cols = 0;
    std::vector<Coeff> a;

    CMat() = default;
    CMat(std::size_t r, std::size_t c, const Field& f)
        : rows(r), cols(c), a(r * c, Coeff(0, f)) {}

    Coeff& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Coeff& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static CMat identity(std::size_t n, const Field& f) {
        CMat m(n, n, f);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Coeff(1, f);
        return m;
    }

    friend CMat operator*(const CMat& x, const CMat& y) {
        CMat r(x.rows, y.cols, Field::rationals());
        for (auto& c : r.a) c = Coeff(Rational(0));
        for (std::size_t i = 0; i < x.rows; ++i)
            for (std::size_t k = 0; k < x.cols; ++k) {
                if (x.at(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < y.cols; ++j)
                    r.at(i, j) += x.at(i, k) * y.at(k, j);
            }
        return r;
    }

    bool operator==(const CMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

// Gauss-Jordan; returns nullopt when singular.
inline std::optional<CMat> inverse(CMat m) {
    if (m.rows != m.cols) return std::nullopt;
    std::size_t n = m.rows;
    Field f = n ? m.at(0, 0).field() : Field::rationals();
    CMat inv = CMat::identity(n, f);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m.at(piv, col).is_zero()) ++piv;
        if (piv == n) return std::nullopt;
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m.at(piv, j), m.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        Coeff d = m.at(col, col).inverse();
        for (std::size_t j = 0; j < n; ++j) {
            m.at(col, j) *= d;
            inv.at(col, j) *= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || m.at(i, col).is_zero()) continue;
            Coeff c = m.at(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                m.at(i, j) -= c * m.at(col, j);
                inv.at(i, j) -= c * inv.at(col, j);
            }
        }
    }
    return inv;
}

inline Coeff det(CMat m) {
    if (m.rows != m.cols) throw dimension_error("det: non-square matrix");
    std::size_t n = m.rows;
    if (n == 0) return Coeff(Rational(1));
    Field f = m.at(0, 0).field();
    Coeff d(1, f);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m.at(piv, col).is_zero()) ++piv;
        if (piv == n) return Coeff(0, f);
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
            d = -d;
        }
        d *= m.at(col, col);
        Coeff inv = m.at(col, col).inverse();
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m.at(i, col).is_zero()) continue;
            Coeff c = m.at(i, col) * inv;
            for (std::size_t j = col; j < n; ++j) m.at(i, j) -= c * m.at(col, j);
        }
    }
    return d;
}

// Solves A x = b (A rows x cols, b length rows); returns one solution with
// free variables set to zero, or nullopt when inconsistent.
inline std::optional<std::vector<Coeff>> solve(CMat m, std::vector<Coeff> b) {
    Field f = m.a.empty() ? Field::rationals() : m.a[0].field();
    std::size_t r = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t col = 0; col < m.cols && r < m.rows; ++col) {
        std::size_t piv = r;
        while (piv < m.rows && m.at(piv, col).is_zero()) ++piv;
        if (piv == m.rows) continue;
        if (piv != r) {
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
            std::swap(b[piv], b[r]);
        }
        Coeff d = m.at(r, col).inverse();
        for (std::size_t j = 0; j < m.cols; ++j) m.at(r, j) *= d;
        b[r] *= d;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, col).is_zero()) continue;
            Coeff c = m.at(i, col);
            for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) -= c * m.at(r, j);
            b[i] -= c * b[r];
        }
        pivot_col.push_back(col);
        ++r;
    }
    for (std::size_t i = r; i < m.rows; ++i)
        if (!b[i].is_zero()) return std::nullopt;
    std::vector<Coeff> x(m.cols, Coeff(0, f));
    for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
    return x;
}

} // namespace tame

#endif
