#ifndef TAMEKIT_MATRIX_HPP
#define TAMEKIT_MATRIX_HPP

#include <vector>

#include "tamekit/linalg.hpp"
#include "tamekit/polynomial.hpp"

namespace tame {

// Rectangular matrix with exact polynomial entries sharing one variable count.
class PolyMatrix {
  public:
    PolyMatrix() = default;
    PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
        : rows_(rows), cols_(cols), nvars_(nvars),
          e_(rows * cols, Polynomial::zero(nvars)) {}

    static PolyMatrix identity(std::size_t n, std::size_t nvars, const Field& f) {
        PolyMatrix m(n, n, nvars);
        for (std::size_t i = 0; i < n; ++i)
            m.at(i, i) = Polynomial::constant(nvars, Coeff(1, f));
        return m;
    }
    static PolyMatrix from_scalars(const CMat& s, std::size_t nvars) {
        PolyMatrix m(s.rows, s.cols, nvars);
        for (std::size_t i = 0; i < s.rows; ++i)
            for (std::size_t j = 0; j < s.cols; ++j)
                m.at(i, j) = Polynomial::constant(nvars, s.at(i, j));
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nvars() const { return nvars_; }

    Polynomial& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Polynomial& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    bool is_zero() const {
        for (auto& f : e_)
            if (!f.is_zero()) return false;
        return true;
    }

    PolyMatrix operator-() const {
        PolyMatrix r = *this;
        for (auto& f : r.e_) f = -f;
        return r;
    }
    friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) {
        a.check_shape(b);
        for (std::size_t k = 0; k < a.e_.size(); ++k) a.e_[k] += b.e_[k];
        return a;
    }
    friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) {
        a.check_shape(b);
        for (std::size_t k = 0; k < a.e_.size(); ++k) a.e_[k] -= b.e_[k];
        return a;
    }
    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.cols_ != b.rows_) throw dimension_error("matrix product shape mismatch");
        PolyMatrix r(a.rows_, b.cols_, a.nvars_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    if (b.at(k, j).is_zero()) continue;
                    r.at(i, j) += a.at(i, k) * b.at(k, j);
                }
            }
        return r;
    }

    PolyMatrix scaled(const Polynomial& f) const {
        PolyMatrix r = *this;
        for (auto& g : r.e_) g = g * f;
        return r;
    }

    bool operator==(const PolyMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

    // Trace of a square matrix.
    Polynomial trace() const {
        if (rows_ != cols_) throw dimension_error("trace: non-square matrix");
        Polynomial t = Polynomial::zero(nvars_);
        for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
        return t;
    }

  private:
    void check_shape(const PolyMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw dimension_error("matrix shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0, nvars_ = 0;
    std::vector<Polynomial> e_;
};

namespace detail {

inline Polynomial det_cofactor(const PolyMatrix& m) {
    std::size_t n = m.rows();
    if (n == 0) return Polynomial::constant(m.nvars(), Coeff(Rational(1)));
    if (n == 1) return m.at(0, 0);
    Polynomial d = Polynomial::zero(m.nvars());
    for (std::size_t j = 0; j < n; ++j) {
        if (m.at(0, j).is_zero()) continue;
        PolyMatrix sub(n - 1, n - 1, m.nvars());
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                sub.at(i - 1, cc++) = m.at(i, c);
            }
        }
        Polynomial t = m.at(0, j) * det_cofactor(sub);
        if (j % 2) t = -t;
        d += t;
    }
    return d;
}

// Fraction-free Bareiss elimination; every division is exact in K[x].
inline Polynomial det_bareiss(PolyMatrix m) {
    std::size_t n = m.rows();
    Field f = Field::rationals();
    for (std::size_t i = 0; i < n && f.is_rational(); ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!m.at(i, j).is_zero()) {
                f = m.at(i, j).terms().begin()->second.field();
                break;
            }
    Polynomial prev = Polynomial::constant(m.nvars(), Coeff(1, f));
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k).is_zero()) {
            std::size_t piv = k + 1;
            while (piv < n && m.at(piv, k).is_zero()) ++piv;
            if (piv == n) return Polynomial::zero(m.nvars());
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Polynomial num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                auto q = divide_exact(num, prev);
                if (!q) throw internal_invariant_error("Bareiss division not exact");
                m.at(i, j) = *q;
            }
        prev = m.at(k, k);
    }
    Polynomial d = m.at(n - 1, n - 1);
    return sign < 0 ? -d : d;
}

} // namespace detail

// Exact determinant: cofactor expansion for small orders, fraction-free
// Bareiss beyond (controls intermediate blowup on polynomial entries).
inline Polynomial det(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw dimension_error("det: non-square matrix");
    if (m.rows() <= 3) return detail::det_cofactor(m);
    return detail::det_bareiss(m);
}

// Characteristic polynomial det(lambda*E - M) as a polynomial in nvars()+1
// variables; lambda is the final variable index.
inline Polynomial charpoly(const PolyMatrix& m, const Field& f) {
    if (m.rows() != m.cols()) throw dimension_error("charpoly: non-square matrix");
    std::size_t n = m.rows(), v = m.nvars();
    PolyMatrix lam(n, n, v + 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            lam.at(i, j) = -m.at(i, j).extended(v + 1);
            if (i == j)
                lam.at(i, j) += Polynomial::monomial(Monomial::var(v, v + 1), Coeff(1, f));
        }
    return det(lam);
}

// True iff m^rows == 0; equivalent to the characteristic polynomial being
// lambda^n over an integral coefficient domain.
inline bool is_nilpotent(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw dimension_error("is_nilpotent: non-square matrix");
    PolyMatrix p = m;
    for (std::size_t k = 1; k <= m.rows(); ++k) {
        if (p.is_zero()) return true;
        if (k < m.rows()) p = p * m;
    }
    return false;
}

// Standard polynomial S_r(args) = sum over permutations of sgn * product,
// for any associative ring value with +, * and unary -.
template <class R>
R standard_polynomial(const std::vector<R>& args) {
    if (args.empty()) throw dimension_error("standard polynomial needs r >= 1 arguments");
    std::size_t r = args.size();
    bool first = true;
    R acc = args[0];
    std::vector<bool> used(r, false);
    std::size_t depth = 0;
    // Depth-first over permutations with shared prefix products; parity is
    // tracked incrementally (placing the k-th smallest unused element adds k
    // inversions).
    auto rec = [&](auto&& self, const R* prefix, int parity) -> void {
        if (depth == r) {
            R term = *prefix;
            if (parity) term = -term;
            if (first) {
                acc = std::move(term);
                first = false;
            } else {
                acc = std::move(acc) + term;
            }
            return;
        }
        int skipped = 0;
        for (std::size_t i = 0; i < r; ++i) {
            if (used[i]) continue;
            used[i] = true;
            ++depth;
            int p2 = (parity + skipped) % 2;
            if (prefix) {
                R next = *prefix * args[i];
                self(self, &next, p2);
            } else {
                self(self, &args[i], p2);
            }
            --depth;
            used[i] = false;
            ++skipped;
        }
    };
    rec(rec, nullptr, 0);
    return acc;
}

} // namespace tame

#endif
