#ifndef TAMEKIT_ENDO_HPP
#define TAMEKIT_ENDO_HPP

#include <optional>
#include <vector>

#include "tamekit/matrix.hpp"
#include "tamekit/polynomial.hpp"

namespace tame {

// Origin-preserving polynomial endomorphism of K[x_1..x_n], identified with
// its vector of generator images.
class PolyEndo {
  public:
    PolyEndo() = default;
    PolyEndo(std::vector<Polynomial> images, Field field = Field::rationals())
        : n_(images.size()), images_(std::move(images)), field_(field) {
        for (auto& f : images_) {
            if (f.nvars() != n_)
                throw dimension_error("endomorphism images must live in K[x_1..x_n]");
            if (auto c = f.constant_term(); c && !c->is_zero())
                throw invalid_input_error(
                    "endomorphism images must have zero constant term (origin-preserving)");
            if (!f.is_zero()) field_ = f.terms().begin()->second.field();
        }
    }

    static PolyEndo identity(std::size_t n, const Field& f = Field::rationals()) {
        std::vector<Polynomial> im;
        im.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            im.push_back(Polynomial::variable(i, n, Coeff(1, f)));
        return PolyEndo(std::move(im), f);
    }

    std::size_t n() const { return n_; }
    Field field() const { return field_; }
    const std::vector<Polynomial>& images() const { return images_; }
    const Polynomial& image(std::size_t i) const { return images_[i]; }

    bool is_identity() const { return *this == identity(n_, field_); }
    int degree() const {
        int d = -1;
        for (auto& f : images_) d = std::max(d, f.degree());
        return d;
    }

    bool operator==(const PolyEndo& o) const { return n_ == o.n_ && images_ == o.images_; }

  private:
    std::size_t n_ = 0;
    std::vector<Polynomial> images_;
    Field field_;
};

// (phi o psi)(x_i) = phi(psi(x_i)): substitute phi's images into psi's.
inline PolyEndo compose(const PolyEndo& phi, const PolyEndo& psi, int maxdeg = -1) {
    if (phi.n() != psi.n()) throw dimension_error("compose: dimension mismatch");
    std::vector<Polynomial> im;
    im.reserve(psi.n());
    for (auto& f : psi.images()) im.push_back(f.substitute(phi.images(), maxdeg));
    return PolyEndo(std::move(im), phi.field());
}

inline std::vector<Polynomial> endo_diff(const PolyEndo& a, const PolyEndo& b) {
    if (a.n() != b.n()) throw dimension_error("endo difference: dimension mismatch");
    std::vector<Polynomial> d;
    d.reserve(a.n());
    for (std::size_t i = 0; i < a.n(); ++i) d.push_back(a.image(i) - b.image(i));
    return d;
}

// Ht(phi - psi); the power-series metric is d = exp(-Ht).
inline int height_dist(const PolyEndo& a, const PolyEndo& b) {
    auto d = endo_diff(a, b);
    return height<Coeff>(d);
}
inline int height_from_id(const PolyEndo& a) {
    return height_dist(a, PolyEndo::identity(a.n(), a.field()));
}

inline PolyMatrix jacobian(const PolyEndo& phi) {
    PolyMatrix j(phi.n(), phi.n(), phi.n());
    for (std::size_t i = 0; i < phi.n(); ++i)
        for (std::size_t k = 0; k < phi.n(); ++k) j.at(i, k) = phi.image(i).partial(k);
    return j;
}

inline Polynomial jacobian_det(const PolyEndo& phi) { return det(jacobian(phi)); }

// Coefficient matrix of the degree-1 components: L[i][j] = x_j-coefficient
// of the i-th image.
inline CMat linear_part(const PolyEndo& phi) {
    CMat l(phi.n(), phi.n(), phi.field());
    for (std::size_t i = 0; i < phi.n(); ++i)
        for (auto& [m, c] : phi.image(i).terms())
            if (m.degree() == 1)
                for (std::size_t j = 0; j < phi.n(); ++j)
                    if (m.exp(j) == 1) l.at(i, j) = c;
    return l;
}

inline PolyEndo linear_endo(const CMat& m, const Field& f) {
    std::vector<Polynomial> im;
    for (std::size_t i = 0; i < m.rows; ++i) {
        Polynomial p = Polynomial::zero(m.cols);
        for (std::size_t j = 0; j < m.cols; ++j)
            p += Polynomial::monomial(Monomial::var(j, m.cols), m.at(i, j));
        im.push_back(std::move(p));
    }
    return PolyEndo(std::move(im), f);
}

struct not_locally_invertible_error : error {
    explicit not_locally_invertible_error(const std::string& msg) : error(msg) {}
};

// Truncated formal inverse G with compose(G, phi) == id == compose(phi, G)
// modulo degree N+1, via fixed-point iteration on x = y + H(x).
inline PolyEndo formal_inverse(const PolyEndo& phi, int N) {
    CMat l = linear_part(phi);
    auto linv = inverse(l);
    if (!linv) throw not_locally_invertible_error("singular linear part");
    PolyEndo linv_endo = linear_endo(*linv, phi.field());
    PolyEndo phi0 = compose(linv_endo, phi); // identity linear part
    // H := id - phi0 has height >= 2
    std::vector<Polynomial> h;
    for (std::size_t i = 0; i < phi.n(); ++i)
        h.push_back(Polynomial::variable(i, phi.n(), Coeff(1, phi.field())) - phi0.image(i));
    std::vector<Polynomial> g;
    for (std::size_t i = 0; i < phi.n(); ++i)
        g.push_back(Polynomial::variable(i, phi.n(), Coeff(1, phi.field())));
    for (int it = 0; it < N; ++it) {
        std::vector<Polynomial> next;
        next.reserve(phi.n());
        bool stable = true;
        for (std::size_t i = 0; i < phi.n(); ++i) {
            Polynomial gi = Polynomial::variable(i, phi.n(), Coeff(1, phi.field())) +
                            h[i].substitute(g, N);
            if (!(gi == g[i])) stable = false;
            next.push_back(std::move(gi));
        }
        g.swap(next);
        if (stable) break;
    }
    PolyEndo g0(std::move(g), phi.field());
    PolyEndo full = compose(g0, linv_endo);
    std::vector<Polynomial> trunc;
    for (auto& f : full.images()) trunc.push_back(f.truncated(N));
    return PolyEndo(std::move(trunc), phi.field());
}

struct AutoDecision {
    bool yes = false;
    std::optional<PolyEndo> inverse; // present iff yes
};

// Exact decision via the Gabber degree bound deg(f^-1) <= deg(f)^(n-1):
// compute the truncated inverse at that cap and test both compositions
// exactly.  cap_limit guards against absurd bounds.
inline AutoDecision is_automorphism(const PolyEndo& phi, long cap_limit = 4096) {
    CMat l = linear_part(phi);
    if (!inverse(l)) return {false, std::nullopt};
    long cap = 1;
    int d = std::max(phi.degree(), 1);
    for (std::size_t i = 1; i < phi.n(); ++i) {
        cap *= d;
        if (cap > cap_limit)
            throw resource_error("Gabber degree cap " + std::to_string(cap) + " exceeds limit " +
                                 std::to_string(cap_limit));
    }
    PolyEndo g = formal_inverse(phi, static_cast<int>(cap));
    PolyEndo id = PolyEndo::identity(phi.n(), phi.field());
    if (compose(phi, g) == id && compose(g, phi) == id) return {true, g};
    return {false, std::nullopt};
}

// Elementary automorphism x_k -> a*x_k + f, f independent of x_k.
struct ElementaryAuto {
    std::size_t n = 0;
    std::size_t k = 0;
    Coeff a;
    Polynomial f;

    ElementaryAuto(std::size_t n_, std::size_t k_, Coeff a_, Polynomial f_)
        : n(n_), k(k_), a(std::move(a_)), f(std::move(f_)) {
        if (k >= n) throw dimension_error("elementary automorphism: target index out of range");
        if (a.is_zero()) throw invalid_input_error("elementary automorphism: scalar a must be nonzero");
        if (f.nvars() != n) throw dimension_error("elementary automorphism: arity mismatch");
        for (auto& [m, c] : f.terms())
            if (m.exp(k) > 0)
                throw invalid_input_error("elementary automorphism: f must not involve x_k");
        if (auto c = f.constant_term(); c && !c->is_zero())
            throw invalid_input_error("elementary automorphism: translations are excluded");
    }

    PolyEndo to_endo() const {
        Field fld = a.field();
        std::vector<Polynomial> im;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k)
                im.push_back(Polynomial::monomial(Monomial::var(k, n), a) + f);
            else
                im.push_back(Polynomial::variable(i, n, Coeff(1, fld)));
        }
        return PolyEndo(std::move(im), fld);
    }

    ElementaryAuto inverse() const {
        Coeff ai = a.inverse();
        return ElementaryAuto(n, k, ai, f.scaled(-ai));
    }
};

// Ordered sequence of elementary factors, evaluated left-to-right:
// eval([e1..em]) = e1 o e2 o ... o em.
struct TameWord {
    std::size_t n = 0;
    std::vector<ElementaryAuto> factors;

    explicit TameWord(std::size_t n_) : n(n_) {}

    void push(ElementaryAuto e) {
        if (e.n != n) throw dimension_error("tame word: factor arity mismatch");
        factors.push_back(std::move(e));
    }
    void append(const TameWord& w) {
        for (auto& e : w.factors) push(e);
    }

    TameWord inverse() const {
        TameWord w(n);
        for (auto it = factors.rbegin(); it != factors.rend(); ++it) w.push(it->inverse());
        return w;
    }

    // maxdeg >= 0 evaluates modulo degree maxdeg+1 (valid because every
    // factor is origin-preserving, so truncation commutes with composition).
    PolyEndo eval(const Field& f = Field::rationals(), int maxdeg = -1) const {
        PolyEndo acc = PolyEndo::identity(n, f);
        for (auto& e : factors) acc = compose(acc, e.to_endo(), maxdeg);
        return acc;
    }
};

// Factor an invertible scalar matrix into elementary automorphisms:
// eval(word) is the linear endomorphism with matrix m.
inline TameWord linear_to_word(const CMat& m, const Field& field) {
    if (m.rows != m.cols) throw dimension_error("linear_to_word: non-square matrix");
    std::size_t n = m.rows;
    TameWord word(n);
    if (!inverse(m)) throw not_locally_invertible_error("singular linear part");
    // Row-reduce a working copy to the identity; the inverses of the row
    // operations, in reverse, multiply back to m.
    CMat w = m;
    std::vector<ElementaryAuto> ops; // as applied, in order
    Coeff one(1, field);
    auto add_row = [&](std::size_t i, std::size_t j, const Coeff& c) {
        // row_i += c * row_j
        for (std::size_t t = 0; t < n; ++t) w.at(i, t) += c * w.at(j, t);
        ops.emplace_back(n, i, one,
                         Polynomial::monomial(Monomial::var(j, n), c));
    };
    auto scale_row = [&](std::size_t i, const Coeff& a) {
        for (std::size_t t = 0; t < n; ++t) w.at(i, t) *= a;
        ops.emplace_back(n, i, a, Polynomial::zero(n));
    };
    for (std::size_t col = 0; col < n; ++col) {
        if (w.at(col, col).is_zero()) {
            std::size_t r = col + 1;
            while (r < n && w.at(r, col).is_zero()) ++r;
            if (r == n) throw not_locally_invertible_error("singular linear part");
            add_row(col, r, one);
        }
        if (!w.at(col, col).is_one()) scale_row(col, w.at(col, col).inverse());
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || w.at(i, col).is_zero()) continue;
            add_row(i, col, -w.at(i, col));
        }
    }
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) word.push(it->inverse());
    return word;
}

// Canonical Poisson bracket on K[x_1..x_n, p_1..p_n] with {p_i, x_j} = delta_ij.
inline Polynomial poisson_bracket(const Polynomial& f, const Polynomial& g) {
    if (f.nvars() != g.nvars()) throw dimension_error("poisson bracket: arity mismatch");
    if (f.nvars() % 2 != 0)
        throw dimension_error("poisson bracket needs an even variable count (x_1..x_n,p_1..p_n)");
    std::size_t n = f.nvars() / 2;
    Polynomial r = Polynomial::zero(f.nvars());
    for (std::size_t i = 0; i < n; ++i)
        r += f.partial(n + i) * g.partial(i) - f.partial(i) * g.partial(n + i);
    return r;
}

// Exact check that every generator-image pair reproduces the canonical table.
inline bool is_symplectomorphism(const PolyEndo& sigma) {
    if (sigma.n() % 2 != 0) return false;
    std::size_t n = sigma.n() / 2;
    Field f = sigma.field();
    auto c = [&](long v) { return Polynomial::constant(2 * n, Coeff(v, f)); };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!(poisson_bracket(sigma.image(n + i), sigma.image(j)) == c(i == j ? 1 : 0)))
                return false;
            if (j > i) {
                if (!poisson_bracket(sigma.image(i), sigma.image(j)).is_zero()) return false;
                if (!poisson_bracket(sigma.image(n + i), sigma.image(n + j)).is_zero())
                    return false;
            }
        }
    return true;
}

} // namespace tame

#endif
