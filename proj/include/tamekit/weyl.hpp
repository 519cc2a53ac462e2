#ifndef TAMEKIT_WEYL_HPP
#define TAMEKIT_WEYL_HPP

#include <map>
#include <string>
#include <vector>

#include "tamekit/endo.hpp"
#include "tamekit/polynomial.hpp"

namespace tame {

// Normally ordered monomial of the h-augmented Weyl algebra W^h_n:
// x_1^{a_1}..x_n^{a_n} d_1^{b_1}..d_n^{b_n} h^c.  The grading assigns
// Deg x_i = Deg d_i = 1 and Deg h = 2, making the rewrite d x = x d + h
// degree-preserving.
class WeylMonomial {
  public:
    WeylMonomial() = default;
    explicit WeylMonomial(std::size_t n) : n_(n), e_(2 * n + 1, 0) {}

    std::size_t n() const { return n_; }
    std::uint16_t x(std::size_t i) const { return e_[i]; }
    std::uint16_t d(std::size_t i) const { return e_[n_ + i]; }
    std::uint16_t h() const { return e_[2 * n_]; }
    void set_x(std::size_t i, std::uint16_t v) { e_[i] = v; }
    void set_d(std::size_t i, std::uint16_t v) { e_[n_ + i] = v; }
    void set_h(std::uint16_t v) { e_[2 * n_] = v; }

    int degree() const {
        int s = 0;
        for (std::size_t i = 0; i < 2 * n_; ++i) s += e_[i];
        return s + 2 * e_[2 * n_];
    }

    bool operator==(const WeylMonomial&) const = default;
    friend bool operator<(const WeylMonomial& a, const WeylMonomial& b) {
        int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        return a.e_ < b.e_;
    }

  private:
    std::size_t n_ = 0;
    std::vector<std::uint16_t> e_;
};

class WeylElement {
  public:
    using Terms = std::map<WeylMonomial, Coeff>;

    WeylElement() = default;
    explicit WeylElement(std::size_t n) : n_(n) {}

    static WeylElement zero(std::size_t n) { return WeylElement(n); }
    static WeylElement constant(std::size_t n, const Coeff& c) {
        WeylElement e(n);
        e.add_term(WeylMonomial(n), c);
        return e;
    }
    static WeylElement xgen(std::size_t i, std::size_t n, const Field& f);
    static WeylElement dgen(std::size_t i, std::size_t n, const Field& f);
    static WeylElement hgen(std::size_t n, const Field& f);

    std::size_t n() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

    void add_term(WeylMonomial m, const Coeff& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(std::move(m), c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    WeylElement operator-() const {
        WeylElement e(n_);
        for (auto& [m, c] : terms_) e.terms_.emplace(m, -c);
        return e;
    }
    WeylElement& operator+=(const WeylElement& o);
    WeylElement& operator-=(const WeylElement& o);
    friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
    friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
    friend WeylElement operator*(const WeylElement& a, const WeylElement& b);

    WeylElement scaled(const Coeff& c) const;

    // Substitute a value for h (h^c -> v^c); the result carries h-exponent 0.
    WeylElement specialize_h(const Coeff& v) const;

    bool operator==(const WeylElement& o) const { return n_ == o.n_ && terms_ == o.terms_; }

  private:
    std::size_t n_ = 0;
    Terms terms_;
};

inline WeylElement weyl_commutator(const WeylElement& a, const WeylElement& b) {
    return a * b - b * a;
}

// Endomorphism of W^h_n given by images of x_1..x_n, d_1..d_n; h maps to
// hscale * h (the action on h of any h-augmented endomorphism is a dilation).
struct WeylEndo {
    std::size_t n = 0;
    std::vector<WeylElement> ximg, dimg;
    Coeff hscale;

    static WeylEndo identity(std::size_t n, const Field& f);

    // Substitutes images word-by-word through the normal-form expansion.
    WeylElement apply(const WeylElement& f) const;

    bool fixes_h() const { return hscale.is_one(); }
};

struct WeylCheckResult {
    bool ok = true;
    std::string offending; // description of the first violated relation
};

// Verifies all defining relations on the images.
WeylCheckResult weyl_check_endo(const WeylEndo& e);

WeylEndo weyl_compose(const WeylEndo& phi, const WeylEndo& psi);

// h -> 0 read-off: commutative images in K[x_1..x_n, p_1..p_n], d_i -> p_i.
// Requires the endomorphism to fix h.
PolyEndo classical_limit(const WeylEndo& e);

// Lift of a polynomial in p_1..p_n only (resp. x_1..x_n only) evaluated on
// the commuting generators d (resp. x).
WeylElement weyl_from_ppoly(const Polynomial& f_on_2n, std::size_t n, const Field& fld);
WeylElement weyl_from_xpoly(const Polynomial& f_on_2n, std::size_t n, const Field& fld);

std::string to_string(const WeylElement& e);
WeylElement parse_weyl(const std::string& text, std::size_t n,
                       const Field& field = Field::rationals());

} // namespace tame

#endif
