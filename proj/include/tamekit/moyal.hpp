#ifndef TAMEKIT_MOYAL_HPP
#define TAMEKIT_MOYAL_HPP

#include <vector>

#include "tamekit/linalg.hpp"
#include "tamekit/polynomial.hpp"

namespace tame {

// Constant bidifferential pairing alpha on K[x_1..x_m].  Not required to be
// antisymmetric: the one-sided R^2 pairing (alpha^{12} = 1 only) is as valid
// an input as the genuinely Poisson antisymmetric one.
struct PoissonPairing {
    std::size_t m = 0;
    CMat alpha; // m x m

    PoissonPairing(std::size_t m_, CMat a) : m(m_), alpha(std::move(a)) {
        if (alpha.rows != m || alpha.cols != m)
            throw dimension_error("pairing matrix must be m x m");
    }
    static PoissonPairing one_sided_r2() {
        CMat a(2, 2, Field::rationals());
        a.at(0, 1) = Coeff(Rational(1));
        return PoissonPairing(2, std::move(a));
    }
    static PoissonPairing antisymmetric_r2() {
        CMat a(2, 2, Field::rationals());
        a.at(0, 1) = Coeff(Rational(1));
        a.at(1, 0) = Coeff(Rational(-1));
        return PoissonPairing(2, std::move(a));
    }
};

// Truncated element of A[[hbar]]: coeff[k] multiplies hbar^k, length order+1.
struct StarSeries {
    int order = 0;
    std::vector<Polynomial> coeff;

    StarSeries(int k, std::size_t nvars)
        : order(k), coeff(static_cast<std::size_t>(k) + 1, Polynomial::zero(nvars)) {}

    bool operator==(const StarSeries& o) const {
        return order == o.order && coeff == o.coeff;
    }
    friend StarSeries operator-(StarSeries a, const StarSeries& b) {
        if (a.order != b.order) throw dimension_error("star series truncation orders differ");
        for (int k = 0; k <= a.order; ++k) a.coeff[k] -= b.coeff[k];
        return a;
    }
    bool is_zero() const {
        for (auto& f : coeff)
            if (!f.is_zero()) return false;
        return true;
    }

    // Shift the coefficient list down one slot; the hbar^0 part must vanish.
    StarSeries divided_by_hbar() const {
        if (!coeff[0].is_zero())
            throw invalid_input_error("cannot divide by hbar: hbar^0 coefficient is nonzero");
        StarSeries s(order - 1, coeff[0].nvars());
        for (int k = 0; k < order; ++k) s.coeff[k] = coeff[k + 1];
        return s;
    }
};

// f * g = sum_n hbar^n/n! sum alpha^{i_1 j_1}..alpha^{i_n j_n}
//         d_{i_1..i_n} f . d_{j_1..j_n} g, truncated at order K.
StarSeries moyal_product(const Polynomial& f, const Polynomial& g, const PoissonPairing& a,
                         int K);

// The n-th bilinear coefficient B_n(f, g) of the product above.
Polynomial moyal_bn(const Polynomial& f, const Polynomial& g, const PoissonPairing& a, int n);

// f*g - g*f; with divide_by_hbar the coefficient list is shifted down one
// slot (requires the hbar^0 part to vanish, which holds since B_0 = fg).
StarSeries star_commutator(const Polynomial& f, const Polynomial& g, const PoissonPairing& a,
                           int K, bool divide_by_hbar = false);

// {f,g} = B_1(f,g) - B_1(g,f) = sum (alpha^{ij} - alpha^{ji}) d_i f d_j g.
Polynomial bracket_from_star(const Polynomial& f, const Polynomial& g, const PoissonPairing& a);

// Gauge transformation D(hbar) = 1 + sum_{m>=1} D_m hbar^m where each D_m is
// a constant-coefficient linear differential operator, given by its symbol:
// a polynomial in the m partial-derivative generators.
struct GaugeSeries {
    std::size_t m = 0;
    std::vector<Polynomial> ops; // ops[i] = symbol of D_{i+1}, nvars == m
};

// Applies a constant-coefficient operator symbol to f.
Polynomial apply_diffop(const Polynomial& symbol, const Polynomial& f);

// f *' g = D(D^{-1} f * D^{-1} g) truncated at order K.
StarSeries gauge_product(const Polynomial& f, const Polynomial& g, const PoissonPairing& a,
                         int K, const GaugeSeries& d);

// Antisymmetrized first-order term of the gauged product.
Polynomial bracket_from_gauged_star(const Polynomial& f, const Polynomial& g,
                                    const PoissonPairing& a, const GaugeSeries& d);

} // namespace tame

#endif
