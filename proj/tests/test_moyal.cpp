#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tamekit/moyal.hpp"
#include "tamekit/poly_io.hpp"

using namespace tame;

namespace {

const VarNames xy = VarNames::plain(2);

Polynomial P(const std::string& s) { return parse_polynomial(s, xy); }

Polynomial random_poly(std::mt19937_64& rng, int maxdeg, int nterms) {
    Polynomial f = Polynomial::zero(2);
    for (int t = 0; t < nterms; ++t) {
        std::vector<std::uint16_t> e(2, 0);
        int budget = static_cast<int>(rng() % (maxdeg + 1));
        for (int d = 0; d < budget; ++d) e[rng() % 2]++;
        f.add_term(Monomial(std::move(e)), Coeff(Rational(static_cast<long>(rng() % 9) - 4)));
    }
    return f;
}

} // namespace

TEST_CASE("first-order values") {
    PoissonPairing one = PoissonPairing::one_sided_r2();
    StarSeries s = moyal_product(P("x1"), P("x2"), one, 2);
    CHECK(s.coeff[0] == P("x1*x2"));
    CHECK(s.coeff[1] == P("1"));
    CHECK(s.coeff[2].is_zero());

    PoissonPairing anti = PoissonPairing::antisymmetric_r2();
    CHECK(moyal_product(P("x1"), P("x2"), anti, 1).coeff[1] == P("1"));
    CHECK(moyal_product(P("x2"), P("x1"), anti, 1).coeff[1] == P("-1"));
}

TEST_CASE("unit is inert: f * 1 = f at every order") {
    std::mt19937_64 rng(3);
    PoissonPairing one = PoissonPairing::one_sided_r2();
    for (int i = 0; i < 10; ++i) {
        Polynomial f = random_poly(rng, 4, 4);
        StarSeries s = moyal_product(f, P("1"), one, 3);
        CHECK(s.coeff[0] == f);
        for (int k = 1; k <= 3; ++k) CHECK(s.coeff[k].is_zero());
    }
}

TEST_CASE("truncated associativity for both pairings") {
    std::mt19937_64 rng(5);
    for (auto& a : {PoissonPairing::one_sided_r2(), PoissonPairing::antisymmetric_r2()}) {
        for (int rep = 0; rep < 10; ++rep) {
            Polynomial f = random_poly(rng, 3, 3), g = random_poly(rng, 3, 3),
                       h = random_poly(rng, 3, 3);
            int K = 4;
            // (f*g)*h and f*(g*h) assembled through the truncated series
            StarSeries fg = moyal_product(f, g, a, K), gh = moyal_product(g, h, a, K);
            StarSeries lhs(K, 2), rhs(K, 2);
            for (int r = 0; r <= K; ++r) {
                StarSeries t1 = moyal_product(fg.coeff[r], h, a, K - r);
                StarSeries t2 = moyal_product(f, gh.coeff[r], a, K - r);
                for (int s = 0; r + s <= K; ++s) {
                    lhs.coeff[r + s] += t1.coeff[s];
                    rhs.coeff[r + s] += t2.coeff[s];
                }
            }
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("star commutator") {
    PoissonPairing one = PoissonPairing::one_sided_r2();
    StarSeries c = star_commutator(P("x1"), P("x2"), one, 1, true);
    CHECK(c.coeff[0] == P("1"));
    StarSeries self = star_commutator(P("x1*x2^2"), P("x1*x2^2"), one, 3);
    CHECK(self.is_zero());
    PoissonPairing anti = PoissonPairing::antisymmetric_r2();
    CHECK(star_commutator(P("x1"), P("x2"), anti, 1, true).coeff[0] == P("2"));
    // the hbar^0 part of a commutator always vanishes; dividing a series
    // whose hbar^0 part is nonzero is rejected
    CHECK_THROWS_AS(moyal_product(P("x1"), P("x2"), one, 2).divided_by_hbar(),
                    invalid_input_error);
}

TEST_CASE("bracket from star") {
    PoissonPairing one = PoissonPairing::one_sided_r2();
    CHECK(bracket_from_star(P("x1"), P("x2"), one) == P("1"));
    CHECK(bracket_from_star(P("x1*x2"), P("x1*x2"), one).is_zero());
    PoissonPairing anti = PoissonPairing::antisymmetric_r2();
    CHECK(bracket_from_star(P("x1"), P("x2"), anti) == P("2"));
    // agrees with B1(f,g) - B1(g,f)
    std::mt19937_64 rng(7);
    for (int i = 0; i < 10; ++i) {
        Polynomial f = random_poly(rng, 3, 3), g = random_poly(rng, 3, 3);
        CHECK(bracket_from_star(f, g, one) ==
              moyal_bn(f, g, one, 1) - moyal_bn(g, f, one, 1));
    }
}

TEST_CASE("bracket satisfies Jacobi and Leibniz") {
    std::mt19937_64 rng(11);
    for (auto& a : {PoissonPairing::one_sided_r2(), PoissonPairing::antisymmetric_r2()}) {
        for (int i = 0; i < 15; ++i) {
            Polynomial f = random_poly(rng, 3, 3), g = random_poly(rng, 3, 3),
                       h = random_poly(rng, 3, 3);
            Polynomial jac = bracket_from_star(f, bracket_from_star(g, h, a), a) +
                             bracket_from_star(g, bracket_from_star(h, f, a), a) +
                             bracket_from_star(h, bracket_from_star(f, g, a), a);
            CHECK(jac.is_zero());
            CHECK(bracket_from_star(f * g, h, a) ==
                  f * bracket_from_star(g, h, a) + bracket_from_star(f, h, a) * g);
        }
    }
}

TEST_CASE("gauge transformations") {
    PoissonPairing one = PoissonPairing::one_sided_r2();
    // trivial gauge leaves the product unchanged
    GaugeSeries trivial{2, {}};
    std::mt19937_64 rng(13);
    for (int i = 0; i < 5; ++i) {
        Polynomial f = random_poly(rng, 3, 3), g = random_poly(rng, 3, 3);
        CHECK(gauge_product(f, g, one, 3, trivial) == moyal_product(f, g, one, 3));
    }
    // D_1 = d^2/dx1 dx2 does not change the induced bracket
    GaugeSeries d1{2, {P("x1*x2")}}; // symbol: d_1 d_2
    for (int i = 0; i < 10; ++i) {
        Polynomial f = random_poly(rng, 3, 3), g = random_poly(rng, 3, 3);
        CHECK(bracket_from_gauged_star(f, g, one, d1) == bracket_from_star(f, g, one));
    }
    // pure-derivative gauges preserve the unit on the nose
    for (int i = 0; i < 5; ++i) {
        Polynomial f = random_poly(rng, 3, 3);
        StarSeries s = gauge_product(f, P("1"), one, 2, d1);
        CHECK(s.coeff[0] == f);
    }
}

TEST_CASE("gauge invariance for random first-order gauges") {
    PoissonPairing one = PoissonPairing::one_sided_r2();
    std::mt19937_64 rng(17);
    for (int i = 0; i < 10; ++i) {
        // random constant-coefficient operator symbol of order <= 2
        Polynomial sym = random_poly(rng, 2, 3);
        GaugeSeries d{2, {sym}};
        Polynomial f = random_poly(rng, 3, 3), g = random_poly(rng, 3, 3);
        CHECK(bracket_from_gauged_star(f, g, one, d) == bracket_from_star(f, g, one));
    }
}
