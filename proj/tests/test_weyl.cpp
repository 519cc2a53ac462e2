#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tamekit/poly_io.hpp"
#include "tamekit/weyl.hpp"

using namespace tame;

namespace {

WeylElement W(const std::string& s, std::size_t n = 1) { return parse_weyl(s, n); }

WeylElement random_weyl(std::mt19937_64& rng, std::size_t n, int maxexp, int nterms) {
    WeylElement e(n);
    Field q = Field::rationals();
    for (int t = 0; t < nterms; ++t) {
        WeylMonomial m(n);
        for (std::size_t i = 0; i < n; ++i) {
            m.set_x(i, rng() % (maxexp + 1));
            m.set_d(i, rng() % (maxexp + 1));
        }
        m.set_h(rng() % 2);
        e.add_term(m, Coeff(Rational(static_cast<long>(rng() % 7) - 3)));
    }
    return e;
}

} // namespace

TEST_CASE("normal ordering rewrite") {
    CHECK(W("d1*x1") == W("x1*d1 + h"));
    CHECK(W("d1^2*x1") == W("x1*d1^2 + 2*h*d1"));
    CHECK(W("x1*d1") == W("x1*d1"));
    CHECK(to_string(W("d1*x1")) == "x1*d1 + h");
}

TEST_CASE("commutators") {
    CHECK(weyl_commutator(W("d1"), W("x1")) == W("h"));
    CHECK(weyl_commutator(W("x1", 2), W("x2", 2)).is_zero());
    CHECK(weyl_commutator(W("d1"), W("x1^2")) == W("2*h*x1"));
    // h is central
    std::mt19937_64 rng(3);
    for (int i = 0; i < 10; ++i) {
        WeylElement f = random_weyl(rng, 2, 2, 3);
        CHECK(weyl_commutator(W("h", 2), f).is_zero());
    }
}

TEST_CASE("associativity and unit") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 15; ++i) {
        WeylElement a = random_weyl(rng, 1, 2, 2), b = random_weyl(rng, 1, 2, 2),
                    c = random_weyl(rng, 1, 2, 2);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * WeylElement::constant(1, Coeff(Rational(1))) == a);
    }
}

TEST_CASE("grading is multiplicative: Deg x = Deg d = 1, Deg h = 2") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
        // homogeneous monomial elements
        WeylMonomial m1(2), m2(2);
        m1.set_x(0, rng() % 3);
        m1.set_d(1, rng() % 3);
        m1.set_h(rng() % 2);
        m2.set_d(0, rng() % 3);
        m2.set_x(1, rng() % 3);
        WeylElement a(2), b(2);
        a.add_term(m1, Coeff(Rational(1)));
        b.add_term(m2, Coeff(Rational(1)));
        WeylElement p = a * b;
        if (p.is_zero()) continue;
        int want = m1.degree() + m2.degree();
        for (auto& [m, c] : p.terms()) CHECK(m.degree() == want);
    }
}

TEST_CASE("specializing h = 1 recovers the Weyl algebra relations") {
    // [d, x] = 1 after the h -> 1 specialization
    WeylElement c = weyl_commutator(W("d1"), W("x1")).specialize_h(Coeff(Rational(1)));
    CHECK(c == WeylElement::constant(1, Coeff(Rational(1))));
    // and the rewrite matches the W_n product on a sample
    WeylElement lhs = (W("d1^2") * W("x1^2")).specialize_h(Coeff(Rational(1)));
    CHECK(lhs == W("x1^2*d1^2 + 4*x1*d1 + 2").specialize_h(Coeff(Rational(1))));
}

TEST_CASE("endomorphism check") {
    Field q = Field::rationals();
    // x -> x + d^2, d -> d is an endomorphism: [d, x + d^2] = h
    WeylEndo e = WeylEndo::identity(1, q);
    e.ximg[0] = W("x1 + d1^2");
    CHECK(weyl_check_endo(e).ok);
    // x -> 2x, d -> d violates [d, x] = h
    WeylEndo bad = WeylEndo::identity(1, q);
    bad.ximg[0] = W("2*x1");
    auto res = weyl_check_endo(bad);
    CHECK(!res.ok);
    CHECK(res.offending == "[d1', x1'] != h");
    CHECK(weyl_check_endo(WeylEndo::identity(2, q)).ok);
}

TEST_CASE("classical limit") {
    Field q = Field::rationals();
    VarNames sp = VarNames::symplectic(1);
    WeylEndo e = WeylEndo::identity(1, q);
    e.ximg[0] = W("x1 + d1^2");
    PolyEndo lim = classical_limit(e);
    CHECK(lim.image(0) == parse_polynomial("x1 + p1^2", sp));
    CHECK(lim.image(1) == parse_polynomial("p1", sp));
    CHECK(classical_limit(WeylEndo::identity(2, q)) == PolyEndo::identity(4));
    WeylEndo dil = WeylEndo::identity(1, q);
    dil.hscale = Coeff(Rational(2));
    CHECK_THROWS_AS(classical_limit(dil), invalid_input_error);
}

TEST_CASE("classical limit is a homomorphism on h-fixing endos") {
    Field q = Field::rationals();
    WeylEndo a = WeylEndo::identity(1, q);
    a.ximg[0] = W("x1 + d1^2");
    WeylEndo b = WeylEndo::identity(1, q);
    b.dimg[0] = W("d1 + x1^3");
    WeylEndo ab = weyl_compose(a, b);
    CHECK(weyl_check_endo(ab).ok);
    CHECK(classical_limit(ab) == compose(classical_limit(a), classical_limit(b)));
}

TEST_CASE("weyl expression round-trip") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 15; ++i) {
        WeylElement e = random_weyl(rng, 2, 3, 3);
        CHECK(parse_weyl(to_string(e), 2) == e);
    }
}

#include "tamekit/moyal.hpp"

TEST_CASE("normal-ordered products match the one-sided star product") {
    // pairing d_2 f d_1 g (alpha^{21} = 1) on (x, p) against x-before-d
    // normal ordering under x <-> x1, d <-> x2, h <-> hbar
    CMat a(2, 2, Field::rationals());
    a.at(1, 0) = Coeff(Rational(1));
    PoissonPairing pair(2, std::move(a));
    auto to_series = [](const WeylElement& w, int K) {
        std::vector<Polynomial> s(static_cast<std::size_t>(K) + 1, Polynomial::zero(2));
        for (auto& [m, c] : w.terms()) {
            REQUIRE(m.h() <= K);
            std::vector<std::uint16_t> e = {m.x(0), m.d(0)};
            s[m.h()].add_term(Monomial(std::move(e)), c);
        }
        return s;
    };
    Field q = Field::rationals();
    for (int aexp = 0; aexp <= 3; ++aexp)
        for (int b = 0; aexp + b <= 3; ++b)
            for (int c = 0; c <= 3; ++c)
                for (int e = 0; c + e <= 3; ++e) {
                    WeylMonomial m1(1), m2(1);
                    m1.set_x(0, aexp);
                    m1.set_d(0, b);
                    m2.set_x(0, c);
                    m2.set_d(0, e);
                    WeylElement w1(1), w2(1);
                    w1.add_term(m1, Coeff(1, q));
                    w2.add_term(m2, Coeff(1, q));
                    int K = 6;
                    auto weyl_side = to_series(w1 * w2, K);
                    std::vector<std::uint16_t> e1 = {static_cast<std::uint16_t>(aexp),
                                                     static_cast<std::uint16_t>(b)};
                    std::vector<std::uint16_t> e2 = {static_cast<std::uint16_t>(c),
                                                     static_cast<std::uint16_t>(e)};
                    Polynomial f = Polynomial::monomial(Monomial(std::move(e1)), Coeff(1, q));
                    Polynomial g = Polynomial::monomial(Monomial(std::move(e2)), Coeff(1, q));
                    StarSeries star = moyal_product(f, g, pair, K);
                    for (int k = 0; k <= K; ++k) CHECK(star.coeff[k] == weyl_side[k]);
                }
}
