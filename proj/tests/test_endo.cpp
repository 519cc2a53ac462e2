#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tamekit/endo.hpp"
#include "tamekit/poly_io.hpp"

using namespace tame;

namespace {

const VarNames xyz = VarNames::plain(3);

PolyEndo endo3(const std::string& a, const std::string& b, const std::string& c) {
    return PolyEndo({parse_polynomial(a, xyz), parse_polynomial(b, xyz), parse_polynomial(c, xyz)});
}

// Nagata automorphism with invariant w = x1*x3 + x2^2:
//   x1 -> x1 - 2*w*x2 - w^2*x3,  x2 -> x2 + w*x3,  x3 -> x3.
PolyEndo nagata() {
    return endo3(
        "x1 - 2*(x1*x3 + x2^2)*x2 - (x1*x3 + x2^2)^2*x3",
        "x2 + (x1*x3 + x2^2)*x3",
        "x3");
}

PolyEndo random_tame(std::mt19937_64& rng, std::size_t n, int factors, int maxdeg) {
    TameWord w(n);
    for (int t = 0; t < factors; ++t) {
        std::size_t k = rng() % n;
        Polynomial f = Polynomial::zero(n);
        for (int j = 0; j < 2; ++j) {
            std::vector<std::uint16_t> e(n, 0);
            int deg = 2 + static_cast<int>(rng() % (maxdeg - 1));
            for (int d = 0; d < deg; ++d) {
                std::size_t v = rng() % n;
                if (v == k) v = (k + 1) % n;
                e[v]++;
            }
            long c = static_cast<long>(rng() % 5) - 2;
            f.add_term(Monomial(std::move(e)), Coeff(Rational(c)));
        }
        w.push(ElementaryAuto(n, k, Coeff(Rational(1)), f));
    }
    return w.eval();
}

} // namespace

TEST_CASE("origin preservation is enforced") {
    CHECK_THROWS_AS(PolyEndo({parse_polynomial("x1 + 1", xyz), parse_polynomial("x2", xyz),
                              parse_polynomial("x3", xyz)}),
                    invalid_input_error);
}

TEST_CASE("composition convention and associativity") {
    PolyEndo phi = endo3("x1 + x2^2", "x2", "x3");
    PolyEndo psi = endo3("x1", "x2 + x1^2", "x3");
    PolyEndo c = compose(phi, psi);
    CHECK(c.image(0) == parse_polynomial("x1 + x2^2", xyz));
    CHECK(c.image(1) == parse_polynomial("x2 + (x1 + x2^2)^2", xyz));
    PolyEndo id = PolyEndo::identity(3);
    CHECK(compose(id, phi) == phi);
    CHECK(compose(phi, id) == phi);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10; ++i) {
        PolyEndo a = random_tame(rng, 3, 2, 3), b = random_tame(rng, 3, 2, 3),
                 c2 = random_tame(rng, 3, 2, 3);
        CHECK(compose(compose(a, b), c2) == compose(a, compose(b, c2)));
    }
}

TEST_CASE("jacobian determinant") {
    CHECK(jacobian_det(PolyEndo::identity(3)) == parse_polynomial("1", xyz));
    CHECK(jacobian_det(nagata()) == parse_polynomial("1", xyz));
    // x -> x - x^p over F_p has unit Jacobian
    Field f5 = Field::fp(5);
    VarNames x1 = VarNames::plain(1);
    PolyEndo frob({parse_polynomial("x1 - x1^5", x1, f5)}, f5);
    CHECK(jacobian_det(frob) == parse_polynomial("1", x1, f5));
}

TEST_CASE("Nagata invariant") {
    Polynomial w = parse_polynomial("x1*x3 + x2^2", xyz);
    CHECK(w.substitute(nagata().images()) == w);
}

TEST_CASE("formal inverse: Catalan coefficients") {
    VarNames x1 = VarNames::plain(1);
    PolyEndo phi({parse_polynomial("x1 - x1^2", x1)});
    PolyEndo g = formal_inverse(phi, 4);
    CHECK(g.image(0) == parse_polynomial("x1 + x1^2 + 2*x1^3 + 5*x1^4", x1));
    PolyEndo idphi = PolyEndo::identity(1);
    CHECK(formal_inverse(idphi, 6) == idphi);
}

TEST_CASE("formal inverse truncation stability") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 8; ++i) {
        PolyEndo phi = random_tame(rng, 3, 2, 3);
        PolyEndo a = formal_inverse(phi, 5), b = formal_inverse(phi, 8);
        for (std::size_t k = 0; k < 3; ++k) CHECK(b.image(k).truncated(5) == a.image(k));
    }
}

TEST_CASE("Nagata is an automorphism with inverse of degree <= 25") {
    auto dec = is_automorphism(nagata());
    REQUIRE(dec.yes);
    CHECK(dec.inverse->degree() <= 25);
    PolyEndo id = PolyEndo::identity(3);
    CHECK(compose(nagata(), *dec.inverse) == id);
    CHECK(compose(*dec.inverse, nagata()) == id);
    // compose with the truncated inverse: identity through degree 12
    PolyEndo g12 = formal_inverse(nagata(), 12);
    PolyEndo c = compose(nagata(), g12, 12);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(c.image(i).truncated(12) == id.image(i));
}

TEST_CASE("non-automorphisms are rejected") {
    VarNames x1 = VarNames::plain(1);
    PolyEndo cube({parse_polynomial("x1 - x1^3", x1)});
    CHECK(!is_automorphism(cube).yes);
    Field f5 = Field::fp(5);
    PolyEndo frob({parse_polynomial("x1 - x1^5", x1, f5)}, f5);
    CHECK(!is_automorphism(frob).yes);
}

TEST_CASE("tame words evaluate and invert") {
    TameWord w(3);
    w.push(ElementaryAuto(3, 0, Coeff(Rational(1)), parse_polynomial("x2^2", xyz)));
    w.push(ElementaryAuto(3, 1, Coeff(Rational(1)), parse_polynomial("x1^2", xyz)));
    w.push(ElementaryAuto(3, 0, Coeff(Rational(1)), parse_polynomial("-x2^2", xyz)));
    // oracle: repeated compose
    PolyEndo acc = PolyEndo::identity(3);
    for (auto& e : w.factors) acc = compose(acc, e.to_endo());
    CHECK(w.eval() == acc);
    CHECK(TameWord(3).eval() == PolyEndo::identity(3));
    CHECK(compose(w.eval(), w.inverse().eval()) == PolyEndo::identity(3));

    // monoid homomorphism: eval(w1.w2) = compose(eval(w1), eval(w2))
    TameWord w1(3), w2(3);
    w1.push(w.factors[0]);
    w2.push(w.factors[1]);
    w2.push(w.factors[2]);
    TameWord cat(3);
    cat.append(w1);
    cat.append(w2);
    CHECK(cat.eval() == compose(w1.eval(), w2.eval()));
}

TEST_CASE("tame word Jacobians are nonzero constants") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 10; ++i) {
        PolyEndo phi = random_tame(rng, 3, 3, 3);
        Polynomial j = jacobian_det(phi);
        CHECK(j.is_constant());
        CHECK(j == parse_polynomial("1", xyz)); // all factors used a = 1
    }
}

TEST_CASE("linear parts factor into elementary words") {
    std::mt19937_64 rng(37);
    Field q = Field::rationals();
    for (int rep = 0; rep < 10; ++rep) {
        CMat m(3, 3, q);
        do {
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j)
                    m.at(i, j) = Coeff(Rational(static_cast<long>(rng() % 7) - 3));
        } while (det(m).is_zero());
        TameWord w = linear_to_word(m, q);
        CHECK(w.eval() == linear_endo(m, q));
    }
}

TEST_CASE("ultrametric on endomorphisms") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 30; ++i) {
        PolyEndo a = random_tame(rng, 3, 2, 3), b = random_tame(rng, 3, 2, 3),
                 c = random_tame(rng, 3, 2, 3);
        // d = exp(-Ht): ultrametric inequality in height form
        CHECK(height_dist(a, c) >= std::min(height_dist(a, b), height_dist(b, c)));
    }
}

TEST_CASE("canonical Poisson bracket") {
    VarNames sp = VarNames::symplectic(1);
    auto p = [&](const std::string& s) { return parse_polynomial(s, sp); };
    CHECK(poisson_bracket(p("p1"), p("x1")) == p("1"));
    CHECK(poisson_bracket(p("x1"), p("x1")).is_zero());
    CHECK(poisson_bracket(p("x1*p1"), p("x1")) == p("x1"));
    VarNames sp2 = VarNames::symplectic(2);
    CHECK(poisson_bracket(parse_polynomial("x1", sp2), parse_polynomial("x2", sp2)).is_zero());
    CHECK_THROWS_AS(poisson_bracket(parse_polynomial("x1", xyz), parse_polynomial("x2", xyz)),
                    dimension_error);
    // Leibniz
    std::mt19937_64 rng(43);
    auto rp = [&](int) {
        Polynomial f = Polynomial::zero(2);
        for (int t = 0; t < 3; ++t) {
            std::vector<std::uint16_t> e(2, 0);
            for (unsigned d = 0; d < rng() % 4; ++d) e[rng() % 2]++;
            f.add_term(Monomial(std::move(e)), Coeff(Rational(static_cast<long>(rng() % 7) - 3)));
        }
        return f;
    };
    for (int i = 0; i < 20; ++i) {
        Polynomial f = rp(0), g = rp(0), h = rp(0);
        CHECK(poisson_bracket(f * g, h) == f * poisson_bracket(g, h) + poisson_bracket(f, h) * g);
    }
}

TEST_CASE("symplectomorphism test") {
    VarNames sp = VarNames::symplectic(1);
    auto p = [&](const std::string& s) { return parse_polynomial(s, sp); };
    CHECK(is_symplectomorphism(PolyEndo({p("x1"), p("p1 + x1^2")})));
    CHECK(!is_symplectomorphism(PolyEndo({p("2*x1"), p("p1")})));
    CHECK(is_symplectomorphism(PolyEndo::identity(2)));
}
