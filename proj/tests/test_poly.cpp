#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tamekit/poly_io.hpp"
#include "tamekit/matrix.hpp"

using namespace tame;

namespace {

const VarNames xy = VarNames::plain(2);
const VarNames xyz = VarNames::plain(3);

Polynomial P(const std::string& s, const VarNames& v = xy, Field f = Field::rationals()) {
    return parse_polynomial(s, v, f);
}

Polynomial random_poly(std::mt19937_64& rng, std::size_t nvars, int maxdeg, int nterms) {
    Polynomial f = Polynomial::zero(nvars);
    for (int t = 0; t < nterms; ++t) {
        std::vector<std::uint16_t> e(nvars, 0);
        int budget = static_cast<int>(rng() % (maxdeg + 1));
        for (int d = 0; d < budget; ++d) e[rng() % nvars]++;
        long num = static_cast<long>(rng() % 11) - 5;
        f.add_term(Monomial(std::move(e)), Coeff(Rational(num)));
    }
    return f;
}

} // namespace

TEST_CASE("ring arithmetic and canonical form") {
    CHECK(P("(x1+x2)*(x1-x2)") == P("x1^2 - x2^2"));
    CHECK(P("x1^2 - 2*x1*x2 + 1") + P("0") == P("x1^2 - 2*x1*x2 + 1"));
    CHECK(P("1/2*x1") * P("2/3*x1") == P("1/3*x1^2"));
    CHECK((P("x1") - P("x1")).is_zero());
    CHECK_THROWS_AS(P("x1", xy) + P("x1", xyz), dimension_error);
}

TEST_CASE("ring axioms on random polynomials") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 40; ++i) {
        Polynomial a = random_poly(rng, 3, 3, 4), b = random_poly(rng, 3, 3, 4),
                   c = random_poly(rng, 3, 3, 4);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a + b == b + a);
    }
}

TEST_CASE("substitution is a ring homomorphism") {
    std::mt19937_64 rng(7);
    std::vector<Polynomial> images = {P("x1 + x2^2", xy), P("x1*x2 - 1", xy)};
    for (int i = 0; i < 25; ++i) {
        Polynomial f = random_poly(rng, 2, 3, 3), g = random_poly(rng, 2, 3, 3);
        CHECK((f * g).substitute(images) == f.substitute(images) * g.substitute(images));
        CHECK((f + g).substitute(images) == f.substitute(images) + g.substitute(images));
    }
}

TEST_CASE("substitution examples") {
    // 1 -> 2 variables
    VarNames x1 = VarNames::plain(1);
    Polynomial f = parse_polynomial("x1^2", x1);
    std::vector<Polynomial> im = {P("x1 + x2")};
    CHECK(f.substitute(im) == P("x1^2 + 2*x1*x2 + x2^2"));
    // identity substitution
    std::mt19937_64 rng(3);
    std::vector<Polynomial> id3 = {P("x1", xyz), P("x2", xyz), P("x3", xyz)};
    for (int i = 0; i < 10; ++i) {
        Polynomial g = random_poly(rng, 3, 4, 5);
        CHECK(g.substitute(id3) == g);
    }
}

TEST_CASE("partial derivatives") {
    CHECK(P("x1^2*x2").partial(0) == P("2*x1*x2"));
    CHECK(P("5").partial(0).is_zero());
    CHECK_THROWS_AS(P("x1").partial(2), dimension_error);
    // d(x^p)/dx = 0 over F_p
    Field f5 = Field::fp(5);
    VarNames x1 = VarNames::plain(1);
    CHECK(parse_polynomial("x1^5", x1, f5).partial(0).is_zero());
}

TEST_CASE("height and homogeneous components") {
    Polynomial f = P("x1 + x1^3");
    CHECK(f.homogeneous_component(3) == P("x1^3"));
    CHECK(Polynomial::zero(2).height() == kInfHeight);
    CHECK(P("x1^2*x2 + x1^5").height() == 3);
    // ultrametric seed: height(f+g) >= min(heights), equality when distinct
    std::mt19937_64 rng(11);
    for (int i = 0; i < 30; ++i) {
        Polynomial a = random_poly(rng, 2, 4, 3), b = random_poly(rng, 2, 4, 3);
        int ha = a.height(), hb = b.height(), hs = (a + b).height();
        CHECK(hs >= std::min(ha, hb));
        if (ha != hb) CHECK(hs == std::min(ha, hb));
    }
}

TEST_CASE("Euler identity for homogeneous polynomials") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 20; ++i) {
        Polynomial f = random_poly(rng, 3, 4, 6);
        for (int d = 0; d <= 4; ++d) {
            Polynomial h = f.homogeneous_component(d);
            Polynomial lhs = Polynomial::zero(3);
            for (std::size_t v = 0; v < 3; ++v)
                lhs += Polynomial::variable(v, 3, Coeff(Rational(1))) * h.partial(v);
            CHECK(lhs == h.mul_int(d));
        }
    }
}

TEST_CASE("exact division") {
    Polynomial a = P("x1^2 - x2^2"), b = P("x1 + x2");
    auto q = divide_exact(a, b);
    REQUIRE(q.has_value());
    CHECK(*q == P("x1 - x2"));
    CHECK(!divide_exact(P("x1^2 + x2"), P("x1 + x2")).has_value());
}

TEST_CASE("printing and parsing round-trip") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 30; ++i) {
        Polynomial f = random_poly(rng, 3, 4, 5);
        CHECK(parse_polynomial(to_string(f, xyz), xyz) == f);
    }
    CHECK(to_string(P("x2 + x1^2 - 1"), xy) == "x1^2 + x2 - 1");
    CHECK(to_string(Polynomial::zero(2), xy) == "0");
    // rationals in lowest terms with positive denominator
    CHECK(to_string(P("2/4*x1 - x2*3/9"), xy) == "1/2*x1 - 1/3*x2");
}

TEST_CASE("F_p coefficients") {
    Field f5 = Field::fp(5);
    Polynomial a = P("3*x1 + 4", xy, f5), b = P("4*x1 + 3", xy, f5);
    CHECK(a + b == P("2*x1 + 2", xy, f5));
    CHECK(a * b == P("2*x1^2 + 2", xy, f5)); // 12 x^2 + 25 x + 12
    CHECK_THROWS_AS(P("1/5", xy, f5), invalid_input_error);
}

TEST_CASE("determinants: cofactor vs Bareiss") {
    std::mt19937_64 rng(23);
    for (std::size_t n = 1; n <= 4; ++n) {
        for (int rep = 0; rep < 6; ++rep) {
            PolyMatrix m(n, n, 2);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) m.at(i, j) = random_poly(rng, 2, 2, 2);
            CHECK(detail::det_cofactor(m) == detail::det_bareiss(m));
        }
    }
    PolyMatrix id = PolyMatrix::identity(3, 2, Field::rationals());
    CHECK(det(id) == P("1"));
}

TEST_CASE("charpoly and nilpotency") {
    // strictly triangular polynomial matrix
    PolyMatrix m(2, 2, 2);
    m.at(0, 1) = P("x1*x2");
    CHECK(is_nilpotent(m));
    VarNames l({"x1", "x2", "lam"});
    CHECK(charpoly(m, Field::rationals()) == parse_polynomial("lam^2", l));
    PolyMatrix d(2, 2, 2);
    d.at(0, 0) = P("3*x1^2");
    CHECK(!is_nilpotent(d));
    CHECK(charpoly(d, Field::rationals()) ==
          parse_polynomial("lam^2 - 3*x1^2*lam", l));
}
