#include "tamekit/weyl.hpp"

#include "tamekit/parse.hpp"

namespace tame {

WeylElement WeylElement::xgen(std::size_t i, std::size_t n, const Field& f) {
    WeylMonomial m(n);
    m.set_x(i, 1);
    WeylElement e(n);
    e.add_term(m, Coeff(1, f));
    return e;
}
WeylElement WeylElement::dgen(std::size_t i, std::size_t n, const Field& f) {
    WeylMonomial m(n);
    m.set_d(i, 1);
    WeylElement e(n);
    e.add_term(m, Coeff(1, f));
    return e;
}
WeylElement WeylElement::hgen(std::size_t n, const Field& f) {
    WeylMonomial m(n);
    m.set_h(1);
    WeylElement e(n);
    e.add_term(m, Coeff(1, f));
    return e;
}

WeylElement& WeylElement::operator+=(const WeylElement& o) {
    if (n_ != o.n_) throw dimension_error("Weyl elements of different rank");
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}
WeylElement& WeylElement::operator-=(const WeylElement& o) {
    if (n_ != o.n_) throw dimension_error("Weyl elements of different rank");
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

WeylElement WeylElement::scaled(const Coeff& c) const {
    WeylElement e(n_);
    if (c.is_zero()) return e;
    for (auto& [m, k] : terms_) e.add_term(m, k * c);
    return e;
}

WeylElement WeylElement::specialize_h(const Coeff& v) const {
    WeylElement e(n_);
    for (auto& [m, c] : terms_) {
        WeylMonomial m2 = m;
        std::uint16_t h = m.h();
        m2.set_h(0);
        e.add_term(m2, c * v.pow(h));
    }
    return e;
}

namespace {

Integer binom(unsigned a, unsigned b) {
    if (b > a) return 0;
    Integer r = 1;
    for (unsigned i = 0; i < b; ++i) {
        r *= a - i;
        r /= i + 1;
    }
    return r;
}
Integer factorial(unsigned a) {
    Integer r = 1;
    for (unsigned i = 2; i <= a; ++i) r *= i;
    return r;
}

} // namespace

// Monomial product in normal form.  Commuting d^b past x^{a'} expands, one
// variable at a time, via d^B x^A = sum_j C(B,j) C(A,j) j! h^j x^{A-j} d^{B-j}.
WeylElement operator*(const WeylElement& a, const WeylElement& b) {
    if (a.n() != b.n()) throw dimension_error("Weyl elements of different rank");
    std::size_t n = a.n();
    WeylElement r(n);
    for (auto& [ma, ca] : a.terms()) {
        for (auto& [mb, cb] : b.terms()) {
            Coeff base = ca * cb;
            Field fld = base.field();
            // partial expansions: list of (per-variable contraction counts -> coeff)
            std::vector<std::pair<WeylMonomial, Coeff>> acc;
            WeylMonomial start(n);
            start.set_h(static_cast<std::uint16_t>(ma.h() + mb.h()));
            acc.emplace_back(start, base);
            for (std::size_t i = 0; i < n; ++i) {
                unsigned B = ma.d(i), A = mb.x(i);
                unsigned jmax = std::min(A, B);
                std::vector<std::pair<WeylMonomial, Coeff>> next;
                for (auto& [m, c] : acc) {
                    for (unsigned j = 0; j <= jmax; ++j) {
                        Integer k = binom(B, j) * binom(A, j) * factorial(j);
                        Coeff kc = Coeff::from_rational(Rational(k), fld);
                        if (kc.is_zero()) continue;
                        WeylMonomial m2 = m;
                        m2.set_x(i, static_cast<std::uint16_t>(ma.x(i) + A - j));
                        m2.set_d(i, static_cast<std::uint16_t>(B - j + mb.d(i)));
                        m2.set_h(static_cast<std::uint16_t>(m2.h() + j));
                        next.emplace_back(std::move(m2), c * kc);
                    }
                }
                acc.swap(next);
            }
            for (auto& [m, c] : acc) r.add_term(m, c);
        }
    }
    return r;
}

WeylEndo WeylEndo::identity(std::size_t n, const Field& f) {
    WeylEndo e;
    e.n = n;
    for (std::size_t i = 0; i < n; ++i) {
        e.ximg.push_back(WeylElement::xgen(i, n, f));
        e.dimg.push_back(WeylElement::dgen(i, n, f));
    }
    e.hscale = Coeff(1, f);
    return e;
}

WeylElement WeylEndo::apply(const WeylElement& f) const {
    if (f.n() != n) throw dimension_error("Weyl endo applied to element of wrong rank");
    Field fld = hscale.field();
    WeylElement r(n);
    for (auto& [m, c] : f.terms()) {
        WeylElement t = WeylElement::constant(n, c);
        for (std::size_t i = 0; i < n; ++i)
            for (std::uint16_t k = 0; k < m.x(i); ++k) t = t * ximg[i];
        for (std::size_t i = 0; i < n; ++i)
            for (std::uint16_t k = 0; k < m.d(i); ++k) t = t * dimg[i];
        if (m.h() > 0) {
            WeylElement hpow(n);
            WeylMonomial hm(n);
            hm.set_h(m.h());
            hpow.add_term(hm, hscale.pow(m.h()));
            t = t * hpow;
        }
        r += t;
    }
    return r;
}

WeylCheckResult weyl_check_endo(const WeylEndo& e) {
    std::size_t n = e.n;
    Field fld = e.hscale.field();
    WeylElement h = WeylElement::hgen(n, fld).scaled(e.hscale);
    auto name = [](const char* kind, std::size_t i) {
        return std::string(kind) + std::to_string(i + 1);
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (j > i) {
                if (!weyl_commutator(e.ximg[i], e.ximg[j]).is_zero())
                    return {false, "[" + name("x", i) + "', " + name("x", j) + "'] != 0"};
                if (!weyl_commutator(e.dimg[i], e.dimg[j]).is_zero())
                    return {false, "[" + name("d", i) + "', " + name("d", j) + "'] != 0"};
            }
            WeylElement want = i == j ? h : WeylElement::zero(n);
            if (!(weyl_commutator(e.dimg[i], e.ximg[j]) == want))
                return {false, "[" + name("d", i) + "', " + name("x", j) + "'] != " +
                                   (i == j ? "h" : "0")};
        }
    return {true, ""};
}

WeylEndo weyl_compose(const WeylEndo& phi, const WeylEndo& psi) {
    if (phi.n != psi.n) throw dimension_error("Weyl endo composition: rank mismatch");
    WeylEndo r;
    r.n = phi.n;
    for (auto& f : psi.ximg) r.ximg.push_back(phi.apply(f));
    for (auto& f : psi.dimg) r.dimg.push_back(phi.apply(f));
    r.hscale = phi.hscale * psi.hscale;
    return r;
}

PolyEndo classical_limit(const WeylEndo& e) {
    if (!e.fixes_h())
        throw invalid_input_error(
            "classical limit unsupported: endomorphism rescales h nontrivially");
    std::size_t n = e.n;
    Field fld = e.hscale.field();
    auto read = [&](const WeylElement& w) {
        Polynomial f = Polynomial::zero(2 * n);
        for (auto& [m, c] : w.terms()) {
            if (m.h() > 0) continue; // h -> 0
            std::vector<std::uint16_t> exps(2 * n, 0);
            for (std::size_t i = 0; i < n; ++i) {
                exps[i] = m.x(i);
                exps[n + i] = m.d(i);
            }
            f.add_term(Monomial(std::move(exps)), c);
        }
        return f;
    };
    std::vector<Polynomial> im;
    for (auto& w : e.ximg) im.push_back(read(w));
    for (auto& w : e.dimg) im.push_back(read(w));
    return PolyEndo(std::move(im), fld);
}

WeylElement weyl_from_ppoly(const Polynomial& f, std::size_t n, const Field& fld) {
    if (f.nvars() != 2 * n) throw dimension_error("expected a polynomial on x_1..x_n,p_1..p_n");
    WeylElement r(n);
    for (auto& [m, c] : f.terms()) {
        WeylMonomial w(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (m.exp(i) > 0)
                throw invalid_input_error("polynomial must depend on the p generators only");
            w.set_d(i, m.exp(n + i));
        }
        r.add_term(w, c);
    }
    return r;
}
WeylElement weyl_from_xpoly(const Polynomial& f, std::size_t n, const Field& fld) {
    if (f.nvars() != 2 * n) throw dimension_error("expected a polynomial on x_1..x_n,p_1..p_n");
    WeylElement r(n);
    for (auto& [m, c] : f.terms()) {
        WeylMonomial w(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (m.exp(n + i) > 0)
                throw invalid_input_error("polynomial must depend on the x generators only");
            w.set_x(i, m.exp(i));
        }
        r.add_term(w, c);
    }
    return r;
}

std::string to_string(const WeylElement& e) {
    if (e.is_zero()) return "0";
    std::string out;
    for (auto it = e.terms().rbegin(); it != e.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        std::string ms;
        auto app = [&](const std::string& v, std::uint16_t p) {
            if (p == 0) return;
            if (!ms.empty()) ms += "*";
            ms += v;
            if (p > 1) ms += "^" + std::to_string(p);
        };
        for (std::size_t i = 0; i < m.n(); ++i) app("x" + std::to_string(i + 1), m.x(i));
        for (std::size_t i = 0; i < m.n(); ++i) app("d" + std::to_string(i + 1), m.d(i));
        app("h", m.h());
        std::string cs = c.str();
        bool neg = !cs.empty() && cs[0] == '-';
        std::string abs = neg ? cs.substr(1) : cs;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (ms.empty())
            out += abs;
        else if (abs == "1")
            out += ms;
        else
            out += abs + "*" + ms;
    }
    return out;
}

namespace {

struct WeylAdapter {
    using Value = WeylElement;
    std::size_t n;
    Field field;

    Value constant(const Rational& q) const {
        return WeylElement::constant(n, Coeff::from_rational(q, field));
    }
    Value negate(const Value& v) const { return -v; }
    Value add(const Value& a, const Value& b) const { return a + b; }
    Value sub(const Value& a, const Value& b) const { return a - b; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value divide(const Value& a, const Value& b) const {
        if (b.terms().size() != 1 || b.terms().begin()->first.degree() != 0)
            throw invalid_input_error("division only by nonzero constants");
        return a.scaled(b.terms().begin()->second.inverse());
    }
    Value power(const Value& v, long e) const {
        Value r = constant(1);
        for (long i = 0; i < e; ++i) r = r * v;
        return r;
    }
    Value atom_pow(const std::string& name, long e, std::size_t pos) const {
        if (e < 0) throw parse_error("negative exponent on a Weyl generator", pos);
        auto gen = [&](char kind, std::size_t idx) {
            WeylMonomial m(n);
            if (kind == 'x')
                m.set_x(idx, static_cast<std::uint16_t>(e));
            else if (kind == 'd')
                m.set_d(idx, static_cast<std::uint16_t>(e));
            else
                m.set_h(static_cast<std::uint16_t>(e));
            WeylElement r(n);
            r.add_term(m, Coeff(1, field));
            return r;
        };
        if (name == "h") return gen('h', 0);
        if (name.size() >= 2 && (name[0] == 'x' || name[0] == 'd')) {
            std::size_t idx = 0;
            for (std::size_t i = 1; i < name.size(); ++i) {
                if (!std::isdigit(static_cast<unsigned char>(name[i])))
                    throw parse_error("unknown Weyl generator '" + name + "'", pos);
                idx = idx * 10 + (name[i] - '0');
            }
            if (idx < 1 || idx > n) throw parse_error("generator index out of range", pos);
            return gen(name[0], idx - 1);
        }
        throw parse_error("unknown Weyl generator '" + name + "'", pos);
    }
};

} // namespace

WeylElement parse_weyl(const std::string& text, std::size_t n, const Field& field) {
    return ExprParser<WeylAdapter>(text, {n, field}).parse();
}

} // namespace tame
