#include "tamekit/moyal.hpp"

namespace tame {

namespace {

struct TensorTerm {
    Polynomial u, v;
    Coeff c;
};

// One application of the Poisson operator sum alpha^{ij} d_i (.) d_j (.).
std::vector<TensorTerm> poisson_step(const std::vector<TensorTerm>& in, const PoissonPairing& a) {
    std::vector<TensorTerm> out;
    for (auto& t : in) {
        for (std::size_t i = 0; i < a.m; ++i) {
            Polynomial du = t.u.partial(i);
            if (du.is_zero()) continue;
            for (std::size_t j = 0; j < a.m; ++j) {
                if (a.alpha.at(i, j).is_zero()) continue;
                Polynomial dv = t.v.partial(j);
                if (dv.is_zero()) continue;
                out.push_back({du, dv, t.c * a.alpha.at(i, j)});
            }
        }
    }
    return out;
}

void check_pair(const Polynomial& f, const Polynomial& g, const PoissonPairing& a) {
    if (f.nvars() != a.m || g.nvars() != a.m)
        throw dimension_error("polynomial arity does not match the pairing");
}

} // namespace

StarSeries moyal_product(const Polynomial& f, const Polynomial& g, const PoissonPairing& a,
                         int K) {
    check_pair(f, g, a);
    if (K < 0) throw invalid_input_error("truncation order must be >= 0");
    StarSeries s(K, a.m);
    std::vector<TensorTerm> level = {{f, g, Coeff(Rational(1))}};
    Rational fact = 1;
    for (int n = 0; n <= K; ++n) {
        if (n > 0) {
            level = poisson_step(level, a);
            fact *= n;
        }
        Polynomial bn = Polynomial::zero(a.m);
        for (auto& t : level) bn += (t.u * t.v).scaled(t.c);
        s.coeff[n] = bn.scaled(Coeff(Rational(1) / fact));
        if (level.empty()) break;
    }
    return s;
}

Polynomial moyal_bn(const Polynomial& f, const Polynomial& g, const PoissonPairing& a, int n) {
    return moyal_product(f, g, a, n).coeff[n];
}

StarSeries star_commutator(const Polynomial& f, const Polynomial& g, const PoissonPairing& a,
                           int K, bool divide_by_hbar) {
    if (!divide_by_hbar) return moyal_product(f, g, a, K) - moyal_product(g, f, a, K);
    StarSeries d = moyal_product(f, g, a, K + 1) - moyal_product(g, f, a, K + 1);
    return d.divided_by_hbar();
}

Polynomial bracket_from_star(const Polynomial& f, const Polynomial& g, const PoissonPairing& a) {
    check_pair(f, g, a);
    Polynomial r = Polynomial::zero(a.m);
    for (std::size_t i = 0; i < a.m; ++i)
        for (std::size_t j = 0; j < a.m; ++j) {
            Coeff c = a.alpha.at(i, j) - a.alpha.at(j, i);
            if (c.is_zero()) continue;
            r += (f.partial(i) * g.partial(j)).scaled(c);
        }
    return r;
}

Polynomial apply_diffop(const Polynomial& symbol, const Polynomial& f) {
    if (symbol.nvars() != f.nvars()) throw dimension_error("operator symbol arity mismatch");
    Polynomial r = Polynomial::zero(f.nvars());
    for (auto& [m, c] : symbol.terms()) {
        Polynomial t = f;
        for (std::size_t i = 0; i < f.nvars() && !t.is_zero(); ++i)
            for (std::uint16_t k = 0; k < m.exp(i); ++k) t = t.partial(i);
        r += t.scaled(c);
    }
    return r;
}

StarSeries gauge_product(const Polynomial& f, const Polynomial& g, const PoissonPairing& a,
                         int K, const GaugeSeries& d) {
    check_pair(f, g, a);
    if (d.m != a.m) throw dimension_error("gauge arity does not match the pairing");
    // Operator symbols D_0 = 1, D_k (zero beyond the given list).
    auto dsym = [&](int k) -> Polynomial {
        if (k == 0) return Polynomial::constant(a.m, Coeff(Rational(1)));
        if (k <= static_cast<int>(d.ops.size())) return d.ops[k - 1];
        return Polynomial::zero(a.m);
    };
    // Formal inverse series E with E_0 = 1: E_k = -sum_{j=1..k} D_j E_{k-j}.
    std::vector<Polynomial> e(static_cast<std::size_t>(K) + 1, Polynomial::zero(a.m));
    e[0] = Polynomial::constant(a.m, Coeff(Rational(1)));
    for (int k = 1; k <= K; ++k) {
        Polynomial s = Polynomial::zero(a.m);
        for (int j = 1; j <= k; ++j) s += dsym(j) * e[k - j];
        e[k] = -s;
    }
    // Precompute E_b f and E_c g.
    std::vector<Polynomial> ef, eg;
    for (int k = 0; k <= K; ++k) {
        ef.push_back(apply_diffop(e[k], f));
        eg.push_back(apply_diffop(e[k], g));
    }
    StarSeries s(K, a.m);
    for (int b = 0; b <= K; ++b)
        for (int c = 0; c <= K - b; ++c) {
            if (ef[b].is_zero() || eg[c].is_zero()) continue;
            StarSeries base = moyal_product(ef[b], eg[c], a, K - b - c);
            for (int r = 0; r <= K - b - c; ++r) {
                if (base.coeff[r].is_zero()) continue;
                for (int ai = 0; ai + b + c + r <= K; ++ai) {
                    Polynomial t = apply_diffop(dsym(ai), base.coeff[r]);
                    if (!t.is_zero()) s.coeff[ai + b + c + r] += t;
                }
            }
        }
    return s;
}

Polynomial bracket_from_gauged_star(const Polynomial& f, const Polynomial& g,
                                    const PoissonPairing& a, const GaugeSeries& d) {
    StarSeries fg = gauge_product(f, g, a, 1, d);
    StarSeries gf = gauge_product(g, f, a, 1, d);
    return fg.coeff[1] - gf.coeff[1];
}

} // namespace tame
