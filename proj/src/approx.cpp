#include "tamekit/approx.hpp"

#include <algorithm>
#include <map>

namespace tame {

namespace {

Coeff one_of(const Field& f) { return Coeff(1, f); }

std::vector<Polynomial> defect_components(const PolyEndo& cur, int k) {
    std::vector<Polynomial> f;
    f.reserve(cur.n());
    for (std::size_t i = 0; i < cur.n(); ++i) {
        Polynomial d = cur.image(i) - Polynomial::variable(i, cur.n(), one_of(cur.field()));
        f.push_back(d.homogeneous_component(k));
    }
    return f;
}

bool depends_on(const Polynomial& f, std::size_t var) {
    for (auto& [m, c] : f.terms())
        if (m.exp(var) > 0) return true;
    return false;
}

void check_residual_cap(const PolyEndo& e) {
    std::size_t s = 0;
    for (auto& im : e.images()) s += im.nterms();
    if (s > kResidualTermCap)
        throw resource_error("carried residual exceeds " + std::to_string(kResidualTermCap) +
                             " terms; the elimination cascade is not desk-feasible for this input");
}

std::size_t diff_size(const PolyEndo& e) {
    std::size_t s = 0;
    for (std::size_t i = 0; i < e.n(); ++i) {
        Polynomial d = e.image(i) - Polynomial::variable(i, e.n(), one_of(e.field()));
        s += d.nterms();
    }
    return s;
}

// The conjugated pair transformation
//   x_a -> x_a - lam (x_a + mu x_b)^d,  x_b -> x_b + lam mu^{-1} (x_a + mu x_b)^d
// as the elementary word [psi_mu, phi_lam_mu, psi_mu^{-1}], together with its
// closed-form endomorphism.
struct PairMove {
    TameWord word;
    PolyEndo endo;
};

PairMove make_pair_move(std::size_t n, const Field& fld, std::size_t a, std::size_t b,
                        const Polynomial& lam, const Coeff& mu, int d) {
    Coeff one = one_of(fld);
    PairMove pm{TameWord(n), PolyEndo()};
    if (d == 0) {
        // the slice constant in (x_a, x_b): one elementary factor
        ElementaryAuto e(n, a, one, -lam);
        pm.word.push(e);
        pm.endo = e.to_endo();
        return pm;
    }
    Polynomial xa = Polynomial::variable(a, n, one), xb = Polynomial::variable(b, n, one);
    ElementaryAuto psi(n, a, one, xb.scaled(mu));
    Polynomial xa_pow = Polynomial::constant(n, one);
    for (int t = 0; t < d; ++t) xa_pow = xa_pow * xa;
    ElementaryAuto mid(n, b, one, (lam * xa_pow).scaled(mu.inverse()));
    pm.word.push(psi);
    pm.word.push(mid);
    pm.word.push(psi.inverse());
    // closed form
    Polynomial base = xa + xb.scaled(mu);
    Polynomial base_pow = Polynomial::constant(n, one);
    for (int t = 0; t < d; ++t) base_pow = base_pow * base;
    Polynomial shift = lam * base_pow;
    std::vector<Polynomial> im;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == a)
            im.push_back(xa - shift);
        else if (i == b)
            im.push_back(xb + shift.scaled(mu.inverse()));
        else
            im.push_back(Polynomial::variable(i, n, one));
    }
    pm.endo = PolyEndo(std::move(im), fld);
    return pm;
}

// Eliminates the whole degree-k part of image a.  The x_a-independent part
// goes in one elementary factor; the x_a-dependent part is sliced by
// bidegree against a partner variable and removed with the conjugated
// basis transformations.  The partner minimizes the number of emitted
// transformations (ties break to the smallest index).
void pair_eliminate(PolyEndo& cur, std::vector<TameWord>& applied, std::size_t a,
                    const std::vector<std::size_t>& live, int k) {
    std::size_t n = cur.n();
    Field fld = cur.field();
    Polynomial f = defect_components(cur, k)[a];
    Polynomial indep = Polynomial::zero(n), dep = Polynomial::zero(n);
    for (auto& [m, c] : f.terms())
        (m.exp(a) == 0 ? indep : dep).add_term(m, c);
    if (!indep.is_zero()) {
        ElementaryAuto e(n, a, one_of(fld), -indep);
        TameWord w(n);
        w.push(e);
        cur = compose(e.to_endo(), cur);
        applied.push_back(w);
    }
    if (dep.is_zero()) return;
    if (n < 2)
        throw internal_invariant_error(
            "degree component depends on its own variable with no partner available");
    // choose a live partner with the fewest basis transformations (pairing
    // against a live variable keeps the live count strictly decreasing)
    std::size_t b = n;
    std::size_t best_moves = static_cast<std::size_t>(-1);
    for (std::size_t cand : live) {
        if (cand == a) continue;
        std::map<int, int> ds;
        for (auto& [m, c] : dep.terms()) ds[m.exp(a) + m.exp(cand)] = 1;
        std::size_t moves = 0;
        for (auto& [d, one_] : ds) moves += d + 1;
        if (moves < best_moves) {
            best_moves = moves;
            b = cand;
        }
    }
    if (b == n) throw internal_invariant_error("no live partner for pair elimination");
    // slice by bidegree in (x_a, x_b); every slice here has exp_a >= 1
    std::map<int, std::vector<Polynomial>> slices; // d -> lambda_p, p = 0..d
    for (auto& [m, c] : dep.terms()) {
        int p = m.exp(a), q = m.exp(b), d = p + q;
        auto& vec = slices[d];
        if (vec.empty()) vec.assign(d + 1, Polynomial::zero(n));
        auto exps = m.exps();
        exps[a] = 0;
        exps[b] = 0;
        vec[p].add_term(Monomial(std::move(exps)), c);
    }
    for (auto& [d, lam] : slices) {
        // basis (x + mu_j y)^d, mu_j = 1..d+1: solve the Vandermonde-binomial
        // system for the coefficient polynomials c_j
        CMat A(d + 1, d + 1, fld);
        for (int p = 0; p <= d; ++p) {
            Integer bin = 1;
            for (int t = 0; t < p; ++t) {
                bin *= d - t;
                bin /= t + 1;
            }
            // bin = C(d, p)
            for (int j = 0; j <= d; ++j) {
                Coeff mu(static_cast<long>(j + 1), fld);
                A.at(p, j) = Coeff::from_rational(Rational(bin), fld) * mu.pow(d - p);
            }
        }
        auto Ainv = inverse(A);
        if (!Ainv)
            throw internal_invariant_error("pair elimination basis system is singular");
        for (int j = 0; j <= d; ++j) {
            Polynomial cj = Polynomial::zero(n);
            for (int p = 0; p <= d; ++p) cj += lam[p].scaled(Ainv->at(j, p));
            if (cj.is_zero()) continue;
            PairMove pm = make_pair_move(n, fld, a, b, cj, Coeff(static_cast<long>(j + 1), fld), d);
            cur = compose(pm.endo, cur);
            check_residual_cap(cur);
            applied.push_back(pm.word);
        }
    }
}

} // namespace

std::pair<TameWord, PolyEndo> normalize_linear(const PolyEndo& phi) {
    Polynomial j = jacobian_det(phi);
    if (!j.is_constant())
        throw invalid_input_error("normalize_linear: Jacobian is not a constant");
    if (!(j == Polynomial::constant(phi.n(), one_of(phi.field()))))
        throw invalid_input_error("normalize_linear: unit Jacobian required");
    CMat l = linear_part(phi);
    auto linv = inverse(l);
    if (!linv) throw internal_invariant_error("unit-Jacobian map with singular linear part");
    PolyEndo phi0 = compose(linear_endo(*linv, phi.field()), phi);
    TameWord w(phi.n());
    if (!(linear_endo(l, phi.field()) == PolyEndo::identity(phi.n(), phi.field())))
        w = linear_to_word(l, phi.field());
    return {w, phi0};
}

std::pair<TameWord, PolyEndo> anick_step(const PolyEndo& phi, int k, StepOrder ord) {
    std::size_t n = phi.n();
    Field fld = phi.field();
    if (height_from_id(phi) < k)
        throw invalid_input_error("anick_step: endomorphism has defects below degree " +
                                  std::to_string(k));
    PolyEndo cur = phi;
    std::vector<TameWord> applied;
    for (;;) {
        std::vector<Polynomial> f = defect_components(cur, k);
        std::vector<std::size_t> live;
        for (std::size_t i = 0; i < n; ++i)
            if (!f[i].is_zero()) live.push_back(i);
        if (live.empty()) break;
        // Direct candidates.  A full-form move subtracts the entire defect
        // of an image when it is independent of its own variable (one
        // elementary factor, image restored to x_i exactly); a degree-k
        // move subtracts only the lowest component.  New contributions to
        // other images have height > k either way.
        std::vector<ElementaryAuto> moves;
        for (auto i : live) {
            Polynomial full = cur.image(i) - Polynomial::variable(i, n, one_of(fld));
            if (!depends_on(full, i))
                moves.push_back(ElementaryAuto(n, i, one_of(fld), -full));
            else if (!depends_on(f[i], i))
                moves.push_back(ElementaryAuto(n, i, one_of(fld), -f[i]));
        }
        if (!moves.empty()) {
            std::size_t pick = 0;
            PolyEndo best = compose(moves[0].to_endo(), cur);
            if (ord == StepOrder::GreedySize && moves.size() > 1) {
                std::size_t best_size = diff_size(best);
                for (std::size_t t = 1; t < moves.size(); ++t) {
                    PolyEndo trial = compose(moves[t].to_endo(), cur);
                    std::size_t s = diff_size(trial);
                    if (s < best_size) {
                        best_size = s;
                        pick = t;
                        best = trial;
                    }
                }
            }
            TameWord w(n);
            w.push(moves[pick]);
            cur = std::move(best);
            check_residual_cap(cur);
            applied.push_back(w);
            continue;
        }
        if (live.size() < 2)
            throw internal_invariant_error(
                "anick_step: a single residual degree-" + std::to_string(k) +
                " component depends on its own variable (non-unit Jacobian input?)");
        pair_eliminate(cur, applied, live[0], live, k);
    }
    // cs word: cur = eval(cs) o phi, so the moves stack in reverse order
    TameWord cs(n);
    for (auto it = applied.rbegin(); it != applied.rend(); ++it) cs.append(*it);
    return {cs, cur};
}

ApproxResult anick_approximate(const PolyEndo& phi, int K, StepOrder ord) {
    auto [word, cur] = normalize_linear(phi);
    ApproxResult res{std::move(word), PolyEndo(), {}};
    int start = std::max(2, height_from_id(cur) == kInfHeight ? 2 : height_from_id(cur));
    for (int k = start; k < K; ++k) {
        if (cur.is_identity()) break;
        auto [cs, next] = anick_step(cur, k, ord);
        res.word.append(cs.inverse());
        cur = next;
        int h = height_from_id(cur);
        if (h < k + 1)
            throw internal_invariant_error("anick step failed to raise the residual height");
        if (!cs.factors.empty()) res.trace.push_back({k, cs.factors.size(), h});
    }
    res.residual = std::move(cur);
    return res;
}

// ---------------------------------------------------------------------------
// Symplectic factors and words.
// ---------------------------------------------------------------------------

SympFactor SympFactor::xshift(std::size_t n, Polynomial f_of_p) {
    if (f_of_p.nvars() != 2 * n) throw dimension_error("xshift generator arity mismatch");
    for (auto& [m, c] : f_of_p.terms())
        for (std::size_t i = 0; i < n; ++i)
            if (m.exp(i) > 0)
                throw invalid_input_error("xshift generator must depend on p variables only");
    return SympFactor{XShift, n, std::move(f_of_p), CMat{}};
}

SympFactor SympFactor::pshift(std::size_t n, Polynomial g_of_x) {
    if (g_of_x.nvars() != 2 * n) throw dimension_error("pshift generator arity mismatch");
    for (auto& [m, c] : g_of_x.terms())
        for (std::size_t i = 0; i < n; ++i)
            if (m.exp(n + i) > 0)
                throw invalid_input_error("pshift generator must depend on x variables only");
    return SympFactor{PShift, n, std::move(g_of_x), CMat{}};
}

SympFactor SympFactor::linear(std::size_t n, CMat m) {
    if (m.rows != 2 * n || m.cols != 2 * n)
        throw dimension_error("linear symplectic factor must be 2n x 2n");
    SympFactor f{Linear, n, Polynomial::zero(2 * n), std::move(m)};
    if (!is_symplectomorphism(f.to_endo()))
        throw invalid_input_error("linear factor does not preserve the canonical bracket");
    return f;
}

PolyEndo SympFactor::to_endo() const {
    std::size_t m = 2 * n;
    Field fld = Field::rationals();
    switch (kind) {
        case XShift: {
            std::vector<Polynomial> im;
            for (std::size_t i = 0; i < n; ++i)
                im.push_back(Polynomial::variable(i, m, one_of(fld)) + gen.partial(n + i));
            for (std::size_t i = 0; i < n; ++i)
                im.push_back(Polynomial::variable(n + i, m, one_of(fld)));
            return PolyEndo(std::move(im), fld);
        }
        case PShift: {
            std::vector<Polynomial> im;
            for (std::size_t i = 0; i < n; ++i)
                im.push_back(Polynomial::variable(i, m, one_of(fld)));
            for (std::size_t i = 0; i < n; ++i)
                im.push_back(Polynomial::variable(n + i, m, one_of(fld)) + gen.partial(i));
            return PolyEndo(std::move(im), fld);
        }
        case Linear: return linear_endo(mat, fld);
    }
    throw internal_invariant_error("unreachable");
}

SympFactor SympFactor::inverse() const {
    switch (kind) {
        case XShift: return SympFactor{XShift, n, -gen, CMat{}};
        case PShift: return SympFactor{PShift, n, -gen, CMat{}};
        case Linear: {
            auto mi = tame::inverse(mat);
            if (!mi) throw internal_invariant_error("singular linear symplectic factor");
            return SympFactor{Linear, n, Polynomial::zero(2 * n), *mi};
        }
    }
    throw internal_invariant_error("unreachable");
}

void SympWord::push(SympFactor f) {
    if (f.n != n) throw dimension_error("symplectic word: factor arity mismatch");
    factors.push_back(std::move(f));
}
void SympWord::append(const SympWord& w) {
    for (auto& f : w.factors) push(f);
}
SympWord SympWord::inverse() const {
    SympWord w(n);
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) w.push(it->inverse());
    return w;
}
PolyEndo SympWord::eval(const Field& f) const {
    PolyEndo acc = PolyEndo::identity(2 * n, f);
    for (auto& fac : factors) acc = compose(acc, fac.to_endo());
    return acc;
}

// ---------------------------------------------------------------------------
// Generating polynomials, Waring decomposition, shears.
// ---------------------------------------------------------------------------

GeneratingPolynomial generating_polynomial(const std::vector<Polynomial>& f,
                                           const std::vector<Polynomial>& g, int k) {
    std::size_t n = f.size();
    if (g.size() != n || n == 0) throw dimension_error("generating polynomial: arity mismatch");
    std::size_t m = 2 * n;
    Field fld = Field::rationals();
    for (auto& h : f)
        if (h.nvars() != m) throw dimension_error("generating polynomial: components must be on 2n variables");
    for (auto& h : g)
        if (h.nvars() != m) throw dimension_error("generating polynomial: components must be on 2n variables");
    auto homogeneous_k = [&](const Polynomial& h) {
        return h.is_zero() || (h.height() == k && h.degree() == k);
    };
    for (std::size_t i = 0; i < n; ++i)
        if (!homogeneous_k(f[i]) || !homogeneous_k(g[i]))
            throw invalid_input_error("generating polynomial: components must be homogeneous of degree k");
    // closedness relations
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (j > i) {
                Polynomial r1 = f[i].partial(n + j) - f[j].partial(n + i);
                if (!r1.is_zero())
                    throw not_symplectic_error("closedness failure on the p-side: df_" +
                                               std::to_string(i + 1) + "/dp_" + std::to_string(j + 1) +
                                               " - df_" + std::to_string(j + 1) + "/dp_" +
                                               std::to_string(i + 1) + " != 0");
                Polynomial r2 = g[i].partial(j) - g[j].partial(i);
                if (!r2.is_zero())
                    throw not_symplectic_error("closedness failure on the x-side");
            }
            Polynomial r3 = f[i].partial(j) - g[j].partial(n + i);
            if (!r3.is_zero())
                throw not_symplectic_error("mixed closedness failure: df_" + std::to_string(i + 1) +
                                           "/dx_" + std::to_string(j + 1) + " != dg_" +
                                           std::to_string(j + 1) + "/dp_" + std::to_string(i + 1));
        }
    Polynomial F = Polynomial::zero(m);
    for (std::size_t i = 0; i < n; ++i) {
        F += Polynomial::variable(i, m, one_of(fld)) * g[i];
        F += Polynomial::variable(n + i, m, one_of(fld)) * f[i];
    }
    F = F.scaled(Coeff(Rational(1, k + 1)));
    // differentiation check (Euler formula in characteristic zero)
    for (std::size_t i = 0; i < n; ++i) {
        if (!(F.partial(n + i) == f[i]))
            throw not_symplectic_error("generating polynomial failed dF/dp_i = f_i");
        if (!(F.partial(i) == g[i]))
            throw not_symplectic_error("generating polynomial failed dF/dx_i = g_i");
    }
    return {F, k};
}

namespace {

std::vector<Monomial> degree_basis(std::size_t m, int d) {
    std::vector<Monomial> out;
    std::vector<std::uint16_t> e(m, 0);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i + 1 == m) {
            e[i] = static_cast<std::uint16_t>(left);
            out.push_back(Monomial(e));
            return;
        }
        for (int v = 0; v <= left; ++v) {
            e[i] = static_cast<std::uint16_t>(v);
            self(self, i + 1, left - v);
        }
        e[i] = 0;
    };
    rec(rec, 0, d);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Coeff> coeff_vector(const Polynomial& f, const std::vector<Monomial>& basis,
                                const std::map<Monomial, std::size_t>& index) {
    std::vector<Coeff> v(basis.size(), Coeff(Rational(0)));
    for (auto& [mono, c] : f.terms()) {
        auto it = index.find(mono);
        if (it == index.end()) throw internal_invariant_error("monomial outside the degree basis");
        v[it->second] = c;
    }
    return v;
}

struct WaringBasis {
    std::vector<std::vector<long>> forms; // chosen integer forms
    std::vector<Monomial> monos;
    std::map<Monomial, std::size_t> index;
    CMat inv; // inverse of the (Dm x Dm) matrix with columns coeffvec(ell^d)
};

Polynomial form_power(const std::vector<long>& v, std::size_t m, int d) {
    Polynomial ell = Polynomial::zero(m);
    for (std::size_t i = 0; i < m; ++i)
        if (v[i] != 0)
            ell += Polynomial::variable(i, m, Coeff(Rational(v[i])));
    Polynomial p = Polynomial::constant(m, Coeff(Rational(1)));
    for (int t = 0; t < d; ++t) p = p * ell;
    return p;
}

const WaringBasis& waring_basis(std::size_t m, int d, int radius_cap) {
    static std::map<std::pair<std::size_t, int>, WaringBasis> cache;
    auto key = std::make_pair(m, d);
    auto hit = cache.find(key);
    if (hit != cache.end()) return hit->second;

    WaringBasis wb;
    wb.monos = degree_basis(m, d);
    for (std::size_t i = 0; i < wb.monos.size(); ++i) wb.index[wb.monos[i]] = i;
    std::size_t dim = wb.monos.size();

    std::vector<std::vector<Coeff>> chosen_cols;
    std::vector<std::vector<Coeff>> echelon; // reduced independent columns
    auto try_add = [&](const std::vector<long>& v) {
        Polynomial p = form_power(v, m, d);
        std::vector<Coeff> col = coeff_vector(p, wb.monos, wb.index);
        std::vector<Coeff> red = col;
        for (auto& e : echelon) {
            std::size_t piv = 0;
            while (piv < dim && e[piv].is_zero()) ++piv;
            if (piv < dim && !red[piv].is_zero()) {
                Coeff c = red[piv] / e[piv];
                for (std::size_t t = 0; t < dim; ++t) red[t] -= c * e[t];
            }
        }
        bool nonzero = false;
        for (auto& c : red)
            if (!c.is_zero()) {
                nonzero = true;
                break;
            }
        if (!nonzero) return false;
        echelon.push_back(std::move(red));
        chosen_cols.push_back(std::move(col));
        wb.forms.push_back(v);
        return true;
    };

    for (int radius = 1; radius <= radius_cap && wb.forms.size() < dim; ++radius) {
        std::vector<long> v(m, -radius);
        for (;;) {
            long mx = 0;
            std::size_t first_nz = m;
            for (std::size_t i = 0; i < m; ++i) {
                mx = std::max(mx, std::abs(v[i]));
                if (first_nz == m && v[i] != 0) first_nz = i;
            }
            if (mx == radius && first_nz < m && v[first_nz] > 0) try_add(v);
            if (wb.forms.size() == dim) break;
            std::size_t i = 0;
            while (i < m && v[i] == radius) v[i++] = -radius;
            if (i == m) break;
            ++v[i];
        }
    }
    if (wb.forms.size() < dim)
        throw resource_error("Waring form family exhausted before reaching full rank");
    CMat S(dim, dim, Field::rationals());
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t i = 0; i < dim; ++i) S.at(i, j) = chosen_cols[j][i];
    auto Sinv = inverse(S);
    if (!Sinv) throw internal_invariant_error("Waring basis matrix is singular");
    wb.inv = *Sinv;
    return cache.emplace(key, std::move(wb)).first->second;
}

} // namespace

std::vector<WaringTerm> waring_decompose(const Polynomial& F, int d, int radius_cap) {
    if (F.is_zero()) return {};
    std::size_t m = F.nvars();
    Field fld = F.terms().begin()->second.field();
    if (!fld.is_rational())
        throw invalid_input_error("Waring decomposition requires characteristic zero");
    if (F.height() != d || F.degree() != d)
        throw invalid_input_error("Waring decomposition expects a homogeneous input");
    // single monomial c*x_i^d decomposes as itself
    if (F.nterms() == 1) {
        auto& [mono, c] = *F.terms().begin();
        for (std::size_t i = 0; i < m; ++i)
            if (mono.exp(i) == d) {
                std::vector<Coeff> ell(m, Coeff(Rational(0)));
                ell[i] = Coeff(Rational(1));
                return {{c, std::move(ell)}};
            }
    }
    const WaringBasis& wb = waring_basis(m, d, radius_cap);
    std::vector<Coeff> rhs = coeff_vector(F, wb.monos, wb.index);
    std::size_t dim = wb.monos.size();
    std::vector<WaringTerm> out;
    for (std::size_t j = 0; j < dim; ++j) {
        Coeff cj(Rational(0));
        for (std::size_t i = 0; i < dim; ++i) cj += wb.inv.at(j, i) * rhs[i];
        if (cj.is_zero()) continue;
        std::vector<Coeff> ell;
        for (auto v : wb.forms[j]) ell.push_back(Coeff(Rational(v)));
        out.push_back({cj, std::move(ell)});
    }
    return out;
}

PolyEndo shear_endo(const std::vector<Coeff>& ell, const Coeff& c, int d) {
    std::size_t m = ell.size();
    if (m % 2 != 0) throw dimension_error("shear: need 2n variables");
    std::size_t n = m / 2;
    Field fld = Field::rationals();
    Polynomial lin = Polynomial::zero(m);
    for (std::size_t i = 0; i < m; ++i)
        if (!ell[i].is_zero())
            lin += Polynomial::variable(i, m, one_of(fld)).scaled(ell[i]);
    Polynomial pow = Polynomial::constant(m, one_of(fld));
    for (int t = 0; t + 1 < d; ++t) pow = pow * lin;
    Polynomial scaled = pow.scaled(c.mul_int(d));
    std::vector<Polynomial> im;
    for (std::size_t i = 0; i < n; ++i)
        im.push_back(Polynomial::variable(i, m, one_of(fld)) + scaled.scaled(ell[n + i]));
    for (std::size_t i = 0; i < n; ++i)
        im.push_back(Polynomial::variable(n + i, m, one_of(fld)) - scaled.scaled(ell[i]));
    return PolyEndo(std::move(im), fld);
}

CMat symplectic_frame(const std::vector<Coeff>& ell, const Field& field) {
    std::size_t m = ell.size();
    std::size_t n = m / 2;
    if (m % 2 != 0 || n == 0) throw dimension_error("symplectic frame: need 2n variables");
    auto bracket = [&](const std::vector<Coeff>& a, const std::vector<Coeff>& b) {
        Coeff s(0, field);
        for (std::size_t i = 0; i < n; ++i) s += a[n + i] * b[i] - a[i] * b[n + i];
        return s;
    };
    bool zero = true;
    for (auto& c : ell) zero = zero && c.is_zero();
    if (zero) throw invalid_input_error("symplectic frame of the zero form");

    std::vector<std::vector<Coeff>> remaining;
    for (std::size_t r = 0; r < m; ++r) {
        std::vector<Coeff> e(m, Coeff(0, field));
        e[r] = Coeff(1, field);
        remaining.push_back(std::move(e));
    }
    std::vector<std::vector<Coeff>> prows, xrows;
    std::vector<Coeff> target = ell;
    for (std::size_t pair = 0; pair < n; ++pair) {
        // find a partner with nonzero bracket against the target
        std::size_t w = remaining.size();
        for (std::size_t i = 0; i < remaining.size(); ++i)
            if (!bracket(target, remaining[i]).is_zero()) {
                w = i;
                break;
            }
        if (w == remaining.size())
            throw internal_invariant_error("degenerate bracket in symplectic completion");
        Coeff scale = bracket(target, remaining[w]).inverse();
        std::vector<Coeff> partner(m);
        for (std::size_t t = 0; t < m; ++t) partner[t] = remaining[w][t] * scale;
        // project the rest into the symplectic complement of (target, partner)
        std::vector<std::vector<Coeff>> next;
        std::vector<std::vector<Coeff>> echelon;
        for (auto& z : remaining) {
            std::vector<Coeff> z1(m);
            Coeff alpha = bracket(z, partner); // B(z', partner) must vanish
            for (std::size_t t = 0; t < m; ++t) z1[t] = z[t] - alpha * target[t];
            Coeff beta = bracket(z1, target);
            for (std::size_t t = 0; t < m; ++t) z1[t] = z1[t] + beta * partner[t];
            // keep a linearly independent subset
            std::vector<Coeff> red = z1;
            for (auto& e : echelon) {
                std::size_t piv = 0;
                while (piv < m && e[piv].is_zero()) ++piv;
                if (piv < m && !red[piv].is_zero()) {
                    Coeff q = red[piv] / e[piv];
                    for (std::size_t t = 0; t < m; ++t) red[t] -= q * e[t];
                }
            }
            bool nz = false;
            for (auto& cc : red) nz = nz || !cc.is_zero();
            if (nz) {
                echelon.push_back(red);
                next.push_back(z1);
            }
        }
        prows.push_back(target);
        xrows.push_back(partner);
        remaining = std::move(next);
        if (pair + 1 < n) {
            if (remaining.empty())
                throw internal_invariant_error("symplectic completion ran out of directions");
            target = remaining[0];
            remaining.erase(remaining.begin());
        }
    }
    CMat M(m, m, field);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < m; ++t) {
            M.at(i, t) = xrows[i][t];
            M.at(n + i, t) = prows[i][t];
        }
    return M;
}

SympWord shear_word(const std::vector<Coeff>& ell, const Coeff& c, int d) {
    std::size_t m = ell.size(), n = m / 2;
    Field fld = Field::rationals();
    bool pure_p = true, pure_x = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (!ell[i].is_zero()) pure_p = false;
        if (!ell[n + i].is_zero()) pure_x = false;
    }
    Polynomial lin = Polynomial::zero(m);
    for (std::size_t i = 0; i < m; ++i)
        if (!ell[i].is_zero())
            lin += Polynomial::variable(i, m, one_of(fld)).scaled(ell[i]);
    Polynomial pow = Polynomial::constant(m, one_of(fld));
    for (int t = 0; t < d; ++t) pow = pow * lin;
    SympWord w(n);
    if (pure_p) {
        w.push(SympFactor::xshift(n, pow.scaled(c)));
        return w;
    }
    if (pure_x) {
        w.push(SympFactor::pshift(n, pow.scaled(-c)));
        return w;
    }
    // conjugate the coordinate shear by a frame sending p_1 to ell
    CMat M = symplectic_frame(ell, fld);
    Polynomial p1pow = Polynomial::constant(m, one_of(fld));
    Polynomial p1 = Polynomial::variable(n, m, one_of(fld));
    for (int t = 0; t < d; ++t) p1pow = p1pow * p1;
    auto Minv = inverse(M);
    if (!Minv) throw internal_invariant_error("singular symplectic frame");
    w.push(SympFactor::linear(n, M));
    w.push(SympFactor::xshift(n, p1pow.scaled(c)));
    w.push(SympFactor::linear(n, *Minv));
    return w;
}

SympApproxResult symplectic_approximate(const PolyEndo& sigma, int K) {
    if (sigma.n() % 2 != 0)
        throw dimension_error("symplectic approximation needs 2n variables");
    std::size_t n = sigma.n() / 2, m = sigma.n();
    Field fld = sigma.field();
    if (!is_symplectomorphism(sigma))
        throw not_symplectic_error("input does not preserve the canonical bracket");
    {
        Polynomial j = jacobian_det(sigma);
        if (!(j == Polynomial::constant(m, one_of(fld))))
            throw invalid_input_error("symplectic approximation: unit Jacobian required");
    }
    SympApproxResult res{SympWord(n), PolyEndo(), {}, {}};
    PolyEndo cur = sigma;
    CMat l = linear_part(sigma);
    if (!(linear_endo(l, fld) == PolyEndo::identity(m, fld))) {
        auto linv = inverse(l);
        if (!linv) throw internal_invariant_error("singular symplectic linear part");
        cur = compose(linear_endo(*linv, fld), sigma);
        res.word.push(SympFactor::linear(n, l));
    }
    for (int k = 2; k < K; ++k) {
        if (cur.is_identity()) break;
        std::vector<Polynomial> f, g;
        bool trivial = true;
        for (std::size_t i = 0; i < n; ++i) {
            Polynomial fx =
                (cur.image(i) - Polynomial::variable(i, m, one_of(fld))).homogeneous_component(k);
            Polynomial fp =
                (cur.image(n + i) - Polynomial::variable(n + i, m, one_of(fld)))
                    .homogeneous_component(k);
            trivial = trivial && fx.is_zero() && fp.is_zero();
            f.push_back(std::move(fx));
            g.push_back(-fp); // co-defect, so that dF/dx_i = g_i
        }
        if (trivial) continue;
        GeneratingPolynomial gen = generating_polynomial(f, g, k);
        res.generators.push_back(gen);
        // eliminate with the flow of -F, split into pure-p, pure-x and
        // Waring-decomposed mixed parts
        Polynomial H = -gen.F;
        Polynomial Hp = Polynomial::zero(m), Hx = Polynomial::zero(m), Hmix = Polynomial::zero(m);
        for (auto& [mono, c] : H.terms()) {
            bool has_x = false, has_p = false;
            for (std::size_t i = 0; i < n; ++i) {
                if (mono.exp(i) > 0) has_x = true;
                if (mono.exp(n + i) > 0) has_p = true;
            }
            if (!has_x)
                Hp.add_term(mono, c);
            else if (!has_p)
                Hx.add_term(mono, c);
            else
                Hmix.add_term(mono, c);
        }
        std::size_t emitted = 0;
        auto apply_word = [&](const SympWord& piece) {
            emitted += piece.factors.size();
            PolyEndo pe = piece.eval(fld);
            cur = compose(pe, cur);
            check_residual_cap(cur);
            res.word.append(piece.inverse());
        };
        if (!Hp.is_zero()) {
            SympWord piece(n);
            piece.push(SympFactor::xshift(n, Hp));
            apply_word(piece);
        }
        if (!Hx.is_zero()) {
            SympWord piece(n);
            piece.push(SympFactor::pshift(n, -Hx));
            apply_word(piece);
        }
        if (!Hmix.is_zero()) {
            for (auto& term : waring_decompose(Hmix, k + 1)) {
                SympWord piece = shear_word(term.ell, term.c, k + 1);
                // the closed-form flow is cheaper than evaluating the word
                PolyEndo pe = shear_endo(term.ell, term.c, k + 1);
                emitted += piece.factors.size();
                cur = compose(pe, cur);
                check_residual_cap(cur);
                res.word.append(piece.inverse());
            }
        }
        int h = height_from_id(cur);
        if (h < k + 1)
            throw internal_invariant_error("symplectic step failed to raise the residual height");
        res.trace.push_back({k, emitted, h});
    }
    res.residual = std::move(cur);
    return res;
}

// ---------------------------------------------------------------------------
// Lifting.
// ---------------------------------------------------------------------------

WeylEndo lift_factor(const SympFactor& f) {
    Field fld = Field::rationals();
    std::size_t n = f.n;
    WeylEndo e = WeylEndo::identity(n, fld);
    switch (f.kind) {
        case SympFactor::XShift:
            for (std::size_t i = 0; i < n; ++i)
                e.ximg[i] += weyl_from_ppoly(f.gen.partial(n + i), n, fld);
            return e;
        case SympFactor::PShift:
            for (std::size_t i = 0; i < n; ++i)
                e.dimg[i] += weyl_from_xpoly(f.gen.partial(i), n, fld);
            return e;
        case SympFactor::Linear: {
            for (std::size_t i = 0; i < n; ++i) {
                WeylElement xi(n), di(n);
                xi = WeylElement::zero(n);
                di = WeylElement::zero(n);
                for (std::size_t j = 0; j < n; ++j) {
                    xi += WeylElement::xgen(j, n, fld).scaled(f.mat.at(i, j));
                    xi += WeylElement::dgen(j, n, fld).scaled(f.mat.at(i, n + j));
                    di += WeylElement::xgen(j, n, fld).scaled(f.mat.at(n + i, j));
                    di += WeylElement::dgen(j, n, fld).scaled(f.mat.at(n + i, n + j));
                }
                e.ximg[i] = xi;
                e.dimg[i] = di;
            }
            return e;
        }
    }
    throw cannot_lift_error("unsupported factor kind");
}

WeylEndo lift_tame(const SympWord& w) {
    WeylEndo acc = WeylEndo::identity(w.n, Field::rationals());
    for (auto& f : w.factors) acc = weyl_compose(acc, lift_factor(f));
    return acc;
}

} // namespace tame
