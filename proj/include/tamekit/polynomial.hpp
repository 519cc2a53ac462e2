#ifndef TAMEKIT_POLYNOMIAL_HPP
#define TAMEKIT_POLYNOMIAL_HPP

#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "tamekit/coeff.hpp"
#include "tamekit/monomial.hpp"

namespace tame {

inline constexpr int kInfHeight = std::numeric_limits<int>::max();

// Sparse multivariate polynomial over an exact coefficient ring C.
// Invariants: no zero coefficients stored; term iteration is graded lex
// ascending (printing reverses it, largest first).
template <class C>
class PolynomialT {
  public:
    using Terms = std::map<Monomial, C>;

    PolynomialT() : nvars_(0) {}
    explicit PolynomialT(std::size_t nvars) : nvars_(nvars) {}

    static PolynomialT zero(std::size_t nvars) { return PolynomialT(nvars); }
    static PolynomialT constant(std::size_t nvars, const C& c) {
        PolynomialT f(nvars);
        f.add_term(Monomial(nvars), c);
        return f;
    }
    static PolynomialT variable(std::size_t i, std::size_t nvars, const C& one) {
        PolynomialT f(nvars);
        f.add_term(Monomial::var(i, nvars), one);
        return f;
    }
    static PolynomialT monomial(Monomial m, const C& c) {
        PolynomialT f(m.nvars());
        f.add_term(std::move(m), c);
        return f;
    }

    std::size_t nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t nterms() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
    }
    // Coefficient of the unit monomial (the "free part").
    std::optional<C> constant_term() const {
        auto it = terms_.find(Monomial(nvars_));
        if (it == terms_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<C> coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        if (it == terms_.end()) return std::nullopt;
        return it->second;
    }

    void add_term(Monomial m, const C& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(std::move(m), c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    int degree() const {
        if (terms_.empty()) return -1;
        return terms_.rbegin()->first.degree();
    }
    int height() const {
        if (terms_.empty()) return kInfHeight;
        return terms_.begin()->first.degree();
    }

    PolynomialT operator-() const {
        PolynomialT f(nvars_);
        for (auto& [m, c] : terms_) f.terms_.emplace(m, -c);
        return f;
    }

    PolynomialT& operator+=(const PolynomialT& o) {
        check_arity(o);
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    PolynomialT& operator-=(const PolynomialT& o) {
        check_arity(o);
        for (auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend PolynomialT operator+(PolynomialT a, const PolynomialT& b) { return a += b; }
    friend PolynomialT operator-(PolynomialT a, const PolynomialT& b) { return a -= b; }

    friend PolynomialT operator*(const PolynomialT& a, const PolynomialT& b) {
        return mul(a, b, -1);
    }
    PolynomialT& operator*=(const PolynomialT& o) { return *this = *this * o; }

    // Product with terms of total degree > maxdeg dropped (maxdeg < 0: keep all).
    static PolynomialT mul(const PolynomialT& a, const PolynomialT& b, int maxdeg) {
        a.check_arity(b);
        PolynomialT r(a.nvars_);
        for (auto& [ma, ca] : a.terms_) {
            int da = ma.degree();
            if (maxdeg >= 0 && da > maxdeg) break; // terms ascend by degree
            for (auto& [mb, cb] : b.terms_) {
                if (maxdeg >= 0 && da + mb.degree() > maxdeg) break;
                r.add_term(ma * mb, ca * cb);
            }
        }
        return r;
    }

    PolynomialT scaled(const C& c) const {
        PolynomialT r(nvars_);
        if (c.is_zero()) return r;
        for (auto& [m, k] : terms_) r.add_term(m, k * c);
        return r;
    }
    PolynomialT mul_int(long n) const {
        PolynomialT r(nvars_);
        for (auto& [m, k] : terms_) r.add_term(m, k.mul_int(n));
        return r;
    }
    PolynomialT mul_monomial(const Monomial& mono, const C& c) const {
        PolynomialT r(nvars_);
        if (c.is_zero()) return r;
        for (auto& [m, k] : terms_) r.add_term(m * mono, k * c);
        return r;
    }

    // Formal partial derivative with respect to variable i.
    PolynomialT partial(std::size_t i) const {
        if (i >= nvars_) throw dimension_error("partial: variable index out of range");
        PolynomialT r(nvars_);
        for (auto& [m, c] : terms_) {
            std::uint16_t e = m.exp(i);
            if (e == 0) continue;
            auto exps = m.exps();
            exps[i] = static_cast<std::uint16_t>(e - 1);
            r.add_term(Monomial(std::move(exps)), c.mul_int(e));
        }
        return r;
    }

    PolynomialT homogeneous_component(int d) const {
        PolynomialT r(nvars_);
        for (auto& [m, c] : terms_)
            if (m.degree() == d) r.terms_.emplace(m, c);
        return r;
    }
    PolynomialT truncated(int maxdeg) const {
        PolynomialT r(nvars_);
        for (auto& [m, c] : terms_)
            if (m.degree() <= maxdeg) r.terms_.emplace(m, c);
        return r;
    }

    // Reinterpret in a ring with more variables (exponent vectors padded).
    PolynomialT extended(std::size_t nvars) const {
        if (nvars < nvars_) throw dimension_error("extended: cannot shrink variable count");
        PolynomialT r(nvars);
        for (auto& [m, c] : terms_) r.terms_.emplace(m.extended(nvars), c);
        return r;
    }

    // Ring-homomorphic image: substitute images[i] for variable i.  Images
    // must share a common variable count (which may differ from nvars()).
    // maxdeg >= 0 truncates every intermediate product.
    PolynomialT substitute(std::span<const PolynomialT> images, int maxdeg = -1) const {
        if (images.size() != nvars_)
            throw dimension_error("substitute: expected " + std::to_string(nvars_) +
                                  " images, got " + std::to_string(images.size()));
        std::size_t m = nvars_ ? images[0].nvars() : 0;
        for (auto& g : images)
            if (g.nvars() != m) throw dimension_error("substitute: images have mixed variable counts");
        // memoized powers of each image
        std::vector<std::vector<PolynomialT>> pows(nvars_);
        PolynomialT r(m);
        for (auto& [mono, c] : terms_) {
            PolynomialT t = constant(m, c);
            for (std::size_t i = 0; i < nvars_ && !t.is_zero(); ++i) {
                std::uint16_t e = mono.exp(i);
                if (e == 0) continue;
                t = mul(t, power_of(images[i], e, pows[i], maxdeg), maxdeg);
            }
            r += t;
        }
        return r;
    }

    C evaluate(std::span<const C> point, const C& one) const {
        if (point.size() != nvars_) throw dimension_error("evaluate: point arity mismatch");
        C acc = one;
        bool first = true;
        for (auto& [m, c] : terms_) {
            C t = c;
            for (std::size_t i = 0; i < nvars_; ++i)
                for (std::uint16_t k = 0; k < m.exp(i); ++k) t *= point[i];
            if (first) {
                acc = t;
                first = false;
            } else {
                acc += t;
            }
        }
        if (first) return one - one; // zero constructed in the ring
        return acc;
    }

    // Rebuild coefficients through fn (used e.g. for Laurent weight filtering
    // and for specializing parameters); fn may return zero to drop a term.
    template <class F>
    PolynomialT map_coeffs(F&& fn) const {
        PolynomialT r(nvars_);
        for (auto& [m, c] : terms_) r.add_term(m, fn(c));
        return r;
    }

    bool operator==(const PolynomialT& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }

  private:
    static const PolynomialT& power_of(const PolynomialT& base, std::uint16_t e,
                                       std::vector<PolynomialT>& cache, int maxdeg) {
        if (cache.empty()) {
            // slot 0 is a placeholder; exponent 0 is filtered out by the caller
            cache.push_back(PolynomialT(base.nvars()));
            cache.push_back(maxdeg >= 0 ? base.truncated(maxdeg) : base);
        }
        while (cache.size() <= e) cache.push_back(mul(cache.back(), cache[1], maxdeg));
        return cache[e];
    }
    void check_arity(const PolynomialT& o) const {
        if (nvars_ != o.nvars_)
            throw dimension_error("polynomial variable counts differ: " + std::to_string(nvars_) +
                                  " vs " + std::to_string(o.nvars_));
    }

    std::size_t nvars_;
    Terms terms_;
};

using Polynomial = PolynomialT<Coeff>;

// Exact division f / g in K[x]; returns nullopt when g does not divide f.
// Leading terms are taken in graded lex order; requires field coefficients.
template <class C>
std::optional<PolynomialT<C>> divide_exact(const PolynomialT<C>& f, const PolynomialT<C>& g) {
    if (g.is_zero()) return std::nullopt;
    PolynomialT<C> q(f.nvars()), r = f;
    auto& gt = *g.terms().rbegin();
    while (!r.is_zero()) {
        auto& rt = *r.terms().rbegin();
        // monomial divisibility
        std::vector<std::uint16_t> exps(f.nvars());
        for (std::size_t i = 0; i < f.nvars(); ++i) {
            if (rt.first.exp(i) < gt.first.exp(i)) return std::nullopt;
            exps[i] = static_cast<std::uint16_t>(rt.first.exp(i) - gt.first.exp(i));
        }
        Monomial qm{std::move(exps)};
        C qc = rt.second / gt.second;
        q.add_term(qm, qc);
        r -= g.mul_monomial(qm, qc);
    }
    return q;
}

// Height of a vector of polynomials (min over entries; all-zero: infinity).
template <class C>
int height(std::span<const PolynomialT<C>> polys) {
    int h = kInfHeight;
    for (auto& f : polys) h = std::min(h, f.height());
    return h;
}

} // namespace tame

#endif
