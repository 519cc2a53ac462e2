#ifndef TAMEKIT_MONOMIAL_HPP
#define TAMEKIT_MONOMIAL_HPP

#include <cstdint>
#include <numeric>
#include <vector>

#include "tamekit/errors.hpp"

namespace tame {

// Commutative monomial: one exponent per variable.  Canonical order is
// graded lexicographic by variable index (degree first, then lex with
// x1 > x2 > ...).
class Monomial {
  public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
    explicit Monomial(std::vector<std::uint16_t> exps) : exps_(std::move(exps)) {}

    static Monomial var(std::size_t i, std::size_t nvars, std::uint16_t e = 1) {
        Monomial m(nvars);
        m.exps_[i] = e;
        return m;
    }

    std::size_t nvars() const { return exps_.size(); }
    std::uint16_t exp(std::size_t i) const { return exps_[i]; }
    const std::vector<std::uint16_t>& exps() const { return exps_; }

    int degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }
    bool is_unit() const {
        for (auto e : exps_)
            if (e) return false;
        return true;
    }

    Monomial operator*(const Monomial& o) const {
        if (exps_.size() != o.exps_.size())
            throw dimension_error("monomial variable counts differ");
        Monomial m(*this);
        for (std::size_t i = 0; i < exps_.size(); ++i) m.exps_[i] += o.exps_[i];
        return m;
    }

    // Pads or reinterprets the monomial in a ring with more variables.
    Monomial extended(std::size_t nvars) const {
        Monomial m(*this);
        m.exps_.resize(nvars, 0);
        return m;
    }

    bool operator==(const Monomial&) const = default;

    // graded lex: by total degree, then lexicographically on exponents
    friend bool operator<(const Monomial& a, const Monomial& b) {
        int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        return a.exps_ < b.exps_;
    }

  private:
    std::vector<std::uint16_t> exps_;
};

} // namespace tame

#endif
