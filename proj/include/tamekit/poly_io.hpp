#ifndef TAMEKIT_POLY_IO_HPP
#define TAMEKIT_POLY_IO_HPP

#include "tamekit/format.hpp"
#include "tamekit/parse.hpp"

namespace tame {

namespace detail {

struct PolyAdapter {
    using Value = Polynomial;
    const VarNames& names;
    Field field;

    Value constant(const Rational& q) const {
        return Polynomial::constant(names.size(), Coeff::from_rational(q, field));
    }
    Value negate(const Value& v) const { return -v; }
    Value add(const Value& a, const Value& b) const { return a + b; }
    Value sub(const Value& a, const Value& b) const { return a - b; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value divide(const Value& a, const Value& b) const {
        if (!b.is_constant() || b.is_zero())
            throw invalid_input_error("division only by nonzero constants");
        return a.scaled(b.constant_term()->inverse());
    }
    Value power(const Value& v, long e) const {
        Value r = constant(1);
        for (long i = 0; i < e; ++i) r = r * v;
        return r;
    }
    Value atom_pow(const std::string& name, long e, std::size_t pos) const {
        auto idx = names.find(name);
        if (!idx) throw parse_error("unknown variable '" + name + "'", pos);
        if (e < 0) throw parse_error("negative exponent on a polynomial variable", pos);
        return Polynomial::monomial(
            Monomial::var(*idx, names.size(), static_cast<std::uint16_t>(e)),
            Coeff(1, field));
    }
};

} // namespace detail

inline Polynomial parse_polynomial(const std::string& text, const VarNames& names,
                                   const Field& field = Field::rationals()) {
    return ExprParser<detail::PolyAdapter>(text, {names, field}).parse();
}

} // namespace tame

#endif
