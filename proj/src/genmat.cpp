#include "tamekit/genmat.hpp"

namespace tame {

PolyMatrix GenericMatrixContext::generic_matrix(std::size_t nu) const {
    if (nu >= gens) throw dimension_error("generic matrix index out of range");
    PolyMatrix m(order, order, nvars());
    for (std::size_t i = 0; i < order; ++i)
        for (std::size_t j = 0; j < order; ++j)
            m.at(i, j) = Polynomial::monomial(Monomial::var(var_index(nu, i, j), nvars()),
                                              Coeff(1, field));
    return m;
}

PolyMatrix generic_reduce(const FreePoly& f, const GenericMatrixContext& ctx) {
    if (f.gens() > ctx.gens)
        throw dimension_error("free polynomial uses more generators than the context provides");
    std::size_t n = ctx.order, v = ctx.nvars();
    std::vector<PolyMatrix> gens;
    for (std::size_t nu = 0; nu < ctx.gens; ++nu) gens.push_back(ctx.generic_matrix(nu));
    PolyMatrix r(n, n, v);
    for (auto& [w, c] : f.terms()) {
        PolyMatrix t = PolyMatrix::identity(n, v, ctx.field).scaled(
            Polynomial::constant(v, c));
        for (auto g : w) t = t * gens[g];
        r = r + t;
    }
    return r;
}

bool al_verify(std::size_t n, std::size_t r, std::size_t cap) {
    if (r > cap)
        throw resource_error("al_verify: degree " + std::to_string(r) +
                             " exceeds the enumeration cap " + std::to_string(cap));
    if (r < 1) throw invalid_input_error("al_verify: degree must be >= 1");
    GenericMatrixContext ctx(n, r);
    std::vector<PolyMatrix> args;
    for (std::size_t nu = 0; nu < r; ++nu) args.push_back(ctx.generic_matrix(nu));
    return standard_polynomial(args).is_zero();
}

} // namespace tame
