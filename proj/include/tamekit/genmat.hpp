#ifndef TAMEKIT_GENMAT_HPP
#define TAMEKIT_GENMAT_HPP

#include "tamekit/freepoly.hpp"
#include "tamekit/matrix.hpp"

namespace tame {

// Commutative ring of entry variables x_{ij}^{(nu)} for s generic n x n
// matrices; entry variables are allocated deterministically per (nu, i, j).
struct GenericMatrixContext {
    std::size_t order;      // n
    std::size_t gens;       // s
    Field field;

    GenericMatrixContext(std::size_t n, std::size_t s, Field f = Field::rationals())
        : order(n), gens(s), field(f) {
        if (n < 1) throw invalid_input_error("generic matrix order must be >= 1");
    }

    std::size_t nvars() const { return gens * order * order; }
    std::size_t var_index(std::size_t nu, std::size_t i, std::size_t j) const {
        return nu * order * order + i * order + j;
    }
    std::string var_name(std::size_t v) const {
        std::size_t nn = order * order;
        std::size_t nu = v / nn, r = v % nn;
        return "g" + std::to_string(nu + 1) + "_" + std::to_string(r / order + 1) +
               std::to_string(r % order + 1);
    }
    VarNames names() const {
        std::vector<std::string> v;
        for (std::size_t k = 0; k < nvars(); ++k) v.push_back(var_name(k));
        return VarNames(std::move(v));
    }

    PolyMatrix generic_matrix(std::size_t nu) const;
};

// Canonical homomorphism pi: substitute the generic matrices X_nu for the
// free generators.
PolyMatrix generic_reduce(const FreePoly& f, const GenericMatrixContext& ctx);

// Fully symbolic standard-identity check: true iff S_r vanishes identically
// on n x n generic matrices.  cap bounds r (the enumeration has r! terms).
bool al_verify(std::size_t n, std::size_t r, std::size_t cap = 8);

} // namespace tame

#endif
