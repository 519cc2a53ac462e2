#ifndef TAMEKIT_APPROX_HPP
#define TAMEKIT_APPROX_HPP

#include <utility>
#include <vector>

#include "tamekit/endo.hpp"
#include "tamekit/weyl.hpp"

namespace tame {

// ---------------------------------------------------------------------------
// Tame approximation of unit-Jacobian polynomial automorphisms.
// ---------------------------------------------------------------------------

struct ApproxStep {
    int degree;              // the degree handled by this step
    std::size_t factors;     // elementary factors emitted
    int residual_height;     // Ht(residual - id) afterwards
};

struct ApproxResult {
    TameWord word;           // psi: phi = eval(word) o residual
    PolyEndo residual;
    std::vector<ApproxStep> trace; // residual heights strictly increase
};

// Order in which same-degree defects are eliminated.  IndexOrder follows
// ascending variable index; GreedySize tries each directly eliminable
// defect and keeps the choice that leaves the smallest residual, which
// lets low-degree tame inputs collapse back to the identity exactly.
enum class StepOrder { IndexOrder, GreedySize };

// phi = eval(linear word) o phi', Ht(phi' - id) >= 2.
// Requires jacobian_det(phi) == 1 exactly.
std::pair<TameWord, PolyEndo> normalize_linear(const PolyEndo& phi);

// Residuals are carried exactly; eliminations whose carried residual would
// exceed this many terms raise resource_error instead of thrashing.
inline constexpr std::size_t kResidualTermCap = 200000;

// One degree step: returns (cs, phi') with phi' = eval(cs) o phi and
// Ht(phi' - id) >= k+1.  Requires Ht(phi - id) >= k.
std::pair<TameWord, PolyEndo> anick_step(const PolyEndo& phi, int k,
                                         StepOrder ord = StepOrder::GreedySize);

ApproxResult anick_approximate(const PolyEndo& phi, int K,
                               StepOrder ord = StepOrder::GreedySize);

// ---------------------------------------------------------------------------
// Symplectic side.
// ---------------------------------------------------------------------------

struct not_symplectic_error : error {
    explicit not_symplectic_error(const std::string& msg) : error(msg) {}
};

// Tame symplectic factor: a one-sided shift by the gradient of a
// generating polynomial, or a linear symplectic change of variables.
//   XShift(F), F = F(p):  x_i -> x_i + dF/dp_i,  p fixed
//   PShift(G), G = G(x):  p_i -> p_i + dG/dx_i,  x fixed
struct SympFactor {
    enum Kind { XShift, PShift, Linear } kind;
    std::size_t n = 0;   // pairs; the ambient ring has 2n variables
    Polynomial gen;      // XShift / PShift generator (on 2n variables)
    CMat mat;            // Linear matrix (2n x 2n), rows = generator images

    static SympFactor xshift(std::size_t n, Polynomial f_of_p);
    static SympFactor pshift(std::size_t n, Polynomial g_of_x);
    static SympFactor linear(std::size_t n, CMat m);

    PolyEndo to_endo() const;
    SympFactor inverse() const;
};

struct SympWord {
    std::size_t n = 0;
    std::vector<SympFactor> factors;

    explicit SympWord(std::size_t n_) : n(n_) {}
    void push(SympFactor f);
    void append(const SympWord& w);
    SympWord inverse() const;
    PolyEndo eval(const Field& f = Field::rationals()) const;
};

// Homogeneous degree-(k+1) polynomial F with dF/dp_i = f_i, dF/dx_i = g_i.
struct GeneratingPolynomial {
    Polynomial F;
    int k = 0;
};

// Builds F = (sum x_i g_i + sum p_i f_i) / (k+1) and verifies it by
// differentiation; the closedness relations are checked first and a
// violation raises not_symplectic_error carrying the residual.
GeneratingPolynomial generating_polynomial(const std::vector<Polynomial>& f,
                                           const std::vector<Polynomial>& g, int k);

// Exact decomposition F = sum c_j ell_j^d into powers of integer linear
// forms (characteristic zero).  Forms come from a deterministic seeded
// family, enlarged until the interpolation system has full rank.
struct WaringTerm {
    Coeff c;
    std::vector<Coeff> ell; // linear form coefficients
};
std::vector<WaringTerm> waring_decompose(const Polynomial& F, int d, int radius_cap = 6);

// Time-1 Hamiltonian flow of c*ell^d: an exact polynomial symplectomorphism
// (ell is constant along its own flow).
PolyEndo shear_endo(const std::vector<Coeff>& ell, const Coeff& c, int d);

// The same flow as a word of one-sided shifts and linear symplectic
// factors (a conjugate of a one-variable transvection).
SympWord shear_word(const std::vector<Coeff>& ell, const Coeff& c, int d);

// Linear symplectic matrix whose p_1-row equals ell (a symplectic frame
// completion over Q).
CMat symplectic_frame(const std::vector<Coeff>& ell, const Field& field);

struct SympApproxResult {
    SympWord word;       // sigma = eval(word) o residual
    PolyEndo residual;
    std::vector<GeneratingPolynomial> generators; // one per nontrivial degree
    std::vector<ApproxStep> trace;
};

SympApproxResult symplectic_approximate(const PolyEndo& sigma, int K);

// ---------------------------------------------------------------------------
// Lifting tame symplectic words to Weyl automorphisms.
// ---------------------------------------------------------------------------

struct cannot_lift_error : error {
    explicit cannot_lift_error(const std::string& msg) : error(msg) {}
};

WeylEndo lift_factor(const SympFactor& f);
WeylEndo lift_tame(const SympWord& w);

} // namespace tame

#endif
