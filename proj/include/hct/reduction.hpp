#ifndef HCT_REDUCTION_HPP
#define HCT_REDUCTION_HPP

#include "hct/bounds.hpp"
#include "hct/weierstrass.hpp"

namespace hct {

// Generating system of the T-units with an exponent window. A unit is
// reduced w.r.t. the window when all its exponents lie in [0, m).
struct UnitBasisU {
    PlaceSet T;
    SUnitGroup units;
    unsigned long window_m;
    unsigned g;

    // 4g(2g+1) for the monic odd-degree case, 4(g+1)(2g+1) otherwise
    static unsigned long window_for(unsigned g, bool odd_degree_monic);
    static UnitBasisU make(const NumberField& K, const PlaceSet& T, unsigned g,
                           bool odd_degree_monic);
};

struct UReduction {
    FieldElement omega;            // Delta = omega^m * Delta_in
    FieldElement reduced;          // the reduced unit
    long torsion_exponent;         // r in [0, torsion order)
    std::vector<long> exponents;   // r(eps) in [0, m), one per generator
};

// writes a T-unit over the basis and reduces all exponents mod the window;
// the reduced height is checked against the closed-form bound
UReduction u_reduce(const FieldElement& delta, const UnitBasisU& basis);

// f(X) -> omega^{4g+2} f(X/omega^2) (odd case) or omega^{4g+4} f(X/omega^2);
// multiplies the model discriminant by omega^{4g(2g+1)} resp.
// omega^{4(g+1)(2g+1)}
WeierstrassModel twist_model(const WeierstrassModel& m, const FieldElement& omega);

// trace centering: tau = nearest integer lattice point to -c_{n-1}/n,
// f*(X) = f(X + tau); discriminant unchanged, idempotent
struct UnipotentReduction {
    FieldElement tau;
    Poly f;
};
UnipotentReduction unipotent_reduce(const Poly& f, const PlaceSet& T0);

// SL2(Z) covariant reduction: the returned form generates the canonical
// representative of the orbit; det phi = 1, discriminant preserved,
// idempotent (phi = identity when the input is already canonical)
struct Sl2Reduction {
    GL2Matrix phi;
    BinaryForm reduced;
};
Sl2Reduction sl2_reduce_form(const BinaryForm& F);

// x + y = 1 with x, y in O_T^*; exponent vectors over the prime generators
struct SUnitSolution {
    mpq_class x, y;
    int sign_x, sign_y;  // x = sign_x * prod p^{e}, entries aligned with T
    std::vector<long> exp_x, exp_y;
};

// complete list of solutions with h(x), h(y) <= height_bound, over Q
std::vector<SUnitSolution> solve_sunit_equation(const PlaceSet& T,
                                                double height_bound,
                                                unsigned long max_candidates =
                                                    50000000ul);

}  // namespace hct

#endif
