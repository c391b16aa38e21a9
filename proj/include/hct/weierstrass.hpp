#ifndef HCT_WEIERSTRASS_HPP
#define HCT_WEIERSTRASS_HPP

#include "hct/poly.hpp"

namespace hct {

// Base ring descriptor: the full ring of integers O_K, or a ring of
// T-integers O_T.
struct BaseRing {
    static BaseRing integers(NumberField K) { return {PlaceSet(K), true}; }
    static BaseRing t_integers(PlaceSet T) { return {std::move(T), false}; }

    PlaceSet T;
    bool is_OK = true;

    const NumberField& field() const { return T.field(); }
    bool element_in(const FieldElement& x) const;
    bool poly_in(const Poly& f) const;
    // 2 invertible: some place above 2 lies in T... all places above 2 must
    bool two_invertible() const;
    bool is_unit(const FieldElement& x) const;
    std::string to_string() const;
};

// y^2 + f2(x) y = f(x) over the given base ring; the degree window
// 2g+1 <= max(2 deg f2, deg f) <= 2g+2 is enforced.
struct HyperellipticEquation {
    unsigned genus;
    Poly f, f2;
    BaseRing ring;

    HyperellipticEquation(unsigned g, Poly f_, Poly f2_, BaseRing R);
};

// "y^2 + (f2)*y = f" (or "y^2 = f" when f2 vanishes)
std::string equation_string(const Poly& f, const Poly& f2);

// f0 = f + f2^2/4; requires 2 invertible in the base ring
Poly complete_square(const Poly& f, const Poly& f2, const BaseRing& R);

// 2^{4g} disc(f0) when deg f0 = 2g+2, else 2^{4g} lc(f0)^2 disc(f0)
FieldElement model_discriminant(const Poly& f, const Poly& f2, unsigned g);

// model with f2 = 0
class WeierstrassModel {
public:
    WeierstrassModel(unsigned g, Poly f, BaseRing R);

    unsigned genus() const { return g_; }
    const Poly& f() const { return f_; }
    const BaseRing& ring() const { return ring_; }
    const FieldElement& disc() const { return disc_; }
    Height model_height() const { return poly_height(f_); }
    bool is_separable() const { return !disc_.is_zero(); }

private:
    unsigned g_;
    Poly f_;
    BaseRing ring_;
    FieldElement disc_;
};

// coordinate change x = (a z + b)/(c z + d), y scaled by lambda; the
// discriminants satisfy  disc_new = lambda^{4(2g+1)} det(phi)^{-2(g+1)(2g+1)} disc_old
// which is asserted on every call
WeierstrassModel change_variables(const WeierstrassModel& m, const GL2Matrix& phi,
                                  const FieldElement& lambda);

// the asserted identity, checkable separately
bool discriminant_law_holds(const WeierstrassModel& before,
                            const WeierstrassModel& after, const GL2Matrix& phi,
                            const FieldElement& lambda);

// smoothness of this model at v: v(disc) = 0; coefficients must be v-integral
bool good_reduction_at(const WeierstrassModel& m, const PrimeIdeal& v);

// omega = prod over coefficients of delta(alpha) = prod_w max(1, |alpha|_w);
// f'(X) = omega^{2n} f(X / omega^2) is integral over O_K.
// Throws when a coefficient has a denominator prime outside T.
struct ClearedModel {
    FieldElement omega;
    Poly f;
};
ClearedModel clear_denominators(const Poly& f, const PlaceSet& T, unsigned g);

enum class WpCertificate { yes, not_certified };
// K-rational Weierstrass point: the point at infinity for odd degree, a
// K-rational root of f otherwise
WpCertificate rational_weierstrass_point(const WeierstrassModel& m);

}  // namespace hct

#endif
