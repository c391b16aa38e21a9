#ifndef HCT_POLY_HPP
#define HCT_POLY_HPP

#include <string>
#include <vector>

#include "hct/places.hpp"

namespace hct {

// Dense univariate polynomial with exact field coefficients.
class Poly {
public:
    Poly() : K_(NumberField::rationals()) {}
    explicit Poly(NumberField K) : K_(K) {}
    Poly(NumberField K, std::vector<FieldElement> coeffs);
    // rational coefficients c[i] of X^i over Q
    static Poly from_q(const std::vector<mpq_class>& coeffs);

    const NumberField& field() const { return K_; }
    int degree() const { return (int)c_.size() - 1; }  // -1 for the zero poly
    bool is_zero() const { return c_.empty(); }
    const FieldElement& lc() const;
    FieldElement coeff(int i) const;  // 0 outside range
    const std::vector<FieldElement>& coeffs() const { return c_; }

    bool is_monic() const;
    Poly derivative() const;
    FieldElement eval(const FieldElement& x) const;
    Poly translate(const FieldElement& tau) const;  // f(X + tau)
    Poly scale_arg(const FieldElement& s) const;    // f(s X)

    friend Poly operator+(const Poly& f, const Poly& g);
    friend Poly operator-(const Poly& f, const Poly& g);
    friend Poly operator*(const Poly& f, const Poly& g);
    Poly operator*(const FieldElement& s) const;
    Poly operator-() const;
    friend bool operator==(const Poly& f, const Poly& g);
    friend bool operator!=(const Poly& f, const Poly& g) { return !(f == g); }

    std::string to_string(const std::string& var = "x") const;

private:
    NumberField K_;
    std::vector<FieldElement> c_;  // c_[i] coeff of X^i, trimmed
    void trim();
};

// Binary form of degree n: sum b_i X^{n-i} Y^i. Not identically zero.
class BinaryForm {
public:
    BinaryForm(NumberField K, unsigned n, std::vector<FieldElement> coeffs);
    static BinaryForm from_q(unsigned n, const std::vector<mpq_class>& coeffs);

    const NumberField& field() const { return K_; }
    unsigned degree() const { return n_; }
    // coefficient of X^{n-i} Y^i
    const FieldElement& coeff(unsigned i) const { return b_[i]; }
    const std::vector<FieldElement>& coeffs() const { return b_; }

    Poly dehomogenize() const;  // F(X, 1)
    FieldElement eval(const FieldElement& x, const FieldElement& y) const;
    BinaryForm dx() const;  // partial derivative in X (degree n-1)
    BinaryForm dy() const;
    bool is_zero() const;

    BinaryForm operator*(const FieldElement& s) const;
    friend bool operator==(const BinaryForm& f, const BinaryForm& g);
    friend bool operator!=(const BinaryForm& f, const BinaryForm& g) { return !(f == g); }

    std::string to_string() const;

private:
    NumberField K_;
    unsigned n_;
    std::vector<FieldElement> b_;  // size n+1
};

struct GL2Matrix {
    FieldElement a, b, c, d;  // (a b; c d)

    FieldElement det() const { return a * d - b * c; }
    bool is_sl2() const;
    GL2Matrix adjugate() const { return {d, -b, -c, a}; }
    static GL2Matrix identity(const NumberField& K);
    static GL2Matrix from_z(long a, long b, long c, long d);
    friend GL2Matrix operator*(const GL2Matrix& x, const GL2Matrix& y);
    friend bool operator==(const GL2Matrix& x, const GL2Matrix& y);
    std::string to_string() const;
};

// g(X, Y) = G(aX + bY, cX + dY); a right action
BinaryForm pullback(const GL2Matrix& psi, const BinaryForm& G);

// resultant via the subresultant PRS
FieldElement resultant(const Poly& A, const Poly& B);
// (-1)^{n(n-1)/2} Res(f, f') / lc(f); 0 signals an inseparable f
FieldElement disc_poly(const Poly& f);
bool separable(const Poly& f);

// homogenization of f to degree n >= deg f
BinaryForm homogenize(const Poly& f, unsigned n);
// discriminant of the form: equals disc of the dehomogenized polynomial
// after a unimodular shear makes the X^n coefficient nonzero
FieldElement disc_form(const BinaryForm& G);

// height of the projective coefficient vector
Height poly_height(const Poly& f);
Height form_height(const BinaryForm& G);

// transvectant (F, G)_h with the factorial normalization, as a raw
// coefficient vector of length m + n - 2h + 1 (may be identically zero)
std::vector<FieldElement> transvectant_raw(const std::vector<FieldElement>& F,
                                           unsigned m,
                                           const std::vector<FieldElement>& G,
                                           unsigned n, unsigned h);
// nonzero covariant of positive degree; throws otherwise
BinaryForm transvectant(const BinaryForm& F, const BinaryForm& G, unsigned h);
// full contraction to an invariant (h = m = n not required; result degree 0)
FieldElement transvectant_scalar(const BinaryForm& F, const BinaryForm& G,
                                 unsigned h);

// d_T(G) = (disc G)_T / (G)_T^{2n-2} as a factored fractional ideal over
// the places outside T; empty list = unit ideal
std::vector<std::pair<PrimeIdeal, long>> d_T_invariant(const BinaryForm& G,
                                                       const PlaceSet& T);

// law checks, exact; return true when the identities hold
bool disc_transform_check(const GL2Matrix& psi, const BinaryForm& G);
bool disc_scaling_check(const FieldElement& alpha, const BinaryForm& G);

}  // namespace hct

#endif
