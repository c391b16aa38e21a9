#ifndef HCT_NUMBERFIELD_HPP
#define HCT_NUMBERFIELD_HPP

#include <gmpxx.h>

#include <string>

#include "hct/util.hpp"

namespace hct {

// Q or an imaginary quadratic field Q(sqrt(-d)), d squarefree positive.
class NumberField {
public:
    enum class Kind { rationals, imag_quadratic };

    static NumberField rationals() { return NumberField(Kind::rationals, 0); }
    static NumberField imag_quadratic(unsigned long d);

    Kind kind() const { return kind_; }
    bool is_rationals() const { return kind_ == Kind::rationals; }
    unsigned long d() const { return d_; }
    int degree() const { return is_rationals() ? 1 : 2; }

    // |disc(K/Q)|: 1 for Q; d if d = 3 mod 4, else 4d
    mpz_class disc_abs() const;

    // true when the ring of integers is Z[(1+sqrt(-d))/2]
    bool omega_is_half() const { return !is_rationals() && d_ % 4 == 3; }
    // trace and norm of omega (the second integral basis element)
    mpz_class omega_trace() const { return omega_is_half() ? 1 : 0; }
    mpz_class omega_norm() const {
        return omega_is_half() ? mpz_class((mpz_class(d_) + 1) / 4) : mpz_class(d_);
    }

    std::string to_string() const;

    friend bool operator==(const NumberField& x, const NumberField& y) {
        return x.kind_ == y.kind_ && x.d_ == y.d_;
    }
    friend bool operator!=(const NumberField& x, const NumberField& y) { return !(x == y); }

private:
    NumberField(Kind k, unsigned long d) : kind_(k), d_(d) {}
    Kind kind_;
    unsigned long d_;
};

// a + b*sqrt(-d); b identically 0 over Q. mpq_class keeps parts in lowest
// terms with positive denominator.
class FieldElement {
public:
    FieldElement() : K_(NumberField::rationals()), a_(0), b_(0) {}
    explicit FieldElement(const mpq_class& a)
        : K_(NumberField::rationals()), a_(a), b_(0) {
        a_.canonicalize();
    }
    FieldElement(NumberField K, mpq_class a, mpq_class b = mpq_class(0));

    const NumberField& field() const { return K_; }
    const mpq_class& a() const { return a_; }
    const mpq_class& b() const { return b_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    mpq_class norm() const;   // a^2 + d b^2
    mpq_class trace() const { return 2 * a_; }
    FieldElement conj() const;
    FieldElement inverse() const;
    FieldElement pow(long e) const;

    // lies in the ring of integers O_K
    bool is_integral() const;
    // coordinates u + v*omega in the integral basis {1, omega}; false when
    // the element is not integral
    bool integral_coords(mpz_class& u, mpz_class& v) const;
    // u + v*omega scaled by 1/q: always possible, q > 0 minimal
    void basis_coords(mpz_class& u, mpz_class& v, mpz_class& q) const;

    std::string to_string() const;

    friend FieldElement operator+(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator-(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator*(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator/(const FieldElement& x, const FieldElement& y);
    FieldElement operator-() const;
    friend bool operator==(const FieldElement& x, const FieldElement& y);
    friend bool operator!=(const FieldElement& x, const FieldElement& y) { return !(x == y); }

private:
    NumberField K_;
    mpq_class a_, b_;
    static void require_same(const FieldElement& x, const FieldElement& y);
};

// Exact absolute logarithmic height h = (1/2) log(h2) with h2 rational >= 1.
class Height {
public:
    Height() : h2_(1) {}
    static Height half_log(const mpq_class& h2);
    const mpq_class& exp2h() const { return h2_; }  // exp(2h), exact

    bool is_zero() const { return h2_ == 1; }
    double approx() const;
    // decimal string of h / log(10)
    std::string log10_string(int digits = 12) const;

    friend bool operator==(const Height& x, const Height& y) { return x.h2_ == y.h2_; }
    friend bool operator<=(const Height& x, const Height& y) { return x.h2_ <= y.h2_; }
    friend bool operator<(const Height& x, const Height& y) { return x.h2_ < y.h2_; }

    // exact test  this <= k * other
    bool leq_times(unsigned long k, const Height& other) const;
    friend Height operator+(const Height& x, const Height& y) {
        return half_log(x.h2_ * y.h2_);
    }

private:
    explicit Height(mpq_class h2) : h2_(std::move(h2)) {}
    mpq_class h2_;
};

// absolute logarithmic Weil height; h(0) = 0
Height height(const FieldElement& x);

// total order for deterministic containers/output: compares a, then b
bool elem_less(const FieldElement& x, const FieldElement& y);

}  // namespace hct

#endif
