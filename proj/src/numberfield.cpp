#include "hct/numberfield.hpp"

#include <mpfr.h>

#include <sstream>

namespace hct {

NumberField NumberField::imag_quadratic(unsigned long d) {
    if (d == 0) throw std::domain_error("d must be positive");
    if (!is_squarefree_ul(d)) throw std::domain_error("d must be squarefree");
    return NumberField(Kind::imag_quadratic, d);
}

mpz_class NumberField::disc_abs() const {
    if (is_rationals()) return 1;
    return d_ % 4 == 3 ? mpz_class(d_) : mpz_class(4 * mpz_class(d_));
}

std::string NumberField::to_string() const {
    if (is_rationals()) return "Q";
    std::ostringstream os;
    os << "Q(sqrt(-" << d_ << "))";
    return os.str();
}

FieldElement::FieldElement(NumberField K, mpq_class a, mpq_class b)
    : K_(K), a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
    if (K_.is_rationals() && b_ != 0)
        throw std::domain_error("nonzero sqrt part over Q");
}

void FieldElement::require_same(const FieldElement& x, const FieldElement& y) {
    if (x.K_ != y.K_) {
        // rational constants promote silently
        if (x.K_.is_rationals() && x.b_ == 0) return;
        if (y.K_.is_rationals() && y.b_ == 0) return;
        throw std::logic_error("mixed-field arithmetic");
    }
}

static const NumberField& wider(const FieldElement& x, const FieldElement& y) {
    return x.field().is_rationals() ? y.field() : x.field();
}

FieldElement operator+(const FieldElement& x, const FieldElement& y) {
    FieldElement::require_same(x, y);
    return FieldElement(wider(x, y), x.a() + y.a(), x.b() + y.b());
}

FieldElement operator-(const FieldElement& x, const FieldElement& y) {
    FieldElement::require_same(x, y);
    return FieldElement(wider(x, y), x.a() - y.a(), x.b() - y.b());
}

FieldElement operator*(const FieldElement& x, const FieldElement& y) {
    FieldElement::require_same(x, y);
    const NumberField& K = wider(x, y);
    if (K.is_rationals()) return FieldElement(K, x.a() * y.a());
    mpq_class d(K.d());
    // (a1 + b1 w)(a2 + b2 w) with w^2 = -d
    return FieldElement(K, x.a() * y.a() - d * x.b() * y.b(),
                        x.a() * y.b() + x.b() * y.a());
}

FieldElement FieldElement::conj() const { return FieldElement(K_, a_, -b_); }

mpq_class FieldElement::norm() const {
    if (K_.is_rationals()) return a_ * a_;
    return a_ * a_ + mpq_class(K_.d()) * b_ * b_;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    if (K_.is_rationals()) return FieldElement(K_, 1 / a_);
    mpq_class n = norm();
    return FieldElement(K_, a_ / n, -b_ / n);
}

FieldElement operator/(const FieldElement& x, const FieldElement& y) {
    return x * y.inverse();
}

FieldElement FieldElement::operator-() const { return FieldElement(K_, -a_, -b_); }

FieldElement FieldElement::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElement r(K_, 1), base = *this;
    unsigned long k = (unsigned long)e;
    while (k) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

bool operator==(const FieldElement& x, const FieldElement& y) {
    if (x.K_ != y.K_ && !(x.b_ == 0 && y.b_ == 0)) {
        if (!(x.K_.is_rationals() || y.K_.is_rationals())) return false;
    }
    return x.a_ == y.a_ && x.b_ == y.b_;
}

bool elem_less(const FieldElement& x, const FieldElement& y) {
    if (x.a() != y.a()) return x.a() < y.a();
    return x.b() < y.b();
}

void FieldElement::basis_coords(mpz_class& u, mpz_class& v, mpz_class& q) const {
    // a + b sqrt(-d) = (u + v*omega)/q
    mpq_class uq, vq;
    if (K_.omega_is_half()) {
        // omega = (1+sqrt(-d))/2: a + b sqrt(-d) = (a - b) + 2b*omega
        uq = a_ - b_;
        vq = 2 * b_;
    } else {
        uq = a_;
        vq = b_;
    }
    mpz_class du = uq.get_den(), dv = vq.get_den();
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), du.get_mpz_t(), dv.get_mpz_t());
    q = l;
    u = mpq_class(uq * l).get_num();
    v = mpq_class(vq * l).get_num();
}

bool FieldElement::is_integral() const {
    if (K_.is_rationals()) return a_.get_den() == 1;
    mpz_class u, v, q;
    basis_coords(u, v, q);
    return q == 1;
}

bool FieldElement::integral_coords(mpz_class& u, mpz_class& v) const {
    mpz_class q;
    basis_coords(u, v, q);
    return q == 1;
}

std::string FieldElement::to_string() const {
    if (is_rational()) return q_to_string(a_);
    std::ostringstream os;
    if (a_ != 0) os << q_to_string(a_);
    if (b_ > 0 && a_ != 0) os << "+";
    if (b_ == -1)
        os << "-";
    else if (b_ != 1)
        os << q_to_string(b_) << "*";
    os << "sqrt(-" << K_.d() << ")";
    return os.str();
}

Height Height::half_log(const mpq_class& h2) {
    if (h2 < 1) throw std::logic_error("height exp below 1");
    return Height(h2);
}

double Height::approx() const {
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_set_q(t, h2_.get_mpq_t(), MPFR_RNDN);
    mpfr_log(t, t, MPFR_RNDN);
    double r = mpfr_get_d(t, MPFR_RNDN) / 2.0;
    mpfr_clear(t);
    return r;
}

std::string Height::log10_string(int digits) const {
    mpfr_t t;
    mpfr_init2(t, 192);
    mpfr_set_q(t, h2_.get_mpq_t(), MPFR_RNDN);
    mpfr_log10(t, t, MPFR_RNDN);
    mpfr_div_ui(t, t, 2, MPFR_RNDN);
    char buf[128];
    mpfr_snprintf(buf, sizeof buf, "%.*Rf", digits, t);
    mpfr_clear(t);
    return buf;
}

bool Height::leq_times(unsigned long k, const Height& other) const {
    // (1/2)log h2 <= k * (1/2) log h2'  iff  h2 <= h2'^k
    mpq_class rhs = pow_q(other.h2_, (long)k);
    return h2_ <= rhs;
}

Height height(const FieldElement& x) {
    if (x.is_zero()) return Height();
    if (x.is_rational()) {
        const mpq_class& q = x.a();
        mpz_class an = abs(q.get_num());
        mpz_class m = std::max(an, q.get_den());
        return Height::half_log(mpq_class(m * m));
    }
    // primitive integral minimal polynomial A t^2 + B t + C of a + b sqrt(-d):
    // t^2 - 2a t + (a^2 + d b^2), cleared by the lcm of denominators
    mpq_class tr = x.trace(), nm = x.norm();
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), tr.get_den().get_mpz_t(), nm.get_den().get_mpz_t());
    mpz_class A = l;
    mpz_class B = mpq_class(-tr * l).get_num();
    mpz_class C = mpq_class(nm * l).get_num();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), C.get_mpz_t());
    A /= g;
    C /= g;
    // both roots have modulus sqrt(C/A): Mahler measure = max(A, C)
    mpz_class aC = abs(C);
    return Height::half_log(mpq_class(std::max(A, aC)));
}

}  // namespace hct
