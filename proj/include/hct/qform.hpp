#ifndef HCT_QFORM_HPP
#define HCT_QFORM_HPP

#include <gmpxx.h>

#include <vector>

#include "hct/util.hpp"

namespace hct {

// Primitive positive definite binary quadratic form a x^2 + b xy + c y^2 of
// discriminant D = b^2 - 4ac < 0. Reduced means |b| <= a <= c, with b >= 0
// when |b| = a or a = c.
struct QuadForm {
    mpz_class a, b, c;

    mpz_class disc() const { return b * b - 4 * a * c; }
    bool is_identity() const { return a == 1; }

    friend bool operator==(const QuadForm& f, const QuadForm& g) {
        return f.a == g.a && f.b == g.b && f.c == g.c;
    }
    friend bool operator<(const QuadForm& f, const QuadForm& g) {
        if (f.a != g.a) return f.a < g.a;
        if (f.b != g.b) return f.b < g.b;
        return f.c < g.c;
    }
};

bool qf_is_reduced(const QuadForm& f);
QuadForm qf_reduce(QuadForm f);
QuadForm qf_identity(const mpz_class& D);
QuadForm qf_inverse(const QuadForm& f);
// Gauss composition, reduced output; both forms of discriminant D
QuadForm qf_compose(const QuadForm& f, const QuadForm& g);
QuadForm qf_pow(const QuadForm& f, unsigned long e);
unsigned long qf_order(const QuadForm& f);

// all reduced primitive forms of discriminant D < 0, sorted
std::vector<QuadForm> qf_reduced_forms(const mpz_class& D);

// subgroup of Cl(D) generated by the given classes (as a sorted set of
// reduced forms)
std::vector<QuadForm> qf_span(const mpz_class& D, const std::vector<QuadForm>& gens);

}  // namespace hct

#endif
