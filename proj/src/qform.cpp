#include "hct/qform.hpp"

#include <algorithm>
#include <set>

namespace hct {

bool qf_is_reduced(const QuadForm& f) {
    mpz_class ab = abs(f.b);
    if (ab > f.a || f.a > f.c) return false;
    if ((ab == f.a || f.a == f.c) && f.b < 0) return false;
    return true;
}

QuadForm qf_reduce(QuadForm f) {
    if (f.a <= 0) throw std::domain_error("form not positive definite");
    while (!qf_is_reduced(f)) {
        // normalize: -a < b <= a
        if (f.b > f.a || f.b <= -f.a) {
            mpz_class twoa = 2 * f.a, r, q, num = f.b + f.a;
            // b' = b - 2a*q with b' in [-a, a)
            mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(),
                        twoa.get_mpz_t());
            mpz_class bn = r - f.a;
            f.c = f.c - q * (f.b + bn) / 2;
            f.b = bn;
        }
        if (f.a > f.c) {
            std::swap(f.a, f.c);
            f.b = -f.b;
        } else if (f.a == f.c && f.b < 0) {
            f.b = -f.b;
        } else if (abs(f.b) == f.a && f.b < 0) {
            f.b = -f.b;
        }
    }
    return f;
}

QuadForm qf_identity(const mpz_class& D) {
    mpz_class b = (D % 2 == 0) ? 0 : 1;
    return {1, b, (b * b - D) / 4};
}

QuadForm qf_inverse(const QuadForm& f) { return qf_reduce({f.a, -f.b, f.c}); }

namespace {

// pull back f by the unimodular matrix (p r; q s), ps - qr = 1
QuadForm qf_transform(const QuadForm& f, const mpz_class& p, const mpz_class& q,
                      const mpz_class& r, const mpz_class& s) {
    mpz_class A = f.a * p * p + f.b * p * q + f.c * q * q;
    mpz_class B = 2 * f.a * p * r + f.b * (p * s + q * r) + 2 * f.c * q * s;
    mpz_class C = f.a * r * r + f.b * r * s + f.c * s * s;
    return {A, B, C};
}

// an equivalent form whose leading coefficient is coprime to m
QuadForm qf_coprime_rep(const QuadForm& f, const mpz_class& m) {
    mpz_class g;
    for (long y = 0; y < 64; ++y) {
        for (long x = -y - 1; x <= y + 1; ++x) {
            mpz_class X = x, Y = y;
            mpz_class gxy;
            mpz_gcd(gxy.get_mpz_t(), X.get_mpz_t(), Y.get_mpz_t());
            if (gxy != 1) continue;
            mpz_class val = f.a * X * X + f.b * X * Y + f.c * Y * Y;
            mpz_gcd(g.get_mpz_t(), val.get_mpz_t(), m.get_mpz_t());
            if (g == 1) {
                // extend (X, Y) to a unimodular matrix (X r; Y s)
                mpz_class r, s, d;
                mpz_gcdext(d.get_mpz_t(), s.get_mpz_t(), r.get_mpz_t(),
                           X.get_mpz_t(), Y.get_mpz_t());
                // X*s + Y*r = 1 -> det(X, -r; Y, s) = X s + r Y = 1
                return qf_transform(f, X, Y, -r, s);
            }
        }
    }
    throw std::logic_error("no coprime representative found");
}

}  // namespace

QuadForm qf_compose(const QuadForm& f, const QuadForm& g) {
    mpz_class D = f.disc();
    if (g.disc() != D) throw std::domain_error("discriminant mismatch");
    // replace g by an equivalent form with leading coefficient coprime to
    // 2*f.a, then the forms are united and composition is a CRT
    QuadForm h = qf_coprime_rep(g, 2 * f.a);
    const mpz_class &a1 = f.a, &b1 = f.b, &a2 = h.a, &b2 = h.b;
    // B = b1 mod 2a1, B = b2 mod 2a2, gcd(2a1, 2a2) = 2 and b1 = b2 mod 2
    mpz_class k, inv;
    mpz_class step = (b2 - b1) / 2;  // solve a1 * k = step mod a2
    if (mpz_invert(inv.get_mpz_t(), a1.get_mpz_t(), a2.get_mpz_t()) == 0)
        throw std::logic_error("composition: not coprime");
    k = (step % a2) * inv % a2;
    mpz_class B = b1 + 2 * a1 * k;
    mpz_class A = a1 * a2;
    mpz_class C = (B * B - D) / (4 * A);
    return qf_reduce({A, B, C});
}

QuadForm qf_pow(const QuadForm& f, unsigned long e) {
    QuadForm r = qf_identity(f.disc());
    QuadForm base = qf_reduce(f);
    while (e) {
        if (e & 1) r = qf_compose(r, base);
        base = qf_compose(base, base);
        e >>= 1;
    }
    return r;
}

unsigned long qf_order(const QuadForm& f) {
    QuadForm id = qf_identity(f.disc());
    QuadForm x = qf_reduce(f);
    unsigned long n = 1;
    while (!(x == id)) {
        x = qf_compose(x, f);
        ++n;
        if (n > 100000) throw std::logic_error("order: runaway");
    }
    return n;
}

std::vector<QuadForm> qf_reduced_forms(const mpz_class& D) {
    if (D >= 0) throw std::domain_error("discriminant must be negative");
    mpz_class r = D % 4;
    if (r < 0) r += 4;
    if (!(r == 0 || r == 1)) throw std::domain_error("not a discriminant");
    std::vector<QuadForm> out;
    // |b| <= a <= c and b^2 - 4ac = D give b^2 <= -D/3
    mpz_class bmax;
    mpz_sqrt(bmax.get_mpz_t(), mpz_class(-D / 3).get_mpz_t());
    for (mpz_class b = (D % 2 == 0) ? 0 : 1; b <= bmax; b += 2) {
        mpz_class m = (b * b - D) / 4;  // = a*c
        for (mpz_class a = std::max(b, mpz_class(1)); a * a <= m; ++a) {
            if (m % a != 0) continue;
            mpz_class c = m / a;
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
            if (g != 1) continue;
            out.push_back({a, b, c});
            if (b != 0 && a != b && a != c) out.push_back({a, -b, c});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<QuadForm> qf_span(const mpz_class& D, const std::vector<QuadForm>& gens) {
    std::set<QuadForm> seen;
    seen.insert(qf_identity(D));
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<QuadForm> cur(seen.begin(), seen.end());
        for (const auto& x : cur)
            for (const auto& g : gens) {
                QuadForm y = qf_compose(x, g);
                if (seen.insert(y).second) grew = true;
            }
    }
    return {seen.begin(), seen.end()};
}

}  // namespace hct
