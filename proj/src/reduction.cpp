#include "hct/reduction.hpp"

#include <algorithm>
#include <complex>
#include <map>
#include <set>

namespace hct {

unsigned long UnitBasisU::window_for(unsigned g, bool odd_degree_monic) {
    unsigned long gg = g;
    return odd_degree_monic ? 4 * gg * (2 * gg + 1) : 4 * (gg + 1) * (2 * gg + 1);
}

UnitBasisU UnitBasisU::make(const NumberField& K, const PlaceSet& T, unsigned g,
                            bool odd_degree_monic) {
    return {T, sunit_group(K, T), window_for(g, odd_degree_monic), g};
}

UReduction u_reduce(const FieldElement& delta, const UnitBasisU& basis) {
    const NumberField& K = basis.T.field();
    if (delta.is_zero()) throw std::domain_error("zero is not a unit");
    FieldElement x = K.is_rationals() ? delta : FieldElement(K, delta.a(), delta.b());

    // exponent of each generator: v(delta) / m_v at its place
    const auto& places = basis.T.places();
    std::vector<long> raw(places.size(), 0);
    for (size_t i = 0; i < places.size(); ++i) {
        long val = valuation(x, places[i]);
        long mv = (long)basis.units.class_orders[i];
        if (val % mv != 0)
            throw std::domain_error(
                "unit outside the span of the generating system");
        raw[i] = val / mv;
    }
    // residual torsion part
    FieldElement rho = x;
    for (size_t i = 0; i < places.size(); ++i)
        rho = rho / basis.units.gens[i].pow(raw[i]);
    long r = -1;
    FieldElement zp(K, 1, 0);
    for (unsigned long k = 0; k < basis.units.torsion_order; ++k) {
        if (rho == zp) {
            r = (long)k;
            break;
        }
        zp = zp * basis.units.zeta;
    }
    if (r < 0) throw std::domain_error("input is not a T-unit");

    long m = (long)basis.window_m;
    UReduction out;
    out.exponents.resize(places.size());
    FieldElement omega(K, 1, 0);
    for (size_t i = 0; i < places.size(); ++i) {
        long q = raw[i] >= 0 ? raw[i] / m : -(((-raw[i]) + m - 1) / m);
        out.exponents[i] = raw[i] - m * q;
        omega = omega * basis.units.gens[i].pow(-q);
    }
    out.torsion_exponent = r;
    out.omega = omega;
    out.reduced = x * omega.pow(m);

    // reconstruction and window checks
    for (long e : out.exponents)
        if (e < 0 || e >= m) throw std::logic_error("exponent outside window");
    FieldElement check = basis.units.zeta.pow(out.torsion_exponent);
    for (size_t i = 0; i < places.size(); ++i)
        check = check * basis.units.gens[i].pow(out.exponents[i]);
    if (!(check == out.reduced)) throw std::logic_error("reconstruction failed");

    // height of the reduced unit against the closed-form bound
    mpfr_prec_t prec = 128;
    CertLog n_T = CertLog::exact_ui(1, prec);
    for (const auto& v : places) n_T = n_T * CertLog::log_z(v.norm, prec);
    if (places.empty()) n_T = CertLog::exact_ui(1, prec);
    CertLog bound = propgeom_disc_bound(basis.g, (long)places.size(), K.degree(),
                                        K.disc_abs(), n_T);
    Height h = height(out.reduced);
    CertLog hval = CertLog::log_q(h.exp2h(), prec).mul_q(mpq_class(1, 2));
    if (!hval.certainly_leq(bound))
        throw std::logic_error("reduced height exceeds the closed-form bound");
    return out;
}

WeierstrassModel twist_model(const WeierstrassModel& m, const FieldElement& omega) {
    if (omega.is_zero()) throw std::domain_error("omega must be a unit");
    BaseRing R = m.ring();
    if (!R.is_unit(omega)) throw std::domain_error("omega is not a T-unit");
    unsigned g = m.genus();
    long n = m.f().degree();
    long e = (n == (long)(2 * g + 1)) ? (long)(4 * g + 2) : (long)(4 * g + 4);
    FieldElement om2 = omega * omega;
    Poly f = m.f().scale_arg(om2.inverse()) * omega.pow(e);
    WeierstrassModel out(g, f, R);
    // discriminant law: factor omega^{4g(2g+1)} (odd) or omega^{4(g+1)(2g+1)}
    long de = (n == (long)(2 * g + 1)) ? 4 * (long)g * (2 * (long)g + 1)
                                       : 4 * ((long)g + 1) * (2 * (long)g + 1);
    if (!(out.disc() == m.disc() * omega.pow(de)))
        throw std::logic_error("twist discriminant law violated");
    return out;
}

namespace {

// nearest integer; exact-half ties round toward zero
mpz_class round_half_to_zero(const mpq_class& x) {
    mpq_class twice = 2 * x;
    if (twice.get_den() == 1 && twice.get_num() % 2 != 0) {
        mpz_class t;
        mpz_tdiv_q(t.get_mpz_t(), x.get_num().get_mpz_t(),
                   x.get_den().get_mpz_t());
        return t;
    }
    mpq_class sh = x + mpq_class(1, 2);
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), sh.get_num().get_mpz_t(),
               sh.get_den().get_mpz_t());
    return fl;
}

}  // namespace

UnipotentReduction unipotent_reduce(const Poly& f, const PlaceSet& T0) {
    (void)T0;
    int n = f.degree();
    if (n < 3) throw std::domain_error("degree must be >= 3");
    if (!f.is_monic()) throw std::domain_error("polynomial must be monic");
    if (!separable(f)) throw std::domain_error("inseparable polynomial");
    const NumberField& K = f.field();
    FieldElement c1 = f.coeff(n - 1);
    mpq_class target_a = -c1.a() / n, target_b = -c1.b() / n;
    mpz_class ta = round_half_to_zero(target_a);
    mpz_class tb = round_half_to_zero(target_b);
    FieldElement tau(K, mpq_class(ta), mpq_class(tb));
    Poly g = f.translate(tau);
    if (!(disc_poly(g) == disc_poly(f)))
        throw std::logic_error("translation changed the discriminant");
    return {tau, g};
}

namespace {

// ---- covariant reduction ----------------------------------------------

using cplx = std::complex<long double>;

std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs, int iters) {
    // Durand-Kerner; coeffs[i] multiplies x^i, leading nonzero
    int n = (int)coeffs.size() - 1;
    cplx lead = coeffs[n];
    std::vector<cplx> c(coeffs);
    for (auto& x : c) x /= lead;
    std::vector<cplx> r(n);
    cplx seed(0.4L, 0.9L);
    cplx p(1.0L, 0.0L);
    for (int i = 0; i < n; ++i) {
        p *= seed;
        r[i] = p;
    }
    auto eval = [&](cplx x) {
        cplx v = c[n];
        for (int i = n - 1; i >= 0; --i) v = v * x + c[i];
        return v;
    };
    for (int it = 0; it < iters; ++it) {
        long double moved = 0;
        for (int i = 0; i < n; ++i) {
            cplx denom(1.0L, 0.0L);
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= (r[i] - r[j]);
            cplx delta = eval(r[i]) / denom;
            r[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-24L) break;
    }
    return r;
}

struct QuadCov {
    mpq_class A, B, C;  // exact dyadic snapshot of the positive covariant
};

// exact dyadic rational of a long double
mpq_class dyadic_of(long double v) {
    if (v == 0.0L) return mpq_class(0);
    int e;
    long double m = frexpl(v, &e);  // |m| in [1/2, 1)
    long mi = (long)llroundl(m * 9007199254740992.0L);  // 2^53
    mpq_class r{mpz_class(mi)};
    int shift = e - 53;
    if (shift >= 0)
        r *= mpq_class(pow_z(2, (unsigned long)shift));
    else
        r /= mpq_class(pow_z(2, (unsigned long)(-shift)));
    r.canonicalize();
    return r;
}

// Stoll-Cremona type root covariant of F (deg n, X^n coefficient nonzero)
bool root_covariant(const BinaryForm& F, int iters, QuadCov& out) {
    Poly f = F.dehomogenize();
    int n = f.degree();
    if (n < 3) return false;
    std::vector<cplx> c(n + 1);
    for (int i = 0; i <= n; ++i) {
        const FieldElement& x = f.coeff(i);
        long double re = (long double)x.a().get_d();
        long double im = 0;
        if (!x.field().is_rationals() && x.b() != 0)
            im = (long double)x.b().get_d() * sqrtl((long double)x.field().d());
        c[i] = cplx(re, im);
    }
    auto roots = poly_roots(c, iters);
    // f'(theta) via the product over the other roots
    long double A = 0, B = 0, C = 0;
    for (int i = 0; i < n; ++i) {
        cplx fp = c[n];
        for (int j = 0; j < n; ++j)
            if (j != i) fp *= (roots[i] - roots[j]);
        long double w = powl(std::abs(fp), -2.0L / (n - 2));
        if (!std::isfinite((double)w) || w <= 0) return false;
        // |x - theta y|^2 = x^2 - 2 Re(theta) xy + |theta|^2 y^2
        A += w;
        B += -2.0L * roots[i].real() * w;
        C += std::norm(roots[i]) * w;
    }
    out.A = dyadic_of(A);
    out.B = dyadic_of(B);
    out.C = dyadic_of(C);
    if (out.A <= 0) return false;
    if (out.B * out.B - 4 * out.A * out.C >= 0) return false;
    return true;
}

QuadCov quad_pullback_entries(const QuadCov& q, long p, long qq, long r, long s);

// covariant of a form whose leading coefficient may vanish: shear to finite
// roots, then pull the quadratic back (the covariant is equivariant)
bool covariant_any(const BinaryForm& F, int iters, QuadCov& out) {
    if (!F.coeff(0).is_zero()) return root_covariant(F, iters, out);
    const NumberField& K = F.field();
    for (long s = 1; s <= (long)F.degree() + 1; ++s) {
        GL2Matrix shear{FieldElement(K, 1, 0), FieldElement(K, 0, 0),
                        FieldElement(K, mpq_class(s), 0), FieldElement(K, 1, 0)};
        BinaryForm G = pullback(shear, F);
        if (G.coeff(0).is_zero()) continue;
        QuadCov qg;
        if (!root_covariant(G, iters, qg)) return false;
        // q_F(v) = q_G(shear^{-1} v), shear^{-1} = (1 0; -s 1)
        out = quad_pullback_entries(qg, 1, -s, 0, 1);
        return true;
    }
    return false;
}

// Gauss-reduce the positive quadratic (A, B, C) accumulating U in SL2(Z);
// the accumulation matches the right action of pullback()
void gauss_reduce_quad(QuadCov q, mpz_class za[4]) {
    mpz_class u0 = 1, u1 = 0, u2 = 0, u3 = 1;
    for (int it = 0; it < 512; ++it) {
        // translation: (x, y) -> (x - k y, y) with k = round(B / 2A)
        mpz_class k = round_half_to_zero(q.B / (2 * q.A));
        if (k != 0) {
            q.C = q.A * k * k - q.B * k + q.C;
            q.B = q.B - 2 * q.A * k;
            u1 = u1 - k * u0;
            u3 = u3 - k * u2;
        }
        if (q.A <= q.C) break;
        // swap: (A, B, C) -> (C, -B, A)
        std::swap(q.A, q.C);
        q.B = -q.B;
        mpz_class n0 = u1, n1 = -u0, n2 = u3, n3 = -u2;
        u0 = n0;
        u1 = n1;
        u2 = n2;
        u3 = n3;
    }
    za[0] = u0;
    za[1] = u1;
    za[2] = u2;
    za[3] = u3;
}

// exact deterministic key: (max coeff norm, sum of coeff norms, lex)
struct FormKey {
    mpq_class maxn, sum;
    std::vector<std::pair<mpq_class, mpq_class>> lex;

    static FormKey of(const BinaryForm& F) {
        FormKey k;
        k.maxn = 0;
        k.sum = 0;
        for (const auto& c : F.coeffs()) {
            mpq_class n = c.norm();
            if (n > k.maxn) k.maxn = n;
            k.sum += n;
            k.lex.emplace_back(c.a(), c.b());
        }
        return k;
    }
    bool operator<(const FormKey& o) const {
        if (maxn != o.maxn) return maxn < o.maxn;
        if (sum != o.sum) return sum < o.sum;
        return lex < o.lex;
    }
    bool operator==(const FormKey& o) const {
        return maxn == o.maxn && sum == o.sum && lex == o.lex;
    }
};

struct Candidate {
    BinaryForm form;
    GL2Matrix transform;
};

// transform the quadratic q by the integer matrix (p r; q s): q(px+ry, qx+sy)
QuadCov quad_pullback(const QuadCov& q, const mpz_class& p, const mpz_class& qq,
                      const mpz_class& r, const mpz_class& s) {
    QuadCov out;
    out.A = q.A * p * p + q.B * p * qq + q.C * qq * qq;
    out.B = 2 * q.A * p * r + q.B * (p * s + r * qq) + 2 * q.C * qq * s;
    out.C = q.A * r * r + q.B * r * s + q.C * s * s;
    return out;
}

QuadCov quad_pullback_entries(const QuadCov& q, long p, long qq, long r, long s) {
    return quad_pullback(q, mpz_class(p), mpz_class(qq), mpz_class(r),
                         mpz_class(s));
}

bool quad_nearly_reduced(const QuadCov& q, const mpq_class& tol) {
    // |B| <= A (1 + tol) and A <= C (1 + tol)
    mpq_class slackA = q.A * (1 + tol), slackC = q.C * (1 + tol);
    return abs(q.B) <= slackA && q.A <= slackC;
}

// Canonical representative: the plateau of unimodular images whose covariant
// quadratic stays reduced (within tolerance) is intrinsic to the orbit; the
// exact key picks one member deterministically.
Candidate plateau_canonical(const Candidate& reduced, const QuadCov& q_reduced) {
    GL2Matrix S = GL2Matrix::from_z(0, 1, -1, 0);
    GL2Matrix T = GL2Matrix::from_z(1, 1, 0, 1);
    GL2Matrix Ti = GL2Matrix::from_z(1, -1, 0, 1);
    bool odd = reduced.form.degree() % 2 != 0;
    GL2Matrix mi = GL2Matrix::from_z(-1, 0, 0, -1);

    auto normalize_sign = [&](Candidate c) {
        if (!odd) return c;
        Candidate alt{pullback(mi, c.form), c.transform * mi};
        return FormKey::of(alt.form) < FormKey::of(c.form) ? alt : c;
    };

    // the covariant snapshot carries float noise; the tolerance must
    // dominate it while staying far below genuine interior gaps
    mpq_class tol(1, 1000);

    struct Node {
        Candidate cand;
        QuadCov q;
        mpz_class m[4];
    };
    std::vector<Node> frontier;
    Node start{normalize_sign(reduced), q_reduced, {1, 0, 0, 1}};
    frontier.push_back(start);
    Candidate best = start.cand;
    FormKey bestk = FormKey::of(best.form);
    std::set<std::vector<std::pair<mpq_class, mpq_class>>> seen;
    seen.insert(bestk.lex);

    for (int depth = 0; depth < 4; ++depth) {
        std::vector<Node> next;
        for (const auto& node : frontier) {
            for (const auto& M : {S, T, Ti}) {
                mpz_class p = node.m[0] * M.a.a().get_num() +
                              node.m[1] * M.c.a().get_num();
                mpz_class r = node.m[0] * M.b.a().get_num() +
                              node.m[1] * M.d.a().get_num();
                mpz_class qq = node.m[2] * M.a.a().get_num() +
                               node.m[3] * M.c.a().get_num();
                mpz_class s = node.m[2] * M.b.a().get_num() +
                              node.m[3] * M.d.a().get_num();
                QuadCov nq = quad_pullback(q_reduced, p, qq, r, s);
                if (!quad_nearly_reduced(nq, tol)) continue;
                Candidate c{pullback(M, node.cand.form),
                            node.cand.transform * M};
                c = normalize_sign(c);
                FormKey k = FormKey::of(c.form);
                if (!seen.insert(k.lex).second) continue;
                if (k < bestk) {
                    best = c;
                    bestk = k;
                }
                Node nn{c, nq, {p, r, qq, s}};
                next.push_back(nn);
            }
        }
        frontier = std::move(next);
    }
    return best;
}

// fallback when no covariant is available: bounded key descent
Candidate exact_descent(const Candidate& start) {
    GL2Matrix S = GL2Matrix::from_z(0, 1, -1, 0);
    GL2Matrix T = GL2Matrix::from_z(1, 1, 0, 1);
    GL2Matrix Ti = GL2Matrix::from_z(1, -1, 0, 1);
    bool odd = start.form.degree() % 2 != 0;
    GL2Matrix mi = GL2Matrix::from_z(-1, 0, 0, -1);
    auto normalize_sign = [&](Candidate c) {
        if (!odd) return c;
        Candidate alt{pullback(mi, c.form), c.transform * mi};
        return FormKey::of(alt.form) < FormKey::of(c.form) ? alt : c;
    };
    Candidate best = normalize_sign(start);
    FormKey bestk = FormKey::of(best.form);
    for (int round = 0; round < 64; ++round) {
        std::vector<Candidate> frontier{best};
        Candidate improved = best;
        FormKey improvedk = bestk;
        for (int depth = 0; depth < 3; ++depth) {
            std::vector<Candidate> next;
            for (const auto& cand : frontier) {
                for (const auto& M : {S, T, Ti}) {
                    Candidate c{pullback(M, cand.form), cand.transform * M};
                    c = normalize_sign(c);
                    next.push_back(c);
                    FormKey k = FormKey::of(c.form);
                    if (k < improvedk) {
                        improved = c;
                        improvedk = k;
                    }
                }
            }
            frontier = std::move(next);
        }
        if (!(improvedk < bestk)) break;
        best = improved;
        bestk = improvedk;
    }
    return best;
}

}  // namespace

Sl2Reduction sl2_reduce_form(const BinaryForm& F) {
    const NumberField& K = F.field();
    if (F.degree() < 3) throw std::domain_error("form degree must be >= 3");
    FieldElement D = disc_form(F);
    if (D.is_zero()) throw std::domain_error("inseparable form");

    // make the X^n coefficient nonzero by a shear, so the roots are finite
    GL2Matrix M = GL2Matrix::identity(K);
    BinaryForm G = F;
    for (long s = 1; G.coeff(0).is_zero(); ++s) {
        if (s > (long)F.degree() + 1) throw std::logic_error("shear failed");
        GL2Matrix shear = GL2Matrix::from_z(1, 0, s, 1);
        G = pullback(shear, F);
        M = shear;
    }

    // float phase: covariant Gauss reduction; the root precision is raised
    // until the accumulated transformation stabilizes
    mpz_class za[4] = {1, 0, 0, 1}, zb[4] = {1, 0, 0, 1};
    bool have = false;
    for (int iters : {200, 400, 800}) {
        QuadCov q;
        if (!root_covariant(G, iters, q)) continue;
        gauss_reduce_quad(q, zb);
        if (have && za[0] == zb[0] && za[1] == zb[1] && za[2] == zb[2] &&
            za[3] == zb[3])
            break;
        for (int i = 0; i < 4; ++i) za[i] = zb[i];
        have = true;
    }
    GL2Matrix U{FieldElement(mpq_class(za[0])), FieldElement(mpq_class(za[1])),
                FieldElement(mpq_class(za[2])), FieldElement(mpq_class(za[3]))};
    Candidate reduced{pullback(U, G), M * U};

    // exact phase: the canonical representative is the key-least member of
    // the covariant plateau, which is intrinsic to the SL2(Z) orbit
    QuadCov q_red;
    Candidate best = covariant_any(reduced.form, 800, q_red)
                         ? plateau_canonical(reduced, q_red)
                         : exact_descent(reduced);

    if (best.form == F) best.transform = GL2Matrix::identity(K);
    if (!(pullback(best.transform, F) == best.form))
        throw std::logic_error("transform does not reproduce the reduced form");
    if (!(disc_form(best.form) == D))
        throw std::logic_error("reduction changed the discriminant");
    if (!best.transform.is_sl2())
        throw std::logic_error("transformation left SL2");
    return {best.transform, best.form};
}

std::vector<SUnitSolution> solve_sunit_equation(const PlaceSet& T,
                                                double height_bound,
                                                unsigned long max_candidates) {
    if (!T.field().is_rationals())
        throw unsupported_field("solver implemented over Q");
    std::vector<mpz_class> primes;
    for (const auto& v : T.places()) primes.push_back(v.ell);
    size_t k = primes.size();
    // |e_p| log p <= h(x) <= bound
    std::vector<long> emax(k);
    unsigned long total = 2;
    for (size_t i = 0; i < k; ++i) {
        emax[i] = (long)(height_bound / std::log(primes[i].get_d()) + 1e-12);
        unsigned long w = (unsigned long)(2 * emax[i] + 1);
        if (total > max_candidates / std::max(w, 1ul))
            throw resource_limit("exponent box too large");
        total *= w;
    }
    std::vector<SUnitSolution> out;
    std::vector<long> e(k);
    for (size_t i = 0; i < k; ++i) e[i] = -emax[i];

    auto height_ok = [&](const mpq_class& x) {
        mpz_class an = abs(x.get_num());
        mpz_class m = std::max(an, mpz_class(x.get_den()));
        // log m <= bound  (+ tiny slack for the double boundary)
        return std::log(m.get_d()) <= height_bound + 1e-9;
    };
    auto is_t_unit = [&](const mpq_class& x, std::vector<long>& exps, int& sign) {
        if (x == 0) return false;
        mpz_class n = x.get_num(), d = x.get_den();
        exps.assign(k, 0);
        for (size_t i = 0; i < k; ++i)
            exps[i] = remove_factor(n, primes[i]) - remove_factor(d, primes[i]);
        if (abs(n) != 1 || d != 1) return false;
        sign = (x > 0) ? 1 : -1;
        return true;
    };

    bool done = false;
    while (!done) {
        for (int sign = 1; sign >= -1; sign -= 2) {
            mpq_class x(sign);
            for (size_t i = 0; i < k; ++i) x *= pow_q(mpq_class(primes[i]), e[i]);
            if (!height_ok(x)) continue;
            mpq_class y = 1 - x;
            std::vector<long> ey;
            int sy;
            if (y == 0) continue;
            if (!height_ok(y)) continue;
            if (!is_t_unit(y, ey, sy)) continue;
            SUnitSolution sol;
            sol.x = x;
            sol.y = y;
            sol.sign_x = sign;
            sol.sign_y = sy;
            sol.exp_x.assign(e.begin(), e.end());
            sol.exp_y = ey;
            out.push_back(sol);
        }
        // odometer
        done = true;
        for (size_t i = 0; i < k; ++i) {
            if (e[i] < emax[i]) {
                ++e[i];
                for (size_t j = 0; j < i; ++j) e[j] = -emax[j];
                done = false;
                break;
            }
        }
        if (k == 0) break;
    }
    std::sort(out.begin(), out.end(), [](const SUnitSolution& a,
                                         const SUnitSolution& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });
    return out;
}

}  // namespace hct
