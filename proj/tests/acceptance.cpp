// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Run via ctest or directly.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <vector>

#include "hct/enumerate.hpp"
#include "hct/parse.hpp"

using namespace hct;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double secs_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int idx, const char* name, bool pass, const std::string& detail) {
    std::printf("criterion %d %-28s %s  (%s)\n", idx, name,
                pass ? "PASS" : "FAIL", detail.c_str());
    if (!pass) ++failures;
}

NumberField QQ = NumberField::rationals();

PlaceSet places(std::initializer_list<long> primes) {
    std::vector<PrimeIdeal> v;
    for (long p : primes) v.push_back(places_above(QQ, p)[0]);
    return PlaceSet(QQ, v);
}

// ---- 1: transformation laws ------------------------------------------------

void criterion1() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(20260808);
    auto rnd = [&](long w) { return (long)(rng() % (2 * w + 1)) - w; };
    unsigned long violations = 0, done_pull = 0, done_scale = 0, done_hom = 0,
                  done_cov = 0;
    const unsigned long N = 1000;

    while (done_pull < N || done_scale < N || done_hom < N || done_cov < N) {
        unsigned n = 2 + (unsigned)(rng() % 5);
        std::vector<mpq_class> bc(n + 1);
        bool all0 = true;
        for (auto& c : bc) {
            c = mpq_class(rnd(99));
            if (c != 0) all0 = false;
        }
        if (all0) bc[0] = 1;
        BinaryForm G = BinaryForm::from_q(n, bc);

        if (done_pull < N) {
            GL2Matrix psi =
                GL2Matrix::from_z(rnd(9), rnd(9), rnd(9), rnd(9));
            if (!psi.det().is_zero()) {
                if (!disc_transform_check(psi, G)) ++violations;
                ++done_pull;
            }
        }
        if (done_scale < N) {
            mpq_class alpha(rnd(99), 1 + (long)(rng() % 99));
            alpha.canonicalize();
            if (alpha != 0) {
                if (!disc_scaling_check(FieldElement(alpha), G)) ++violations;
                ++done_scale;
            }
        }
        if (done_hom < N) {
            int deg = 2 + (int)(rng() % 7);
            std::vector<mpq_class> pc(deg + 1);
            for (auto& c : pc) c = mpq_class(rnd(50));
            if (pc[deg] == 0) pc[deg] = 1;
            Poly f = Poly::from_q(pc);
            if (!(disc_form(homogenize(f, deg)) == disc_poly(f))) ++violations;
            ++done_hom;
        }
        if (done_cov < N) {
            std::vector<mpq_class> mc{mpq_class(rnd(9)), mpq_class(rnd(9)),
                                      mpq_class(rnd(9)), 1};
            Poly fm = Poly::from_q(mc);
            if (separable(fm)) {
                WeierstrassModel m(1, fm, BaseRing::integers(QQ));
                GL2Matrix phi =
                    GL2Matrix::from_z(rnd(4), rnd(4), rnd(4), rnd(4));
                mpq_class lam(rnd(6), 1 + (long)(rng() % 5));
                if (!phi.det().is_zero() && lam != 0) {
                    try {
                        WeierstrassModel out =
                            change_variables(m, phi, FieldElement(lam));
                        if (!discriminant_law_holds(m, out, phi,
                                                    FieldElement(lam)))
                            ++violations;
                        ++done_cov;
                    } catch (const std::domain_error&) {
                        // degenerate image polynomial; retry
                    } catch (const std::logic_error&) {
                        ++violations;
                        ++done_cov;
                    }
                }
            }
        }
    }
    double dt = secs_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof buf, "4x%lu exact checks, %lu violations, %.1fs",
                  N, violations, dt);
    report(1, "transformation-laws", violations == 0 && dt < 60.0, buf);
}

// ---- 2: PID-extension guarantees -------------------------------------------

void criterion2() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    int cases = 0;
    for (unsigned long d : {5ul, 23ul, 14ul}) {
        NumberField K = NumberField::imag_quadratic(d);
        std::vector<PlaceSet> starts{PlaceSet(K)};
        starts.push_back(PlaceSet(K, {places_above(K, 3)[0]}));
        starts.push_back(PlaceSet(K, {places_above(K, 5)[0]}));
        starts.push_back(
            PlaceSet(K, {places_above(K, 3)[0], places_above(K, 7)[0]}));
        for (const auto& S : starts) {
            auto tstart = Clock::now();
            auto st = S.stats();
            PlaceSet T = extend_to_pid(K, S);
            ++cases;
            if (s_class_number(K, T) != 1) ok = false;
            long lam_floor = (long)std::floor(st.lambda_S + 1e-9);
            if (T.size() - S.size() > lam_floor) ok = false;
            mpz_class bound;
            mpz_sqrt(bound.get_mpz_t(), K.disc_abs().get_mpz_t());
            mpz_class added = 1;
            for (const auto& v : T.places()) {
                if (S.contains(v)) continue;
                if (v.norm > bound) ok = false;
                added *= v.norm;
            }
            // N_T <= N_S D_K^{lambda/2}: squared exact integer comparison
            if (added * added > pow_z(K.disc_abs(), (unsigned long)lam_floor))
                ok = false;
            if (secs_since(tstart) > 1.0) ok = false;
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d (K, S) cases, all exact, %.2fs", cases,
                  secs_since(t0));
    report(2, "pid-extension-guarantees", ok, buf);
}

// ---- 3: certified bound calculator ------------------------------------------

void criterion3() {
    auto t0 = Clock::now();
    bool ok = true;
    BoundInputs in = BoundInputs::from(QQ, places({2}), 1);
    CertLog v = theorem_bound_i(in, 128);
    // independent high-precision value of 360 ln 72 + 18 ln 2
    CertLog ref = CertLog::log_z(72, 512).mul_z(360) +
                  CertLog::log_z(2, 512).mul_z(18);
    if (!v.contains(ref)) ok = false;
    if (v.rel_width() >= 1e-20) ok = false;
    if (std::abs(v.to_log10().lo_d() - 674.06) > 0.01) ok = false;

    // every formula: the 256-bit value lands inside the 128-bit interval
    BoundInputs full = in;
    full.c6 = 3;
    full.c7 = 1;
    full.kappa = 1;
    auto inside = [&](const CertLog& a, const CertLog& b) {
        if (!a.contains(b)) ok = false;
    };
    inside(theorem_bound_i(full, 128), theorem_bound_i(full, 256));
    inside(theorem_bound_ii(full, 128), theorem_bound_ii(full, 256));
    inside(corollary_count_bound(full, 128), corollary_count_bound(full, 256));
    inside(wp_count_bound(full, 128), wp_count_bound(full, 256));
    inside(faltings_bound(full, 128), faltings_bound(full, 256));
    inside(count_via_heightbox(theorem_bound_i(full, 128), 1, 1),
           count_via_heightbox(theorem_bound_i(full, 256), 1, 1));
    CertLog n128 = CertLog::log_z(2, 128), n256 = CertLog::log_z(2, 256);
    inside(propgeom_disc_bound(1, 1, 1, 1, n128),
           propgeom_disc_bound(1, 1, 1, 1, n256));
    inside(effgen_bound(2, 1, 1, n128), effgen_bound(2, 1, 1, n256));
    inside(regulator_bound(2, 20, n128, 128), regulator_bound(2, 20, n256, 256));
    inside(omega_gyoryyu(6, 1, 1, 2, regulator_bound(1, 20, n128, 128), 1),
           omega_gyoryyu(6, 1, 1, 2, regulator_bound(1, 20, n256, 256), 1));
    inside(omega_evgy(4, 1, 1, 2, 20, 3, 1, 128),
           omega_evgy(4, 1, 1, 2, 20, 3, 1, 256));
    inside(propeff_i_bound(3, 1, 1, 2, 1, CertLog::exact_ui(5, 128), 128),
           propeff_i_bound(3, 1, 1, 2, 1, CertLog::exact_ui(5, 256), 256));
    TGuarantees g128 = t_guarantees(full, 128), g256 = t_guarantees(full, 256);
    inside(g128.t_bound, g256.t_bound);
    inside(g128.N_T_bound, g256.N_T_bound);
    inside(g128.p_T_bound, g256.p_T_bound);

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "interval brackets 360ln72+18ln2, width %.1e, %.2fs",
                  v.rel_width(), secs_since(t0));
    report(3, "certified-bounds", ok, buf);
}

// ---- 4: U-reduction ----------------------------------------------------------

void criterion4() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(424242);
    unsigned long violations = 0;
    std::vector<std::vector<long>> tsets{{2}, {2, 3}, {2, 3, 5}, {2, 3, 5, 7}};
    std::vector<UnitBasisU> bases;
    for (const auto& ts : tsets) {
        std::vector<PrimeIdeal> v;
        for (long p : ts) v.push_back(places_above(QQ, p)[0]);
        bases.push_back(UnitBasisU::make(QQ, PlaceSet(QQ, v), 1, true));
    }
    const long m = 12;
    mpfr_prec_t prec = 128;
    for (int t = 0; t < 1000; ++t) {
        const auto& basis = bases[rng() % bases.size()];
        mpq_class x(rng() % 2 ? 1 : -1);
        for (const auto& v : basis.T.places()) {
            long e = (long)(rng() % 81) - 40;
            x *= pow_q(mpq_class(v.ell), e);
        }
        try {
            auto r = u_reduce(FieldElement(x), basis);
            for (long e : r.exponents)
                if (e < 0 || e >= m) ++violations;
            if (!(r.reduced == FieldElement(x) * r.omega.pow(m))) ++violations;
            // height against the closed-form bound, checked here as well
            CertLog n_T = CertLog::exact_ui(1, prec);
            for (const auto& v : basis.T.places())
                n_T = n_T * CertLog::log_z(v.norm, prec);
            CertLog bound = propgeom_disc_bound(1, basis.T.size(), 1, 1, n_T);
            Height h = height(r.reduced);
            CertLog hv = CertLog::log_q(h.exp2h(), prec).mul_q(mpq_class(1, 2));
            if (!hv.certainly_leq(bound)) ++violations;
        } catch (const std::exception&) {
            ++violations;
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "1000 reductions, %lu violations, %.2fs",
                  violations, secs_since(t0));
    report(4, "u-reduction", violations == 0, buf);
}

// ---- 5: reduction idempotence and orbits -------------------------------------

void criterion5() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(55555);
    auto rnd = [&](long w) { return (long)(rng() % (2 * w + 1)) - w; };
    unsigned long bad = 0;
    PlaceSet T = places({2});

    // 1000 monic polynomials through the unipotent reduction
    int done = 0;
    while (done < 1000) {
        int deg = 3 + (int)(rng() % 3);
        std::vector<mpq_class> c(deg + 1);
        for (auto& x : c) x = mpq_class(rnd(200));
        c[deg] = 1;
        Poly f = Poly::from_q(c);
        if (!separable(f)) continue;
        auto r = unipotent_reduce(f, T);
        if (!(disc_poly(r.f) == disc_poly(f))) ++bad;
        auto r2 = unipotent_reduce(r.f, T);
        if (!(r2.f == r.f) || !(r2.tau == FieldElement(mpq_class(0)))) ++bad;
        ++done;
    }

    // 1000 binary forms through the covariant reduction, with orbit checks
    done = 0;
    while (done < 1000) {
        unsigned n = 3 + (unsigned)(rng() % 3);
        std::vector<mpq_class> c(n + 1);
        bool all0 = true;
        for (auto& x : c) {
            x = mpq_class(rnd(8));
            if (x != 0) all0 = false;
        }
        if (all0) continue;
        BinaryForm F = BinaryForm::from_q(n, c);
        if (disc_form(F).is_zero()) continue;
        auto r = sl2_reduce_form(F);
        if (!(disc_form(r.reduced) == disc_form(F))) ++bad;
        auto rr = sl2_reduce_form(r.reduced);
        if (!(rr.reduced == r.reduced)) ++bad;
        if (!(rr.phi == GL2Matrix::identity(QQ))) ++bad;
        // two random SL2(Z) translates reduce to the same canonical form
        GL2Matrix W1 = GL2Matrix::from_z(1, rnd(3), 0, 1) *
                       GL2Matrix::from_z(0, 1, -1, 0) *
                       GL2Matrix::from_z(1, rnd(3), 0, 1);
        GL2Matrix W2 = GL2Matrix::from_z(1, rnd(4), 0, 1);
        auto r1 = sl2_reduce_form(pullback(W1, F));
        auto r2 = sl2_reduce_form(pullback(W2, F));
        if (!(r1.reduced == r.reduced) || !(r2.reduced == r.reduced)) ++bad;
        ++done;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "2000 reductions + orbits, %lu failures, %.1fs",
                  bad, secs_since(t0));
    report(5, "reduction-idempotence", bad == 0, buf);
}

// ---- 6: S-unit oracle ----------------------------------------------------------

void criterion6() {
    auto t0 = Clock::now();
    bool ok = true;
    auto sols = solve_sunit_equation(places({2}), std::log(4.0));
    std::set<std::pair<std::string, std::string>> got;
    for (const auto& s : sols) got.insert({q_to_string(s.x), q_to_string(s.y)});
    std::set<std::pair<std::string, std::string>> want{
        {"2", "-1"}, {"-1", "2"}, {"1/2", "1/2"}};
    if (got != want) ok = false;

    // independent double-loop search over both exponent boxes for T = {2, 3}
    double bound = std::log(10.0);
    std::set<std::pair<std::string, std::string>> independent;
    long e2 = (long)(bound / std::log(2.0)), e3 = (long)(bound / std::log(3.0));
    for (int sx = -1; sx <= 1; sx += 2)
        for (long a2 = -e2; a2 <= e2; ++a2)
            for (long a3 = -e3; a3 <= e3; ++a3)
                for (int sy = -1; sy <= 1; sy += 2)
                    for (long b2 = -e2; b2 <= e2; ++b2)
                        for (long b3 = -e3; b3 <= e3; ++b3) {
                            mpq_class x = sx * pow_q(mpq_class(2), a2) *
                                          pow_q(mpq_class(3), a3);
                            mpq_class y = sy * pow_q(mpq_class(2), b2) *
                                          pow_q(mpq_class(3), b3);
                            if (x + y != 1) continue;
                            mpz_class xn = abs(x.get_num());
                            mpz_class xm = std::max(xn, mpz_class(x.get_den()));
                            mpz_class yn = abs(y.get_num());
                            mpz_class ym = std::max(yn, mpz_class(y.get_den()));
                            if (std::log(xm.get_d()) > bound + 1e-9) continue;
                            if (std::log(ym.get_d()) > bound + 1e-9) continue;
                            independent.insert(
                                {q_to_string(x), q_to_string(y)});
                        }
    auto s23 = solve_sunit_equation(places({2, 3}), bound);
    std::set<std::pair<std::string, std::string>> got23;
    for (const auto& s : s23) got23.insert({q_to_string(s.x), q_to_string(s.y)});
    if (got23 != independent) ok = false;

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "T={2}: %zu solutions; T={2,3}: %zu vs oracle %zu; %.2fs",
                  got.size(), got23.size(), independent.size(), secs_since(t0));
    report(6, "s-unit-oracle", ok, buf);
}

// ---- 7: catalog reproduction ----------------------------------------------------

void criterion7() {
    auto t0 = Clock::now();
    bool ok = true;

    SearchSpec spec;
    spec.genus = 1;
    spec.S_primes = {2};
    spec.box = 200;
    spec.degrees = {3};
    Catalog cat = enumerate_curves(spec);
    double t_single = secs_since(t0);

    auto oracle = oracle_enumerate_g1({2}, 200);
    if (cat.records.size() != 24) ok = false;
    if (oracle.size() != 24) ok = false;

    // exact agreement of the class sets
    std::vector<std::pair<mpq_class, mpq_class>> rec_pairs;
    for (const auto& r : cat.records) {
        if (r.tier != "exact" || r.fingerprint.size() != 3) {
            ok = false;
            continue;
        }
        rec_pairs.emplace_back(mpq_class(mpz_class(r.fingerprint[1])),
                               mpq_class(mpz_class(r.fingerprint[2])));
    }
    size_t matched = 0;
    for (const auto& o : oracle) {
        std::vector<mpq_class> c{mpq_class(o.a0), mpq_class(o.a1),
                                 mpq_class(o.a2), 1};
        auto [A, B] = depressed_pair(Poly::from_q(c));
        size_t hits = 0;
        for (const auto& rp : rec_pairs)
            if (is_isomorphic_g1(rp.first, rp.second, A, B)) ++hits;
        if (hits == 1) ++matched;
    }
    if (matched != oracle.size()) ok = false;

    // parallel run is byte-identical after merging
    SearchSpec par = spec;
    par.jobs = 4;
    Catalog cat_par = enumerate_curves(par);
    if (cat.dump_jsonl(false) != cat_par.dump_jsonl(false)) ok = false;

    if (t_single >= 300.0) ok = false;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%zu classes (oracle %zu, matched %zu), %.1fs single-thread",
                  cat.records.size(), oracle.size(), matched, t_single);
    report(7, "catalog-reproduction", ok, buf);
}

// ---- 8: denominator clearing ------------------------------------------------------

void criterion8() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(88888);
    PlaceSet T = places({2, 3});
    unsigned long violations = 0;
    int done = 0;
    while (done < 100) {
        int deg = 3 + (int)(rng() % 2);
        std::vector<mpq_class> c(deg + 1);
        for (auto& x : c) {
            long num = (long)(rng() % 41) - 20;
            x = mpq_class(num);
            for (unsigned long i = rng() % 4; i; --i) x /= 2;
            for (unsigned long i = rng() % 3; i; --i) x /= 3;
            x.canonicalize();
        }
        c[deg] = 1;
        Poly f = Poly::from_q(c);
        if (!separable(f)) continue;
        try {
            auto r = clear_denominators(f, T, 1);
            for (const auto& x : r.f.coeffs())
                if (!x.is_integral()) ++violations;
            mpz_class w = r.omega.a().get_num();
            if (r.omega.a().get_den() != 1) ++violations;
            remove_factor(w, 2);
            remove_factor(w, 3);
            if (w != 1) ++violations;
            unsigned n = (unsigned)deg;
            if (!poly_height(r.f).leq_times(4 * n * n, poly_height(f)))
                ++violations;
        } catch (const std::exception&) {
            ++violations;
        }
        ++done;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "100 clearings, %lu violations, %.2fs",
                  violations, secs_since(t0));
    report(8, "denominator-clearing", violations == 0, buf);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria failed\n", failures);
    return failures;
}
