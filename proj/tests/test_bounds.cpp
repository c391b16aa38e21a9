#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hct/bounds.hpp"

using namespace hct;

namespace {

NumberField QQ = NumberField::rationals();

BoundInputs inputs_qs2_g1() {
    PlaceSet S(QQ, {places_above(QQ, 2)[0]});
    return BoundInputs::from(QQ, S, 1);
}

// reference evaluation at high precision, independent arithmetic order
CertLog reference_sum(const std::vector<std::pair<long, mpz_class>>& terms,
                      mpfr_prec_t prec) {
    // sum of k * ln(m)
    CertLog acc = CertLog::exact_ui(0, prec);
    for (const auto& [k, m] : terms)
        acc = acc + CertLog::log_z(m, prec).mul_z(k);
    return acc;
}

}  // namespace

TEST_CASE("theorem part (i)") {
    BoundInputs in = inputs_qs2_g1();
    CHECK(in.nu() == 36);
    CertLog v = theorem_bound_i(in, 128);
    // 360 ln 72 + 18 ln 2, bracketed by an independent high-precision sum
    CertLog ref = reference_sum({{360, 72}, {18, 2}}, 512);
    CHECK(v.contains(ref));
    CHECK(v.rel_width() < 1e-20);
    // log10 = 674.06 to two decimals
    CHECK(std::abs(v.to_log10().lo_d() - 674.06) < 0.01);

    // S empty: sigma = 1, value 180 ln 36
    PlaceSet S0(QQ);
    BoundInputs in0 = BoundInputs::from(QQ, S0, 1);
    CertLog v0 = theorem_bound_i(in0, 128);
    CHECK(v0.contains(reference_sum({{180, 36}}, 512)));
    CHECK(std::abs(v0.to_log10().lo_d() - 280.13) < 0.01);

    // D_K = 1 contributes exactly zero: same value with any lambda factor
    CHECK(v.to_log2().lo_d() > 0);
}

TEST_CASE("theorem part (ii)") {
    BoundInputs in = inputs_qs2_g1();
    CHECK_THROWS_AS(theorem_bound_ii(in, 128), std::domain_error);
    in.c6 = 3;
    in.c7 = 1;
    CertLog v = theorem_bound_ii(in, 128);
    // 3 * (2*36)^3 * 2^4 * ln 72 + (3*36)^3 * 2^4 * ln 2
    CertLog ref = reference_sum({{3L * 373248 * 16, 72}, {1259712L * 16, 2}}, 320);
    CHECK(v.contains(ref));
    // doubling D_K adds exactly (3 nu)^3 sigma^4 ln 2: intervals overlap
    BoundInputs in2 = in;
    in2.D_K = 2;
    CertLog v2 = theorem_bound_ii(in2, 128);
    CertLog shifted = reference_sum({{1259712L * 16, 2}}, 320) + v;
    CHECK(v2.lo_d() <= shifted.hi_d());
    CHECK(shifted.lo_d() <= v2.hi_d());
    // the p = 1 convention: empty S contributes no p term and runs fine
    BoundInputs in0 = BoundInputs::from(QQ, PlaceSet(QQ), 1);
    in0.c6 = 3;
    in0.c7 = 1;
    CHECK_NOTHROW(theorem_bound_ii(in0, 128));
}

TEST_CASE("counting bounds") {
    BoundInputs in = inputs_qs2_g1();
    CertLog wp = wp_count_bound(in, 128);
    // inner log10 = 432 log10 72 + 18 log10 2 = 807.8
    CHECK(std::abs(wp.to_log10().lo_d() - 807.79) < 0.05);
    // sigma = 1 specialization: (nu)^{6 nu}
    BoundInputs in0 = BoundInputs::from(QQ, PlaceSet(QQ), 1);
    CertLog wp0 = wp_count_bound(in0, 128);
    CHECK(wp0.contains(reference_sum({{216, 36}}, 320)));
    // monotone in g through nu
    BoundInputs ing = in;
    ing.g = 2;
    CHECK(wp_count_bound(in, 128).hi_d() < wp_count_bound(ing, 128).lo_d());

    // height-box count: Omega = 1 gives 10 d^2 g ln 5
    CertLog one = CertLog::exact_ui(0, 128);
    CertLog c = count_via_heightbox(one, 1, 1);
    CHECK(c.contains(reference_sum({{10, 5}}, 320)));
    CertLog big = count_via_heightbox(theorem_bound_i(in, 128), 1, 1);
    CHECK(big.lo_d() > 10 * 674.0 * std::log(10.0));

    // corollary: the log of the count is exp(theorem-ii value)
    in.c6 = 3;
    in.c7 = 1;
    CertLog cor = corollary_count_bound(in, 128);
    CHECK(cor.lo_d() > 1e6);
}

TEST_CASE("faltings-type bound") {
    BoundInputs in = inputs_qs2_g1();
    CertLog v = faltings_bound(in, 128);
    // leading term 2^22 * 9 * ln 2 plus part (i)
    CertLog lead = reference_sum({{(long)(1ul << 22) * 9, 2}}, 320);
    CertLog parti = theorem_bound_i(in, 256);
    CHECK(v.contains(lead + parti));
    // ratio of leading terms between g = 2 and g = 1 is 9
    BoundInputs g2 = in;
    g2.g = 2;
    double lead1 = (1ul << 22) * 9.0 * std::log(2.0);
    double lead2 = (1ul << 22) * 81.0 * std::log(2.0);
    CHECK(faltings_bound(g2, 128).lo_d() > lead2 - 1);
    CHECK(v.lo_d() > lead1 - 1);
    CHECK(v.hi_d() < lead2);
}

TEST_CASE("closed-form auxiliary bounds") {
    CertLog n2 = CertLog::log_z(2, 128);
    // (50 * 1 * 2!)^2 * 1 * ln 2 = 10^4 ln 2
    CertLog pg = propgeom_disc_bound(1, 1, 1, 1, n2);
    CertLog ref = reference_sum({{10000, 2}}, 320);
    CHECK(pg.contains(ref));
    // n_T = 1 case: plain (50 g (t+d)!)^2 (d D_K)^d
    CertLog one = CertLog::exact_ui(1, 128);
    CertLog pg1 = propgeom_disc_bound(1, 1, 1, 1, one);
    CHECK(pg1.contains(CertLog::exact_ui(10000, 320)));
    // monotone in each argument
    CHECK(pg1.hi_d() < propgeom_disc_bound(2, 1, 1, 1, one).lo_d());
    CHECK(pg1.hi_d() < propgeom_disc_bound(1, 2, 1, 1, one).lo_d());
    CHECK(pg1.hi_d() < propgeom_disc_bound(1, 1, 1, 7, one).lo_d());

    // effgen: (10 * 1!)^2 = 100; (10 * 2!)^2 = 400; linear in n
    CHECK(effgen_bound(1, 1, 1, one).contains(CertLog::exact_ui(100, 320)));
    CHECK(effgen_bound(2, 1, 1, one).contains(CertLog::exact_ui(400, 320)));
    CertLog n3 = CertLog::exact_ui(3, 128);
    CHECK(effgen_bound(1, 1, 1, n3).contains(CertLog::exact_ui(300, 320)));

    // regulator: d = 1 collapses to sqrt(D_K) * n
    CertLog r1 = regulator_bound(1, 20, one, 128);
    CertLog s20 = CertLog::exact_z(20, 320).sqrt();
    CHECK(r1.contains(s20));
    // d = 2, D_K = 20: sqrt(20) * max(4, 2 ln 20)
    CertLog r2 = regulator_bound(2, 20, one, 128);
    CertLog inner = CertLog::max_of(CertLog::exact_ui(4, 320),
                                    CertLog::log_z(20, 320).mul_z(2));
    CHECK(r2.contains(CertLog::exact_z(20, 320).sqrt() * inner));
    CHECK(r2.lo_d() < regulator_bound(2, 24, one, 128).hi_d());
}

TEST_CASE("omega bounds") {
    // kappa = 1, R = 1, N_T = 1: ln Omega = 7 max(1, ln 1) = 7
    CertLog R1 = CertLog::exact_ui(1, 128);
    CertLog om = omega_gyoryyu(6, 1, 1, 1, R1, 1);
    CHECK(om.contains(CertLog::exact_ui(7, 320)));
    // additive decomposition of the evgy omega matches a recomputation
    CertLog ev = omega_evgy(4, 1, 1, 2, 1, 3, 1, 128);
    CHECK(ev.lo_d() > 0);
    CertLog ev2 = omega_evgy(4, 1, 1, 2, 1, 3, 1, 256);
    CHECK(ev.contains(ev2));
}

TEST_CASE("prop-eff part (i) evaluation") {
    CHECK(mu_of(3, 1) == 18);
    CertLog h0 = CertLog::exact_ui(0, 128);
    // N_T = 1, D_K = 1: (mu (t+1))^{4 mu (t+1)}
    CertLog t1 = propeff_i_bound(3, 1, 1, 1, 1, h0, 128);
    CertLog ref = CertLog::exact_ui(36, 320).pow_interval(CertLog::exact_ui(144, 320));
    CHECK(t1.contains(ref));
    // K = Q, T = {2}, n = 3: 2^18 * 36^144 on top of h
    CertLog t2 = propeff_i_bound(3, 1, 1, 2, 1, h0, 128);
    CertLog ref2 = CertLog::exact_z(pow_z(2, 18), 320) *
                   CertLog::exact_ui(36, 320).pow_interval(CertLog::exact_ui(144, 320));
    CHECK(t2.contains(ref2));
}

TEST_CASE("T guarantees") {
    BoundInputs in = inputs_qs2_g1();
    TGuarantees g = t_guarantees(in, 128);
    CHECK(std::abs(g.t_bound.hi_d() - 2.0) < 1e-9);
    CHECK(std::abs(g.N_T_bound.hi_d() - 4.0) < 1e-9);
    CHECK(std::abs(g.p_T_bound.hi_d() - 2.0) < 1e-9);
    PlaceSet T(QQ, {places_above(QQ, 2)[0]});
    CHECK(t_satisfies(g, T));

    NumberField K5 = NumberField::imag_quadratic(5);
    BoundInputs in5 = BoundInputs::from(K5, PlaceSet(K5), 1);
    TGuarantees g5 = t_guarantees(in5, 128);
    // (2 * sqrt(20))^2 = 80
    CHECK(std::abs(g5.N_T_bound.hi_d() - 80.0) < 1e-6);
}

TEST_CASE("containment and width across precisions") {
    BoundInputs in = inputs_qs2_g1();
    in.c6 = 3;
    in.c7 = 1;
    in.kappa = 1;
    auto check_pair = [&](const CertLog& at128, const CertLog& at256) {
        CHECK(at128.contains(at256));
        CHECK(at256.rel_width() <= at128.rel_width());
    };
    check_pair(theorem_bound_i(in, 128), theorem_bound_i(in, 256));
    check_pair(theorem_bound_ii(in, 128), theorem_bound_ii(in, 256));
    check_pair(corollary_count_bound(in, 128), corollary_count_bound(in, 256));
    check_pair(wp_count_bound(in, 128), wp_count_bound(in, 256));
    check_pair(faltings_bound(in, 128), faltings_bound(in, 256));
    check_pair(propeff_i_bound(3, 1, 1, 2, 1, CertLog::exact_ui(0, 128), 128),
               propeff_i_bound(3, 1, 1, 2, 1, CertLog::exact_ui(0, 256), 256));
    check_pair(omega_evgy(4, 1, 1, 2, 1, 3, 1, 128),
               omega_evgy(4, 1, 1, 2, 1, 3, 1, 256));
}

TEST_CASE("monotonicity on grids") {
    for (unsigned g = 1; g <= 3; ++g) {
        double prev = -1;
        for (long nsv : {1L, 2L, 6L, 30L}) {
            BoundInputs in;
            in.d = 1;
            in.D_K = 1;
            in.g = g;
            in.s = nsv == 1 ? 0 : 2;
            in.N_S = nsv;
            in.p = nsv == 1 ? 1 : 5;
            if (nsv > 1) in.place_norms = {2, mpz_class(nsv / 2)};
            CertLog v = theorem_bound_i(in, 128);
            CHECK(v.lo_d() >= prev);
            prev = v.hi_d();
        }
    }
    // monotone in D_K
    double prev = -1;
    for (long dk : {1L, 4L, 20L, 56L}) {
        BoundInputs in = inputs_qs2_g1();
        in.d = 2;
        in.D_K = dk;
        in.h_S = 2;
        CertLog v = theorem_bound_i(in, 128);
        CHECK(v.lo_d() >= prev);
        prev = v.hi_d();
    }
}
