#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "hct/parse.hpp"
#include "hct/weierstrass.hpp"

using namespace hct;

namespace {
Poly P(const std::string& s) { return parse_poly(s); }
FieldElement Q(long n, long d = 1) {
    mpq_class q(n, d);
    q.canonicalize();
    return FieldElement(q);
}
NumberField QQ = NumberField::rationals();
BaseRing ZT(std::initializer_list<long> primes) {
    std::vector<PrimeIdeal> v;
    for (long p : primes) v.push_back(places_above(QQ, p)[0]);
    return BaseRing::t_integers(PlaceSet(QQ, v));
}
}  // namespace

TEST_CASE("complete square") {
    BaseRing R = ZT({2});
    CHECK(complete_square(P("x^3"), Poly(QQ), R) == P("x^3"));
    CHECK(complete_square(P("x^3 - 1"), P("2"), R) == P("x^3"));
    CHECK(complete_square(P("x^5"), P("2*x"), R) == P("x^5 + x^2"));
    BaseRing R3 = ZT({3});
    CHECK_THROWS_AS(complete_square(P("x^3"), P("2"), R3), std::domain_error);
    // preserves the model discriminant
    std::mt19937_64 rng(3);
    for (int t = 0; t < 30; ++t) {
        std::vector<mpq_class> c{mpq_class((long)(rng() % 9) - 4),
                                 mpq_class((long)(rng() % 9) - 4),
                                 mpq_class((long)(rng() % 9) - 4), 1};
        Poly f = Poly::from_q(c);
        std::vector<mpq_class> c2{mpq_class((long)(rng() % 5) - 2),
                                  mpq_class((long)(rng() % 5) - 2)};
        Poly f2 = Poly::from_q(c2);
        Poly f0 = complete_square(f, f2, R);
        CHECK(model_discriminant(f, f2, 1) == model_discriminant(f0, Poly(QQ), 1));
    }
}

TEST_CASE("model discriminant") {
    CHECK(model_discriminant(P("x^3 - x"), Poly(QQ), 1) == Q(64));
    CHECK(model_discriminant(P("x^3 + 1"), Poly(QQ), 1) == Q(-432));
    CHECK(model_discriminant(P("x^4 - 1"), Poly(QQ), 1) == Q(-4096));
    CHECK_THROWS_AS(model_discriminant(P("x^2 - 1"), Poly(QQ), 1),
                    std::domain_error);
}

TEST_CASE("change of variables and the discriminant law") {
    WeierstrassModel m(1, P("x^3 - x"), BaseRing::integers(QQ));
    CHECK(m.disc() == Q(64));

    // identity
    WeierstrassModel same =
        change_variables(m, GL2Matrix::identity(QQ), FieldElement(mpq_class(1)));
    CHECK(same.f() == m.f());

    // x -> x / u^2 with u = 2, lambda = u^3: the quartic twist X^3 - 16X
    GL2Matrix phi = GL2Matrix::from_z(4, 0, 0, 1);
    WeierstrassModel tw = change_variables(m, phi, Q(8));
    CHECK(tw.f() == P("x^3 - 16*x"));
    CHECK(tw.disc() == Q(64) * Q(4096));  // 2^6 * 2^12
    CHECK(discriminant_law_holds(m, tw, phi, Q(8)));

    // unipotent: discriminant unchanged
    GL2Matrix uni = GL2Matrix::from_z(1, 7, 0, 1);
    WeierstrassModel sh = change_variables(m, uni, Q(1));
    CHECK(sh.disc() == m.disc());

    // randomized law check
    std::mt19937_64 rng(17);
    auto rnd = [&](long w) { return (long)(rng() % (2 * w + 1)) - w; };
    int done = 0;
    while (done < 60) {
        std::vector<mpq_class> c{mpq_class(rnd(8)), mpq_class(rnd(8)),
                                 mpq_class(rnd(8)), 1};
        Poly f = Poly::from_q(c);
        if (!separable(f)) continue;
        WeierstrassModel base(1, f, BaseRing::integers(QQ));
        GL2Matrix g = GL2Matrix::from_z(rnd(4), rnd(4), rnd(4), rnd(4));
        if (g.det().is_zero()) continue;
        mpq_class lam(rnd(6), 1 + (long)(rng() % 5));
        if (lam == 0) continue;
        try {
            WeierstrassModel out = change_variables(base, g, FieldElement(lam));
            CHECK(discriminant_law_holds(base, out, g, FieldElement(lam)));
            ++done;
        } catch (const std::domain_error&) {
            // transformed polynomial left the window; not a law violation
        }
    }
}

TEST_CASE("good reduction at a place") {
    WeierstrassModel m(1, P("x^3 - x"), BaseRing::integers(QQ));
    CHECK(good_reduction_at(m, places_above(QQ, 3)[0]));
    CHECK_FALSE(good_reduction_at(m, places_above(QQ, 2)[0]));
    WeierstrassModel m2(1, P("x^3 + 1"), BaseRing::integers(QQ));
    CHECK(good_reduction_at(m2, places_above(QQ, 5)[0]));
    CHECK_FALSE(good_reduction_at(m2, places_above(QQ, 3)[0]));
    // invariance under SL2(O_T) changes with unit lambda, away from T
    BaseRing R = ZT({2, 3});
    WeierstrassModel mt(1, P("x^3 - x"), R);
    GL2Matrix s = GL2Matrix::from_z(2, 1, 1, 1);  // det 1
    WeierstrassModel moved = change_variables(mt, s, Q(9, 8));
    for (long p : {5, 7, 11, 13}) {
        PrimeIdeal v = places_above(QQ, p)[0];
        CHECK(good_reduction_at(mt, v) == good_reduction_at(moved, v));
    }
}

TEST_CASE("clearing denominators") {
    PlaceSet T2(QQ, {places_above(QQ, 2)[0]});
    auto r1 = clear_denominators(P("x^3 + x"), T2, 1);
    CHECK(r1.omega == Q(1));
    CHECK(r1.f == P("x^3 + x"));

    auto r2 = clear_denominators(P("x^3 + 1/4*x"), T2, 1);
    CHECK(r2.omega == Q(4));
    CHECK(r2.f == P("x^3 + 64*x"));

    CHECK_THROWS_AS(clear_denominators(P("x^3 + 1/3*x"), T2, 1),
                    std::domain_error);

    // randomized: integrality, unit omega, and the height inequality
    PlaceSet T(QQ, {places_above(QQ, 2)[0], places_above(QQ, 3)[0]});
    std::mt19937_64 rng(23);
    auto rnd_tint = [&]() {
        long num = (long)(rng() % 41) - 20;
        long d2 = (long)(rng() % 4), d3 = (long)(rng() % 3);
        mpq_class q(num, 1);
        for (long i = 0; i < d2; ++i) q /= 2;
        for (long i = 0; i < d3; ++i) q /= 3;
        q.canonicalize();
        return q;
    };
    int done = 0;
    while (done < 100) {
        int deg = 3 + (int)(rng() % 2);
        std::vector<mpq_class> c(deg + 1);
        for (auto& x : c) x = rnd_tint();
        c[deg] = 1;
        Poly f = Poly::from_q(c);
        if (!separable(f)) continue;
        auto res = clear_denominators(f, T, 1);
        for (const auto& x : res.f.coeffs()) CHECK(x.is_integral());
        // omega a T-unit
        mpz_class w = res.omega.a().get_num();
        CHECK(res.omega.a().get_den() == 1);
        remove_factor(w, 2);
        remove_factor(w, 3);
        CHECK(w == 1);
        unsigned n = (unsigned)deg;
        CHECK(poly_height(res.f).leq_times(4 * n * n, poly_height(f)));
        ++done;
    }
}

TEST_CASE("rational Weierstrass points") {
    WeierstrassModel odd(1, P("x^3 - x"), BaseRing::integers(QQ));
    CHECK(rational_weierstrass_point(odd) == WpCertificate::yes);
    // quartic with the rational root 1
    WeierstrassModel q1(1, P("x^4 - 1"), BaseRing::integers(QQ));
    CHECK(rational_weierstrass_point(q1) == WpCertificate::yes);
    // x^4 + 1 has no rational root
    WeierstrassModel q2(1, P("x^4 + 1"), BaseRing::integers(QQ));
    CHECK(rational_weierstrass_point(q2) == WpCertificate::not_certified);
}

TEST_CASE("equation validation") {
    BaseRing R = BaseRing::integers(QQ);
    CHECK_THROWS_AS(HyperellipticEquation(1, P("x^2 + 1"), Poly(QQ), R),
                    std::domain_error);
    CHECK_THROWS_AS(HyperellipticEquation(1, P("x^7"), Poly(QQ), R),
                    std::domain_error);
    HyperellipticEquation ok(2, P("x^5 + x"), P("x^2"), R);
    CHECK(ok.genus == 2);
    CHECK_THROWS_AS(WeierstrassModel(1, P("x^3 + 1/5*x"), R), std::domain_error);
}
