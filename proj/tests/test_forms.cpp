#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "hct/parse.hpp"
#include "hct/poly.hpp"

using namespace hct;

namespace {
Poly P(const std::string& s) { return parse_poly(s); }
BinaryForm F(const std::string& s) { return parse_form(s); }
FieldElement Q(long n, long d = 1) {
    mpq_class q(n, d);
    q.canonicalize();
    return FieldElement(q);
}
}  // namespace

TEST_CASE("polynomial discriminants") {
    CHECK(disc_poly(P("x^3 - x")) == Q(4));  // roots 0, 1, -1
    CHECK(disc_poly(P("x^2 - 2*x + 1")) == Q(0));
    CHECK(disc_poly(P("x^3 + 1")) == Q(-27));  // -4a^3 - 27b^2 at a=0, b=1
    CHECK(disc_poly(P("x^4 - 1")) == Q(-256));
    CHECK(disc_poly(P("x^3 - 6*x^2 + 11*x - 6")) == Q(4));  // roots 1, 2, 3
    CHECK(disc_poly(P("2*x + 1")) == Q(1));
    // disc(fg) = disc(f) disc(g) Res(f, g)^2
    std::mt19937_64 rng(7);
    auto rnd_poly = [&](int deg) {
        std::vector<mpq_class> c(deg + 1);
        for (auto& x : c) x = mpq_class((long)(rng() % 19) - 9);
        c[deg] = mpq_class((long)(rng() % 9) + 1);
        return Poly::from_q(c);
    };
    int done = 0;
    while (done < 40) {
        Poly f = rnd_poly(3), g = rnd_poly(2);
        FieldElement df = disc_poly(f), dg = disc_poly(g);
        FieldElement r = resultant(f, g);
        if (df.is_zero() || dg.is_zero() || r.is_zero()) continue;
        CHECK(disc_poly(f * g) == df * dg * r * r);
        ++done;
    }
}

TEST_CASE("separability") {
    CHECK(separable(P("x^3 - x")));
    CHECK_FALSE(separable(P("x^3 - 4*x^2 + 5*x - 2")));  // (x-1)^2 (x-2)
    CHECK(separable(P("x^6 + x + 1")));
}

TEST_CASE("form discriminants") {
    CHECK(disc_form(F("x*y")) == Q(1));
    CHECK(disc_form(F("3*x*y")) == Q(9));
    CHECK(disc_form(F("x^2 - y^2")) == Q(4));
    // quadratic form a x^2 + b xy + c y^2 has disc b^2 - 4ac
    CHECK(disc_form(F("2*x^2 + 3*x*y + y^2")) == Q(1));
    // root at infinity handled by the shear: X^3 Y - X Y^3 has the roots
    // 0, 1, -1, infinity with cross terms 1, 1, 2, 1, 1, 1 squared
    CHECK(disc_form(F("x^3*y - x*y^3")) == Q(4));
    // double root: zero discriminant, not an error
    CHECK(disc_form(F("y^2")).is_zero());
}

TEST_CASE("homogenize") {
    CHECK(homogenize(P("x^3 - x"), 3) == F("x^3 - x*y^2"));
    CHECK(homogenize(P("x^3 - x"), 4) == F("x^3*y - x*y^3"));
    CHECK(homogenize(P("2*x + 1"), 1) == F("2*x + y"));
    CHECK_THROWS_AS(homogenize(P("x^3 - x"), 2), std::domain_error);
    // disc(hom(f, deg f)) = disc(f) for random separable f up to degree 8
    std::mt19937_64 rng(11);
    int done = 0;
    while (done < 60) {
        int deg = 2 + (int)(rng() % 7);
        std::vector<mpq_class> c(deg + 1);
        for (auto& x : c) x = mpq_class((long)(rng() % 39) - 19);
        c[deg] = mpq_class((long)(rng() % 19) + 1);
        Poly f = Poly::from_q(c);
        if (!separable(f)) continue;
        CHECK(disc_form(homogenize(f, deg)) == disc_poly(f));
        ++done;
    }
}

TEST_CASE("pullback") {
    NumberField Qf = NumberField::rationals();
    BinaryForm G = F("x^2 - y^2");
    CHECK(pullback(GL2Matrix::identity(Qf), G) == G);
    CHECK(pullback(GL2Matrix::from_z(1, 1, 0, 1), G) == F("x^2 + 2*x*y"));
    CHECK(pullback(GL2Matrix::from_z(0, 1, 1, 0), F("x^3 - x*y^2")) ==
          F("y^3 - x^2*y"));
    CHECK_THROWS_AS(pullback(GL2Matrix::from_z(1, 1, 1, 1), G), std::domain_error);
    // right action: (psi phi)^* G = phi^* (psi^* G)
    std::mt19937_64 rng(13);
    auto rnd_mat = [&]() {
        while (true) {
            GL2Matrix m = GL2Matrix::from_z((long)(rng() % 9) - 4, (long)(rng() % 9) - 4,
                                            (long)(rng() % 9) - 4, (long)(rng() % 9) - 4);
            if (!m.det().is_zero()) return m;
        }
    };
    for (int t = 0; t < 50; ++t) {
        GL2Matrix psi = rnd_mat(), phi = rnd_mat();
        CHECK(pullback(psi * phi, G) == pullback(phi, pullback(psi, G)));
    }
}

TEST_CASE("discriminant transformation laws") {
    BinaryForm G = F("x*y");
    // scaling: disc(3 xy) = 3^2 disc(xy)
    CHECK(disc_scaling_check(Q(3), G));
    // det 2 example: disc(2 xy) = 2^2
    GL2Matrix two = GL2Matrix::from_z(2, 0, 0, 1);
    CHECK(disc_form(pullback(two, G)) == Q(4));
    CHECK(disc_transform_check(two, G));
    // SL2 leaves disc unchanged
    GL2Matrix s = GL2Matrix::from_z(2, 5, 1, 3);  // det 1
    BinaryForm H = F("x^3 + 2*x^2*y - x*y^2 + 7*y^3");
    CHECK(disc_form(pullback(s, H)) == disc_form(H));
}

TEST_CASE("transvectants") {
    // (F, F)_2 of a quadratic is a multiple of its discriminant
    BinaryForm q = F("x^2 + 3*x*y + 1*y^2");
    FieldElement h = transvectant_scalar(q, q, 2);
    CHECK_FALSE(h.is_zero());
    // covariance under SL2 for a scalar invariant
    GL2Matrix s = GL2Matrix::from_z(1, 2, 1, 3);  // det 1
    BinaryForm q2 = pullback(s, q);
    CHECK(transvectant_scalar(q2, q2, 2) == h);
    // Hessian-type covariant of a cubic transforms trivially under SL2
    BinaryForm c = F("x^3 + x^2*y - 2*x*y^2 + 5*y^3");
    BinaryForm hess = transvectant(c, c, 2);
    BinaryForm c2 = pullback(s, c);
    CHECK(transvectant(c2, c2, 2) == pullback(s, hess));
}

TEST_CASE("d_T invariant") {
    NumberField Qf = NumberField::rationals();
    PlaceSet T2(Qf, {places_above(Qf, 2)[0]});
    // monic integral with unit discriminant in O_T: unit ideal
    CHECK(d_T_invariant(F("x^3 - x*y^2"), T2).empty());
    // content and discriminant both contribute
    PlaceSet empty(Qf);
    auto dt = d_T_invariant(F("2*x^2 - 2*y^2"), empty);
    REQUIRE(dt.size() == 1);
    CHECK(dt[0].first.ell == 2);
    CHECK(dt[0].second == 2);  // (16)/(2)^2 = (4)
    CHECK(d_T_invariant(F("x*y"), empty).empty());
    // invariance under SL2(Z) pullback
    BinaryForm G = F("2*x^3 + 3*x^2*y - x*y^2 + 6*y^3");
    GL2Matrix s = GL2Matrix::from_z(3, 2, 4, 3);  // det 1
    CHECK(d_T_invariant(G, empty) == d_T_invariant(pullback(s, G), empty));
}

TEST_CASE("poly heights") {
    CHECK(poly_height(P("x^3 - x")).is_zero());
    CHECK(poly_height(P("2*x^2 + 3")).exp2h() == 9);  // log 3
    CHECK(poly_height(P("x^3 + 64*x")).exp2h() == 64 * 64);
    CHECK_THROWS_AS(poly_height(Poly(NumberField::rationals())), std::domain_error);
    // projective: scaling the coefficients does not change the height
    CHECK(poly_height(P("4*x^2 + 6")).exp2h() == 9);
    CHECK(poly_height(P("1/2*x^2 + 3/4")).exp2h() == 9);
}
