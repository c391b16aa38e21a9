#include "hct/places.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace hct {

std::optional<FieldElement> PrimeIdeal::second_generator() const {
    if (kind == Kind::rational_prime || kind == Kind::inert) return std::nullopt;
    // omega - root, shifted by ell to the representative s + omega with
    // s = -root mod ell
    mpz_class s = (-root) % ell;
    if (s < 0) s += ell;
    if (K.omega_is_half())
        return FieldElement(K, mpq_class(2 * s + 1, 2), mpq_class(1, 2));
    return FieldElement(K, mpq_class(s), mpq_class(1));
}

std::string PrimeIdeal::to_string() const {
    std::ostringstream os;
    if (K.is_rationals()) {
        os << ell.get_str();
        return os.str();
    }
    auto g = second_generator();
    if (!g) {
        os << "(" << ell.get_str() << ")";
    } else {
        os << "(" << ell.get_str() << ", " << g->to_string() << ")";
    }
    return os.str();
}

namespace {

// roots of x^2 = a mod ell (ell prime); brute force is fine at this scale
std::vector<mpz_class> sqrt_mod(const mpz_class& a, const mpz_class& ell) {
    std::vector<mpz_class> out;
    mpz_class aa = a % ell;
    if (aa < 0) aa += ell;
    for (mpz_class r = 0; r < ell; ++r) {
        if ((r * r - aa) % ell == 0) out.push_back(r);
    }
    return out;
}

}  // namespace

std::vector<PrimeIdeal> places_above(const NumberField& K, const mpz_class& ell) {
    if (ell < 2 || !is_prime_z(ell))
        throw std::domain_error("not a prime: " + ell.get_str());
    if (K.is_rationals())
        return {PrimeIdeal{K, ell, PrimeIdeal::Kind::rational_prime, ell, 0}};

    // splitting is read off the minimal polynomial of omega mod ell
    mpz_class t = K.omega_trace(), n = K.omega_norm();
    mpz_class disc_poly = t * t - 4 * n;  // = disc(K) as an integer
    std::vector<PrimeIdeal> out;
    if (ell == 2) {
        // roots of x^2 - t x + n mod 2
        std::vector<mpz_class> roots;
        for (mpz_class r = 0; r < 2; ++r)
            if ((r * r - t * r + n) % 2 == 0) roots.push_back(r);
        if (roots.size() == 2)
            for (auto& r : roots)
                out.push_back({K, 2, PrimeIdeal::Kind::split, 2, r});
        else if (roots.size() == 1)
            out.push_back({K, 2,
                           (disc_poly % 2 == 0) ? PrimeIdeal::Kind::ramified
                                                : PrimeIdeal::Kind::ramified,
                           2, roots[0]});
        else
            out.push_back({K, 2, PrimeIdeal::Kind::inert, 4, 0});
        // x^2-tx+n mod 2 with one root can only happen at a ramified prime
        if (roots.size() == 1 && disc_poly % 2 != 0)
            throw std::logic_error("splitting inconsistency at 2");
        return out;
    }
    mpz_class d = disc_poly % ell;
    if (d < 0) d += ell;
    if (d == 0) {
        // double root t/2 mod ell
        mpz_class inv2;
        mpz_class two = 2;
        mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), ell.get_mpz_t());
        mpz_class r = (t * inv2) % ell;
        if (r < 0) r += ell;
        out.push_back({K, ell, PrimeIdeal::Kind::ramified, ell, r});
        return out;
    }
    int chi = mpz_legendre(d.get_mpz_t(), ell.get_mpz_t());
    if (chi == 1) {
        auto ss = sqrt_mod(d, ell);
        mpz_class inv2, two = 2;
        mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), ell.get_mpz_t());
        std::vector<mpz_class> roots;
        for (auto& s : ss) {
            mpz_class r = ((t + s) * inv2) % ell;
            if (r < 0) r += ell;
            roots.push_back(r);
        }
        std::sort(roots.begin(), roots.end());
        for (auto& r : roots) out.push_back({K, ell, PrimeIdeal::Kind::split, ell, r});
        return out;
    }
    out.push_back({K, ell, PrimeIdeal::Kind::inert, ell * ell, 0});
    return out;
}

long valuation(const FieldElement& x, const PrimeIdeal& v) {
    if (x.is_zero()) throw std::domain_error("valuation of zero");
    if (v.K.is_rationals() || x.field().is_rationals()) {
        if (!x.is_rational()) throw std::logic_error("field mismatch");
        long val = valuation_q(x.a(), v.ell);
        if (!v.K.is_rationals()) {
            // rational element inside K
            switch (v.kind) {
                case PrimeIdeal::Kind::ramified: return 2 * val;
                default: return val;
            }
        }
        return val;
    }
    if (x.field() != v.K) throw std::logic_error("field mismatch");

    mpz_class u, w, q;
    x.basis_coords(u, w, q);
    long qval = valuation_z(q, v.ell);
    long denom_shift = (v.kind == PrimeIdeal::Kind::ramified) ? 2 * qval : qval;

    // integral part gamma = u + w*omega
    mpq_class Nq = x.norm() * mpq_class(q) * mpq_class(q);
    mpz_class N = Nq.get_num();  // norm of gamma, integral
    if (Nq.get_den() != 1) throw std::logic_error("norm not integral");
    long nv = valuation_z(N, v.ell);

    switch (v.kind) {
        case PrimeIdeal::Kind::inert:
            if (nv % 2 != 0) throw std::logic_error("odd norm valuation at inert prime");
            return nv / 2 - denom_shift;
        case PrimeIdeal::Kind::ramified:
            return nv - denom_shift;
        case PrimeIdeal::Kind::split: {
            // strip rational factors of ell, then at most one of the two
            // conjugate places survives
            mpz_class U = u, W = w;
            long k = 0;
            while (U % v.ell == 0 && W % v.ell == 0) {
                U /= v.ell;
                W /= v.ell;
                ++k;
            }
            mpz_class residue = (U + W * v.root) % v.ell;
            if (residue < 0) residue += v.ell;
            long extra = 0;
            if (residue == 0) {
                mpz_class t = v.K.omega_trace(), n = v.K.omega_norm();
                mpz_class Ng = U * U + U * W * t + W * W * n;
                extra = valuation_z(Ng, v.ell);
            }
            return k + extra - denom_shift;
        }
        default:
            throw std::logic_error("unexpected place kind");
    }
}

PlaceSet::PlaceSet(NumberField K, std::vector<PrimeIdeal> places)
    : K_(K), places_(std::move(places)) {
    for (const auto& v : places_)
        if (v.K != K_) throw std::logic_error("place of a different field");
    std::sort(places_.begin(), places_.end());
    places_.erase(std::unique(places_.begin(), places_.end()), places_.end());
}

bool PlaceSet::contains(const PrimeIdeal& v) const {
    return std::binary_search(places_.begin(), places_.end(), v);
}

bool PlaceSet::contains_char(const mpz_class& ell) const {
    for (const auto& v : places_)
        if (v.ell == ell) return true;
    return false;
}

PlaceSet PlaceSet::with(const PrimeIdeal& v) const {
    auto p = places_;
    p.push_back(v);
    return PlaceSet(K_, p);
}

PlaceSet PlaceSet::unite(const PlaceSet& other) const {
    if (K_ != other.K_) throw std::logic_error("field mismatch");
    auto p = places_;
    p.insert(p.end(), other.places_.begin(), other.places_.end());
    return PlaceSet(K_, p);
}

std::string PlaceSet::to_string() const {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < places_.size(); ++i) {
        if (i) os << ", ";
        os << places_[i].to_string();
    }
    os << "}";
    return os.str();
}

IdealClassGroup class_group(const NumberField& K) {
    if (K.is_rationals()) return {1, {}};
    mpz_class D = -K.disc_abs();
    auto forms = qf_reduced_forms(D);
    return {(unsigned long)forms.size(), forms};
}

QuadForm ideal_class_form(const PrimeIdeal& v) {
    mpz_class D = -v.K.disc_abs();
    if (v.K.is_rationals() || v.kind == PrimeIdeal::Kind::inert)
        return qf_identity(D);
    // ideal (ell, omega - r) corresponds to (ell, 2r - t, (r^2 - rt + n)/ell)
    mpz_class t = v.K.omega_trace(), n = v.K.omega_norm();
    mpz_class b = 2 * v.root - t;
    mpz_class c = (v.root * v.root - v.root * t + n) / v.ell;
    return qf_reduce({v.ell, b, c});
}

unsigned long s_class_number(const NumberField& K, const PlaceSet& S) {
    if (K.is_rationals()) return 1;
    auto cl = class_group(K);
    mpz_class D = -K.disc_abs();
    std::vector<QuadForm> gens;
    for (const auto& v : S.places()) gens.push_back(ideal_class_form(v));
    auto H = qf_span(D, gens);
    return cl.h_K / H.size();
}

PlaceStats PlaceSet::stats() const {
    PlaceStats st;
    st.s = (long)places_.size();
    for (const auto& v : places_) {
        st.N_S *= v.norm;
        if (v.ell > st.p) st.p = v.ell;
        st.n_S *= std::log(v.norm.get_d());
    }
    if (places_.empty()) {
        st.N_S = 1;
        st.p = 1;
        st.n_S = 1;
    }
    st.h_S = s_class_number(K_, *this);
    st.lambda_S = std::log2((double)st.h_S);
    st.sigma = (double)st.s + st.lambda_S + 1;
    return st;
}

PlaceSet extend_to_pid(const NumberField& K, const PlaceSet& S) {
    if (S.field() != K) throw std::logic_error("field mismatch");
    if (K.is_rationals()) return S;
    mpz_class D = -K.disc_abs();
    auto cl = class_group(K);
    PlaceSet T = S;
    std::vector<QuadForm> gens;
    for (const auto& v : T.places()) gens.push_back(ideal_class_form(v));
    auto H = qf_span(D, gens);
    unsigned long h_start = cl.h_K / H.size();

    mpz_class bound;
    mpz_sqrt(bound.get_mpz_t(), K.disc_abs().get_mpz_t());

    while (H.size() < cl.h_K) {
        // pick the least prime of norm <= sqrt(D_K) whose class is not yet
        // in the span; split before ramified at equal norm
        bool added = false;
        for (mpz_class ell = 2; ell <= bound && !added; mpz_nextprime(ell.get_mpz_t(), ell.get_mpz_t())) {
            auto above = places_above(K, ell);
            // smallest norm first, split before ramified
            std::stable_sort(above.begin(), above.end(),
                             [](const PrimeIdeal& a, const PrimeIdeal& b) {
                                 if (a.norm != b.norm) return a.norm < b.norm;
                                 return (int)a.kind < (int)b.kind;
                             });
            for (const auto& v : above) {
                if (v.norm > bound) continue;
                if (T.contains(v)) continue;
                QuadForm c = ideal_class_form(v);
                if (std::binary_search(H.begin(), H.end(), c)) continue;
                T = T.with(v);
                gens.push_back(c);
                H = qf_span(D, gens);
                added = true;
                break;
            }
        }
        if (!added)
            throw std::logic_error(
                "no class-group generator below the Minkowski bound");
    }
    // guarantees, checked per call: the halving argument caps the number of
    // added primes by log2 of the starting class number, each of norm at
    // most sqrt(D_K)
    long added_count = T.size() - S.size();
    long cap = 0;
    while ((1ul << (cap + 1)) <= h_start) ++cap;
    if (added_count > cap)
        throw std::logic_error("added more primes than the halving bound");
    for (const auto& v : T.places())
        if (!S.contains(v) && v.norm > bound)
            throw std::logic_error("added prime above the Minkowski bound");
    return T;
}

namespace {

// canonical associate: multiply by torsion units so that a > 0, b >= 0
// where possible, preferring the smallest b
FieldElement canonical_associate(const FieldElement& x,
                                 const std::vector<FieldElement>& units) {
    FieldElement best = x;
    bool have = false;
    for (const auto& u : units) {
        FieldElement y = x * u;
        bool quadrant = y.a() > 0 && y.b() >= 0;
        bool best_quadrant = best.a() > 0 && best.b() >= 0;
        if (!have) {
            best = y;
            have = true;
            continue;
        }
        if (quadrant != best_quadrant) {
            if (quadrant) best = y;
            continue;
        }
        if (y.b() != best.b() ? y.b() < best.b() : y.a() > best.a()) best = y;
    }
    return best;
}

std::vector<FieldElement> torsion_units(const NumberField& K, FieldElement& zeta,
                                        unsigned long& order) {
    if (K.is_rationals()) {
        zeta = FieldElement(mpq_class(-1));
        order = 2;
        return {FieldElement(mpq_class(1)), zeta};
    }
    if (K.d() == 1) {
        zeta = FieldElement(K, 0, 1);  // i
        order = 4;
    } else if (K.d() == 3) {
        zeta = FieldElement(K, mpq_class(1, 2), mpq_class(1, 2));  // zeta_6
        order = 6;
    } else {
        zeta = FieldElement(K, -1, 0);
        order = 2;
    }
    std::vector<FieldElement> us;
    FieldElement u(K, 1, 0);
    for (unsigned long i = 0; i < order; ++i) {
        us.push_back(u);
        u = u * zeta;
    }
    return us;
}

// all gamma in O_K with N(gamma) = M, up to torsion units (one per associate
// class, canonical)
std::vector<FieldElement> elements_of_norm(const NumberField& K, const mpz_class& M,
                                           const std::vector<FieldElement>& units) {
    std::vector<FieldElement> out;
    mpz_class d(K.d());
    std::set<std::pair<mpq_class, mpq_class>> seen;
    auto push = [&](const FieldElement& g) {
        FieldElement c = canonical_associate(g, units);
        if (seen.insert({c.a(), c.b()}).second) out.push_back(c);
    };
    if (K.omega_is_half()) {
        // N(u + v*omega) = ((2u+v)^2 + d v^2)/4
        mpz_class vmax;
        mpz_sqrt(vmax.get_mpz_t(), mpz_class(4 * M / d).get_mpz_t());
        for (mpz_class v = -vmax; v <= vmax; ++v) {
            mpz_class s2 = 4 * M - d * v * v;
            if (s2 < 0) continue;
            if (!is_square_z(s2)) continue;
            mpz_class s;
            mpz_sqrt(s.get_mpz_t(), s2.get_mpz_t());
            for (int sign = 0; sign < (s == 0 ? 1 : 2); ++sign) {
                mpz_class ss = sign ? -s : s;
                if ((ss - v) % 2 != 0) continue;
                mpz_class u = (ss - v) / 2;
                // u + v*omega = (u + v/2) + (v/2) sqrt(-d)
                push(FieldElement(K, mpq_class(2 * u + v, 2), mpq_class(v, 2)));
            }
        }
    } else {
        mpz_class vmax;
        mpz_sqrt(vmax.get_mpz_t(), mpz_class(M / d).get_mpz_t());
        for (mpz_class v = -vmax; v <= vmax; ++v) {
            mpz_class u2 = M - d * v * v;
            if (u2 < 0) continue;
            if (!is_square_z(u2)) continue;
            mpz_class u;
            mpz_sqrt(u.get_mpz_t(), u2.get_mpz_t());
            push(FieldElement(K, mpq_class(u), mpq_class(v)));
            if (u != 0) push(FieldElement(K, mpq_class(-u), mpq_class(v)));
        }
    }
    std::sort(out.begin(), out.end(), elem_less);
    return out;
}

}  // namespace

SUnitGroup sunit_group(const NumberField& K, const PlaceSet& T) {
    if (T.field() != K) throw std::logic_error("field mismatch");
    SUnitGroup U;
    std::vector<FieldElement> units = torsion_units(K, U.zeta, U.torsion_order);
    for (const auto& v : T.places()) {
        if (K.is_rationals()) {
            U.gens.push_back(FieldElement(mpq_class(v.ell)));
            U.class_orders.push_back(1);
            U.gen_heights.push_back(height(U.gens.back()));
            continue;
        }
        unsigned long m = qf_order(ideal_class_form(v));
        mpz_class M = pow_z(v.norm, m);
        FieldElement gen(K, 0, 0);
        bool found = false;
        for (const auto& g : elements_of_norm(K, M, units)) {
            if (valuation(g, v) == (long)m) {
                gen = g;
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("no generator of v^m found");
        U.gens.push_back(gen);
        U.class_orders.push_back(m);
        U.gen_heights.push_back(height(gen));
    }
    return U;
}

PlaceSet close_under_char_and_two(const PlaceSet& T) {
    std::set<mpz_class> chars{2};
    for (const auto& v : T.places()) chars.insert(v.ell);
    std::vector<PrimeIdeal> all = T.places();
    for (const auto& ell : chars) {
        auto above = places_above(T.field(), ell);
        all.insert(all.end(), above.begin(), above.end());
    }
    return PlaceSet(T.field(), all);
}

}  // namespace hct
