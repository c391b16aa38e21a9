#include "hct/enumerate.hpp"

#include <atomic>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace hct {

using ordered_json = nlohmann::ordered_json;

PlaceSet SearchSpec::S_places() const {
    NumberField Q = NumberField::rationals();
    std::vector<PrimeIdeal> v;
    for (const auto& p : S_primes) v.push_back(places_above(Q, p)[0]);
    return PlaceSet(Q, v);
}

PlaceSet SearchSpec::T_places() const {
    NumberField Q = NumberField::rationals();
    PlaceSet S = S_places();
    return S.unite(PlaceSet(Q, {places_above(Q, 2)[0]}));
}

std::vector<unsigned> SearchSpec::degree_cases() const {
    if (!degrees.empty()) return degrees;
    return {2 * genus + 1, 2 * genus + 2};
}

std::string CurveRecord::dedup_key() const { return tier + "|" + fingerprint_key(); }

bool CurveRecord::lex_before(const CurveRecord& o) const {
    if (f.size() != o.f.size()) return f.size() < o.f.size();
    for (size_t i = f.size(); i-- > 0;)
        if (f[i] != o.f[i]) return f[i] < o.f[i];
    return false;
}

std::pair<mpq_class, mpq_class> depressed_pair(const Poly& cubic) {
    if (cubic.degree() != 3 || !cubic.is_monic())
        throw std::domain_error("monic cubic expected");
    mpq_class a = cubic.coeff(2).a(), b = cubic.coeff(1).a(), c = cubic.coeff(0).a();
    mpq_class A = b - a * a / 3;
    mpq_class B = c - a * b / 3 + 2 * a * a * a / 27;
    A.canonicalize();
    B.canonicalize();
    return {A, B};
}

std::pair<mpz_class, mpz_class> canonical_short_pair(const mpq_class& A0,
                                                     const mpq_class& B0) {
    // scale by u^4, u^6 to integers, then strip every prime l with
    // l^4 | A and l^6 | B
    mpz_class u = A0.get_den() * B0.get_den();
    mpq_class A = A0 * pow_q(mpq_class(u), 4);
    mpq_class B = B0 * pow_q(mpq_class(u), 6);
    mpz_class a = A.get_num(), b = B.get_num();
    if (A.get_den() != 1 || B.get_den() != 1)
        throw std::logic_error("clearing failed");
    if (a == 0 && b == 0) return {0, 0};
    std::set<mpz_class> primes;
    if (a != 0)
        for (auto& [p, e] : factor_z(a)) primes.insert(p);
    else
        for (auto& [p, e] : factor_z(b)) primes.insert(p);
    for (const auto& p : primes) {
        mpz_class p4 = pow_z(p, 4), p6 = pow_z(p, 6);
        while ((a == 0 || mpz_divisible_p(a.get_mpz_t(), p4.get_mpz_t())) &&
               (b == 0 || mpz_divisible_p(b.get_mpz_t(), p6.get_mpz_t()))) {
            if (a != 0) a /= p4;
            if (b != 0) b /= p6;
        }
    }
    return {a, b};
}

bool is_isomorphic_g1(const mpq_class& a1, const mpq_class& b1,
                      const mpq_class& a2, const mpq_class& b2) {
    if ((a1 == 0) != (a2 == 0)) return false;
    if ((b1 == 0) != (b2 == 0)) return false;
    if (a1 == 0 && b1 == 0) return true;
    mpq_class u;
    if (a1 == 0) {
        mpq_class r = b2 / b1;
        return r > 0 && exact_root_q(r, 6, u);
    }
    if (b1 == 0) {
        mpq_class r = a2 / a1;
        return r > 0 && exact_root_q(r, 4, u);
    }
    mpq_class w = (b2 / b1) / (a2 / a1);  // = u^2 when isomorphic
    if (w <= 0) return false;
    if (!is_square_z(w.get_num()) || !is_square_z(w.get_den())) return false;
    return w * w == a2 / a1 && w * w * w == b2 / b1;
}

// ---- genus-2 invariants -------------------------------------------------

std::array<mpq_class, 4> genus2_invariants(const BinaryForm& F) {
    if (F.degree() != 6) throw std::domain_error("sextic expected");
    const auto& f = F.coeffs();
    auto i4 = transvectant_raw(f, 6, f, 6, 4);     // covariant of degree 4
    auto A = transvectant_raw(f, 6, f, 6, 6);      // invariant, weight 2
    auto y1 = transvectant_raw(f, 6, i4, 4, 4);    // covariant of degree 2
    auto B = transvectant_raw(i4, 4, i4, 4, 4);    // invariant, weight 4
    auto C = transvectant_raw(y1, 2, y1, 2, 2);    // invariant, weight 6
    return {A[0].a(), B[0].a(), C[0].a(), disc_form(F).a()};
}

std::vector<std::string> genus2_fingerprint(const Poly& f) {
    if (f.degree() < 5 || f.degree() > 6)
        throw std::domain_error("genus-2 model expected");
    if (!separable(f)) throw std::domain_error("inseparable input");
    BinaryForm F = homogenize(f, 6);
    auto I = genus2_invariants(F);
    if (I[3] == 0) throw std::domain_error("inseparable sextic");
    mpq_class r1 = pow_q(I[0], 5) / I[3];
    mpq_class r2 = pow_q(I[1], 5) / pow_q(I[3], 2);
    mpq_class r3 = pow_q(I[2], 5) / pow_q(I[3], 3);
    return {q_to_string(r1), q_to_string(r2), q_to_string(r3)};
}

namespace {

// ---- canonicalization ---------------------------------------------------

struct PipelineResult {
    Poly f;                 // canonical polynomial over Z
    FieldElement disc;      // model discriminant
};

// twist f -> w^{2n} f(X / w^2) at fixed form degree n
Poly twist_at_degree(const Poly& f, const mpq_class& w, unsigned n) {
    const NumberField& K = f.field();
    FieldElement om(K, w, 0);
    FieldElement om2 = om * om;
    return f.scale_arg(om2.inverse()) * om.pow(2 * (long)n);
}

// largest e with p^e removable integrally: min over coefficients of
// floor(v_p(c_i) / (2(n - i)))
long integral_twist_cap(const Poly& f, const mpz_class& p, unsigned n) {
    long cap = -1;
    for (int i = 0; i < (int)n; ++i) {
        FieldElement c = f.coeff(i);
        if (c.is_zero()) continue;
        long v = valuation_q(c.a(), p);
        long w = 2 * ((long)n - i);
        long t = v >= 0 ? v / w : -1;
        if (t < 0) return 0;
        cap = (cap < 0) ? t : std::min(cap, t);
    }
    return cap < 0 ? 0 : cap;
}

// minimal integral clearing: least e with p^e w^{2(n-i)}-scaling integral
long clearing_exponent(const Poly& f, const mpz_class& p, unsigned n) {
    long need = 0;
    for (int i = 0; i < (int)n; ++i) {
        FieldElement c = f.coeff(i);
        if (c.is_zero()) continue;
        long v = valuation_q(c.a(), p);
        if (v >= 0) continue;
        long w = 2 * ((long)n - i);
        long e = (-v + w - 1) / w;
        need = std::max(need, e);
    }
    return need;
}

Poly center_monic(const Poly& f, const PlaceSet& T) {
    return unipotent_reduce(f, T).f;
}

Poly sl2_center(const Poly& f, unsigned n) {
    BinaryForm F = homogenize(f, n);
    auto red = sl2_reduce_form(F);
    return red.reduced.dehomogenize();
}

}  // namespace

CurveRecord canonical_form(const Poly& f_in, unsigned g,
                           const std::vector<mpz_class>& S_primes) {
    NumberField Q = NumberField::rationals();
    if (f_in.field() != Q) throw unsupported_field("pipeline implemented over Q");
    SearchSpec sp;
    sp.genus = g;
    sp.S_primes = S_primes;
    PlaceSet T = sp.T_places();
    std::vector<mpz_class> tprimes;
    for (const auto& v : T.places()) tprimes.push_back(v.ell);

    long deg = f_in.degree();
    bool odd_case = (deg == (long)(2 * g + 1));
    if (!odd_case && deg != (long)(2 * g + 2))
        throw std::domain_error("degree window violated");
    if (odd_case && !f_in.is_monic())
        throw std::domain_error("odd-degree models must be monic");
    if (!separable(f_in)) throw std::domain_error("inseparable polynomial");
    unsigned n = odd_case ? 2 * g + 1 : 2 * g + 2;
    unsigned long window = UnitBasisU::window_for(g, odd_case);

    FieldElement disc = model_discriminant(f_in, Poly(Q), g);
    // T-unit check
    {
        mpq_class d = disc.a();
        mpz_class num = abs(d.get_num()), den = d.get_den();
        for (const auto& p : tprimes) {
            remove_factor(num, p);
            remove_factor(den, p);
        }
        if (num != 1 || den != 1)
            throw std::domain_error("model discriminant is not a T-unit");
    }

    Poly f = f_in;
    // clear any T-denominators once, then iterate integrally
    for (const auto& p : tprimes) {
        long e = clearing_exponent(f, p, n);
        if (e > 0) f = twist_at_degree(f, pow_q(mpq_class(p), e), n);
    }
    bool settled = false;
    for (int round = 0; round < 64 && !settled; ++round) {
        Poly before = f;
        FieldElement d = model_discriminant(f, Poly(Q), g);
        for (const auto& p : tprimes) {
            long e = valuation_q(d.a(), p);
            long k = e >= 0 ? e / (long)window : 0;
            long cap = integral_twist_cap(f, p, n);
            long down = std::min(k, cap);
            if (down > 0) {
                f = twist_at_degree(f, pow_q(mpq_class(p), -down), n);
                d = model_discriminant(f, Poly(Q), g);
            }
        }
        f = odd_case ? center_monic(f, T) : sl2_center(f, n);
        settled = (f == before);
    }
    if (!settled) throw std::logic_error("canonicalization did not settle");

    CurveRecord rec;
    rec.genus = g;
    rec.field = "Q";
    for (int i = 0; i <= f.degree(); ++i) rec.f.push_back(f.coeff(i).a());
    FieldElement dfin = model_discriminant(f, Poly(Q), g);
    mpq_class dq = dfin.a();
    if (dq.get_den() != 1) throw std::logic_error("canonical model not integral");
    mpz_class dz = dq.get_num();
    rec.delta_sign = dz < 0 ? -1 : 1;
    mpz_class rest = abs(dz);
    for (const auto& p : tprimes) {
        long e = remove_factor(rest, p);
        if (e) rec.delta_factors.emplace_back(p, e);
    }
    if (rest != 1) throw std::logic_error("discriminant support left T");
    rec.height_log10 = poly_height(f).log10_string();

    long fdeg = f.degree();
    rec.wp_yes = (fdeg == (long)(2 * g + 1));
    if (!rec.wp_yes) {
        WeierstrassModel m(g, f, BaseRing::t_integers(T));
        rec.wp_yes = rational_weierstrass_point(m) == WpCertificate::yes;
    }

    // fingerprint and dedup tier
    if (g == 1) {
        Poly cubic = f;
        bool have_cubic = (fdeg == 3);
        if (have_cubic && !f.is_monic()) {
            // y^2 = a3 x^3 + ... is isomorphic to the monic model
            // Y^2 = X^3 + a2 X^2 + a1 a3 X + a0 a3^2
            mpq_class a3 = f.coeff(3).a(), a2 = f.coeff(2).a(),
                      a1 = f.coeff(1).a(), a0 = f.coeff(0).a();
            cubic = Poly::from_q({a0 * a3 * a3, a1 * a3, a2, 1});
        }
        if (!have_cubic && rec.wp_yes) {
            // move a rational root to infinity: x^4 q(r + 1/x) is a cubic
            // with the same curve
            // find the root
            mpq_class root;
            bool found = false;
            {
                // rational root search on the quartic
                Poly q = f;
                mpz_class l = 1;
                for (const auto& c : q.coeffs())
                    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(),
                            c.a().get_den().get_mpz_t());
                std::vector<mpz_class> nums;
                mpz_class c0 = mpq_class(q.coeff(0).a() * l).get_num();
                mpz_class cl = mpq_class(q.lc().a() * l).get_num();
                if (c0 == 0) {
                    root = 0;
                    found = true;
                } else {
                    auto divs = [](const mpz_class& m) {
                        std::vector<mpz_class> out{1};
                        for (auto& [p, e] : factor_z(m)) {
                            std::vector<mpz_class> next;
                            mpz_class pk = 1;
                            for (unsigned long i = 0; i <= e; ++i) {
                                for (const auto& d0 : out) next.push_back(d0 * pk);
                                pk *= p;
                            }
                            out = next;
                        }
                        return out;
                    };
                    for (const auto& pnum : divs(c0)) {
                        if (found) break;
                        for (const auto& pden : divs(cl)) {
                            if (found) break;
                            for (int s = -1; s <= 1; s += 2) {
                                mpq_class cand(s * pnum, pden);
                                cand.canonicalize();
                                if (q.eval(FieldElement(cand)).is_zero()) {
                                    root = cand;
                                    found = true;
                                    break;
                                }
                            }
                        }
                    }
                }
            }
            if (found) {
                // f3(x) = x^4 f(root + 1/x): coefficients f^{(k)}(root)/k!
                Poly shifted = f.translate(FieldElement(root));
                std::vector<mpq_class> c3(4);
                for (int k = 1; k <= 4; ++k) c3[4 - k] = shifted.coeff(k).a();
                Poly fr = Poly::from_q(c3);
                // monicize a3 x^3 + ... : y^2 = g(X) with
                // g = X^3 + a2 X^2 + a1 a3 X + a0 a3^2
                mpq_class a3 = fr.coeff(3).a(), a2 = fr.coeff(2).a(),
                          a1 = fr.coeff(1).a(), a0 = fr.coeff(0).a();
                cubic = Poly::from_q({a0 * a3 * a3, a1 * a3, a2, 1});
                have_cubic = true;
            }
        }
        if (have_cubic) {
            auto [A, B] = depressed_pair(cubic);
            auto key = canonical_short_pair(A, B);
            // j = 1728 * 4A^3 / (4A^3 + 27B^2)
            mpq_class A3 = 4 * pow_q(mpq_class(key.first), 3);
            mpq_class den = A3 + 27 * pow_q(mpq_class(key.second), 2);
            mpq_class j = 1728 * A3 / den;
            j.canonicalize();
            rec.tier = "exact";
            rec.fingerprint = {q_to_string(j), key.first.get_str(),
                               key.second.get_str()};
        } else {
            rec.tier = "heuristic";
            for (const auto& c : rec.f) rec.fingerprint.push_back(q_to_string(c));
        }
    } else if (g == 2) {
        rec.tier = "fingerprint";
        rec.fingerprint = genus2_fingerprint(f);
    } else {
        rec.tier = "heuristic";
        for (const auto& c : rec.f) rec.fingerprint.push_back(q_to_string(c));
    }
    return rec;
}

std::string CurveRecord::fingerprint_key() const {
    std::string k = std::to_string(genus) + "|";
    for (const auto& s : fingerprint) k += s + ",";
    return k;
}

// ---- catalog io ----------------------------------------------------------

namespace {

ordered_json record_to_json(const CurveRecord& r) {
    ordered_json j;
    j["genus"] = r.genus;
    j["field"] = r.field;
    ordered_json fc = ordered_json::array();
    for (const auto& c : r.f) fc.push_back(q_to_string(c));
    j["f"] = fc;
    j["delta_sign"] = r.delta_sign;
    ordered_json df = ordered_json::array();
    for (const auto& [p, e] : r.delta_factors)
        df.push_back(ordered_json::array({p.get_str(), e}));
    j["delta_factors"] = df;
    j["height_log10"] = r.height_log10;
    j["wp"] = r.wp_yes ? "yes" : "unknown";
    ordered_json fp = ordered_json::array();
    for (const auto& s : r.fingerprint) fp.push_back(s);
    j["fingerprint"] = fp;
    j["tier"] = r.tier;
    j["cell"] = r.cell;
    return j;
}

mpq_class q_from_string(const std::string& t) {
    auto slash = t.find('/');
    if (slash == std::string::npos) return mpq_class(mpz_class(t));
    mpq_class q(mpz_class(t.substr(0, slash)), mpz_class(t.substr(slash + 1)));
    q.canonicalize();
    return q;
}

CurveRecord record_from_json(const ordered_json& j) {
    CurveRecord r;
    r.genus = j.at("genus").get<unsigned>();
    r.field = j.at("field").get<std::string>();
    for (const auto& s : j.at("f")) r.f.push_back(q_from_string(s.get<std::string>()));
    r.delta_sign = j.at("delta_sign").get<int>();
    for (const auto& pe : j.at("delta_factors"))
        r.delta_factors.emplace_back(mpz_class(pe[0].get<std::string>()),
                                     pe[1].get<long>());
    r.height_log10 = j.at("height_log10").get<std::string>();
    r.wp_yes = j.at("wp").get<std::string>() == "yes";
    for (const auto& s : j.at("fingerprint"))
        r.fingerprint.push_back(s.get<std::string>());
    r.tier = j.at("tier").get<std::string>();
    r.cell = j.value("cell", "");
    return r;
}

}  // namespace

std::string Catalog::dump_jsonl(bool with_timestamp) const {
    ordered_json hdr;
    hdr["catalog"] = "curves-good-outside-S-and-2";
    hdr["genus"] = genus;
    ordered_json sp = ordered_json::array();
    for (const auto& p : S_primes) sp.push_back(p.get_str());
    hdr["S"] = sp;
    ordered_json tp = ordered_json::array();
    {
        std::set<mpz_class> ts(S_primes.begin(), S_primes.end());
        ts.insert(2);
        for (const auto& p : ts) tp.push_back(p.get_str());
    }
    hdr["T"] = tp;
    hdr["box"] = box;
    ordered_json dg = ordered_json::array();
    for (auto d : degrees) dg.push_back(d);
    hdr["degrees"] = dg;
    hdr["tool_version"] = tool_version;
    if (with_timestamp) hdr["generated_at"] = generated_at;
    std::string out = hdr.dump() + "\n";
    for (const auto& r : records) out += record_to_json(r).dump() + "\n";
    return out;
}

Catalog Catalog::parse_jsonl(std::istream& in) {
    Catalog cat;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ordered_json j = ordered_json::parse(line);
        if (first) {
            first = false;
            cat.genus = j.at("genus").get<unsigned>();
            for (const auto& s : j.at("S")) cat.S_primes.emplace_back(s.get<std::string>());
            cat.box = j.at("box").get<long>();
            for (const auto& d : j.at("degrees")) cat.degrees.push_back(d.get<unsigned>());
            cat.tool_version = j.value("tool_version", "");
            cat.generated_at = j.value("generated_at", "");
            continue;
        }
        cat.records.push_back(record_from_json(j));
    }
    return cat;
}

// ---- search ---------------------------------------------------------------

namespace {

// disc of a monic cubic x^3 + a x^2 + b x + c in machine words
inline long long cubic_disc_ll(long long a, long long b, long long c) {
    return 18 * a * b * c - 4 * a * a * a * c + a * a * b * b - 4 * b * b * b -
           27 * c * c;
}

// keep only S-primes; true when the remainder is +-1
bool s_unit_part(mpz_class v, const std::vector<mpz_class>& S,
                 std::vector<std::pair<mpz_class, long>>* factors = nullptr) {
    if (v == 0) return false;
    if (v < 0) v = -v;
    for (const auto& p : S) {
        long e = remove_factor(v, p);
        if (factors && e) factors->emplace_back(p, e);
    }
    return v == 1;
}

// disc of f mod q (monic or general, lc nonzero mod q) via Euclid in F_q
bool disc_mod_q(const std::vector<long>& coeffs, long q, long& out) {
    // coeffs[i] multiplies x^i
    auto mod = [&](long long x) {
        long r = (long)(x % q);
        return r < 0 ? r + q : r;
    };
    std::vector<long> A, B;
    int n = (int)coeffs.size() - 1;
    for (auto c : coeffs) A.push_back(mod(c));
    while (!A.empty() && A.back() == 0) A.pop_back();
    if ((int)A.size() - 1 != n) return false;  // degree dropped mod q
    // derivative
    for (int i = 1; i <= n; ++i) B.push_back(mod((long long)i * coeffs[i]));
    while (!B.empty() && B.back() == 0) B.pop_back();
    if (B.empty()) {
        out = 0;
        return true;
    }
    auto inv = [&](long x) {
        long r = 1, b = x % q, e = q - 2;
        while (e) {
            if (e & 1) r = (long)((__int128)r * b % q);
            b = (long)((__int128)b * b % q);
            e >>= 1;
        }
        return r;
    };
    // res(A, B) by Euclidean reduction
    long res = 1;
    std::vector<long> X = A, Y = B;
    while (true) {
        int dx = (int)X.size() - 1, dy = (int)Y.size() - 1;
        if (dy < 0) {
            out = 0;
            return true;
        }
        if (dy == 0) {
            long lead = Y[0];
            long p = 1;
            for (int i = 0; i < dx; ++i) p = (long)((__int128)p * lead % q);
            res = (long)((__int128)res * p % q);
            break;
        }
        // X mod Y
        long linv = inv(Y[dy]);
        std::vector<long> R = X;
        for (int i = dx; i >= dy; --i) {
            long f = (long)((__int128)R[i] * linv % q);
            if (f == 0) continue;
            for (int j = 0; j <= dy; ++j) {
                long t = (long)((__int128)f * Y[j] % q);
                R[i - dy + j] = mod((long long)R[i - dy + j] - t);
            }
        }
        while (!R.empty() && R.back() == 0) R.pop_back();
        int dr = (int)R.size() - 1;
        // res(X, Y) = (-1)^{dx dy} lc(Y)^{dx - dr} res(Y, R)
        long lead = Y[dy];
        long p = 1;
        for (int i = 0; i < dx - dr; ++i) p = (long)((__int128)p * lead % q);
        res = (long)((__int128)res * p % q);
        if ((dx & 1) && (dy & 1)) res = mod(-res);
        X = Y;
        Y = R;
    }
    // disc = (-1)^{n(n-1)/2} res / lc
    long d = (long)((__int128)res * inv(mod(coeffs[n])) % q);
    if ((((long long)n * (n - 1) / 2) & 1)) d = mod(-d);
    out = d;
    return true;
}

struct Cell {
    unsigned degree;   // 2g+1 or 2g+2
    long lead_value;   // value of the top varying coefficient
    std::string id() const {
        return "d" + std::to_string(degree) + ":" + std::to_string(lead_value);
    }
};

}  // namespace

Catalog enumerate_curves(const SearchSpec& spec, const std::string& journal_path) {
    NumberField Q = NumberField::rationals();
    unsigned g = spec.genus;
    long B = spec.box;
    if (B < 1) throw std::domain_error("box must be >= 1");
    std::vector<mpz_class> tprimes;
    PlaceSet Tset = spec.T_places();
    for (const auto& v : Tset.places()) tprimes.push_back(v.ell);
    std::vector<mpz_class> sprimes = spec.S_primes;

    // candidate count guard
    {
        double total = 0;
        for (unsigned deg : spec.degree_cases()) {
            double w = 2.0 * (double)B + 1;
            double cnt = 1;
            unsigned vars = (deg == 2 * g + 1) ? deg : deg + 1;
            for (unsigned i = 0; i < vars; ++i) cnt *= w;
            total += cnt;
        }
        if (total > (double)spec.max_candidates)
            throw resource_limit("search box exceeds the candidate limit");
    }

    // auxiliary primes for the modular prefilter
    std::vector<long> aux;
    for (long q : {3L, 5L, 7L, 11L, 13L}) {
        bool used = false;
        for (const auto& p : tprimes)
            if (p == q) used = true;
        if (!used) aux.push_back(q);
        if (aux.size() == 2) break;
    }

    std::set<std::string> done_cells;
    std::vector<CurveRecord> replayed;
    if (!journal_path.empty()) {
        std::ifstream in(journal_path);
        std::string line;
        while (in && std::getline(in, line)) {
            if (line.empty()) continue;
            ordered_json j = ordered_json::parse(line, nullptr, false);
            if (j.is_discarded()) continue;
            if (j.contains("cell_done"))
                done_cells.insert(j["cell_done"].get<std::string>());
            else if (j.contains("record"))
                replayed.push_back(record_from_json(j["record"]));
        }
    }

    std::vector<Cell> cells;
    for (unsigned deg : spec.degree_cases()) {
        if (deg != 2 * g + 1 && deg != 2 * g + 2)
            throw std::domain_error("degree outside the window");
        for (long v = -B; v <= B; ++v) cells.push_back({deg, v});
    }

    std::mutex sink_mtx;
    std::map<std::string, CurveRecord> best_by_key;
    std::ofstream journal;
    if (!journal_path.empty())
        journal.open(journal_path, std::ios::app);

    auto absorb = [&](CurveRecord&& rec, bool log_to_journal) {
        std::lock_guard<std::mutex> lk(sink_mtx);
        if (log_to_journal && journal.is_open()) {
            ordered_json j;
            j["record"] = record_to_json(rec);
            journal << j.dump() << "\n";
        }
        std::string key = rec.dedup_key();
        auto it = best_by_key.find(key);
        if (it == best_by_key.end())
            best_by_key.emplace(std::move(key), std::move(rec));
        else if (rec.lex_before(it->second) ||
                 (!it->second.lex_before(rec) && rec.cell < it->second.cell))
            it->second = std::move(rec);
    };
    for (auto& r : replayed) absorb(std::move(r), false);

    auto process_cell = [&](const Cell& cell) {
        unsigned deg = cell.degree;
        bool odd_case = (deg == 2 * g + 1);
        // coefficient vector c[0..deg]; odd: monic with c[deg-1] = lead_value
        // fixed by the cell; even: c[deg] = lead_value (nonzero)
        if (!odd_case && cell.lead_value == 0) return;
        std::vector<long> c(deg + 1, 0);
        unsigned vary = odd_case ? deg - 1 : deg;  // indices 0..vary-1 vary
        c[deg] = odd_case ? 1 : cell.lead_value;
        if (odd_case) c[deg - 1] = cell.lead_value;
        std::vector<long> idx(vary, -B);
        bool fast_cubic = odd_case && deg == 3 && B <= 1000;
        while (true) {
            for (unsigned i = 0; i < vary; ++i) c[i] = idx[i];
            bool keep = true;
            long long dfast = 0;
            if (fast_cubic) {
                dfast = cubic_disc_ll(c[2], c[1], c[0]);
                unsigned long long A =
                    dfast < 0 ? -(unsigned long long)dfast : (unsigned long long)dfast;
                if (A == 0)
                    keep = false;
                else {
                    mpz_class v((long)dfast);
                    keep = s_unit_part(v, sprimes);
                }
            } else {
                // modular prefilter, then exact
                for (long q : aux) {
                    long dm;
                    if (!disc_mod_q(c, q, dm)) continue;
                    if (dm == 0) {
                        // q divides the discriminant (or disc = 0)
                        keep = false;
                        break;
                    }
                }
                if (keep) {
                    std::vector<mpq_class> qc(c.begin(), c.end());
                    Poly f = Poly::from_q(qc);
                    if (f.degree() != (int)deg)
                        keep = false;
                    else {
                        FieldElement D = disc_poly(f);
                        mpq_class dd = D.a();
                        if (dd == 0)
                            keep = false;
                        else {
                            // form discriminant: lc^2 disc(f) when the odd
                            // homogenization pads a root at infinity
                            mpq_class dform = dd;
                            if (odd_case) dform *= f.lc().a() * f.lc().a();
                            keep = s_unit_part(dform.get_num(), sprimes) &&
                                   dform.get_den() == 1;
                        }
                    }
                }
            }
            if (keep) {
                std::vector<mpq_class> qc(c.begin(), c.end());
                Poly f = Poly::from_q(qc);
                if (f.degree() == (int)deg && separable(f)) {
                    CurveRecord rec = canonical_form(f, g, sprimes);
                    rec.cell = cell.id();
                    absorb(std::move(rec), true);
                }
            }
            // odometer
            bool done = true;
            for (unsigned i = 0; i < vary; ++i) {
                if (idx[i] < B) {
                    ++idx[i];
                    for (unsigned j = 0; j < i; ++j) idx[j] = -B;
                    done = false;
                    break;
                }
            }
            if (vary == 0 || done) break;
        }
    };

    std::atomic<size_t> next{0};
    std::exception_ptr worker_error;
    std::mutex error_mtx;
    auto worker = [&]() {
        try {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= cells.size()) break;
                const Cell& cell = cells[i];
                if (done_cells.count(cell.id())) continue;
                process_cell(cell);
                if (journal.is_open()) {
                    std::lock_guard<std::mutex> lk(sink_mtx);
                    ordered_json j;
                    j["cell_done"] = cell.id();
                    journal << j.dump() << "\n" << std::flush;
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lk(error_mtx);
            if (!worker_error) worker_error = std::current_exception();
            next.store(cells.size());
        }
    };
    unsigned jobs = std::max(1u, spec.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> ts;
        for (unsigned i = 0; i < jobs; ++i) ts.emplace_back(worker);
        for (auto& t : ts) t.join();
    }
    if (worker_error) std::rethrow_exception(worker_error);

    Catalog cat;
    cat.genus = g;
    cat.S_primes = sprimes;
    cat.box = B;
    cat.degrees = spec.degree_cases();
    cat.tool_version = "hct 0.1.0";
    for (auto& [k, r] : best_by_key) cat.records.push_back(r);
    std::sort(cat.records.begin(), cat.records.end(),
              [](const CurveRecord& a, const CurveRecord& b) {
                  if (!(a.f == b.f)) return a.lex_before(b);
                  return a.dedup_key() < b.dedup_key();
              });
    return cat;
}

void catalog_verify(const Catalog& cat) {
    NumberField Q = NumberField::rationals();
    std::vector<mpz_class> tprimes = cat.S_primes;
    tprimes.push_back(2);
    for (const auto& r : cat.records) {
        Poly f = Poly::from_q(r.f);
        FieldElement d = model_discriminant(f, Poly(Q), r.genus);
        mpq_class dq = d.a();
        if (dq == 0 || dq.get_den() != 1)
            throw std::domain_error("catalog record is not an integral model");
        mpz_class num = dq.get_num();
        if ((num < 0) != (r.delta_sign < 0))
            throw std::domain_error("catalog discriminant sign mismatch");
        mpz_class a = abs(num);
        for (const auto& [p, e] : r.delta_factors) {
            bool in_T = false;
            for (const auto& t : tprimes)
                if (t == p) in_T = true;
            if (!in_T)
                throw std::domain_error("catalog discriminant support left T");
            if (remove_factor(a, p) != e)
                throw std::domain_error("catalog discriminant factor mismatch");
        }
        if (a != 1) throw std::domain_error("catalog discriminant is not a T-unit");
    }
}

std::vector<OracleClassG1> oracle_enumerate_g1(const std::vector<mpz_class>& S_primes,
                                               long box) {
    // independent route: machine-word discriminant, trial-division unit
    // test, pairwise exact isomorphism on depressed coordinates
    if (box > 1000) throw resource_limit("oracle box too large");
    std::vector<long long> sp;
    for (const auto& p : S_primes) sp.push_back(p.get_si());
    std::vector<OracleClassG1> reps;
    std::vector<std::pair<mpq_class, mpq_class>> rep_pairs;
    for (long a = -box; a <= box; ++a)
        for (long b = -box; b <= box; ++b)
            for (long c = -box; c <= box; ++c) {
                long long D = cubic_disc_ll(a, b, c);
                if (D == 0) continue;
                long long v = D < 0 ? -D : D;
                for (long long p : sp)
                    while (v % p == 0) v /= p;
                if (v != 1) continue;
                // depress: A = b - a^2/3, B = c - ab/3 + 2a^3/27
                mpq_class A = mpq_class(b) - mpq_class(mpz_class(a) * a) / 3;
                mpq_class Bq = mpq_class(c) - mpq_class(mpz_class(a) * b) / 3 +
                               mpq_class(2 * mpz_class(a) * a * a) / 27;
                A.canonicalize();
                Bq.canonicalize();
                bool found = false;
                for (const auto& rp : rep_pairs)
                    if (is_isomorphic_g1(rp.first, rp.second, A, Bq)) {
                        found = true;
                        break;
                    }
                if (!found) {
                    reps.push_back({a, b, c});
                    rep_pairs.emplace_back(A, Bq);
                }
            }
    return reps;
}

}  // namespace hct
