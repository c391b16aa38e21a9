#include "hct/bounds.hpp"

#include <algorithm>

namespace hct {

CertLog::CertLog() : CertLog(128) {}

CertLog::CertLog(mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

CertLog::CertLog(const CertLog& o) : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

CertLog::CertLog(CertLog&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

CertLog& CertLog::operator=(CertLog o) {
    std::swap(prec_, o.prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
}

CertLog::~CertLog() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

CertLog CertLog::exact_ui(unsigned long x, mpfr_prec_t prec) {
    CertLog r(prec);
    mpfr_set_ui(r.lo_, x, MPFR_RNDD);
    mpfr_set_ui(r.hi_, x, MPFR_RNDU);
    return r;
}

CertLog CertLog::exact_z(const mpz_class& x, mpfr_prec_t prec) {
    CertLog r(prec);
    mpfr_set_z(r.lo_, x.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, x.get_mpz_t(), MPFR_RNDU);
    return r;
}

CertLog CertLog::exact_q(const mpq_class& x, mpfr_prec_t prec) {
    CertLog r(prec);
    mpfr_set_q(r.lo_, x.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, x.get_mpq_t(), MPFR_RNDU);
    return r;
}

CertLog CertLog::log_z(const mpz_class& x, mpfr_prec_t prec) {
    if (x <= 0) throw std::domain_error("log of nonpositive");
    return exact_z(x, prec).log();
}

CertLog CertLog::log_q(const mpq_class& x, mpfr_prec_t prec) {
    if (x <= 0) throw std::domain_error("log of nonpositive");
    return exact_q(x, prec).log();
}

double CertLog::lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double CertLog::hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

std::string CertLog::lo_str(int digits) const {
    char buf[160];
    mpfr_snprintf(buf, sizeof buf, "%.*RDg", digits, lo_);
    return buf;
}

std::string CertLog::hi_str(int digits) const {
    char buf[160];
    mpfr_snprintf(buf, sizeof buf, "%.*RUg", digits, hi_);
    return buf;
}

CertLog CertLog::to_log10() const {
    CertLog ln10(prec_ + 8);
    mpfr_set_ui(ln10.lo(), 10, MPFR_RNDD);
    mpfr_set_ui(ln10.hi(), 10, MPFR_RNDU);
    mpfr_log(ln10.lo(), ln10.lo(), MPFR_RNDD);
    mpfr_log(ln10.hi(), ln10.hi(), MPFR_RNDU);
    CertLog r(prec_);
    // dividing by an enclosing interval of ln 10 keeps the outward rounding
    mpfr_div(r.lo_, lo_, ln10.hi(), MPFR_RNDD);
    mpfr_div(r.hi_, hi_, ln10.lo(), MPFR_RNDU);
    if (mpfr_sgn(lo_) < 0) mpfr_div(r.lo_, lo_, ln10.lo(), MPFR_RNDD);
    if (mpfr_sgn(hi_) < 0) mpfr_div(r.hi_, hi_, ln10.hi(), MPFR_RNDU);
    return r;
}

CertLog CertLog::to_log2() const {
    CertLog ln2(prec_ + 8);
    mpfr_const_log2(ln2.lo(), MPFR_RNDD);
    mpfr_const_log2(ln2.hi(), MPFR_RNDU);
    CertLog r(prec_);
    mpfr_div(r.lo_, lo_, ln2.hi(), MPFR_RNDD);
    mpfr_div(r.hi_, hi_, ln2.lo(), MPFR_RNDU);
    if (mpfr_sgn(lo_) < 0) mpfr_div(r.lo_, lo_, ln2.lo(), MPFR_RNDD);
    if (mpfr_sgn(hi_) < 0) mpfr_div(r.hi_, hi_, ln2.hi(), MPFR_RNDU);
    return r;
}

bool CertLog::contains(const CertLog& inner) const {
    return mpfr_cmp(lo_, inner.lo_) <= 0 && mpfr_cmp(inner.hi_, hi_) <= 0;
}

int CertLog::cmp_hi_lo(const CertLog& other) const {
    return mpfr_cmp(hi_, other.lo_);
}

double CertLog::rel_width() const {
    mpfr_t w, m;
    mpfr_init2(w, prec_);
    mpfr_init2(m, prec_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    mpfr_add(m, hi_, lo_, MPFR_RNDN);
    mpfr_div_ui(m, m, 2, MPFR_RNDN);
    double r;
    if (mpfr_zero_p(m))
        r = mpfr_get_d(w, MPFR_RNDU);
    else {
        mpfr_div(w, w, m, MPFR_RNDU);
        mpfr_abs(w, w, MPFR_RNDU);
        r = mpfr_get_d(w, MPFR_RNDU);
    }
    mpfr_clear(w);
    mpfr_clear(m);
    return r;
}

CertLog operator+(const CertLog& a, const CertLog& b) {
    CertLog r(std::max(a.prec_, b.prec_));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

CertLog operator*(const CertLog& a, const CertLog& b) {
    CertLog r(std::max(a.prec_, b.prec_));
    mpfr_t c[4];
    for (auto& x : c) mpfr_init2(x, r.prec_);
    mpfr_mul(c[0], a.lo_, b.lo_, MPFR_RNDD);
    mpfr_mul(c[1], a.lo_, b.hi_, MPFR_RNDD);
    mpfr_mul(c[2], a.hi_, b.lo_, MPFR_RNDD);
    mpfr_mul(c[3], a.hi_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, c[0], c[1], MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, c[2], MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, c[3], MPFR_RNDD);
    mpfr_mul(c[0], a.lo_, b.lo_, MPFR_RNDU);
    mpfr_mul(c[1], a.lo_, b.hi_, MPFR_RNDU);
    mpfr_mul(c[2], a.hi_, b.lo_, MPFR_RNDU);
    mpfr_mul(c[3], a.hi_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, c[0], c[1], MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, c[2], MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, c[3], MPFR_RNDU);
    for (auto& x : c) mpfr_clear(x);
    return r;
}

CertLog CertLog::mul_q(const mpq_class& c) const {
    return *this * CertLog::exact_q(c, prec_);
}

CertLog CertLog::mul_z(const mpz_class& c) const {
    return *this * CertLog::exact_z(c, prec_);
}

CertLog CertLog::max_of(const CertLog& a, const CertLog& b) {
    CertLog r(std::max(a.prec_, b.prec_));
    mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

CertLog CertLog::log() const {
    if (mpfr_sgn(lo_) <= 0) throw std::domain_error("log of nonpositive interval");
    CertLog r(prec_);
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

CertLog CertLog::exp() const {
    CertLog r(prec_);
    mpfr_exp(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, hi_, MPFR_RNDU);
    return r;
}

CertLog CertLog::sqrt() const {
    if (mpfr_sgn(lo_) < 0) throw std::domain_error("sqrt of negative interval");
    CertLog r(prec_);
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

CertLog CertLog::pow_interval(const CertLog& e) const {
    // base > 0; exponent any sign: pow is monotone in base, and in the
    // exponent with direction given by base >= 1 or < 1. Outward-safe via
    // the 4-corner evaluation.
    if (mpfr_sgn(lo_) <= 0) throw std::domain_error("pow of nonpositive base");
    CertLog r(std::max(prec_, e.prec_));
    mpfr_t c[4];
    for (auto& x : c) mpfr_init2(x, r.prec_);
    mpfr_pow(c[0], lo_, e.lo(), MPFR_RNDD);
    mpfr_pow(c[1], lo_, e.hi(), MPFR_RNDD);
    mpfr_pow(c[2], hi_, e.lo(), MPFR_RNDD);
    mpfr_pow(c[3], hi_, e.hi(), MPFR_RNDD);
    mpfr_min(r.lo(), c[0], c[1], MPFR_RNDD);
    mpfr_min(r.lo(), r.lo(), c[2], MPFR_RNDD);
    mpfr_min(r.lo(), r.lo(), c[3], MPFR_RNDD);
    mpfr_pow(c[0], lo_, e.lo(), MPFR_RNDU);
    mpfr_pow(c[1], lo_, e.hi(), MPFR_RNDU);
    mpfr_pow(c[2], hi_, e.lo(), MPFR_RNDU);
    mpfr_pow(c[3], hi_, e.hi(), MPFR_RNDU);
    mpfr_max(r.hi(), c[0], c[1], MPFR_RNDU);
    mpfr_max(r.hi(), r.hi(), c[2], MPFR_RNDU);
    mpfr_max(r.hi(), r.hi(), c[3], MPFR_RNDU);
    for (auto& x : c) mpfr_clear(x);
    return r;
}

BoundInputs BoundInputs::from(const NumberField& K, const PlaceSet& S, unsigned g) {
    BoundInputs in;
    in.d = K.degree();
    in.D_K = K.disc_abs();
    in.g = g;
    auto st = S.stats();
    in.s = st.s;
    in.N_S = st.N_S;
    in.p = st.p;
    in.h_S = st.h_S;
    for (const auto& v : S.places()) in.place_norms.push_back(v.norm);
    return in;
}

mpz_class BoundInputs::nu() const {
    mpz_class gg(g);
    return 6 * (2 * gg + 1) * (2 * gg) * (2 * gg - 1) * d * d;
}

mpz_class mu_of(unsigned n, int d) {
    mpz_class nn(n);
    return 3 * nn * (nn - 1) * (nn - 2) * d;
}

CertLog BoundInputs::lambda_S(mpfr_prec_t prec) const {
    if (h_S == 1) return CertLog::exact_ui(0, prec);
    return CertLog::log_z(mpz_class(h_S), prec + 8).to_log2();
}

CertLog BoundInputs::sigma(mpfr_prec_t prec) const {
    return CertLog::exact_ui((unsigned long)s + 1, prec) + lambda_S(prec);
}

CertLog BoundInputs::n_S(mpfr_prec_t prec) const {
    if (place_norms.empty()) return CertLog::exact_ui(1, prec);
    CertLog r = CertLog::exact_ui(1, prec);
    for (const auto& N : place_norms) r = r * CertLog::log_z(N, prec);
    return r;
}

CertLog theorem_bound_i(const BoundInputs& in, mpfr_prec_t prec) {
    mpz_class nu = in.nu();
    CertLog sig = in.sigma(prec);
    CertLog nusig = sig.mul_z(nu);
    CertLog t1 = nusig.mul_z(5) * nusig.log();
    CertLog t2 = CertLog::log_z(in.N_S, prec).mul_q(mpq_class(nu, 2));
    CertLog lam1 = in.lambda_S(prec) + CertLog::exact_ui(1, prec);
    CertLog t3 = lam1.mul_q(mpq_class(nu, 4)) * CertLog::log_z(in.D_K, prec);
    return t1 + t2 + t3;
}

CertLog theorem_bound_ii(const BoundInputs& in, mpfr_prec_t prec) {
    if (!in.c6 || !in.c7)
        throw std::domain_error("theorem part (ii) requires the constants c6, c7");
    mpq_class c = *in.c6 * *in.c7;
    mpz_class nu = in.nu();
    CertLog sig = in.sigma(prec);
    CertLog sig4 = (sig * sig) * (sig * sig);
    CertLog nusig = sig.mul_z(nu);
    mpz_class e1 = 8 * nu * nu * nu;   // (2 nu)^3
    mpz_class e2 = 27 * nu * nu * nu;  // (3 nu)^3
    CertLog t1 = sig4.mul_z(e1).mul_q(c) * nusig.log();
    CertLog t2 = sig4.mul_z(e2) * CertLog::log_z(std::max(in.p, mpz_class(1)), prec);
    CertLog t3 = sig4.mul_z(e2) * CertLog::log_z(in.D_K, prec);
    return t1 + t2 + t3;
}

CertLog corollary_count_bound(const BoundInputs& in, mpfr_prec_t prec) {
    return theorem_bound_ii(in, prec).exp();
}

CertLog count_via_heightbox(const CertLog& log_omega, int d, unsigned g) {
    mpfr_prec_t prec = log_omega.precision();
    CertLog ln5 = CertLog::log_z(5, prec);
    mpz_class e = 10 * mpz_class(d) * d * g;
    return (ln5 + log_omega).mul_z(e);
}

CertLog wp_count_bound(const BoundInputs& in, mpfr_prec_t prec) {
    mpz_class nu = in.nu();
    CertLog sig = in.sigma(prec);
    CertLog nusig = sig.mul_z(nu);
    CertLog t1 = nusig.mul_z(6) * nusig.log();
    CertLog t2 = CertLog::log_z(in.N_S, prec).mul_q(mpq_class(nu, 2));
    CertLog lam1 = in.lambda_S(prec) + CertLog::exact_ui(1, prec);
    CertLog t3 = lam1.mul_q(mpq_class(nu, 4)) * CertLog::log_z(in.D_K, prec);
    return t1 + t2 + t3;
}

CertLog faltings_bound(const BoundInputs& in, mpfr_prec_t prec) {
    mpz_class lead = pow_z(2, 22) * pow_z(9, in.g);
    CertLog t = CertLog::log_z(2, prec).mul_z(lead);
    return t + theorem_bound_i(in, prec);
}

CertLog propgeom_disc_bound(unsigned g, long t, int d, const mpz_class& D_K,
                            const CertLog& n_T) {
    mpfr_prec_t prec = n_T.precision();
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), (unsigned long)(t + d));
    mpz_class c = 50 * mpz_class(g) * fact;
    mpz_class lead = c * c * pow_z(mpz_class(d) * D_K, (unsigned long)d);
    return n_T.mul_z(lead);
    (void)prec;
}

CertLog effgen_bound(unsigned long card, int d, const mpz_class& D_K,
                     const CertLog& n) {
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), card);
    mpz_class c = 10 * fact;
    mpz_class lead = c * c * pow_z(mpz_class(d) * D_K, (unsigned long)d);
    return n.mul_z(lead);
}

CertLog regulator_bound(int d, const mpz_class& D_K, const CertLog& n,
                        mpfr_prec_t prec) {
    if (d < 1) throw std::domain_error("degree must be >= 1");
    CertLog sq = CertLog::exact_z(D_K, prec).sqrt();
    CertLog inner = CertLog::max_of(CertLog::exact_z(2 * mpz_class(d), prec),
                                    CertLog::log_z(D_K, prec).mul_z(d));
    CertLog powed = (d == 1) ? CertLog::exact_ui(1, prec)
                             : inner.pow_interval(CertLog::exact_ui(
                                   (unsigned long)(d - 1), prec));
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), (unsigned long)(d - 1));
    return (sq * powed * n).mul_q(mpq_class(1, fact));
}

CertLog omega_gyoryyu(unsigned long m, int d, long t, const mpz_class& N_T,
                      const CertLog& R_bound, const mpq_class& kappa) {
    (void)d;
    (void)t;
    mpfr_prec_t prec = R_bound.precision();
    CertLog Nm = CertLog::exact_z(pow_z(N_T, m), prec);
    CertLog logR = CertLog::max_of(CertLog::exact_ui(1, prec), R_bound.log());
    return R_bound.mul_q(7 * kappa) * Nm * logR;
}

CertLog omega_evgy(unsigned n, int d, long t, const mpz_class& p_T,
                   const mpz_class& D_K, const mpq_class& c6, const mpq_class& c7,
                   mpfr_prec_t prec) {
    mpz_class n8 = pow_z(mpz_class(n), 8);
    mpz_class t1 = mpz_class(t) + 1;
    mpz_class e_big = c7.get_den() == 1
                          ? mpz_class(c7.get_num() * d * n8 * t1 * t1)
                          : mpz_class(0);
    CertLog base = CertLog::exact_q(c6 * (mpz_class(d) + t) * n, prec);
    CertLog pow1 =
        c7.get_den() == 1
            ? base.pow_interval(CertLog::exact_z(e_big, prec))
            : base.pow_interval(
                  CertLog::exact_q(c7 * d * (mpz_class(n8) * t1 * t1), prec));
    CertLog pow2 = CertLog::exact_z(std::max(p_T, mpz_class(1)), prec)
                       .pow_interval(CertLog::exact_z(2 * d * n8 * t1 * t1, prec));
    CertLog pow3 = CertLog::exact_z(D_K, prec)
                       .pow_interval(CertLog::exact_z(2 * n8 * t1, prec));
    mpq_class lead(1, 49 * mpz_class(n) * n);
    return (pow1 * pow2 * pow3).mul_q(lead);
}

CertLog propeff_i_bound(unsigned n, int d, long t, const mpz_class& N_T,
                        const mpz_class& D_K, const CertLog& h_disc,
                        mpfr_prec_t prec) {
    mpz_class mu = mu_of(n, d);
    CertLog cbrt = CertLog::exact_z(D_K, prec)
                       .pow_interval(CertLog::exact_q(mpq_class(1, 3), prec));
    CertLog term1 = (CertLog::exact_z(N_T, prec) * cbrt)
                        .pow_interval(CertLog::exact_z(mu, prec));
    mpz_class mt = mu * (mpz_class(t) + 1);
    CertLog term2 = CertLog::exact_z(mt, prec)
                        .pow_interval(CertLog::exact_z(4 * mt, prec));
    return h_disc + term1 * term2;
}

TGuarantees t_guarantees(const BoundInputs& in, mpfr_prec_t prec) {
    CertLog sig = in.sigma(prec);
    CertLog t_bound = sig.mul_z(in.d);
    CertLog lam_half = in.lambda_S(prec).mul_q(mpq_class(1, 2));
    CertLog dk_pow = CertLog::exact_z(in.D_K, prec).pow_interval(lam_half);
    CertLog base = dk_pow.mul_z(2 * in.N_S);
    CertLog N_T_bound = base.pow_interval(CertLog::exact_ui((unsigned long)in.d, prec));
    CertLog p_T_bound = CertLog::max_of(
        CertLog::exact_ui(2, prec),
        CertLog::max_of(CertLog::exact_z(std::max(in.p, mpz_class(1)), prec),
                        CertLog::exact_z(in.D_K, prec).sqrt()));
    return {t_bound, N_T_bound, p_T_bound};
}

bool t_satisfies(const TGuarantees& g, const PlaceSet& T) {
    auto st = T.stats();
    CertLog t = CertLog::exact_ui((unsigned long)st.s, g.t_bound.precision());
    CertLog N = CertLog::exact_z(st.N_S, g.N_T_bound.precision());
    CertLog p = CertLog::exact_z(st.p, g.p_T_bound.precision());
    return t.certainly_leq(g.t_bound) && N.certainly_leq(g.N_T_bound) &&
           p.certainly_leq(g.p_T_bound);
}

}  // namespace hct
