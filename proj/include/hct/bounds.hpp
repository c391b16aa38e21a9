#ifndef HCT_BOUNDS_HPP
#define HCT_BOUNDS_HPP

#include <mpfr.h>

#include <optional>
#include <string>
#include <vector>

#include "hct/places.hpp"

namespace hct {

// Outward-rounded interval [lo, hi] in natural-log space: the natural log
// of the multiplicative bound is certified to lie inside. For formulas that
// already denote heights (which are logs), the value itself is stored.
class CertLog {
public:
    CertLog();
    explicit CertLog(mpfr_prec_t prec);
    CertLog(const CertLog&);
    CertLog(CertLog&&) noexcept;
    CertLog& operator=(CertLog);
    ~CertLog();

    static CertLog exact_ui(unsigned long x, mpfr_prec_t prec);
    static CertLog exact_z(const mpz_class& x, mpfr_prec_t prec);
    static CertLog exact_q(const mpq_class& x, mpfr_prec_t prec);
    // log of a positive integer / rational
    static CertLog log_z(const mpz_class& x, mpfr_prec_t prec);
    static CertLog log_q(const mpq_class& x, mpfr_prec_t prec);

    mpfr_prec_t precision() const { return prec_; }
    double lo_d() const;
    double hi_d() const;
    std::string lo_str(int digits = 25) const;
    std::string hi_str(int digits = 25) const;
    // endpoints divided by log 10 / log 2 (outward)
    CertLog to_log10() const;
    CertLog to_log2() const;

    bool contains(const CertLog& inner) const;  // inner subseteq this
    bool certainly_leq(const CertLog& other) const { return cmp_hi_lo(other) <= 0; }
    double rel_width() const;

    friend CertLog operator+(const CertLog& a, const CertLog& b);
    friend CertLog operator*(const CertLog& a, const CertLog& b);
    CertLog mul_q(const mpq_class& c) const;  // c >= 0
    CertLog mul_z(const mpz_class& c) const;
    static CertLog max_of(const CertLog& a, const CertLog& b);
    CertLog log() const;       // endpoints must be positive
    CertLog exp() const;
    CertLog sqrt() const;
    CertLog pow_interval(const CertLog& e) const;  // base > 0

    mpfr_srcptr lo() const { return lo_; }
    mpfr_srcptr hi() const { return hi_; }
    mpfr_ptr lo() { return lo_; }
    mpfr_ptr hi() { return hi_; }

private:
    int cmp_hi_lo(const CertLog& other) const;
    mpfr_prec_t prec_;
    mpfr_t lo_, hi_;
};

// Inputs of the bound formulas. Place data is carried exactly; the real
// quantities lambda_S, sigma, n_S are evaluated as certified intervals.
struct BoundInputs {
    int d = 1;               // [K:Q]
    mpz_class D_K = 1;       // |disc K|
    unsigned g = 1;          // genus
    long s = 0;              // number of finite places
    mpz_class N_S = 1;       // prod N(v)
    mpz_class p = 1;         // max residue characteristic (1 when empty)
    std::vector<mpz_class> place_norms;  // N(v) per place, for n_S
    unsigned long h_S = 1;
    std::optional<mpq_class> c6, c7, kappa;  // external constants, never defaulted

    static BoundInputs from(const NumberField& K, const PlaceSet& S, unsigned g);

    mpz_class nu() const;  // 6(2g+1)(2g)(2g-1) d^2
    CertLog lambda_S(mpfr_prec_t prec) const;  // log2 h_S
    CertLog sigma(mpfr_prec_t prec) const;     // s + lambda_S + 1
    CertLog n_S(mpfr_prec_t prec) const;       // prod log N(v), empty = 1
};

mpz_class mu_of(unsigned n, int d);  // 3n(n-1)(n-2)d

// ln of (nu sigma)^{5 nu sigma} N_S^{nu/2} D_K^{nu(lambda+1)/4}
CertLog theorem_bound_i(const BoundInputs& in, mpfr_prec_t prec);
// ln of (nu sigma)^{c(2nu)^3 sigma^4} p^{(3nu)^3 sigma^4} D_K^{(3nu)^3 sigma^4};
// requires c6, c7
CertLog theorem_bound_ii(const BoundInputs& in, mpfr_prec_t prec);
// ln of the class count bound exp(theorem-ii shape): equals exp of the above
CertLog corollary_count_bound(const BoundInputs& in, mpfr_prec_t prec);
// ln N <= 10 d^2 g (ln 5 + ln Omega), ln Omega given
CertLog count_via_heightbox(const CertLog& log_omega, int d, unsigned g);
// ln of the count bound for curves with a rational Weierstrass point:
// (nu sigma)^{6 nu sigma} N_S^{nu/2} D_K^{nu(lambda+1)/4}
CertLog wp_count_bound(const BoundInputs& in, mpfr_prec_t prec);
// 2^22 9^g ln 2 + theorem_bound_i
CertLog faltings_bound(const BoundInputs& in, mpfr_prec_t prec);
// (50 g (t+d)!)^2 (d D_K)^d n_T
CertLog propgeom_disc_bound(unsigned g, long t, int d, const mpz_class& D_K,
                            const CertLog& n_T);
// (10 card!)^2 (d D_K)^d n
CertLog effgen_bound(unsigned long card, int d, const mpz_class& D_K,
                     const CertLog& n);
// D_K^{1/2} max(2d, d ln D_K)^{d-1} n / (d-1)!
CertLog regulator_bound(int d, const mpz_class& D_K, const CertLog& n,
                        mpfr_prec_t prec);
// 7 kappa R N_T^m max(1, ln R)
CertLog omega_gyoryyu(unsigned long m, int d, long t, const mpz_class& N_T,
                      const CertLog& R_bound, const mpq_class& kappa);
// (7n)^{-2} (c6 (d+t) n)^{c7 d n^8 (t+1)^2} p_T^{2 d n^8 (t+1)^2} D_K^{2 n^8 (t+1)}
CertLog omega_evgy(unsigned n, int d, long t, const mpz_class& p_T,
                   const mpz_class& D_K, const mpq_class& c6, const mpq_class& c7,
                   mpfr_prec_t prec);
// h_disc + (N_T D_K^{1/3})^mu (mu(t+1))^{4 mu (t+1)}
CertLog propeff_i_bound(unsigned n, int d, long t, const mpz_class& N_T,
                        const mpz_class& D_K, const CertLog& h_disc,
                        mpfr_prec_t prec);

// bounds satisfied by any valid PID extension T of S:
// t <= d sigma, N_T <= (2 N_S D_K^{lambda/2})^d, p_T <= max(2, p, sqrt(D_K))
struct TGuarantees {
    CertLog t_bound, N_T_bound, p_T_bound;
};
TGuarantees t_guarantees(const BoundInputs& in, mpfr_prec_t prec);
// checks an actual T against them (exact counts against certified uppers)
bool t_satisfies(const TGuarantees& g, const PlaceSet& T);

}  // namespace hct

#endif
