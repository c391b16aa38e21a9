#include "hct/util.hpp"

#include <algorithm>

namespace hct {

long valuation_z(const mpz_class& n, const mpz_class& p) {
    if (n == 0) throw std::domain_error("valuation of zero");
    mpz_class m;
    return (long)mpz_remove(m.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

long valuation_q(const mpq_class& x, const mpz_class& p) {
    if (x == 0) throw std::domain_error("valuation of zero");
    return valuation_z(x.get_num(), p) - valuation_z(x.get_den(), p);
}

bool is_square_z(const mpz_class& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

bool exact_root_q(const mpq_class& x, unsigned long k, mpq_class& out) {
    if (x < 0) return false;
    mpz_class rn, rd;
    if (!mpz_root(rn.get_mpz_t(), x.get_num().get_mpz_t(), k)) return false;
    if (!mpz_root(rd.get_mpz_t(), x.get_den().get_mpz_t(), k)) return false;
    out = mpq_class(rn, rd);
    out.canonicalize();
    return true;
}

mpq_class pow_q(const mpq_class& x, long e) {
    if (e == 0) return 1;
    if (x == 0) {
        if (e < 0) throw std::domain_error("0 to a negative power");
        return 0;
    }
    mpz_class n, d;
    unsigned long a = (unsigned long)(e < 0 ? -e : e);
    mpz_pow_ui(n.get_mpz_t(), x.get_num().get_mpz_t(), a);
    mpz_pow_ui(d.get_mpz_t(), x.get_den().get_mpz_t(), a);
    mpq_class r = (e > 0) ? mpq_class(n, d) : mpq_class(d, n);
    r.canonicalize();
    return r;
}

mpz_class pow_z(const mpz_class& x, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), e);
    return r;
}

bool is_prime_z(const mpz_class& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

namespace {

mpz_class pollard_rho(const mpz_class& n) {
    // n odd composite, no small factors
    for (unsigned long c = 1;; ++c) {
        mpz_class x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            mpz_class diff = x - y;
            if (diff < 0) diff = -diff;
            if (diff == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_rec(const mpz_class& n, std::vector<mpz_class>& primes) {
    if (n == 1) return;
    if (is_prime_z(n)) {
        primes.push_back(n);
        return;
    }
    mpz_class d = pollard_rho(n);
    factor_rec(d, primes);
    factor_rec(n / d, primes);
}

}  // namespace

std::vector<std::pair<mpz_class, unsigned long>> factor_z(const mpz_class& n_in) {
    mpz_class n = abs(n_in);
    if (n == 0) throw std::domain_error("factor of zero");
    std::vector<std::pair<mpz_class, unsigned long>> out;
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul}) {
        if (n == 1) return out;
        mpz_class P = p;
        long e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), P.get_mpz_t())) {
            n /= P;
            ++e;
        }
        if (e) out.emplace_back(P, (unsigned long)e);
    }
    // trial division up to 10^6, then rho
    mpz_class p = 41;
    while (n > 1 && p * p <= n && p < 1000000) {
        long e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, (unsigned long)e);
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    }
    if (n > 1) {
        std::vector<mpz_class> primes;
        factor_rec(n, primes);
        std::sort(primes.begin(), primes.end());
        for (size_t i = 0; i < primes.size();) {
            size_t j = i;
            while (j < primes.size() && primes[j] == primes[i]) ++j;
            out.emplace_back(primes[i], (unsigned long)(j - i));
            i = j;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_squarefree_ul(unsigned long n) {
    if (n == 0) return false;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
        while (n % p == 0) n /= p;
    }
    return true;
}

long remove_factor(mpz_class& n, const mpz_class& p) {
    mpz_class m;
    long e = (long)mpz_remove(m.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    n = m;
    return e;
}

std::string q_to_string(const mpq_class& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

}  // namespace hct
