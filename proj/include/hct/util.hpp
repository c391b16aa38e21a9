#ifndef HCT_UTIL_HPP
#define HCT_UTIL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hct {

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& m) : std::runtime_error(m) {}
};
struct unsupported_field : std::runtime_error {
    explicit unsupported_field(const std::string& m) : std::runtime_error(m) {}
};
struct resource_limit : std::runtime_error {
    explicit resource_limit(const std::string& m) : std::runtime_error(m) {}
};

// order of p in n; n != 0
long valuation_z(const mpz_class& n, const mpz_class& p);
long valuation_q(const mpq_class& x, const mpz_class& p);

bool is_square_z(const mpz_class& n);
// exact k-th root of a nonnegative rational, if it exists
bool exact_root_q(const mpq_class& x, unsigned long k, mpq_class& out);

mpq_class pow_q(const mpq_class& x, long e);
mpz_class pow_z(const mpz_class& x, unsigned long e);

// prime factorization, exponents > 0, ascending primes; |n| >= 1, sign ignored
std::vector<std::pair<mpz_class, unsigned long>> factor_z(const mpz_class& n);

bool is_prime_z(const mpz_class& n);
bool is_squarefree_ul(unsigned long n);

// strips all factors of p from n (n != 0); returns the multiplicity
long remove_factor(mpz_class& n, const mpz_class& p);

std::string q_to_string(const mpq_class& x);

}  // namespace hct

#endif
