#ifndef HCT_PLACES_HPP
#define HCT_PLACES_HPP

#include <optional>
#include <string>
#include <vector>

#include "hct/numberfield.hpp"
#include "hct/qform.hpp"

namespace hct {

// A finite place of K, identified with a prime ideal of O_K.
struct PrimeIdeal {
    NumberField K = NumberField::rationals();
    mpz_class ell;  // residue characteristic
    enum class Kind { rational_prime, split, inert, ramified } kind =
        Kind::rational_prime;
    mpz_class norm;  // ell, or ell^2 when inert
    // root of the minimal polynomial of omega mod ell (split/ramified);
    // distinguishes the two places above a split prime
    mpz_class root;

    // omega - root, together with ell generates the ideal
    std::optional<FieldElement> second_generator() const;
    std::string to_string() const;

    friend bool operator==(const PrimeIdeal& p, const PrimeIdeal& q) {
        return p.K == q.K && p.ell == q.ell && p.kind == q.kind && p.root == q.root;
    }
    friend bool operator<(const PrimeIdeal& p, const PrimeIdeal& q) {
        if (p.ell != q.ell) return p.ell < q.ell;
        return p.root < q.root;
    }
};

// all places of K above the rational prime ell, in canonical order
std::vector<PrimeIdeal> places_above(const NumberField& K, const mpz_class& ell);

// exact order of v in the fractional ideal (x); x != 0
long valuation(const FieldElement& x, const PrimeIdeal& v);

// derived statistics of a finite place set (empty products are 1)
struct PlaceStats {
    long s = 0;
    mpz_class N_S = 1;
    mpz_class p = 1;  // max residue characteristic, 1 when empty
    unsigned long h_S = 1;
    double lambda_S = 0;  // log2 h_S
    double sigma = 1;     // s + lambda_S + 1
    double n_S = 1;       // prod log N(v), empty product 1
};

class PlaceSet {
public:
    explicit PlaceSet(NumberField K) : K_(K) {}
    PlaceSet(NumberField K, std::vector<PrimeIdeal> places);

    const NumberField& field() const { return K_; }
    const std::vector<PrimeIdeal>& places() const { return places_; }
    long size() const { return (long)places_.size(); }
    bool contains(const PrimeIdeal& v) const;
    bool contains_char(const mpz_class& ell) const;
    PlaceSet with(const PrimeIdeal& v) const;
    PlaceSet unite(const PlaceSet& other) const;

    PlaceStats stats() const;
    std::string to_string() const;

    friend bool operator==(const PlaceSet& a, const PlaceSet& b) {
        return a.K_ == b.K_ && a.places_ == b.places_;
    }

private:
    NumberField K_;
    std::vector<PrimeIdeal> places_;  // sorted, unique
};

struct IdealClassGroup {
    unsigned long h_K = 1;
    std::vector<QuadForm> representatives;  // reduced forms of disc -D_K; empty over Q
};

IdealClassGroup class_group(const NumberField& K);

// ideal class of v as a reduced form; identity for principal (and all
// rational / inert) places
QuadForm ideal_class_form(const PrimeIdeal& v);

// order of Cl(O_K) modulo the subgroup generated by the classes of S
unsigned long s_class_number(const NumberField& K, const PlaceSet& S);

// T >= S with s_class_number(K, T) = 1; adds primes of norm <= sqrt(D_K)
// found by Minkowski-bound search, halving the class number each step
PlaceSet extend_to_pid(const NumberField& K, const PlaceSet& S);

struct SUnitGroup {
    FieldElement zeta;  // torsion generator
    unsigned long torsion_order = 2;
    std::vector<FieldElement> gens;         // one per finite place of T
    std::vector<unsigned long> class_orders;  // m_v: order of the class of v
    std::vector<Height> gen_heights;
};

// generators of the T-units: zeta plus, for each v in T, a generator of
// v^{m_v} with m_v the order of the class of v
SUnitGroup sunit_group(const NumberField& K, const PlaceSet& T);

// T with every residue characteristic of T (and 2) invertible in O_T:
// adds all places above those rational primes
PlaceSet close_under_char_and_two(const PlaceSet& T);

}  // namespace hct

#endif
