#ifndef HCT_ENUMERATE_HPP
#define HCT_ENUMERATE_HPP

#include <array>
#include <iosfwd>
#include <map>

#include "hct/reduction.hpp"

namespace hct {

// search box over Q: genus, S (finite rational primes), coefficient bound,
// degree cases (subset of {2g+1, 2g+2})
struct SearchSpec {
    unsigned genus = 1;
    std::vector<mpz_class> S_primes;
    long box = 10;
    std::vector<unsigned> degrees;  // default: both 2g+1 and 2g+2
    unsigned jobs = 1;
    unsigned long max_candidates = 400000000ul;

    PlaceSet S_places() const;
    PlaceSet T_places() const;  // S together with 2
    std::vector<unsigned> degree_cases() const;
};

struct CurveRecord {
    unsigned genus = 1;
    std::string field = "Q";
    std::vector<mpq_class> f;  // canonical coefficients c0..c_deg
    int delta_sign = 1;
    std::vector<std::pair<mpz_class, long>> delta_factors;
    std::string height_log10;
    bool wp_yes = false;
    std::vector<std::string> fingerprint;
    std::string tier;  // "exact" | "fingerprint" | "heuristic"
    std::string cell;

    std::string dedup_key() const;
    std::string fingerprint_key() const;
    bool lex_before(const CurveRecord& o) const;
};

// canonical short pair (A, B) of y^2 = x^3 + A x + B up to u^4, u^6 scaling
std::pair<mpz_class, mpz_class> canonical_short_pair(const mpq_class& A,
                                                     const mpq_class& B);
// depressed short pair of a monic cubic x^3 + a x^2 + b x + c
std::pair<mpq_class, mpq_class> depressed_pair(const Poly& cubic);

// exact Q-isomorphism of y^2 = x^3 + a x + b models: a2 = u^4 a1, b2 = u^6 b1
bool is_isomorphic_g1(const mpq_class& a1, const mpq_class& b1,
                      const mpq_class& a2, const mpq_class& b2);

// invariants of the binary sextic attached to a genus-2 model, of weights
// 2, 4, 6 via transvectants and the discriminant in the weight-10 slot
std::array<mpq_class, 4> genus2_invariants(const BinaryForm& sextic);
// weighted-ratio fingerprint (invariant under GL2(Q) pullback and scaling)
std::vector<std::string> genus2_fingerprint(const Poly& f);

// canonicalization pipeline over Q: window twist removal, then trace
// centering (odd monic case) or SL2(Z) covariant reduction (even case),
// iterated to its fixed point. Idempotent.
CurveRecord canonical_form(const Poly& f, unsigned g,
                           const std::vector<mpz_class>& S_primes);

struct Catalog {
    // header data
    unsigned genus = 1;
    std::vector<mpz_class> S_primes;
    long box = 0;
    std::vector<unsigned> degrees;
    std::string tool_version;
    std::string generated_at;  // normalized away in comparisons
    std::vector<CurveRecord> records;

    std::string dump_jsonl(bool with_timestamp = true) const;
    static Catalog parse_jsonl(std::istream& in);
};

// full box search: model discriminant's non-2^{4g} part must be an S-unit;
// canonicalized, deduplicated, deterministically ordered. Resumable via the
// journal file when journal_path is nonempty.
Catalog enumerate_curves(const SearchSpec& spec, const std::string& journal_path = "");

// re-derives every record's model discriminant from its polynomial and
// compares with the stored sign and factorization; throws on mismatch
void catalog_verify(const Catalog& cat);

// independent oracle: coefficient loop with the closed-form discriminant,
// trial-division unit test and pairwise exact isomorphism dedup only
struct OracleClassG1 {
    long a2, a1, a0;  // representative monic cubic x^3 + a2 x^2 + a1 x + a0
};
std::vector<OracleClassG1> oracle_enumerate_g1(const std::vector<mpz_class>& S_primes,
                                               long box);

}  // namespace hct

#endif
