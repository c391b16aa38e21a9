#include "hct/parse.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace hct {

namespace {

std::string strip(const std::string& s) {
    std::string r;
    for (char c : s)
        if (!std::isspace((unsigned char)c)) r += c;
    return r;
}

struct Cursor {
    std::string s;
    size_t i = 0;
    bool eof() const { return i >= s.size(); }
    char peek() const { return eof() ? '\0' : s[i]; }
    char take() { return s[i++]; }
    bool accept(char c) {
        if (peek() == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw parse_error("expected '" + std::string(1, c) + "' in '" + s + "'");
    }
};

mpz_class read_integer(Cursor& c) {
    std::string digits;
    while (std::isdigit((unsigned char)c.peek())) digits += c.take();
    if (digits.empty()) throw parse_error("expected digits in '" + c.s + "'");
    return mpz_class(digits);
}

mpq_class read_unsigned_rational(Cursor& c) {
    mpz_class n = read_integer(c);
    if (c.accept('/')) {
        mpz_class d = read_integer(c);
        if (d == 0) throw parse_error("zero denominator");
        mpq_class q(n, d);
        q.canonicalize();
        return q;
    }
    return mpq_class(n);
}

}  // namespace

NumberField parse_field(const std::string& raw) {
    std::string s = strip(raw);
    if (s == "Q") return NumberField::rationals();
    Cursor c{s};
    for (char ch : std::string("Q(sqrt(")) c.expect(ch);
    bool neg = c.accept('-');
    mpz_class d = read_integer(c);
    c.expect(')');
    c.expect(')');
    if (!c.eof()) throw parse_error("trailing input in field '" + raw + "'");
    if (!neg)
        throw unsupported_field("real quadratic fields are not supported");
    if (d <= 0 || !d.fits_ulong_p()) throw parse_error("bad field parameter");
    try {
        return NumberField::imag_quadratic(d.get_ui());
    } catch (const std::domain_error& e) {
        throw parse_error(e.what());
    }
}

mpq_class parse_rational(const std::string& raw) {
    std::string s = strip(raw);
    Cursor c{s};
    bool neg = c.accept('-');
    if (!neg) c.accept('+');
    mpq_class q = read_unsigned_rational(c);
    if (!c.eof()) throw parse_error("trailing input in rational '" + raw + "'");
    return neg ? mpq_class(-q) : q;
}

FieldElement parse_element(const NumberField& K, const std::string& raw) {
    // sum of terms: rational | [rational*]sqrt(-d)
    std::string s = strip(raw);
    if (s.empty()) throw parse_error("empty element");
    Cursor c{s};
    mpq_class a = 0, b = 0;
    while (!c.eof()) {
        int sign = 1;
        if (c.accept('-'))
            sign = -1;
        else
            c.accept('+');
        mpq_class coeff = 1;
        bool have_coeff = false;
        if (std::isdigit((unsigned char)c.peek())) {
            coeff = read_unsigned_rational(c);
            have_coeff = true;
        }
        if (c.peek() == '*' || c.peek() == 's') {
            c.accept('*');
            for (char ch : std::string("sqrt(-")) c.expect(ch);
            mpz_class d = read_integer(c);
            c.expect(')');
            if (K.is_rationals() || d != mpz_class(K.d()))
                throw parse_error("sqrt parameter does not match the field");
            b += sign * coeff;
        } else {
            if (!have_coeff) throw parse_error("bad element '" + raw + "'");
            a += sign * coeff;
        }
    }
    return FieldElement(K, a, b);
}

PrimeIdeal parse_place(const NumberField& K, const std::string& raw) {
    std::string s = strip(raw);
    if (s.empty()) throw parse_error("empty place");
    if (s[0] != '(') {
        // bare prime
        Cursor c{s};
        mpz_class p = read_integer(c);
        if (!c.eof()) throw parse_error("trailing input in place '" + raw + "'");
        auto above = places_above(K, p);
        if (K.is_rationals()) return above[0];
        if (above.size() > 1)
            throw parse_error("prime " + p.get_str() +
                              " splits; specify a second generator");
        return above[0];
    }
    Cursor c{s};
    c.expect('(');
    mpz_class p = read_integer(c);
    if (c.accept(')')) {
        if (!c.eof()) throw parse_error("trailing input in place '" + raw + "'");
        auto above = places_above(K, p);
        if (above.size() > 1)
            throw parse_error("prime " + p.get_str() +
                              " splits; specify a second generator");
        return above[0];
    }
    c.expect(',');
    std::string rest = s.substr(c.i);
    if (rest.empty() || rest.back() != ')')
        throw parse_error("unterminated place '" + raw + "'");
    rest.pop_back();
    FieldElement gen = parse_element(K, rest);
    // identify the place containing gen above p
    for (const auto& v : places_above(K, p)) {
        if (v.kind == PrimeIdeal::Kind::inert) continue;
        if (valuation(gen, v) >= 1) return v;
    }
    throw parse_error("element does not generate a place above " + p.get_str());
}

PlaceSet parse_place_set(const NumberField& K, const std::string& raw) {
    std::string s = strip(raw);
    std::vector<PrimeIdeal> places;
    size_t i = 0;
    while (i < s.size()) {
        // split on commas at parenthesis depth zero
        int depth = 0;
        size_t j = i;
        while (j < s.size() && (depth > 0 || s[j] != ',')) {
            if (s[j] == '(') ++depth;
            if (s[j] == ')') --depth;
            ++j;
        }
        std::string tok = s.substr(i, j - i);
        if (!tok.empty()) places.push_back(parse_place(K, tok));
        i = j + 1;
    }
    return PlaceSet(K, places);
}

namespace {

struct Monomial {
    mpq_class coeff;
    unsigned long xp = 0, yp = 0;
};

std::vector<Monomial> parse_monomials(const std::string& raw, bool allow_y) {
    std::string s = strip(raw);
    if (s.empty()) throw parse_error("empty polynomial");
    Cursor c{s};
    std::vector<Monomial> out;
    while (!c.eof()) {
        Monomial m;
        int sign = 1;
        if (c.accept('-'))
            sign = -1;
        else
            c.accept('+');
        m.coeff = 1;
        bool saw_anything = false;
        if (std::isdigit((unsigned char)c.peek())) {
            m.coeff = read_unsigned_rational(c);
            saw_anything = true;
        }
        while (c.peek() == '*' || c.peek() == 'x' || c.peek() == 'y') {
            c.accept('*');
            char var = c.peek();
            if (var != 'x' && var != 'y')
                throw parse_error("expected a variable in '" + raw + "'");
            if (var == 'y' && !allow_y)
                throw parse_error("unexpected 'y' in a univariate polynomial");
            c.take();
            unsigned long e = 1;
            if (c.accept('^')) {
                mpz_class ez = read_integer(c);
                if (!ez.fits_ulong_p()) throw parse_error("exponent too large");
                e = ez.get_ui();
            }
            if (var == 'x')
                m.xp += e;
            else
                m.yp += e;
            saw_anything = true;
        }
        if (!saw_anything) throw parse_error("dangling sign in '" + raw + "'");
        m.coeff *= sign;
        out.push_back(m);
    }
    return out;
}

}  // namespace

Poly parse_poly(const std::string& raw) {
    auto ms = parse_monomials(raw, false);
    unsigned long deg = 0;
    for (const auto& m : ms) deg = std::max(deg, m.xp);
    std::vector<mpq_class> c(deg + 1, mpq_class(0));
    for (const auto& m : ms) c[m.xp] += m.coeff;
    return Poly::from_q(c);
}

BinaryForm parse_form(const std::string& raw) {
    auto ms = parse_monomials(raw, true);
    unsigned long n = 0;
    for (const auto& m : ms) n = std::max(n, m.xp + m.yp);
    if (n == 0) throw parse_error("constant is not a binary form");
    for (const auto& m : ms)
        if (m.xp + m.yp != n && m.coeff != 0)
            throw parse_error("form is not homogeneous: '" + raw + "'");
    std::vector<mpq_class> b(n + 1, mpq_class(0));
    for (const auto& m : ms) b[m.yp] += m.coeff;
    return BinaryForm::from_q((unsigned)n, b);
}

}  // namespace hct
