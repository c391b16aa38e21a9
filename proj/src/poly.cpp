#include "hct/poly.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace hct {

Poly::Poly(NumberField K, std::vector<FieldElement> coeffs)
    : K_(K), c_(std::move(coeffs)) {
    for (const auto& x : c_)
        if (!x.field().is_rationals() && x.field() != K_)
            throw std::logic_error("coefficient field mismatch");
    trim();
}

Poly Poly::from_q(const std::vector<mpq_class>& coeffs) {
    std::vector<FieldElement> c;
    c.reserve(coeffs.size());
    for (const auto& q : coeffs) c.emplace_back(q);
    return Poly(NumberField::rationals(), std::move(c));
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const FieldElement& Poly::lc() const {
    if (c_.empty()) throw std::domain_error("lc of zero polynomial");
    return c_.back();
}

FieldElement Poly::coeff(int i) const {
    if (i < 0 || i >= (int)c_.size()) return FieldElement(K_, 0, 0);
    return c_[i];
}

bool Poly::is_monic() const {
    return !c_.empty() && c_.back() == FieldElement(K_, 1, 0);
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly(K_);
    std::vector<FieldElement> d;
    d.reserve(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i)
        d.push_back(c_[i] * FieldElement(K_, mpq_class((long)i), 0));
    return Poly(K_, std::move(d));
}

FieldElement Poly::eval(const FieldElement& x) const {
    FieldElement r(K_, 0, 0);
    for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

Poly Poly::translate(const FieldElement& tau) const {
    // Horner in (X + tau)
    Poly r(K_);
    Poly xt(K_, {tau, FieldElement(K_, 1, 0)});
    for (size_t i = c_.size(); i-- > 0;) {
        r = r * xt;
        r = r + Poly(K_, {c_[i]});
    }
    return r;
}

Poly Poly::scale_arg(const FieldElement& s) const {
    std::vector<FieldElement> c = c_;
    FieldElement p(K_, 1, 0);
    for (size_t i = 0; i < c.size(); ++i) {
        c[i] = c[i] * p;
        p = p * s;
    }
    return Poly(K_, std::move(c));
}

Poly operator+(const Poly& f, const Poly& g) {
    const NumberField& K = f.K_;
    std::vector<FieldElement> c(std::max(f.c_.size(), g.c_.size()),
                                FieldElement(K, 0, 0));
    for (size_t i = 0; i < c.size(); ++i) {
        FieldElement s(K, 0, 0);
        if (i < f.c_.size()) s = s + f.c_[i];
        if (i < g.c_.size()) s = s + g.c_[i];
        c[i] = s;
    }
    return Poly(K, std::move(c));
}

Poly operator-(const Poly& f, const Poly& g) { return f + (-g); }

Poly Poly::operator-() const {
    std::vector<FieldElement> c = c_;
    for (auto& x : c) x = -x;
    return Poly(K_, std::move(c));
}

Poly operator*(const Poly& f, const Poly& g) {
    if (f.is_zero() || g.is_zero()) return Poly(f.K_);
    const NumberField& K = f.K_;
    std::vector<FieldElement> c(f.c_.size() + g.c_.size() - 1, FieldElement(K, 0, 0));
    for (size_t i = 0; i < f.c_.size(); ++i)
        for (size_t j = 0; j < g.c_.size(); ++j)
            c[i + j] = c[i + j] + f.c_[i] * g.c_[j];
    return Poly(K, std::move(c));
}

Poly Poly::operator*(const FieldElement& s) const {
    std::vector<FieldElement> c = c_;
    for (auto& x : c) x = x * s;
    return Poly(K_, std::move(c));
}

bool operator==(const Poly& f, const Poly& g) {
    if (f.c_.size() != g.c_.size()) return false;
    for (size_t i = 0; i < f.c_.size(); ++i)
        if (!(f.c_[i] == g.c_[i])) return false;
    return true;
}

namespace {

// a compound coefficient (a + b sqrt(-d) with both parts nonzero) needs
// parentheses next to a variable
bool needs_parens(const FieldElement& c) {
    return c.a() != 0 && c.b() != 0;
}

}  // namespace

std::string Poly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        bool parens = needs_parens(c_[i]);
        std::string cs = c_[i].to_string();
        bool neg = !parens && !cs.empty() && cs[0] == '-';
        if (first) {
            if (neg) os << "-", cs = cs.substr(1);
        } else {
            os << (neg ? " - " : " + ");
            if (neg) cs = cs.substr(1);
        }
        first = false;
        if (parens) cs = "(" + cs + ")";
        bool unit_coeff = (cs == "1");
        if (i == 0) {
            os << cs;
        } else {
            if (!unit_coeff) os << cs << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

BinaryForm::BinaryForm(NumberField K, unsigned n, std::vector<FieldElement> coeffs)
    : K_(K), n_(n), b_(std::move(coeffs)) {
    if (n_ < 1) throw std::domain_error("form degree must be >= 1");
    if (b_.size() != n_ + 1) throw std::domain_error("coefficient count mismatch");
    bool zero = true;
    for (const auto& x : b_) {
        if (!x.field().is_rationals() && x.field() != K_)
            throw std::logic_error("coefficient field mismatch");
        if (!x.is_zero()) zero = false;
    }
    if (zero) throw std::domain_error("zero binary form");
}

BinaryForm BinaryForm::from_q(unsigned n, const std::vector<mpq_class>& coeffs) {
    std::vector<FieldElement> c;
    c.reserve(coeffs.size());
    for (const auto& q : coeffs) c.emplace_back(q);
    return BinaryForm(NumberField::rationals(), n, std::move(c));
}

Poly BinaryForm::dehomogenize() const {
    std::vector<FieldElement> c(n_ + 1, FieldElement(K_, 0, 0));
    for (unsigned i = 0; i <= n_; ++i) c[n_ - i] = b_[i];
    return Poly(K_, std::move(c));
}

FieldElement BinaryForm::eval(const FieldElement& x, const FieldElement& y) const {
    FieldElement r(K_, 0, 0);
    for (unsigned i = 0; i <= n_; ++i)
        r = r + b_[i] * x.pow((long)(n_ - i)) * y.pow((long)i);
    return r;
}

BinaryForm BinaryForm::dx() const {
    if (n_ == 1) {
        // degree-0 forms are not representable; callers use transvectant paths
        throw std::domain_error("dx of a linear form");
    }
    std::vector<FieldElement> c(n_, FieldElement(K_, 0, 0));
    for (unsigned i = 0; i < n_; ++i)
        c[i] = b_[i] * FieldElement(K_, mpq_class((long)(n_ - i)), 0);
    return BinaryForm(K_, n_ - 1, std::move(c));
}

BinaryForm BinaryForm::dy() const {
    if (n_ == 1) throw std::domain_error("dy of a linear form");
    std::vector<FieldElement> c(n_, FieldElement(K_, 0, 0));
    for (unsigned i = 1; i <= n_; ++i)
        c[i - 1] = b_[i] * FieldElement(K_, mpq_class((long)i), 0);
    return BinaryForm(K_, n_ - 1, std::move(c));
}

bool BinaryForm::is_zero() const {
    for (const auto& x : b_)
        if (!x.is_zero()) return false;
    return true;
}

BinaryForm BinaryForm::operator*(const FieldElement& s) const {
    std::vector<FieldElement> c = b_;
    for (auto& x : c) x = x * s;
    return BinaryForm(K_, n_, std::move(c));
}

bool operator==(const BinaryForm& f, const BinaryForm& g) {
    if (f.n_ != g.n_) return false;
    for (unsigned i = 0; i <= f.n_; ++i)
        if (!(f.b_[i] == g.b_[i])) return false;
    return true;
}

std::string BinaryForm::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (unsigned i = 0; i <= n_; ++i) {
        if (b_[i].is_zero()) continue;
        bool parens = b_[i].a() != 0 && b_[i].b() != 0;
        std::string cs = b_[i].to_string();
        bool neg = !parens && !cs.empty() && cs[0] == '-';
        if (first) {
            if (neg) os << "-", cs = cs.substr(1);
        } else {
            os << (neg ? " - " : " + ");
            if (neg) cs = cs.substr(1);
        }
        first = false;
        if (parens) cs = "(" + cs + ")";
        unsigned xp = n_ - i, yp = i;
        bool unit_coeff = (cs == "1") && (xp || yp);
        if (!unit_coeff) os << cs << ((xp || yp) ? "*" : "");
        if (xp) {
            os << "x";
            if (xp > 1) os << "^" << xp;
            if (yp) os << "*";
        }
        if (yp) {
            os << "y";
            if (yp > 1) os << "^" << yp;
        }
    }
    return os.str();
}

bool GL2Matrix::is_sl2() const {
    return det() == FieldElement(a.field(), 1, 0) ||
           (det().is_rational() && det().a() == 1);
}

GL2Matrix GL2Matrix::identity(const NumberField& K) {
    return {FieldElement(K, 1, 0), FieldElement(K, 0, 0), FieldElement(K, 0, 0),
            FieldElement(K, 1, 0)};
}

GL2Matrix GL2Matrix::from_z(long a, long b, long c, long d) {
    return {FieldElement(mpq_class(a)), FieldElement(mpq_class(b)),
            FieldElement(mpq_class(c)), FieldElement(mpq_class(d))};
}

GL2Matrix operator*(const GL2Matrix& x, const GL2Matrix& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

bool operator==(const GL2Matrix& x, const GL2Matrix& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
}

std::string GL2Matrix::to_string() const {
    return "(" + a.to_string() + " " + b.to_string() + "; " + c.to_string() + " " +
           d.to_string() + ")";
}

BinaryForm pullback(const GL2Matrix& psi, const BinaryForm& G) {
    if (psi.det().is_zero()) throw std::domain_error("singular matrix");
    const NumberField& K = G.field();
    unsigned n = G.degree();
    // powers of the two linear forms u = aX + bY, v = cX + dY as coefficient
    // vectors over (X, Y) monomials of each degree
    std::vector<std::vector<FieldElement>> up(n + 1), vp(n + 1);
    up[0] = {FieldElement(K, 1, 0)};
    vp[0] = {FieldElement(K, 1, 0)};
    auto mul_linear = [&](const std::vector<FieldElement>& w, const FieldElement& s,
                          const FieldElement& t) {
        std::vector<FieldElement> r(w.size() + 1, FieldElement(K, 0, 0));
        for (size_t i = 0; i < w.size(); ++i) {
            r[i] = r[i] + w[i] * s;
            r[i + 1] = r[i + 1] + w[i] * t;
        }
        return r;
    };
    for (unsigned k = 1; k <= n; ++k) {
        up[k] = mul_linear(up[k - 1], psi.a, psi.b);
        vp[k] = mul_linear(vp[k - 1], psi.c, psi.d);
    }
    std::vector<FieldElement> out(n + 1, FieldElement(K, 0, 0));
    for (unsigned i = 0; i <= n; ++i) {
        if (G.coeff(i).is_zero()) continue;
        // u^{n-i} * v^i
        const auto& A = up[n - i];
        const auto& B = vp[i];
        for (size_t s = 0; s < A.size(); ++s)
            for (size_t t = 0; t < B.size(); ++t)
                out[s + t] = out[s + t] + G.coeff(i) * A[s] * B[t];
    }
    return BinaryForm(K, n, std::move(out));
}

FieldElement resultant(const Poly& A0, const Poly& B0) {
    const NumberField& K = A0.field();
    FieldElement zero(K, 0, 0), one(K, 1, 0);
    if (A0.is_zero() || B0.is_zero()) return zero;
    Poly A = A0, B = B0;
    int s = 1;
    if (A.degree() < B.degree()) {
        if ((A.degree() & 1) && (B.degree() & 1)) s = -s;
        std::swap(A, B);
    }
    if (B.degree() == 0) {
        FieldElement r = B.lc().pow(A.degree());
        return s < 0 ? -r : r;
    }
    FieldElement g = one, h = one;
    while (true) {
        int delta = A.degree() - B.degree();
        if ((A.degree() & 1) && (B.degree() & 1)) s = -s;
        // pseudo-remainder of lc(B)^{delta+1} * A by B
        Poly R = A * B.lc().pow(delta + 1);
        while (!R.is_zero() && R.degree() >= B.degree()) {
            FieldElement q = R.lc() / B.lc();
            int k = R.degree() - B.degree();
            std::vector<FieldElement> shift(k + 1, zero);
            shift[k] = q;
            R = R - B * Poly(K, shift);
        }
        if (R.is_zero()) return zero;  // common factor
        A = B;
        FieldElement divisor = g * h.pow(delta);
        std::vector<FieldElement> c;
        for (const auto& x : R.coeffs()) c.push_back(x / divisor);
        B = Poly(K, c);
        g = A.lc();
        // h = g^delta * h^{1-delta}
        h = (delta == 0) ? h : g.pow(delta) / h.pow(delta - 1);
        if (B.is_zero()) return zero;
        if (B.degree() == 0) {
            // h^{1-degA} * lc(B)^{degA}
            FieldElement r = B.lc().pow(A.degree()) / h.pow(A.degree() - 1);
            return s < 0 ? -r : r;
        }
    }
}

FieldElement disc_poly(const Poly& f) {
    if (f.degree() < 1) throw std::domain_error("disc of a constant");
    const NumberField& K = f.field();
    if (f.degree() == 1) return FieldElement(K, 1, 0);
    FieldElement res = resultant(f, f.derivative());
    FieldElement d = res / f.lc();
    long n = f.degree();
    if (((n * (n - 1)) / 2) % 2 != 0) d = -d;
    return d;
}

bool separable(const Poly& f) {
    if (f.degree() < 1) throw std::domain_error("separability of a constant");
    if (f.degree() == 1) return true;
    return !disc_poly(f).is_zero();
}

BinaryForm homogenize(const Poly& f, unsigned n) {
    if (f.is_zero()) throw std::domain_error("homogenize zero polynomial");
    if ((int)n < f.degree()) throw std::domain_error("degree below deg f");
    const NumberField& K = f.field();
    std::vector<FieldElement> b(n + 1, FieldElement(K, 0, 0));
    for (int i = 0; i <= f.degree(); ++i) b[n - i] = f.coeff(i);
    return BinaryForm(K, n, std::move(b));
}

FieldElement disc_form(const BinaryForm& G) {
    const NumberField& K = G.field();
    BinaryForm H = G;
    // shear (1 0; s 1) until the X^n coefficient is nonzero; det 1 keeps
    // the discriminant
    for (long s = 1; H.coeff(0).is_zero(); ++s) {
        if (s > (long)G.degree() + 1) throw std::logic_error("shear failed");
        GL2Matrix shear{FieldElement(K, 1, 0), FieldElement(K, 0, 0),
                        FieldElement(K, mpq_class(s), 0), FieldElement(K, 1, 0)};
        H = pullback(shear, G);
    }
    return disc_poly(H.dehomogenize());
}

Height poly_height(const Poly& f) {
    if (f.is_zero()) throw std::domain_error("height of zero polynomial");
    const NumberField& K = f.field();
    if (K.is_rationals()) {
        mpz_class l = 1;
        for (const auto& x : f.coeffs())
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.a().get_den().get_mpz_t());
        mpz_class g = 0, m = 0;
        for (const auto& x : f.coeffs()) {
            mpz_class v = mpq_class(x.a() * l).get_num();
            mpz_class av = abs(v);
            if (av > m) m = av;
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), av.get_mpz_t());
        }
        m /= g;
        return Height::half_log(mpq_class(m * m));
    }
    // max_i N(c_i) * prod_v N(v)^{-min_i v(c_i)}
    mpq_class maxn = 0;
    for (const auto& x : f.coeffs())
        if (!x.is_zero() && x.norm() > maxn) maxn = x.norm();
    std::set<mpz_class> chars;
    for (const auto& x : f.coeffs()) {
        if (x.is_zero()) continue;
        mpq_class n = x.norm();
        for (auto& [p, e] : factor_z(n.get_num())) chars.insert(p);
        for (auto& [p, e] : factor_z(n.get_den())) chars.insert(p);
    }
    mpq_class h2 = maxn;
    for (const auto& ell : chars) {
        for (const auto& v : places_above(K, ell)) {
            long mn = 0;
            bool first = true;
            for (const auto& x : f.coeffs()) {
                if (x.is_zero()) continue;
                long val = valuation(x, v);
                if (first || val < mn) mn = val, first = false;
            }
            h2 *= pow_q(mpq_class(v.norm), -mn);
        }
    }
    return Height::half_log(h2);
}

Height form_height(const BinaryForm& G) { return poly_height(G.dehomogenize()); }

std::vector<FieldElement> transvectant_raw(const std::vector<FieldElement>& F,
                                           unsigned m,
                                           const std::vector<FieldElement>& G,
                                           unsigned n, unsigned h) {
    if (h > m || h > n) throw std::domain_error("transvectant index too large");
    if (F.size() != m + 1 || G.size() != n + 1)
        throw std::domain_error("coefficient count mismatch");
    const NumberField& K =
        F[0].field().is_rationals() ? G[0].field() : F[0].field();
    // ((m-h)!(n-h)!/(m!n!)) sum_i (-1)^i C(h,i) d^hF/dX^{h-i}dY^i * d^hG/dX^i dY^{h-i}
    auto deriv = [&](std::vector<FieldElement> c, unsigned deg, unsigned kx,
                     unsigned ky) {
        unsigned cur = deg;
        for (unsigned t = 0; t < kx; ++t) {
            std::vector<FieldElement> r(cur, FieldElement(K, 0, 0));
            for (unsigned i = 0; i < cur; ++i)
                r[i] = c[i] * FieldElement(K, mpq_class((long)(cur - i)), 0);
            c = r;
            --cur;
        }
        for (unsigned t = 0; t < ky; ++t) {
            std::vector<FieldElement> r(cur, FieldElement(K, 0, 0));
            for (unsigned i = 1; i <= cur; ++i)
                r[i - 1] = c[i] * FieldElement(K, mpq_class((long)i), 0);
            c = r;
            --cur;
        }
        return c;
    };
    unsigned dm = m - h, dn = n - h, dd = dm + dn;
    std::vector<FieldElement> acc(dd + 1, FieldElement(K, 0, 0));
    mpz_class binom = 1;
    for (unsigned i = 0; i <= h; ++i) {
        if (i) binom = binom * (h - i + 1) / i;
        auto A = deriv(F, m, h - i, i);
        auto B = deriv(G, n, i, h - i);
        FieldElement s(K, mpq_class(((i % 2) ? -binom : binom)), 0);
        for (unsigned p = 0; p <= dm; ++p)
            for (unsigned q = 0; q <= dn; ++q)
                acc[p + q] = acc[p + q] + s * A[p] * B[q];
    }
    mpz_class fm, fn, fmh, fnh;
    mpz_fac_ui(fm.get_mpz_t(), m);
    mpz_fac_ui(fn.get_mpz_t(), n);
    mpz_fac_ui(fmh.get_mpz_t(), m - h);
    mpz_fac_ui(fnh.get_mpz_t(), n - h);
    FieldElement norm(K, mpq_class(fmh * fnh, fm * fn), 0);
    for (auto& x : acc) x = x * norm;
    return acc;
}

BinaryForm transvectant(const BinaryForm& F, const BinaryForm& G, unsigned h) {
    auto acc = transvectant_raw(F.coeffs(), F.degree(), G.coeffs(), G.degree(), h);
    if (acc.size() < 2) throw std::logic_error("contraction to a scalar");
    unsigned deg = (unsigned)acc.size() - 1;
    return BinaryForm(F.field(), deg, std::move(acc));
}

FieldElement transvectant_scalar(const BinaryForm& F, const BinaryForm& G,
                                 unsigned h) {
    auto acc = transvectant_raw(F.coeffs(), F.degree(), G.coeffs(), G.degree(), h);
    if (acc.size() != 1) throw std::logic_error("not a full contraction");
    return acc[0];
}

std::vector<std::pair<PrimeIdeal, long>> d_T_invariant(const BinaryForm& G,
                                                       const PlaceSet& T) {
    const NumberField& K = G.field();
    if (!K.is_rationals() && s_class_number(K, T) != 1)
        throw std::domain_error("T-class number must be 1");
    FieldElement D = disc_form(G);
    if (D.is_zero()) throw std::domain_error("inseparable form");
    long w = 2 * (long)G.degree() - 2;
    std::set<mpz_class> chars;
    auto collect = [&](const FieldElement& x) {
        if (x.is_zero()) return;
        mpq_class n = x.norm();
        for (auto& [p, e] : factor_z(n.get_num())) chars.insert(p);
        for (auto& [p, e] : factor_z(n.get_den())) chars.insert(p);
    };
    collect(D);
    for (const auto& c : G.coeffs()) collect(c);
    std::vector<std::pair<PrimeIdeal, long>> out;
    for (const auto& ell : chars) {
        for (const auto& v : places_above(K, ell)) {
            if (T.contains(v)) continue;
            long mn = 0;
            bool first = true;
            for (const auto& c : G.coeffs()) {
                if (c.is_zero()) continue;
                long val = valuation(c, v);
                if (first || val < mn) mn = val, first = false;
            }
            long e = valuation(D, v) - w * mn;
            if (e != 0) out.emplace_back(v, e);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

bool disc_transform_check(const GL2Matrix& psi, const BinaryForm& G) {
    FieldElement lhs = disc_form(pullback(psi, G));
    long n = G.degree();
    FieldElement rhs = psi.det().pow(n * (n - 1)) * disc_form(G);
    return lhs == rhs;
}

bool disc_scaling_check(const FieldElement& alpha, const BinaryForm& G) {
    if (alpha.is_zero()) return true;
    FieldElement lhs = disc_form(G * alpha);
    FieldElement rhs = alpha.pow(2 * (long)G.degree() - 2) * disc_form(G);
    return lhs == rhs;
}

}  // namespace hct
