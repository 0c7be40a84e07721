#include "realqe/unipoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace realqe {

void UniPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UniPoly UniPoly::constant(Int c) {
    UniPoly p;
    if (c != 0) p.c_.push_back(std::move(c));
    return p;
}

UniPoly UniPoly::variable() { return UniPoly({Int(0), Int(1)}); }

UniPoly UniPoly::from_multi(const MultiPoly& p, const std::string& var) {
    auto coeffs = p.coefficients_in(var);
    std::vector<Int> c;
    c.reserve(coeffs.size());
    for (const auto& k : coeffs) {
        if (!k.is_constant())
            throw std::runtime_error("from_multi: polynomial is not univariate in " + var);
        c.push_back(k.constant_value());
    }
    return UniPoly(std::move(c));
}

MultiPoly UniPoly::to_multi(const std::string& var) const {
    MultiPoly r;
    for (size_t i = 0; i < c_.size(); ++i)
        r = r + MultiPoly::term(c_[i], var, static_cast<unsigned>(i));
    return r;
}

UniPoly UniPoly::operator-() const {
    UniPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    std::vector<Int> c(std::max(c_.size(), o.c_.size()), Int(0));
    for (size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
    return UniPoly(std::move(c));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return UniPoly();
    std::vector<Int> c(c_.size() + o.c_.size() - 1, Int(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    return UniPoly(std::move(c));
}

UniPoly UniPoly::operator*(const Int& k) const {
    if (k == 0) return UniPoly();
    UniPoly r = *this;
    for (auto& c : r.c_) c *= k;
    return r;
}

UniPoly UniPoly::exact_div(const UniPoly& o) const {
    if (o.is_zero()) throw std::runtime_error("division by zero polynomial");
    if (is_zero()) return UniPoly();
    if (degree() < o.degree()) throw std::runtime_error("inexact polynomial division");
    std::vector<Int> rem = c_;
    std::vector<Int> quot(c_.size() - o.c_.size() + 1, Int(0));
    for (int i = static_cast<int>(quot.size()) - 1; i >= 0; --i) {
        Int& top = rem[i + o.degree()];
        if (top == 0) continue;
        Int q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), top.get_mpz_t(), o.leading().get_mpz_t());
        if (r != 0) throw std::runtime_error("inexact polynomial division");
        quot[i] = q;
        for (size_t j = 0; j < o.c_.size(); ++j) rem[i + j] -= q * o.c_[j];
    }
    for (const auto& c : rem)
        if (c != 0) throw std::runtime_error("inexact polynomial division");
    return UniPoly(std::move(quot));
}

UniPoly UniPoly::exact_div(const Int& k) const {
    UniPoly r = *this;
    for (auto& c : r.c_) {
        Int q, rr;
        mpz_tdiv_qr(q.get_mpz_t(), rr.get_mpz_t(), c.get_mpz_t(), k.get_mpz_t());
        if (rr != 0) throw std::runtime_error("inexact coefficient division");
        c = q;
    }
    return r;
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<Int> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Int(i);
    return UniPoly(std::move(c));
}

Int UniPoly::content() const {
    Int g = 0;
    for (const auto& c : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

UniPoly UniPoly::primitive_part() const {
    Int g = content();
    if (g == 0 || g == 1) return *this;
    return exact_div(g);
}

UniPoly UniPoly::normalized_primitive() const {
    UniPoly p = primitive_part();
    if (p.leading() < 0) p = -p;
    return p;
}

Rational UniPoly::eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rational(*it);
    return acc;
}

int UniPoly::sign_at(const Rational& x) const {
    Rational v = eval(x);
    return sgn(v);
}

UniPoly UniPoly::negate_variable() const {
    UniPoly r = *this;
    for (size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
    return r;
}

UniPoly UniPoly::compose_power(unsigned g) const {
    if (g == 0) throw std::runtime_error("compose_power: g must be >= 1");
    if (is_zero()) return UniPoly();
    std::vector<Int> c((c_.size() - 1) * g + 1, Int(0));
    for (size_t i = 0; i < c_.size(); ++i) c[i * g] = c_[i];
    return UniPoly(std::move(c));
}

UniPoly UniPoly::reverse() const {
    std::vector<Int> c(c_.rbegin(), c_.rend());
    return UniPoly(std::move(c));
}

std::string UniPoly::to_string(const std::string& var) const {
    return to_multi(var).to_string();
}

// ---------------------------------------------------------------------------
// gcd / squarefree part (primitive PRS)

namespace {

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
UniPoly prem_int(UniPoly a, const UniPoly& b) {
    int e = a.degree() - b.degree() + 1;
    const Int d = b.leading();
    while (!a.is_zero() && a.degree() >= b.degree()) {
        std::vector<Int> t(static_cast<size_t>(a.degree() - b.degree()) + 1, Int(0));
        t.back() = a.leading();
        a = a * d - UniPoly(std::move(t)) * b;
        --e;
    }
    if (e > 0) {
        Int f = 1;
        for (int i = 0; i < e; ++i) f *= d;
        a = a * f;
    }
    return a;
}

}  // namespace

UniPoly gcd_univariate(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a.normalized_primitive();
    UniPoly y = b.normalized_primitive();
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        UniPoly r = prem_int(x, y).normalized_primitive();
        x = std::move(y);
        y = std::move(r);
    }
    return x.normalized_primitive();
}

UniPoly squarefree_part(const UniPoly& p) {
    if (p.is_zero()) return p;
    UniPoly prim = p.normalized_primitive();
    if (prim.degree() <= 1) return prim;
    UniPoly g = gcd_univariate(prim, prim.derivative());
    if (g.degree() == 0) return prim;
    return prim.exact_div(g).normalized_primitive();
}

Rational cauchy_root_bound(const UniPoly& p) {
    if (p.is_zero()) throw std::runtime_error("cauchy_root_bound: zero polynomial");
    Rational max_ratio = 0;
    Int lead = abs(p.leading());
    for (int i = 0; i < p.degree(); ++i) {
        Rational r = make_rational(abs(p.coeff(static_cast<size_t>(i))), lead);
        if (r > max_ratio) max_ratio = r;
    }
    return Rational(1) + max_ratio;
}

// ---------------------------------------------------------------------------
// Sturm sequences over Q

namespace {

using QPoly = std::vector<Rational>;  // dense, may carry trailing zeros before trim

void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qpoly_from(const UniPoly& p) {
    QPoly q;
    q.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) q.emplace_back(c);
    return q;
}

QPoly qderiv(const QPoly& p) {
    QPoly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long>(i)));
    return d;
}

// remainder of a / b
QPoly qrem(QPoly a, const QPoly& b) {
    trim(a);
    while (a.size() >= b.size()) {
        Rational f = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

Rational qeval(const QPoly& p, const Rational& x) {
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

struct SturmChain {
    std::vector<QPoly> seq;

    int variations_at(const Rational& x) const {
        int var = 0, prev = 0;
        for (const auto& p : seq) {
            int s = sgn(qeval(p, x));
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++var;
            prev = s;
        }
        return var;
    }
};

SturmChain sturm_chain(const UniPoly& squarefree) {
    SturmChain chain;
    QPoly p0 = qpoly_from(squarefree);
    trim(p0);
    chain.seq.push_back(p0);
    if (p0.size() <= 1) return chain;
    QPoly p1 = qderiv(p0);
    chain.seq.push_back(p1);
    while (chain.seq.back().size() > 1) {
        QPoly r = qrem(chain.seq[chain.seq.size() - 2], chain.seq.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.seq.push_back(std::move(r));
    }
    return chain;
}

struct Isolator {
    const UniPoly& sf;
    const SturmChain& chain;
    std::vector<std::pair<Rational, Rational>> out;

    int count(const Rational& lo, const Rational& hi) const {
        return chain.variations_at(lo) - chain.variations_at(hi);
    }

    // Requires sf(lo) != 0 and sf(hi) != 0.
    void isolate(const Rational& lo, const Rational& hi) {
        int n = count(lo, hi);
        if (n == 0) return;
        if (n == 1) {
            out.emplace_back(lo, hi);
            return;
        }
        Rational mid = (lo + hi) / 2;
        if (sf.sign_at(mid) != 0) {
            isolate(lo, mid);
            isolate(mid, hi);
            return;
        }
        // mid is a rational root: carve out a small interval around it
        Rational w = (hi - lo) / 4;
        while (sf.sign_at(mid - w) == 0 || sf.sign_at(mid + w) == 0 ||
               count(mid - w, mid + w) != 1)
            w /= 2;
        isolate(lo, mid - w);
        out.emplace_back(mid - w, mid + w);
        isolate(mid + w, hi);
    }
};

}  // namespace

int count_roots_in(const UniPoly& squarefree, const Rational& lo, const Rational& hi) {
    SturmChain chain = sturm_chain(squarefree);
    return chain.variations_at(lo) - chain.variations_at(hi);
}

std::vector<std::pair<Rational, Rational>> sturm_isolate(const UniPoly& p) {
    if (p.is_zero()) throw std::runtime_error("sturm_isolate: zero polynomial");
    UniPoly sf = squarefree_part(p);
    if (sf.degree() <= 0) return {};
    SturmChain chain = sturm_chain(sf);
    Rational bound = cauchy_root_bound(sf);
    Isolator iso{sf, chain, {}};
    iso.isolate(-bound, bound);
    // Tighten every interval to width <= 1/4.
    const Rational target(1, 4);
    for (auto& [lo, hi] : iso.out) {
        while (hi - lo > target) {
            Rational mid = (lo + hi) / 2;
            int s = sf.sign_at(mid);
            if (s == 0) {
                Rational w = (hi - lo) / 8;
                while (sf.sign_at(mid - w) == 0 || sf.sign_at(mid + w) == 0) w /= 2;
                lo = mid - w;
                hi = mid + w;
            } else if (s == sf.sign_at(lo)) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    return iso.out;
}

// ---------------------------------------------------------------------------
// Resultants via the subresultant PRS (coefficients in an integral domain)

namespace {

// Minimal ring interface for the PRS, instantiated at Int and UniPoly.
template <typename R>
struct Ring;

template <>
struct Ring<Int> {
    static Int zero() { return 0; }
    static Int one() { return 1; }
    static bool is_zero(const Int& x) { return x == 0; }
    static Int mul(const Int& a, const Int& b) { return a * b; }
    static Int neg(const Int& a) { return -a; }
    static Int sub(const Int& a, const Int& b) { return a - b; }
    static Int exact_div(const Int& a, const Int& b) {
        Int q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        if (r != 0) throw std::runtime_error("inexact integer division in PRS");
        return q;
    }
};

template <>
struct Ring<UniPoly> {
    static UniPoly zero() { return UniPoly(); }
    static UniPoly one() { return UniPoly::constant(1); }
    static bool is_zero(const UniPoly& x) { return x.is_zero(); }
    static UniPoly mul(const UniPoly& a, const UniPoly& b) { return a * b; }
    static UniPoly neg(const UniPoly& a) { return -a; }
    static UniPoly sub(const UniPoly& a, const UniPoly& b) { return a - b; }
    static UniPoly exact_div(const UniPoly& a, const UniPoly& b) { return a.exact_div(b); }
};

template <typename R>
using RPoly = std::vector<R>;  // coefficient i of y^i

template <typename R>
void rtrim(RPoly<R>& p) {
    while (!p.empty() && Ring<R>::is_zero(p.back())) p.pop_back();
}

template <typename R>
int rdeg(const RPoly<R>& p) {
    return static_cast<int>(p.size()) - 1;
}

template <typename R>
R rpow(const R& x, int e) {
    R acc = Ring<R>::one();
    for (int i = 0; i < e; ++i) acc = Ring<R>::mul(acc, x);
    return acc;
}

template <typename R>
RPoly<R> rscale(const RPoly<R>& p, const R& k) {
    RPoly<R> r = p;
    for (auto& c : r) c = Ring<R>::mul(c, k);
    rtrim(r);
    return r;
}

template <typename R>
RPoly<R> rsub(const RPoly<R>& a, const RPoly<R>& b) {
    RPoly<R> r(std::max(a.size(), b.size()), Ring<R>::zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = Ring<R>::sub(r[i], b[i]);
    rtrim(r);
    return r;
}

// lc(b)^(deg a - deg b + 1) * a mod b
template <typename R>
RPoly<R> rprem(RPoly<R> a, const RPoly<R>& b) {
    int e = rdeg(a) - rdeg(b) + 1;
    const R d = b.back();
    while (!a.empty() && rdeg(a) >= rdeg(b)) {
        size_t shift = static_cast<size_t>(rdeg(a) - rdeg(b));
        R top = a.back();
        a = rscale(a, d);
        RPoly<R> t(shift + b.size(), Ring<R>::zero());
        for (size_t i = 0; i < b.size(); ++i) t[shift + i] = Ring<R>::mul(top, b[i]);
        a = rsub(a, t);
        --e;
    }
    if (e > 0) a = rscale(a, rpow(d, e));
    return a;
}

template <typename R>
RPoly<R> rdiv(const RPoly<R>& p, const R& k) {
    RPoly<R> r = p;
    for (auto& c : r) c = Ring<R>::exact_div(c, k);
    return r;
}

// Resultant of A and B in R[y]; subresultant PRS with sign tracking.
template <typename R>
R resultant_prs(RPoly<R> a, RPoly<R> b) {
    rtrim(a);
    rtrim(b);
    if (a.empty() || b.empty()) return Ring<R>::zero();
    bool negate = false;
    if (rdeg(a) < rdeg(b)) {
        std::swap(a, b);
        if ((rdeg(a) % 2 == 1) && (rdeg(b) % 2 == 1)) negate = !negate;
    }
    if (rdeg(b) == 0) {
        R res = rpow(b[0], rdeg(a));
        return negate ? Ring<R>::neg(res) : res;
    }
    R g = Ring<R>::one();
    R h = Ring<R>::one();
    while (true) {
        int delta = rdeg(a) - rdeg(b);
        if ((rdeg(a) % 2 == 1) && (rdeg(b) % 2 == 1)) negate = !negate;
        RPoly<R> rem = rprem(a, b);
        a = std::move(b);
        R divisor = Ring<R>::mul(g, rpow(h, delta));
        if (rem.empty())
            b.clear();
        else
            b = rdiv(rem, divisor);
        if (b.empty()) return Ring<R>::zero();
        g = a.back();
        if (delta > 0) h = Ring<R>::exact_div(rpow(g, delta), rpow(h, delta - 1));
        if (rdeg(b) == 0) break;
    }
    // deg a > 0, deg b == 0
    int d = rdeg(a);
    R res = Ring<R>::exact_div(rpow(b[0], d), rpow(h, d - 1));
    return negate ? Ring<R>::neg(res) : res;
}

}  // namespace

Int resultant_univariate(const UniPoly& p, const UniPoly& q) {
    RPoly<Int> a(p.coeffs().begin(), p.coeffs().end());
    RPoly<Int> b(q.coeffs().begin(), q.coeffs().end());
    return resultant_prs<Int>(std::move(a), std::move(b));
}

UniPoly resultant_bivariate(const MultiPoly& p, const MultiPoly& q, const std::string& elim_var,
                            const std::string& keep_var) {
    auto to_rpoly = [&](const MultiPoly& f) {
        RPoly<UniPoly> r;
        for (const auto& coeff : f.coefficients_in(elim_var))
            r.push_back(UniPoly::from_multi(coeff, keep_var));
        rtrim(r);
        return r;
    };
    return resultant_prs<UniPoly>(to_rpoly(p), to_rpoly(q));
}

}  // namespace realqe
