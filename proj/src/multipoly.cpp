#include "realqe/multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace realqe {

std::string to_string(const Int& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::optional<Rational> parse_rational(const std::string& text) {
    if (text.empty()) return std::nullopt;
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        try {
            Int num(text.substr(0, slash), 10);
            Int den(text.substr(slash + 1), 10);
            if (den == 0) return std::nullopt;
            return make_rational(num, den);
        } catch (const std::invalid_argument&) {
            return std::nullopt;
        }
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        size_t frac_len = text.size() - dot - 1;
        if (frac_len == 0 || digits.empty()) return std::nullopt;
        try {
            Int num(digits, 10);
            Int den = 1;
            for (size_t i = 0; i < frac_len; ++i) den *= 10;
            return make_rational(num, den);
        } catch (const std::invalid_argument&) {
            return std::nullopt;
        }
    }
    try {
        return Rational(Int(text, 10));
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

unsigned total_degree(const Monomial& m) {
    unsigned d = 0;
    for (const auto& [v, e] : m) d += e;
    return d;
}

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    // Lexicographic on the sparse exponent vectors; absent variable = 0.
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (i == a.size()) return b[j].second > 0;   // a has 0 where b has >0
        if (j == b.size()) return false;             // a has >0 where b has 0 -> a greater
        int cmp = a[i].first.compare(b[j].first);
        if (cmp < 0) return false;  // a's earlier variable has >0, b has 0
        if (cmp > 0) return true;
        if (a[i].second != b[j].second) return a[i].second < b[j].second;
        ++i;
        ++j;
    }
    return false;
}

MultiPoly MultiPoly::constant(Int c) {
    MultiPoly p;
    if (c != 0) p.terms_.emplace(Monomial{}, std::move(c));
    return p;
}

MultiPoly MultiPoly::variable(const std::string& name) { return term(1, name, 1); }

MultiPoly MultiPoly::term(Int c, const std::string& name, unsigned e) {
    MultiPoly p;
    if (c == 0) return p;
    Monomial m;
    if (e > 0) m.emplace_back(name, e);
    p.terms_.emplace(std::move(m), std::move(c));
    return p;
}

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Int MultiPoly::constant_value() const {
    if (terms_.empty()) return 0;
    return terms_.begin()->second;
}

void MultiPoly::add_term(const Monomial& m, const Int& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    MultiPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    MultiPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

namespace {
Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            r.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            r.push_back(b[j++]);
        } else {
            r.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return r;
}
}  // namespace

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    MultiPoly r;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
    return r;
}

MultiPoly MultiPoly::operator*(const Int& c) const {
    MultiPoly r;
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly r = constant(1);
    MultiPoly base = *this;
    while (e > 0) {
        if (e & 1u) r = r * base;
        base = base * base;
        e >>= 1u;
    }
    return r;
}

unsigned MultiPoly::degree(const std::string& var) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m)
            if (v == var) d = std::max(d, e);
    return d;
}

unsigned MultiPoly::total_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, realqe::total_degree(m));
    return d;
}

std::set<std::string> MultiPoly::variables() const {
    std::set<std::string> vars;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m) vars.insert(v);
    return vars;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(const std::string& var) const {
    std::vector<MultiPoly> coeffs(degree(var) + 1);
    for (const auto& [m, c] : terms_) {
        unsigned e = 0;
        Monomial rest;
        for (const auto& [v, k] : m) {
            if (v == var)
                e = k;
            else
                rest.emplace_back(v, k);
        }
        coeffs[e].add_term(rest, c);
    }
    return coeffs;
}

MultiPoly MultiPoly::derivative(const std::string& var, unsigned order) const {
    MultiPoly p = *this;
    for (unsigned n = 0; n < order; ++n) {
        MultiPoly d;
        for (const auto& [m, c] : p.terms_) {
            for (size_t i = 0; i < m.size(); ++i) {
                if (m[i].first != var) continue;
                Monomial dm = m;
                if (dm[i].second == 1)
                    dm.erase(dm.begin() + static_cast<long>(i));
                else
                    dm[i].second -= 1;
                d.add_term(dm, c * Int(m[i].second));
            }
        }
        p = std::move(d);
    }
    return p;
}

MultiPoly MultiPoly::substitute(const std::string& var, const MultiPoly& value) const {
    // Cache powers of the substituted value.
    std::vector<MultiPoly> powers{MultiPoly::constant(1)};
    MultiPoly r;
    for (const auto& [m, c] : terms_) {
        unsigned e = 0;
        Monomial rest;
        for (const auto& [v, k] : m) {
            if (v == var)
                e = k;
            else
                rest.emplace_back(v, k);
        }
        while (powers.size() <= e) powers.push_back(powers.back() * value);
        MultiPoly t;
        t.add_term(rest, c);
        r = r + t * powers[e];
    }
    return r;
}

MultiPoly MultiPoly::substitute_rational_scaled(const std::string& var,
                                                const Rational& value) const {
    unsigned d = degree(var);
    auto coeffs = coefficients_in(var);
    const Int num = value.get_num();
    const Int den = value.get_den();
    // sum_j coeff_j * num^j * den^(d-j)
    MultiPoly r;
    Int num_pow = 1;
    std::vector<Int> den_pows(d + 1);
    den_pows[0] = 1;
    for (unsigned j = 1; j <= d; ++j) den_pows[j] = den_pows[j - 1] * den;
    for (unsigned j = 0; j < coeffs.size(); ++j) {
        r = r + coeffs[j] * (num_pow * den_pows[d - j]);
        num_pow *= num;
    }
    return r;
}

Rational MultiPoly::eval(const std::map<std::string, Rational>& point) const {
    Rational acc = 0;
    for (const auto& [m, c] : terms_) {
        Rational t(c);
        for (const auto& [v, e] : m) {
            auto it = point.find(v);
            if (it == point.end())
                throw std::runtime_error("eval: no value for variable " + v);
            for (unsigned k = 0; k < e; ++k) t *= it->second;
        }
        acc += t;
    }
    return acc;
}

Int MultiPoly::content() const {
    Int g = 0;
    for (const auto& [m, c] : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

MultiPoly MultiPoly::primitive_part() const {
    Int g = content();
    if (g == 0 || g == 1) return *this;
    MultiPoly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, c / g);
    return r;
}

Int MultiPoly::leading_coefficient() const {
    if (terms_.empty()) return 0;
    return terms_.rbegin()->second;
}

std::optional<MultiPoly> MultiPoly::sqrt_exact() const {
    if (is_zero()) return MultiPoly();
    // Leading term (graded-lex maximum) must be a square.
    auto lead = terms_.rbegin();
    if (lead->second < 0) return std::nullopt;
    Int c_root;
    if (mpz_root(c_root.get_mpz_t(), lead->second.get_mpz_t(), 2) == 0) return std::nullopt;
    Monomial m_root;
    for (const auto& [v, e] : lead->first) {
        if (e % 2 != 0) return std::nullopt;
        m_root.emplace_back(v, e / 2);
    }
    MultiPoly root = MultiPoly();
    root.terms_.emplace(m_root, c_root);
    MultiPoly lead2 = root * Int(2);
    MultiPoly rem = *this - root * root;
    // Peel off terms of the remainder against 2*root, long-division style.
    while (!rem.is_zero()) {
        auto rt = rem.terms_.rbegin();
        auto lt = lead2.terms_.rbegin();
        // divide rt by lt: coefficient and monomial must divide exactly
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), rt->second.get_mpz_t(), lt->second.get_mpz_t());
        if (q * lt->second != rt->second) return std::nullopt;
        Monomial qm;
        {
            size_t i = 0;
            bool ok = true;
            for (const auto& [v, e] : rt->first) {
                if (i < lt->first.size() && lt->first[i].first == v) {
                    if (lt->first[i].second > e) {
                        ok = false;
                        break;
                    }
                    if (e - lt->first[i].second > 0) qm.emplace_back(v, e - lt->first[i].second);
                    ++i;
                } else {
                    qm.emplace_back(v, e);
                }
            }
            if (!ok || i != lt->first.size()) return std::nullopt;
        }
        MultiPoly t;
        t.terms_.emplace(qm, q);
        MultiPoly new_root = root + t;
        MultiPoly new_rem = *this - new_root * new_root;
        // Must make strict graded-lex progress.
        if (!new_rem.is_zero() &&
            !MonomialLess{}(new_rem.terms_.rbegin()->first, rem.terms_.rbegin()->first))
            return std::nullopt;
        root = std::move(new_root);
        rem = std::move(new_rem);
    }
    if (root * root != *this) return std::nullopt;
    return root;
}

unsigned MultiPoly::exponent_gcd(const std::string& var) const {
    unsigned g = 0;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m)
            if (v == var) g = std::gcd(g, e);
    return g;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // Print leading terms first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Int abs_c = abs(c);
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        bool printed = false;
        if (abs_c != 1 || m.empty()) {
            out << abs_c.get_str();
            printed = true;
        }
        for (const auto& [v, e] : m) {
            if (printed) out << "*";
            out << v;
            if (e > 1) out << "^" << e;
            printed = true;
        }
    }
    return out.str();
}

QuadView quad_view(const MultiPoly& p, const std::string& var) {
    unsigned d = p.degree(var);
    if (d > 2) throw DegreeTooHighError(var, d);
    auto coeffs = p.coefficients_in(var);
    coeffs.resize(3);
    return QuadView{coeffs[2], coeffs[1], coeffs[0]};
}

}  // namespace realqe
