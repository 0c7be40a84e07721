#include "realqe/realalg.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace realqe {

namespace {
constexpr int kMaxRefinements = 100000;

[[noreturn]] void refinement_overflow(const char* where) {
    throw std::runtime_error(std::string("refinement did not converge in ") + where);
}
}  // namespace

RealAlgebraicNumber RealAlgebraicNumber::from_rational(const Rational& value) {
    const Int p = value.get_num();
    const Int q = value.get_den();
    UniPoly defining({-p, q});
    defining = defining.normalized_primitive();
    Rational lo = make_rational(p - 1, q);
    Rational hi = make_rational(p + 1, q);
    return RealAlgebraicNumber(std::move(defining), std::move(lo), std::move(hi));
}

RealAlgebraicNumber RealAlgebraicNumber::from_root(const UniPoly& p, const Rational& lo,
                                                   const Rational& hi) {
    if (p.is_zero()) throw std::runtime_error("from_root: zero polynomial");
    UniPoly sf = squarefree_part(p);
    if (sf.degree() < 1) throw std::runtime_error("from_root: no roots");
    if (!(lo < hi)) throw std::runtime_error("from_root: empty interval");
    if (sf.sign_at(lo) == 0 || sf.sign_at(hi) == 0)
        throw std::runtime_error("from_root: interval endpoint is a root");
    int n = count_roots_in(sf, lo, hi);
    if (n == 0) throw std::runtime_error("from_root: no root in the requested interval");
    if (n > 1) throw std::runtime_error("from_root: interval is not isolating");
    return RealAlgebraicNumber(std::move(sf), lo, hi);
}

RealAlgebraicNumber RealAlgebraicNumber::from_root_index(const UniPoly& p, size_t k) {
    auto intervals = sturm_isolate(p);
    if (k >= intervals.size()) throw std::runtime_error("from_root_index: no such root");
    return from_root(p, intervals[k].first, intervals[k].second);
}

RealAlgebraicNumber RealAlgebraicNumber::refined() const {
    Rational mid = (lo_ + hi_) / 2;
    int s = defining_.sign_at(mid);
    if (s == 0) {
        // The midpoint is the root; shrink symmetrically around it.
        Rational w = (hi_ - lo_) / 4;
        while (defining_.sign_at(mid - w) == 0 || defining_.sign_at(mid + w) == 0) w /= 2;
        return RealAlgebraicNumber(defining_, mid - w, mid + w);
    }
    if (s != defining_.sign_at(lo_)) return RealAlgebraicNumber(defining_, lo_, mid);
    return RealAlgebraicNumber(defining_, mid, hi_);
}

int RealAlgebraicNumber::compare_rational(const Rational& q) const {
    if (lo_ < q && q < hi_ && defining_.sign_at(q) == 0) return 0;
    RealAlgebraicNumber x = *this;
    for (int i = 0; i < kMaxRefinements; ++i) {
        if (q <= x.lo_) return +1;
        if (q >= x.hi_) return -1;
        x = x.refined();
    }
    refinement_overflow("compare_rational");
}

int RealAlgebraicNumber::sign() const { return compare_rational(Rational(0)); }

int RealAlgebraicNumber::compare(const RealAlgebraicNumber& o) const {
    return ran_sub(*this, o).sign();
}

std::string RealAlgebraicNumber::to_string() const {
    std::ostringstream out;
    out << "root(" << defining_.to_string() << ", ]" << realqe::to_string(lo_) << ", "
        << realqe::to_string(hi_) << "[)";
    return out.str();
}

namespace {

// Isolates the one root of `candidate` identified by shrinking operand
// intervals: interval_fn yields an enclosure of the true value from the
// current operands, refine_inputs tightens them.
RealAlgebraicNumber isolate_result(const UniPoly& candidate,
                                   const std::function<std::pair<Rational, Rational>()>& interval_fn,
                                   const std::function<void()>& refine_inputs) {
    UniPoly sf = squarefree_part(candidate);
    if (sf.degree() < 1) throw std::runtime_error("isolate_result: degenerate resultant");
    for (int i = 0; i < kMaxRefinements; ++i) {
        auto [lo, hi] = interval_fn();
        if (lo < hi && sf.sign_at(lo) != 0 && sf.sign_at(hi) != 0 &&
            count_roots_in(sf, lo, hi) == 1)
            return RealAlgebraicNumber::from_root(sf, lo, hi);
        refine_inputs();
    }
    refinement_overflow("isolate_result");
}

MultiPoly defining_as_multi(const RealAlgebraicNumber& x, const std::string& var) {
    return x.defining().to_multi(var);
}

}  // namespace

RealAlgebraicNumber ran_neg(const RealAlgebraicNumber& x) {
    UniPoly d = x.defining().negate_variable().normalized_primitive();
    return RealAlgebraicNumber::from_root(d, -x.hi(), -x.lo());
}

RealAlgebraicNumber ran_add(const RealAlgebraicNumber& x, const RealAlgebraicNumber& y) {
    // Res_t(p(t), q(z - t)) vanishes at z = alpha + beta.
    MultiPoly p = defining_as_multi(x, "t");
    MultiPoly zq = y.defining().to_multi("w").substitute(
        "w", MultiPoly::variable("z") - MultiPoly::variable("t"));
    UniPoly candidate = resultant_bivariate(p, zq, "t", "z");
    RealAlgebraicNumber a = x, b = y;
    return isolate_result(
        candidate, [&] { return std::make_pair(a.lo() + b.lo(), a.hi() + b.hi()); },
        [&] {
            a = a.refined();
            b = b.refined();
        });
}

RealAlgebraicNumber ran_sub(const RealAlgebraicNumber& x, const RealAlgebraicNumber& y) {
    return ran_add(x, ran_neg(y));
}

RealAlgebraicNumber ran_mul(const RealAlgebraicNumber& x, const RealAlgebraicNumber& y) {
    // Res_t(p(t), t^m q(z/t)) vanishes at z = alpha * beta.
    MultiPoly p = defining_as_multi(x, "t");
    MultiPoly qstar;
    const auto& qc = y.defining().coeffs();
    const unsigned m = static_cast<unsigned>(y.defining().degree());
    for (unsigned j = 0; j < qc.size(); ++j)
        qstar = qstar + MultiPoly::term(qc[j], "z", j) * MultiPoly::term(1, "t", m - j);
    UniPoly candidate = resultant_bivariate(p, qstar, "t", "z");
    RealAlgebraicNumber a = x, b = y;
    auto interval = [&] {
        const Rational c1 = a.lo() * b.lo(), c2 = a.lo() * b.hi();
        const Rational c3 = a.hi() * b.lo(), c4 = a.hi() * b.hi();
        Rational lo = std::min(std::min(c1, c2), std::min(c3, c4));
        Rational hi = std::max(std::max(c1, c2), std::max(c3, c4));
        return std::make_pair(lo, hi);
    };
    return isolate_result(candidate, interval, [&] {
        a = a.refined();
        b = b.refined();
    });
}

RealAlgebraicNumber ran_div(const RealAlgebraicNumber& x, const RealAlgebraicNumber& y) {
    int sy = y.sign();
    if (sy == 0) throw std::runtime_error("ran_div: division by zero");
    // Invert y: reversed coefficients map nonzero roots r to 1/r.
    RealAlgebraicNumber b = y;
    while (!(b.lo() > 0 || b.hi() < 0)) b = b.refined();
    UniPoly inv_def = b.defining().reverse().normalized_primitive();
    RealAlgebraicNumber b_copy = b;
    RealAlgebraicNumber inv = isolate_result(
        inv_def,
        [&] { return std::make_pair(1 / b_copy.hi(), 1 / b_copy.lo()); },
        [&] { b_copy = b_copy.refined(); });
    return ran_mul(x, inv);
}

RealAlgebraicNumber ran_nth_root(const RealAlgebraicNumber& x, unsigned g) {
    if (g == 0) throw std::runtime_error("ran_nth_root: g must be >= 1");
    if (g == 1) return x;
    int sx = x.sign();
    if (g % 2 == 0 && sx < 0)
        throw std::runtime_error("ran_nth_root: even root of a negative value");
    if (sx == 0) return RealAlgebraicNumber::from_rational(Rational(0));
    UniPoly candidate = squarefree_part(x.defining().compose_power(g));
    auto pow_q = [g](const Rational& q) {
        Rational acc = 1;
        for (unsigned i = 0; i < g; ++i) acc *= q;
        return acc;
    };
    // The g-th root of x is a root of candidate; find its isolating interval
    // by exact comparison of x against endpoint g-th powers.
    for (const auto& [lo, hi] : sturm_isolate(candidate)) {
        bool contains;
        if (g % 2 == 1) {
            contains = x.compare_rational(pow_q(lo)) > 0 && x.compare_rational(pow_q(hi)) < 0;
        } else {
            contains = (lo < 0 || x.compare_rational(pow_q(lo)) > 0) &&
                       (hi > 0 && x.compare_rational(pow_q(hi)) < 0);
        }
        if (contains) return RealAlgebraicNumber::from_root(candidate, lo, hi);
    }
    throw std::runtime_error("ran_nth_root: root interval not found");
}

RealAlgebraicNumber ran_sqrt(const RealAlgebraicNumber& x) { return ran_nth_root(x, 2); }

std::optional<Rational> rational_recognition(const RealAlgebraicNumber& x) {
    UniPoly d = x.defining();
    if (d.degree() == 1)
        return make_rational(-d.coeff(0), d.coeff(1));
    // Zero constant coefficient means 0 is a root; split that case out.
    if (d.coeff(0) == 0) {
        if (x.lo() < 0 && 0 < x.hi()) return Rational(0);
        std::vector<Int> stripped(d.coeffs().begin() + 1, d.coeffs().end());
        d = UniPoly(std::move(stripped));
    }
    // Work on the positive mirror of the value.
    RealAlgebraicNumber cur = x;
    for (int i = 0; i < kMaxRefinements && !(cur.lo() > 0 || cur.hi() < 0); ++i)
        cur = cur.refined();
    bool negative = cur.hi() < 0;
    if (negative) d = d.negate_variable();
    Rational lo = negative ? -cur.hi() : cur.lo();
    Rational hi = negative ? -cur.lo() : cur.hi();
    if (d.coeff(0) < 0) d = -d;
    const Int a0 = d.coeff(0);
    // Lemma: a positive rational root must be a0/z for the unique integer z
    // in ]a0/hi, a0/lo[; refine until at most one candidate remains.
    auto bisect = [&](Rational& l, Rational& h) {
        Rational mid = (l + h) / 2;
        int s = d.sign_at(mid);
        if (s == 0) {
            Rational w = (h - l) / 4;
            while (d.sign_at(mid - w) == 0 || d.sign_at(mid + w) == 0) w /= 2;
            l = mid - w;
            h = mid + w;
        } else if (s == d.sign_at(l)) {
            l = mid;
        } else {
            h = mid;
        }
    };
    for (int i = 0; i < kMaxRefinements; ++i) {
        Int z_min = floor_int(Rational(a0) / hi) + 1;
        Int z_max = ceil_int(Rational(a0) / lo) - 1;
        if (z_max < z_min) return std::nullopt;
        if (z_max == z_min) {
            if (z_min == 0) return std::nullopt;
            Rational q = make_rational(a0, z_min);
            if (lo < q && q < hi && d.sign_at(q) == 0)
                return negative ? Rational(-q) : q;
            return std::nullopt;
        }
        bisect(lo, hi);
    }
    refinement_overflow("rational_recognition");
}

std::string approx_decimal(const RealAlgebraicNumber& x, unsigned digits) {
    if (digits < 1) throw std::runtime_error("approx_decimal: digits must be >= 1");
    Int scale = 1;
    for (unsigned i = 0; i < digits; ++i) scale *= 10;
    auto round_half_away = [&](const Rational& q) {
        Rational a = rational_abs(q) + make_rational(1, 2);
        Int n = floor_int(a);
        return q < 0 ? Int(-n) : n;
    };
    RealAlgebraicNumber cur = x;
    for (int i = 0; i < kMaxRefinements; ++i) {
        Int n_lo = round_half_away(cur.lo() * scale);
        Int n_hi = round_half_away(cur.hi() * scale);
        if (n_lo == n_hi || (cur.hi() - cur.lo()) * scale < make_rational(1, 2)) {
            Int n = n_lo;
            if (n_lo != n_hi) {
                // The enclosure straddles one half-grid tie point.
                Int two_k = n_lo + n_hi;  // tie = (n_lo+n_hi)/2 / scale in halves
                Rational tie = make_rational(two_k, 2 * scale);
                int c = cur.compare_rational(tie);
                if (c == 0)
                    n = abs(n_lo) > abs(n_hi) ? n_lo : n_hi;  // away from zero
                else if (c < 0)
                    n = std::min(n_lo, n_hi);
                else
                    n = std::max(n_lo, n_hi);
            }
            Int whole = abs(n) / scale;
            Int frac = abs(n) % scale;
            std::string frac_str = frac.get_str();
            frac_str.insert(0, digits - frac_str.size(), '0');
            std::string sign = n < 0 ? "-" : "";
            return sign + whole.get_str() + "." + frac_str;
        }
        cur = cur.refined();
    }
    refinement_overflow("approx_decimal");
}

RealAlgebraicNumber eval_poly_at_rans(const MultiPoly& p,
                                      const std::map<std::string, RealAlgebraicNumber>& point) {
    if (p.is_constant()) return RealAlgebraicNumber::from_rational(Rational(p.constant_value()));
    std::string var = *p.variables().begin();
    auto it = point.find(var);
    if (it == point.end()) throw std::runtime_error("eval_poly_at_rans: no value for " + var);
    const RealAlgebraicNumber& alpha = it->second;
    auto coeffs = p.coefficients_in(var);
    RealAlgebraicNumber acc = eval_poly_at_rans(coeffs.back(), point);
    for (size_t j = coeffs.size() - 1; j-- > 0;)
        acc = ran_add(ran_mul(acc, alpha), eval_poly_at_rans(coeffs[j], point));
    return acc;
}

RealAlgebraicNumber eval_answer(const AnswerExpression& e,
                                const std::map<std::string, RealAlgebraicNumber>& env) {
    using Kind = AnswerExpression::Kind;
    switch (e.kind()) {
        case Kind::Constant: return RealAlgebraicNumber::from_rational(e.value());
        case Kind::Variable: {
            auto it = env.find(e.name());
            if (it == env.end())
                throw std::runtime_error("eval_answer: unbound variable " + e.name());
            return it->second;
        }
        case Kind::Epsilon:
        case Kind::Infinity:
            throw std::runtime_error("eval_answer: nonstandard symbol in answer");
        case Kind::Add: return ran_add(eval_answer(e.operands()[0], env), eval_answer(e.operands()[1], env));
        case Kind::Sub: return ran_sub(eval_answer(e.operands()[0], env), eval_answer(e.operands()[1], env));
        case Kind::Mul: return ran_mul(eval_answer(e.operands()[0], env), eval_answer(e.operands()[1], env));
        case Kind::Div: return ran_div(eval_answer(e.operands()[0], env), eval_answer(e.operands()[1], env));
        case Kind::Sqrt: return ran_sqrt(eval_answer(e.operands()[0], env));
        case Kind::NthRoot: return ran_nth_root(eval_answer(e.operands()[0], env), e.root_degree());
    }
    throw std::runtime_error("eval_answer: bad expression");
}

}  // namespace realqe
