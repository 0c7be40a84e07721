#include "doctest.h"

#include "realqe/realalg.hpp"
#include "testutil.hpp"

using namespace realqe;
using realqe::testing::Rng;

namespace {
RealAlgebraicNumber sqrt2() { return RealAlgebraicNumber::from_root(UniPoly({-2, 0, 1}), 1, 2); }
}  // namespace

TEST_CASE("construction") {
    // the paper's alpha_h: root of the polynomial h in ]-1, 1[
    RealAlgebraicNumber h = RealAlgebraicNumber::from_root(UniPoly({0, 1}), -1, 1);
    CHECK(h.sign() == 0);
    CHECK(*rational_recognition(h) == 0);
    CHECK(h.lo() == -1);
    CHECK(h.hi() == 1);

    RealAlgebraicNumber x = RealAlgebraicNumber::from_root(
        UniPoly({1, 32}), make_rational(-1, 16), make_rational(1, 16));
    CHECK(*rational_recognition(x) == make_rational(-1, 32));

    CHECK(sqrt2().compare_rational(1) > 0);
    CHECK_THROWS(RealAlgebraicNumber::from_root(UniPoly({-2, 0, 1}), 3, 4));
    CHECK_THROWS(RealAlgebraicNumber::from_root(UniPoly({-2, 0, 1}), -2, 2));

    // canonical rational representation: q*t - p with ](p-1)/q, (p+1)/q[
    RealAlgebraicNumber zero = RealAlgebraicNumber::from_rational(Rational(0));
    CHECK(zero.lo() == -1);
    CHECK(zero.hi() == 1);
}

TEST_CASE("refinement") {
    RealAlgebraicNumber r = sqrt2();
    Rational w0 = r.hi() - r.lo();
    for (int i = 0; i < 20; ++i) r = r.refined();
    CHECK(r.hi() - r.lo() == w0 / (1 << 20));
    CHECK(r.compare_rational(1) > 0);
    CHECK(r.compare_rational(2) < 0);
    // refinement around a rational value keeps the value inside
    RealAlgebraicNumber q = RealAlgebraicNumber::from_rational(make_rational(1, 3));
    for (int i = 0; i < 10; ++i) q = q.refined();
    CHECK(q.lo() < make_rational(1, 3));
    CHECK(make_rational(1, 3) < q.hi());
}

TEST_CASE("arithmetic") {
    RealAlgebraicNumber r = sqrt2();
    CHECK(ran_add(r, ran_neg(r)).sign() == 0);
    CHECK(*rational_recognition(ran_mul(r, r)) == 2);
    CHECK(ran_sub(r, RealAlgebraicNumber::from_rational(make_rational(3, 2))).sign() == -1);

    RealAlgebraicNumber nine = RealAlgebraicNumber::from_rational(Rational(9));
    RealAlgebraicNumber ninth_root = ran_nth_root(nine, 9);
    CHECK(ninth_root.defining() == UniPoly({-9, 0, 0, 0, 0, 0, 0, 0, 0, 1}));

    CHECK_THROWS(ran_div(r, RealAlgebraicNumber::from_rational(Rational(0))));
    CHECK_THROWS(ran_sqrt(RealAlgebraicNumber::from_rational(Rational(-1))));

    // sqrt(x)^2 = x and nthroot(x,g)^g = x as values
    RealAlgebraicNumber s = ran_sqrt(r);  // 2^(1/4)
    CHECK(ran_sub(ran_mul(s, s), r).sign() == 0);
    RealAlgebraicNumber c = ran_nth_root(RealAlgebraicNumber::from_rational(Rational(-8)), 3);
    CHECK(*rational_recognition(c) == -2);
}

TEST_CASE("field arithmetic on random rationals is exact") {
    Rng rng(31337);
    for (int i = 0; i < 60; ++i) {
        Rational p = rng.rational();
        Rational q = rng.rational();
        RealAlgebraicNumber rp = RealAlgebraicNumber::from_rational(p);
        RealAlgebraicNumber rq = RealAlgebraicNumber::from_rational(q);
        CHECK(*rational_recognition(ran_add(rp, rq)) == p + q);
        CHECK(*rational_recognition(ran_sub(rp, rq)) == p - q);
        CHECK(*rational_recognition(ran_mul(rp, rq)) == p * q);
        if (q != 0) CHECK(*rational_recognition(ran_div(rp, rq)) == p / q);
    }
}

TEST_CASE("signs and comparisons") {
    CHECK(sqrt2().sign() == 1);
    CHECK(ran_neg(sqrt2()).sign() == -1);
    RealAlgebraicNumber m = RealAlgebraicNumber::from_root(
        UniPoly({1, 32}), make_rational(-1, 16), make_rational(1, 16));
    CHECK(m.compare_rational(make_rational(-1, 32)) == 0);
    // 3x^2 + 2x at x = -1/32 is -61/1024 < 0
    RealAlgebraicNumber v = eval_poly_at_rans(
        realqe::testing::poly("(+ (* 3 (^ x 2)) (* 2 x))"), {{"x", m}});
    CHECK(*rational_recognition(v) == make_rational(-61, 1024));
    CHECK(v.sign() == -1);
}

TEST_CASE("rational recognition") {
    CHECK(*rational_recognition(RealAlgebraicNumber::from_root(UniPoly({-2, 3}), 0, 1)) ==
          make_rational(2, 3));
    CHECK(!rational_recognition(sqrt2()).has_value());
    RealAlgebraicNumber y = RealAlgebraicNumber::from_root(
        UniPoly({9, 256}), make_rational(-10, 256), make_rational(10, 256));
    CHECK(*rational_recognition(y) == make_rational(-9, 256));
}

TEST_CASE("rational recognition against brute-force rational root search") {
    Rng rng(2025);
    int planted = 0;
    for (int i = 0; i < 200; ++i) {
        // plant a rational root p/q inside a random polynomial
        Rational root = rng.rational(12, 6);
        UniPoly factor({-root.get_num(), root.get_den()});
        UniPoly rest = rng.unipoly(2, 4);
        if (rest.is_zero()) rest = UniPoly::constant(1);
        UniPoly p = factor * rest;
        // brute force: divisors of constant and leading coefficients
        auto intervals = sturm_isolate(p);
        for (const auto& [lo, hi] : intervals) {
            RealAlgebraicNumber alpha = RealAlgebraicNumber::from_root(p, lo, hi);
            auto mine = rational_recognition(alpha);
            // oracle: scan candidates n/d with n | constant, d | leading of
            // the squarefree primitive part
            UniPoly sf = squarefree_part(p);
            std::optional<Rational> oracle;
            Int c0 = sf.coeff(0);
            Int lead = sf.leading();
            if (c0 == 0 && lo < 0 && 0 < hi) {
                oracle = Rational(0);
            } else {
                if (c0 == 0) {
                    std::vector<Int> stripped(sf.coeffs().begin() + 1, sf.coeffs().end());
                    sf = UniPoly(std::move(stripped));
                    c0 = sf.coeff(0);
                }
                for (Int n = -abs(c0); n <= abs(c0) && !oracle; ++n) {
                    if (n == 0 || c0 % n != 0) continue;
                    for (Int d = 1; d <= abs(lead); ++d) {
                        if (lead % d != 0) continue;
                        Rational cand = make_rational(n, d);
                        if (lo < cand && cand < hi && sf.sign_at(cand) == 0) {
                            oracle = cand;
                            break;
                        }
                    }
                }
            }
            CHECK(mine == oracle);
            if (mine && *mine == root) ++planted;
        }
    }
    CHECK(planted >= 150);  // the planted root is almost always recognized
}

TEST_CASE("decimal approximation") {
    // smaller root of 3a^2 - 3a - 4
    RealAlgebraicNumber alpha = RealAlgebraicNumber::from_root_index(UniPoly({-4, -3, 3}), 0);
    CHECK(approx_decimal(alpha, 6) == "-0.758306");
    CHECK(approx_decimal(RealAlgebraicNumber::from_rational(make_rational(-9, 256)), 4) ==
          "-0.0352");
    CHECK(approx_decimal(RealAlgebraicNumber::from_rational(Rational(0)), 4) == "0.0000");
    CHECK(approx_decimal(sqrt2(), 5) == "1.41421");
    // exact ties round away from zero
    CHECK(approx_decimal(RealAlgebraicNumber::from_rational(make_rational(1, 2)), 1) == "0.5");
    CHECK(approx_decimal(RealAlgebraicNumber::from_rational(make_rational(1, 4)), 1) == "0.3");
    CHECK(approx_decimal(RealAlgebraicNumber::from_rational(make_rational(-1, 4)), 1) == "-0.3");
}

TEST_CASE("approximation error certificate") {
    Rng rng(404);
    for (int i = 0; i < 20; ++i) {
        UniPoly p = rng.unipoly(4);
        if (p.degree() < 1) continue;
        auto intervals = sturm_isolate(p);
        for (const auto& [lo, hi] : intervals) {
            RealAlgebraicNumber alpha = RealAlgebraicNumber::from_root(p, lo, hi);
            std::string s = approx_decimal(alpha, 4);
            Rational approx = *parse_rational(s);
            // |value - approx| < 10^-4 witnessed by interval membership
            RealAlgebraicNumber shifted =
                ran_sub(alpha, RealAlgebraicNumber::from_rational(approx));
            CHECK(shifted.compare_rational(make_rational(1, 10000)) < 0);
            CHECK(shifted.compare_rational(make_rational(-1, 10000)) > 0);
        }
    }
}

TEST_CASE("eval_poly_at_rans") {
    RealAlgebraicNumber r = sqrt2();
    CHECK(eval_poly_at_rans(realqe::testing::poly("(+ x y)"), {{"x", r}, {"y", ran_neg(r)}})
              .sign() == 0);
    CHECK(*rational_recognition(
              eval_poly_at_rans(realqe::testing::poly("(^ x 2)"), {{"x", r}})) == 2);
}

TEST_CASE("answer expression evaluation") {
    using AE = AnswerExpression;
    // (sqrt(7) - 4) / 6 at no variables
    AE e = AE::div(AE::sub(AE::sqrt(AE::constant(Rational(7))), AE::constant(Rational(4))),
                   AE::constant(Rational(6)));
    CHECK(e.standard());
    RealAlgebraicNumber v = eval_answer(e, {});
    CHECK(v.sign() < 0);
    // (sqrt(7)-4)/6 is a root of 36x^2 + 48x + 9 -> 12x^2+16x+3
    RealAlgebraicNumber check = eval_poly_at_rans(
        realqe::testing::poly("(+ (* 12 (^ x 2)) (* 16 x) 3)"), {{"x", v}});
    CHECK(check.sign() == 0);
    CHECK(!AE::sub(AE::variable("x"), AE::epsilon(1)).standard());
    CHECK_THROWS(eval_answer(AE::epsilon(1), {}));
}
