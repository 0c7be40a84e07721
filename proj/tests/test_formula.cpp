#include "doctest.h"

#include "realqe/formula.hpp"
#include "testutil.hpp"

using namespace realqe;
using realqe::testing::poly;
using realqe::testing::Rng;

TEST_CASE("parsing the running example") {
    ExistsBlock f = parse_formula(
        "(exists (x y) (and (<= (+ (* a y) (* 3 (^ x 2)) (* 4 x)) a) (>= x a) (>= a y)))");
    REQUIRE(f.quantified == std::vector<std::string>{"y", "x"});  // innermost first
    CHECK(f.parameters() == std::set<std::string>{"a"});
    REQUIRE(f.matrix.kind() == QFFormula::Kind::And);
    REQUIRE(f.matrix.children().size() == 3);
    const Atom& a0 = f.matrix.children()[0].atom_ref();
    CHECK(a0.rel == Rel::Le);
    CHECK(a0.lhs == poly("(- (+ (* a y) (* 3 (^ x 2)) (* 4 x)) a)"));
}

TEST_CASE("chained relations expand to conjunctions") {
    ExistsBlock f = parse_formula("(exists (x) (< a x 1))");
    REQUIRE(f.matrix.kind() == QFFormula::Kind::And);
    REQUIRE(f.matrix.children().size() == 2);
    CHECK(f.matrix.children()[0].atom_ref().lhs == poly("(- a x)"));
    CHECK(f.matrix.children()[0].atom_ref().rel == Rel::Lt);
    CHECK(f.matrix.children()[1].atom_ref().lhs == poly("(- x 1)"));
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_formula("(and)"), ParseError);
    CHECK_THROWS_AS(parse_formula("(exists (x) (forall (y) (< x y)))"),
                    UnsupportedQuantifierError);
    CHECK_THROWS_AS(parse_formula("(and (< x 1) (exists (y) (< y x)))"),
                    UnsupportedQuantifierError);
    CHECK_THROWS_AS(parse_formula("(< $h 1)"), ParseError);
    CHECK_THROWS_AS(parse_formula("(< x"), ParseError);
    CHECK_THROWS_AS(parse_formula("(!= 1 2 3)"), ParseError);
}

TEST_CASE("negation normalization") {
    QFFormula f = realqe::testing::qf("(not (and (<= x 0) (> y 1)))");
    REQUIRE(f.kind() == QFFormula::Kind::Or);
    CHECK(f.children()[0].atom_ref().rel == Rel::Gt);
    CHECK(f.children()[1].atom_ref().rel == Rel::Le);

    QFFormula g = realqe::testing::qf("(-> (= x 0) (!= y 0))");
    REQUIRE(g.kind() == QFFormula::Kind::Or);
    CHECK(g.children()[0].atom_ref().rel == Rel::Ne);
}

TEST_CASE("rational coefficients are cleared exactly") {
    QFFormula f = realqe::testing::qf("(< (+ (* 0.5 x) (/ 1 3)) 1)");
    // 0.5x + 1/3 - 1 < 0 scaled by 6: 3x - 4 < 0
    CHECK(f.atom_ref().lhs == poly("(- (* 3 x) 4)"));
    CHECK(f.atom_ref().rel == Rel::Lt);
}

TEST_CASE("round trips") {
    const char* inputs[] = {
        "(exists (x y) (and (<= (+ (* a y) (* 3 (^ x 2)) (* 4 x)) a) (>= x a) (>= a y)))",
        "(exists (x) (or (= (- (^ x 2) 2) 0) (> x 4)))",
        "(and (< a 1) (!= (* a b) 0))",
        "true",
        "(exists (x) false)",
    };
    for (const char* text : inputs) {
        ExistsBlock f = parse_formula(text);
        std::string printed = print_formula(f);
        ExistsBlock g = parse_formula(printed);
        CHECK(f.quantified == g.quantified);
        CHECK(f.matrix == g.matrix);
        CHECK(print_formula(g) == printed);  // canonical form is stable
    }
}

TEST_CASE("ground evaluation of the running example") {
    QFFormula psi = parse_formula(
        "(and (<= (+ (* a y) (* 3 (^ x 2)) (* 4 x)) a) (>= x a) (>= a y))").matrix;
    CHECK(psi.evaluate({{"x", Rational(2)}, {"y", Rational(-9)}, {"a", Rational(2)}}));
    Rational v = *parse_rational("-0.7525");
    CHECK(!psi.evaluate({{"x", v}, {"y", *parse_rational("-0.7425")}, {"a", v}}));
    CHECK(QFFormula::truth(true).evaluate({}));
    CHECK_THROWS(psi.evaluate({{"x", Rational(0)}}));
}

TEST_CASE("fix_parameters") {
    ExistsBlock f = parse_formula(
        "(exists (x y) (and (<= (+ (* a y) (* 3 (^ x 2)) (* 4 x)) a) (>= x a) (>= a y)))");
    ExistsBlock fixed = fix_parameters(f, {{"a", Rational(2)}});
    CHECK(fixed.parameters().empty());
    CHECK(fixed.matrix.children()[0].atom_ref().lhs ==
          poly("(- (+ (* 2 y) (* 3 (^ x 2)) (* 4 x)) 2)"));

    // Eq-4 shape at a = -2
    ExistsBlock g = parse_formula(
        "(exists (x y) (and (< (+ (* a y) (* 3 (^ x 2)) (* 4 x)) 0) (> x y a)))");
    ExistsBlock gf = fix_parameters(g, {{"a", Rational(-2)}});
    CHECK(gf.matrix.children()[0].atom_ref().lhs ==
          poly("(+ (* -2 y) (* 3 (^ x 2)) (* 4 x))"));

    // identity when fixing nothing
    ExistsBlock h = fix_parameters(f, {});
    CHECK(h.matrix == f.matrix);
    CHECK_THROWS(fix_parameters(f, {{"zz", Rational(0)}}));

    // fixing a quantified variable removes it from the block
    ExistsBlock q = fix_parameters(g, {{"x", Rational(1)}});
    CHECK(q.quantified == std::vector<std::string>{"y"});
}

TEST_CASE("fix_parameters commutes with evaluation") {
    Rng rng(1234);
    ExistsBlock f = parse_formula(
        "(and (<= (+ (* a y) (* 3 (^ x 2)) (* 4 x)) a) (>= x a) (>= a y))");
    for (int i = 0; i < 50; ++i) {
        Rational a = rng.rational();
        Rational x = rng.rational();
        Rational y = rng.rational();
        ExistsBlock fixed = fix_parameters(f, {{"a", a}});
        bool lhs = fixed.matrix.evaluate({{"x", x}, {"y", y}});
        bool rhs = f.matrix.evaluate({{"x", x}, {"y", y}, {"a", a}});
        CHECK(lhs == rhs);
    }
}

TEST_CASE("substitution") {
    QFFormula f = realqe::testing::qf("(>= (- (^ x 2) y) 0)");
    QFFormula g = f.substitute("x", poly("(+ y 1)"));
    CHECK(g.atom_ref().lhs == poly("(- (^ (+ y 1) 2) y)"));
}

TEST_CASE("basic simplifier") {
    CHECK(simplify(realqe::testing::qf("(and (> 3 0) (<= p 0))")) ==
          realqe::testing::qf("(<= p 0)"));
    CHECK(simplify(realqe::testing::qf("(or (> x 0) true)")).is_true());
    CHECK(simplify(realqe::testing::qf("(= (- (* 2 x) 4) 0)")) ==
          realqe::testing::qf("(= (- x 2) 0)"));
    // sign canonicalization mirrors order relations
    CHECK(simplify(realqe::testing::qf("(> (- 0 x) 0)")) == realqe::testing::qf("(< x 0)"));
    // contradictory and covering sign sets
    CHECK(simplify(realqe::testing::qf("(and (< p 0) (> p 0))")).is_false());
    CHECK(simplify(realqe::testing::qf("(or (<= p 0) (> p 0))")).is_true());
    CHECK(simplify(realqe::testing::qf("(and (<= p 0) (>= p 0))")) ==
          realqe::testing::qf("(= p 0)"));
    // context propagation into composite siblings
    CHECK(simplify(realqe::testing::qf("(and (> a 0) (or (< a 0) (and (= a 0) (< b 0))))"))
              .is_false());
    // absorption
    CHECK(simplify(realqe::testing::qf("(and (<= p 0) (or (<= p 0) (< q 0)))")) ==
          realqe::testing::qf("(<= p 0)"));
    // squarefree reduction of univariate equations
    CHECK(simplify(realqe::testing::qf("(= (^ a 3) 0)")) == realqe::testing::qf("(= a 0)"));
}

TEST_CASE("simplifier preserves semantics on random formulas") {
    Rng rng(5150);
    for (int i = 0; i < 80; ++i) {
        // random small and-or tree over atoms in x, y
        std::vector<QFFormula> atoms;
        for (int k = 0; k < 4; ++k)
            atoms.push_back(QFFormula::atom(rng.multipoly({"x", "y"}, 3, 2, 3), rng.relation()));
        QFFormula f = QFFormula::disj(
            {QFFormula::conj({atoms[0], atoms[1]}), QFFormula::conj({atoms[2], atoms[3]})});
        QFFormula s = simplify(f);
        for (int k = 0; k < 10; ++k) {
            std::map<std::string, Rational> pt{{"x", rng.rational()}, {"y", rng.rational()}};
            CHECK(f.evaluate(pt) == s.evaluate(pt));
        }
    }
}
