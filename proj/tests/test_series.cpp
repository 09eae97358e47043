#include <doctest.h>

#include <vector>

#include "oracles.hpp"
#include "pbwk/series.hpp"

using namespace pbwk;

namespace {

const RingSpec Q = RingSpec::rationals();

Scalar q(long num, long den = 1) { return Scalar(Q, mpq_class(num, den)); }

TruncSeries from_rationals(const std::vector<mpq_class>& c) {
    std::vector<Scalar> s;
    for (const auto& v : c) s.emplace_back(Q, v);
    return TruncSeries(std::move(s));
}

TruncSeries series(std::initializer_list<Scalar> c) { return TruncSeries(std::vector<Scalar>(c)); }

TruncSeries random_series(oracle::RationalSource& src, int cap, bool unit_constant) {
    TruncSeries s(Q, cap);
    for (int k = 0; k <= cap; ++k) s.set(k, Scalar(Q, k == 0 && unit_constant ? src.nonzero() : src.next()));
    return s;
}

}  // namespace

TEST_SUITE("series") {

TEST_CASE("Bernoulli numbers agree with the classical recurrence") {
    const auto expected = oracle::bernoulli(20);
    const auto got = bernoulli_numbers(20);
    REQUIRE(got.size() == expected.size());
    for (std::size_t n = 0; n < got.size(); ++n) {
        CAPTURE(n);
        CHECK(got[n].value() == expected[n]);
    }
    CHECK(got[0] == q(1));
    CHECK(got[1] == q(-1, 2));
    CHECK(got[2] == q(1, 6));
    CHECK(got[12] == q(-691, 2730));
}

TEST_CASE("binomial expansions of q(t+u) and the divided differences") {
    oracle::RationalSource src(11);
    const TruncSeries s = random_series(src, 7, false);
    const BiTruncSeries shift = compose_shift(s);
    const BiTruncSeries dt = divided_difference(s, Variable::t);
    const BiTruncSeries du = divided_difference(s, Variable::u);
    CHECK(dt.cap() == 6);
    for (int i = 0; i <= 7; ++i)
        for (int j = 0; i + j <= 7; ++j) {
            CHECK(shift.coeff(i, j) == s[i + j] * binomial(Q, i + j, i));
            if (i + j <= 6) {
                CHECK(dt.coeff(i, j) == s[i + j + 1] * binomial(Q, i + j + 1, i + 1));
                CHECK(du.coeff(i, j) == s[i + j + 1] * binomial(Q, i + j + 1, j + 1));
            }
        }
}

TEST_CASE("reciprocal") {
    oracle::RationalSource src(12);
    for (int trial = 0; trial < 10; ++trial) {
        const TruncSeries s = random_series(src, 9, true);
        CHECK(s * reciprocal(s) == TruncSeries::constant(q(1), 9));
    }
    CHECK_THROWS_AS(reciprocal(TruncSeries::variable(Q, 3)), NotInvertible);
}

TEST_CASE("mixing caps or rings is an error") {
    CHECK_THROWS(TruncSeries(Q, 3) + TruncSeries(Q, 4));
    CHECK_THROWS(TruncSeries(Q, 3) * TruncSeries(RingSpec::integers(), 3));
}

TEST_CASE("phi_c matches the Bernoulli expansion") {
    for (const mpq_class& c : {mpq_class(1), mpq_class(2), mpq_class(-1), mpq_class(1, 2), mpq_class(-3, 7)}) {
        CAPTURE(c.get_str());
        CHECK(phi_c(Scalar(Q, c), 12) == from_rationals(oracle::phi_coefficients(c, 12)));
    }
    CHECK(phi_c(q(1), 4) == series({q(1), q(-1, 2), q(1, 12), q(0), q(-1, 720)}));
}

TEST_CASE("phi_c, -t and 0 solve the representation equation") {
    for (int cap = 1; cap <= 12; ++cap) {
        CAPTURE(cap);
        for (const mpq_class& c : {mpq_class(1), mpq_class(2), mpq_class(-1), mpq_class(1, 2)})
            CHECK(defect_rep(phi_c(Scalar(Q, c), cap)).is_zero());
        CHECK(defect_rep(phi_0(Q, cap)).is_zero());
        CHECK(defect_rep(TruncSeries(Q, cap)).is_zero());
    }
    CHECK_FALSE(defect_rep(series({q(1), q(1, 2), q(0)})).is_zero());
}

TEST_CASE("solve_rep reproduces phi_c") {
    for (const mpq_class& c : {mpq_class(1), mpq_class(2), mpq_class(-1), mpq_class(1, 2), mpq_class(5, 3)}) {
        CAPTURE(c.get_str());
        CHECK(solve_rep(Scalar(Q, c), 12) == phi_c(Scalar(Q, c), 12));
    }
    CHECK_THROWS_AS(solve_rep(q(0), 3), NotInvertible);
}

TEST_CASE("solve_rep obstructions") {
    try {
        (void)solve_rep(Scalar(RingSpec::integers(), 1L), 2);
        FAIL("expected NotInvertible");
    } catch (const NotInvertible& e) {
        CHECK(e.blocking() == 2);
    }
    const RingSpec z5 = RingSpec::modular(5);
    const TruncSeries mod5 = solve_rep(Scalar(z5, 1L), 3);
    CHECK(defect_rep(mod5).is_zero());
    for (int k = 0; k <= 3; ++k) CHECK(mod5[k] == Scalar(z5, phi_c(q(1), 3)[k].value()));
    try {
        (void)solve_rep(Scalar(z5, 1L), 4);
        FAIL("expected NotInvertible");
    } catch (const NotInvertible& e) {
        CHECK(e.blocking() == 5);
    }
}

TEST_CASE("exhaustive solving: phi(0) = 0 leaves only 0 and -t") {
    const auto solutions = oracle::solve_representation_equation(0, 6);
    REQUIRE(solutions.has_value());
    REQUIRE(solutions->size() == 2);
    std::vector<mpq_class> minus_t(7, 0), zero(7, 0);
    minus_t[1] = -1;
    CHECK(((*solutions)[0] == minus_t || (*solutions)[1] == minus_t));
    CHECK(((*solutions)[0] == zero || (*solutions)[1] == zero));
}

TEST_CASE("exhaustive solving: phi(0) = c is forced to phi_c") {
    for (const mpq_class& c : {mpq_class(1), mpq_class(2), mpq_class(-1, 3)}) {
        CAPTURE(c.get_str());
        const auto solutions = oracle::solve_representation_equation(c, 6);
        REQUIRE(solutions.has_value());
        REQUIRE(solutions->size() == 1);
        CHECK(from_rationals(solutions->front()) == phi_c(Scalar(Q, c), 6));
    }
}

TEST_CASE("truncated solutions for N = 2 and N = 3") {
    // Modulo t^N the equation is imposed in total degree <= N - 2.
    oracle::RationalSource src(3);
    for (int trial = 0; trial < 5; ++trial) {
        const Scalar c1(Q, src.next());
        CHECK(defect_rep(series({q(0), c1})).is_zero());
        const Scalar c2(Q, src.next());
        CHECK(defect_rep(series({q(0), q(0), c2})).is_zero());
        CHECK(defect_rep(series({q(0), q(-1), c2})).is_zero());
    }
    // Solving modulo t^2 and t^3 by branching.
    CHECK_FALSE(oracle::solve_representation_equation(0, 1, 0).has_value());
    CHECK_FALSE(oracle::solve_representation_equation(0, 2, 1).has_value());
    for (const long c0 : {1L, 2L, -3L}) {
        CHECK(oracle::solve_representation_equation(c0, 1, 0) ==
              std::vector<std::vector<mpq_class>>{{c0, mpq_class(-1, 2)}});
        CHECK(oracle::solve_representation_equation(c0, 2, 1) ==
              std::vector<std::vector<mpq_class>>{{c0, mpq_class(-1, 2), mpq_class(1, 12) / c0}});
    }
    // Prefixes of full solutions with c0 = 0.
    CHECK(oracle::solve_representation_equation(0, 1) == std::vector<std::vector<mpq_class>>{{0, -1}, {0, 0}});
    for (const long c0 : {1L, 2L}) {
        CHECK(defect_rep(series({q(c0), q(-1, 2)})).is_zero());
        CHECK(defect_rep(series({q(c0), q(-1, 2), q(1, 12 * c0)})).is_zero());
        CHECK_FALSE(defect_rep(series({q(c0), q(-1, 2), q(1, 12 * c0 + 1)})).is_zero());
        CHECK_FALSE(defect_rep(series({q(c0), q(1, 2)})).is_zero());
    }
}

TEST_CASE("theta_c matches the coth expansion") {
    CHECK(theta_c(q(1), 4) == series({q(1), q(0), q(1, 3), q(0), q(-1, 45)}));
    for (const mpq_class& c : {mpq_class(1), mpq_class(1, 4), mpq_class(-2), mpq_class(3)}) {
        CAPTURE(c.get_str());
        CHECK(theta_c(Scalar(Q, c), 12) == from_rationals(oracle::theta_coefficients(c, 12)));
    }
}

TEST_CASE("phi_d + phi_-d = -t and theta from phi") {
    for (const mpq_class& d : {mpq_class(1), mpq_class(2), mpq_class(1, 3)})
        CHECK(phi_c(Scalar(Q, d), 10) + phi_c(Scalar(Q, -d), 10) == phi_0(Q, 10));
    // c = 1/4, sqrt(c) = 1/2: 2 sqrt(c) (phi_1 - phi_0 / 2) = theta_c.
    CHECK(phi_c(q(1), 10) - phi_0(Q, 10) * q(1, 2) == theta_c(q(1, 4), 10));
}

TEST_CASE("the theta family solves the two-series equation") {
    oracle::RationalSource src(0x7e7a);
    const TruncSeries t = TruncSeries::variable(Q, 8);
    for (int trial = 0; trial < 20; ++trial) {
        const Scalar a(Q, src.nonzero()), b(Q, src.next()), c(Q, src.next()), d(Q, src.nonzero()),
            e(Q, src.next());
        const TruncSeries th = theta_c(c, 8);
        const BiTruncSeries defect =
            defect_general(a * th + b * t, d * th + e * t, (a * e + b * d) * th + (a * d * c + b * e) * t);
        CHECK(defect.is_zero());
        for (int k = 0; k <= defect.cap(); ++k) CHECK(defect.coeff(0, k).is_zero());
    }
    // A perturbed bracket series is detected.
    const TruncSeries th = theta_c(q(1), 8);
    CHECK_FALSE(defect_general(th, th, th * q(2) + t * q(1, 2)).is_zero());
}

TEST_CASE("commuting pairs phi_g, phi_h exactly when h = -g") {
    const std::vector<mpq_class> values{1, -1, 2, -2, mpq_class(1, 2), mpq_class(-1, 2)};
    for (const auto& g : values)
        for (const auto& h : values) {
            CAPTURE(g.get_str());
            CAPTURE(h.get_str());
            const BiTruncSeries d =
                defect_general(phi_c(Scalar(Q, g), 8), phi_c(Scalar(Q, h), 8), TruncSeries(Q, 8));
            CHECK(d.is_zero() == (h == -g));
        }
}

TEST_CASE("exponential reduction") {
    for (const mpq_class& c : {mpq_class(1), mpq_class(2), mpq_class(-1, 2)}) {
        const TruncSeries f = exp_reduction(phi_c(Scalar(Q, c), 9));
        CHECK(exp_defect(f).is_zero());
        mpq_class inv_c = 1 / c, power = 1;
        for (int n = 0; n <= f.cap(); ++n) {
            CHECK(f[n].value() == power / mpq_class(oracle::factorial(n)));
            power *= inv_c;
        }
    }
    CHECK_FALSE(exp_defect(exp_reduction(series({q(1), q(1), q(0), q(0)}))).is_zero());
}

TEST_CASE("implicit two-series defect") {
    const int cap = 7;
    oracle::RationalSource src(99);
    // phi_1 / t = 1/t - 1/2 + t/12 - ...
    const TruncSeries phi1 = phi_c(q(1), cap + 1);
    TruncSeries reg(Q, cap);
    for (int k = 0; k <= cap; ++k) reg.set(k, phi1[k + 1]);
    const LaurentSlot p1{phi1[0], reg};
    CHECK(impl_defect(p1, p1).is_zero());

    const TruncSeries arbitrary = random_series(src, cap, false);
    const LaurentSlot qa{Scalar(Q, src.nonzero()), arbitrary};
    const LaurentSlot constant = LaurentSlot::from_series(TruncSeries::constant(q(3, 2), cap));
    CHECK(impl_defect(constant, qa).is_zero());

    // Antisymmetry: swapping p and q and exchanging t, u negates the defect.
    const LaurentSlot pb{Scalar(Q, src.next()), random_series(src, cap, false)};
    CHECK(impl_defect(qa, pb) == -impl_defect(pb, qa).swapped());

    // p = q does not force a zero defect.
    TruncSeries bump(Q, cap);
    bump.set(2, q(1));
    const LaurentSlot pole_plus_square{q(1), bump};
    const BiTruncSeries d = impl_defect(pole_plus_square, pole_plus_square);
    CHECK_FALSE(d.is_zero());
    CHECK(d == -d.swapped());
}

}  // TEST_SUITE
