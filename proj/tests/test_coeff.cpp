#include <doctest.h>

#include <cstdlib>
#include <random>
#include <vector>

#include "pbwk/coeff.hpp"

using namespace pbwk;

namespace {

std::vector<RingSpec> sample_rings() {
    return {RingSpec::rationals(), RingSpec::integers(), RingSpec::modular(7), RingSpec::modular(6),
            RingSpec::modular(2)};
}

Scalar random_scalar(const RingSpec& ring, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-50, 50), den(1, 12);
    if (ring.kind == RingSpec::Kind::rationals) return Scalar(ring, mpq_class(num(rng), den(rng)));
    return Scalar(ring, num(rng));
}

}  // namespace

TEST_SUITE("coeff") {

TEST_CASE("invertibility of small integers") {
    CHECK(RingSpec::rationals().invertible(720));
    CHECK(RingSpec::modular(3).invertible(2));
    CHECK_FALSE(RingSpec::modular(6).invertible(3));
    CHECK(RingSpec::modular(6).invertible(5));
    CHECK_FALSE(RingSpec::integers().invertible(2));
    CHECK(RingSpec::integers().invertible(1));
    CHECK(RingSpec::integers().invertible(-1));
    CHECK_FALSE(RingSpec::modular(5).invertible(10));
}

TEST_CASE("inverses") {
    const RingSpec q = RingSpec::rationals();
    CHECK(Scalar(q, mpq_class(-1, 2)).inv() == Scalar(q, -2L));
    const RingSpec z3 = RingSpec::modular(3);
    CHECK(Scalar(z3, 2L).inv() == Scalar(z3, 2L));
    try {
        (void)Scalar(RingSpec::integers(), 2L).inv();
        FAIL("expected NotInvertible");
    } catch (const NotInvertible& e) {
        CHECK(e.blocking() == 2);
    }
    CHECK_THROWS_AS((void)Scalar(RingSpec::modular(6), 4L).inv(), NotInvertible);
    CHECK_THROWS_AS((void)Scalar::zero(q).inv(), NotInvertible);
}

TEST_CASE("require_invertible names the first obstruction") {
    try {
        RingSpec::modular(5).require_invertible(2, 7);
        FAIL("expected NotInvertible");
    } catch (const NotInvertible& e) {
        CHECK(e.blocking() == 5);
    }
    CHECK_NOTHROW(RingSpec::modular(7).require_invertible(2, 6));
}

TEST_CASE("canonical forms") {
    const RingSpec z6 = RingSpec::modular(6);
    CHECK(Scalar(z6, -1L).value() == 5);
    CHECK(Scalar(z6, 13L) == Scalar(z6, 1L));
    CHECK(Scalar(z6, mpq_class(1, 5)) == Scalar(z6, 5L));
    CHECK_THROWS_AS(Scalar(z6, mpq_class(1, 2)), NotInvertible);
    CHECK_THROWS_AS(Scalar(RingSpec::integers(), mpq_class(1, 2)), NotInvertible);
    const Scalar h(RingSpec::rationals(), mpq_class(6, -4));
    CHECK(h.value().get_num() == -3);
    CHECK(h.value().get_den() == 2);
    CHECK(h.to_string() == "-3/2");
    CHECK(Scalar(z6, -1L).to_string() == "5");
}

TEST_CASE("ring laws on random scalars") {
    std::mt19937_64 rng(20240611);
    for (const auto& ring : sample_rings()) {
        CAPTURE(ring.to_string());
        for (int trial = 0; trial < 200; ++trial) {
            const Scalar a = random_scalar(ring, rng), b = random_scalar(ring, rng), c = random_scalar(ring, rng);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK(a + Scalar::zero(ring) == a);
            CHECK(a * Scalar::one(ring) == a);
            CHECK((a - a).is_zero());
            CHECK((a == b) == (a - b).is_zero());
            if (a.is_invertible()) CHECK(a * a.inv() == Scalar::one(ring));
        }
    }
}

TEST_CASE("mixing rings is rejected") {
    CHECK_THROWS_AS(Scalar(RingSpec::rationals(), 1L) + Scalar(RingSpec::integers(), 1L), RingMismatch);
}

TEST_CASE("ring designations") {
    CHECK(RingSpec::parse("Q") == RingSpec::rationals());
    CHECK(RingSpec::parse("Z") == RingSpec::integers());
    CHECK(RingSpec::parse("Z/3") == RingSpec::modular(3));
    CHECK(RingSpec::modular(3).to_string() == "Z/3");
    CHECK_THROWS_AS(RingSpec::parse("Z/1"), InputError);
    CHECK_THROWS_AS(RingSpec::parse("R"), InputError);
    CHECK_THROWS_AS(RingSpec::parse("Z/x"), InputError);
}

TEST_CASE("default ring follows the environment") {
    ::setenv("PBWK_DEFAULT_RING", "Z/5", 1);
    CHECK(default_ring() == RingSpec::modular(5));
    ::unsetenv("PBWK_DEFAULT_RING");
    CHECK(default_ring() == RingSpec::rationals());
}

TEST_CASE("number literals") {
    const RingSpec q = RingSpec::rationals();
    CHECK(parse_scalar(q, "-1/2") == Scalar(q, mpq_class(-1, 2)));
    CHECK(parse_scalar(q, "4/6") == Scalar(q, mpq_class(2, 3)));
    CHECK(parse_scalar(RingSpec::modular(3), "1/2") == Scalar(RingSpec::modular(3), 2L));
    CHECK_THROWS_AS(parse_scalar(q, "1/0"), InputError);
    CHECK_THROWS_AS(parse_scalar(q, "x"), InputError);
    CHECK_THROWS_AS(parse_scalar(q, ""), InputError);
}

}  // TEST_SUITE
