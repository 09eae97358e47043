#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "pbwk/envelope.hpp"

using namespace pbwk;

namespace {

const RingSpec Q = RingSpec::rationals();

EnvElement j(const LieElement& a) { return EnvElement::from_lie(a); }
SymElement s(const LieElement& a) { return SymElement::from_lie(a); }

Scalar frac(const RingSpec& ring, long p, long q) { return Scalar(ring, mpq_class(p, q)); }

int sign_of(const LieElement& a, const LieElement& b) {
    return (a.parity().value_or(0) & b.parity().value_or(0)) ? -1 : 1;
}

/// Degree-three symbol, written out with nested brackets.
SymElement symbol_of_three(const LieElement& a1, const LieElement& a2, const LieElement& a3) {
    const RingSpec& r = a1.algebra()->ring();
    const Scalar e12(r, static_cast<long>(sign_of(a1, a2)));
    SymElement out = s(a1) * s(a2) * s(a3);
    out += frac(r, 1, 2) * (s(a1) * s(bracket(a2, a3)) + s(bracket(a1, a2)) * s(a3) + e12 * (s(a2) * s(bracket(a1, a3))));
    out += frac(r, 1, 12) * (s(bracket(bracket(a1, a2), a3)) - e12 * s(bracket(a2, bracket(a1, a3))));
    out += frac(r, 1, 4) * s(bracket(a1, bracket(a2, a3)));
    return out;
}

std::vector<std::vector<std::size_t>> triples(std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) out.push_back({a, b, c});
    return out;
}

EnvElement random_env(const AlgebraPtr& alg, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> length(0, 3), coeff(-3, 3);
    std::uniform_int_distribution<std::size_t> letter(0, alg->dim() - 1);
    EnvElement u(alg);
    for (int term = 0; term < 2; ++term) {
        EnvElement w = EnvElement::constant(alg, Scalar(alg->ring(), static_cast<long>(coeff(rng))));
        for (int k = length(rng); k > 0; --k) w = w * j(alg->element(letter(rng)));
        u += w;
    }
    return u;
}

std::vector<SymMonomial> monomials_up_to(const AlgebraPtr& alg, int d) {
    std::vector<SymMonomial> out;
    for (int n = 0; n <= d; ++n)
        for (auto& m : monomials_of_degree(*alg, n)) out.push_back(std::move(m));
    return out;
}

}  // namespace

TEST_SUITE("envelope") {

TEST_CASE("straightening") {
    const auto h = heisenberg(Q);
    const LieElement x = h->element("x"), y = h->element("y"), z = h->element("z");
    CHECK(j(y) * j(x) == j(x) * j(y) - j(z));
    CHECK(j(z) * j(x) == j(x) * j(z));
    CHECK((j(y) * j(x)).to_string() == "j(x)*j(y) - j(z)");

    const auto sq = odd_square_example(Q);
    CHECK(j(sq->element("e")) * j(sq->element("e")) == frac(Q, 1, 2) * j(sq->element("h")));
    const auto sup = super_example(Q);
    CHECK(j(sup->element("f")) * j(sup->element("e")) == -(j(sup->element("e")) * j(sup->element("f"))) + j(sup->element("h")));
    CHECK((j(sup->element("e")) * j(sup->element("e"))).is_zero());

    // [e, e] = 0 still needs the division by two.
    const auto line = odd_line(RingSpec::integers());
    try {
        (void)(j(line->element("e")) * j(line->element("e")));
        FAIL("expected NotInvertible");
    } catch (const NotInvertible& err) {
        CHECK(err.blocking() == 2);
    }
}

TEST_CASE("the product is associative") {
    std::mt19937_64 rng(31);
    for (const auto& alg : {sl2(Q), super_example(Q), odd_square_example(Q), free_nilpotent({{"a", 0}, {"b", 0}}, 3, Q),
                            sl2(RingSpec::modular(5))}) {
        for (int trial = 0; trial < 40; ++trial) {
            const EnvElement u = random_env(alg, rng), v = random_env(alg, rng), w = random_env(alg, rng);
            CHECK((u * v) * w == u * (v * w));
        }
    }
}

TEST_CASE("coproduct of the enveloping algebra") {
    const auto h = heisenberg(Q);
    const EnvWord one, x({0}), y({1}), xy({0, 1});
    const Scalar unit = Scalar::one(Q);
    EnvTensor expected(h);
    expected.add_term(one, one, unit);
    CHECK(env_coproduct(EnvElement::one(h)) == expected);

    EnvTensor primitive(h);
    primitive.add_term(x, one, unit);
    primitive.add_term(one, x, unit);
    CHECK(env_coproduct(j(h->element("x"))) == primitive);

    EnvTensor four(h);
    four.add_term(xy, one, unit);
    four.add_term(x, y, unit);
    four.add_term(y, x, unit);
    four.add_term(one, xy, unit);
    CHECK(env_coproduct(j(h->element("x")) * j(h->element("y"))) == four);
}

TEST_CASE("regular actions") {
    const auto h = heisenberg(Q);
    const LieElement x = h->element("x"), y = h->element("y"), z = h->element("z");
    CHECK(adjoint(x, j(y)) == j(z));
    CHECK(left_mul(x, EnvElement::one(h)) == j(x));
    CHECK(right_mul(x, EnvElement::one(h)) == j(x));
    const auto sup = super_example(Q);
    const LieElement e = sup->element("e"), f = sup->element("f");
    CHECK(right_mul(e, j(f)) == -(j(f) * j(e)));
    CHECK(adjoint(e, j(f)) == j(sup->element("h")));
}

TEST_CASE("symbols in low degree") {
    for (const auto& alg : {heisenberg(Q), sl2(Q), super_example(Q), odd_square_example(Q)}) {
        const SymbolMap beta = SymbolMap::standard(alg, 3);
        CHECK(beta.symbol(EnvElement::one(alg)) == SymElement::one(alg));
        for (std::size_t i = 0; i < alg->dim(); ++i) {
            const LieElement a = alg->element(i);
            CHECK(beta.symbol(j(a)) == s(a));
            for (std::size_t k = 0; k < alg->dim(); ++k) {
                const LieElement b = alg->element(k);
                CHECK(beta.symbol(j(a) * j(b)) == s(a) * s(b) + frac(Q, 1, 2) * s(bracket(a, b)));
            }
        }
    }
}

TEST_CASE("degree three symbols match the closed form") {
    for (const auto& alg : {sl2(Q), super_example(Q), odd_square_example(Q)}) {
        const SymbolMap beta = SymbolMap::standard(alg, 3);
        for (const auto& t : triples(alg->dim())) {
            const LieElement a1 = alg->element(t[0]), a2 = alg->element(t[1]), a3 = alg->element(t[2]);
            CHECK(beta.symbol(j(a1) * j(a2) * j(a3)) == symbol_of_three(a1, a2, a3));
        }
    }
}

TEST_CASE("degree three symbols on three free generators") {
    const auto alg = free_nilpotent({{"a", 0}, {"b", 0}, {"c", 0}}, 3, Q);
    const SymbolMap beta = SymbolMap::standard(alg, 3);
    std::vector<std::size_t> order{0, 1, 2};
    do {
        const LieElement a1 = alg->element(order[0]), a2 = alg->element(order[1]), a3 = alg->element(order[2]);
        const SymElement computed = beta.symbol(j(a1) * j(a2) * j(a3));
        CHECK(computed.to_string() == symbol_of_three(a1, a2, a3).to_string());
    } while (std::next_permutation(order.begin(), order.end()));
    const SymElement abc = beta.symbol(j(alg->element("a")) * j(alg->element("b")) * j(alg->element("c")));
    // The 1/12 and 1/4 terms, rewritten in the Lyndon basis by Jacobi.
    CHECK(abc.to_string() == "a*b*c + 1/2*a*[b,c] + 1/2*b*[a,c] + 1/2*c*[a,b] + 1/3*[a,[b,c]] + 1/6*[[a,c],b]");
}

TEST_CASE("the 2-nilpotent example over Z/3") {
    const RingSpec z3 = RingSpec::modular(3);
    for (const auto& alg : {heisenberg(z3), super_example(z3), free_nilpotent({{"a", 0}, {"b", 0}, {"c", 0}}, 2, z3)}) {
        const SymbolMap beta = SymbolMap::standard(alg, 3);
        const Scalar half = frac(z3, 1, 2);
        for (std::size_t i = 0; i < alg->dim(); ++i) {
            const LieElement a1 = alg->element(i);
            CHECK(beta.symmetrize(s(a1)) == j(a1));
            for (std::size_t k = 0; k < alg->dim(); ++k) {
                const LieElement a2 = alg->element(k);
                CHECK(beta.symmetrize(s(a1) * s(a2)) == j(a1) * j(a2) - half * j(bracket(a1, a2)));
            }
        }
        for (const auto& t : triples(alg->dim())) {
            const LieElement a1 = alg->element(t[0]), a2 = alg->element(t[1]), a3 = alg->element(t[2]);
            const Scalar e12(z3, static_cast<long>(sign_of(a1, a2)));
            const SymElement sigma = s(a1) * s(a2) * s(a3) +
                                     half * (s(a1) * s(bracket(a2, a3)) + s(bracket(a1, a2)) * s(a3)) +
                                     half * e12 * (s(a2) * s(bracket(a1, a3)));
            CHECK(beta.symbol(j(a1) * j(a2) * j(a3)) == sigma);
            const EnvElement expected = j(a1) * j(a2) * j(a3) -
                                        half * (j(a1) * j(bracket(a2, a3)) + j(bracket(a1, a2)) * j(a3)) -
                                        half * e12 * (j(a2) * j(bracket(a1, a3)));
            CHECK(beta.symmetrize(s(a1) * s(a2) * s(a3)) == expected);
        }
    }
}

TEST_CASE("symbol and symmetrization are inverse") {
    for (const auto& alg : {heisenberg(Q), sl2(Q), super_example(Q), odd_square_example(Q),
                            free_nilpotent({{"a", 0}, {"b", 0}}, 3, RingSpec::modular(5)), heisenberg(RingSpec::modular(3)),
                            super_example(RingSpec::modular(3))}) {
        CHECK(inversion_check(SymbolMap::standard(alg, 4), 4).passed());
    }
}

TEST_CASE("the symbol hypothesis") {
    CHECK(symbol_series_cap(*sl2(Q), 5) == 4);
    CHECK(symbol_series_cap(*heisenberg(Q), 5) == 1);
    CHECK_NOTHROW(require_symbol_hypothesis(*heisenberg(RingSpec::modular(3)), 6));
    try {
        require_symbol_hypothesis(*free_nilpotent({{"a", 0}, {"b", 0}}, 3, RingSpec::integers()), 3);
        FAIL("expected NotInvertible");
    } catch (const NotInvertible& err) {
        CHECK(err.blocking() == 2);
    }
    try {
        require_symbol_hypothesis(*free_nilpotent({{"a", 0}, {"b", 0}}, 4, RingSpec::modular(3)), 4);
        FAIL("expected NotInvertible");
    } catch (const NotInvertible& err) {
        CHECK(err.blocking() == 3);
    }
    CHECK_THROWS_AS(SymbolMap::standard(sl2(RingSpec::modular(3)), 4), NotInvertible);
}

TEST_CASE("powers and symmetrized products") {
    for (const auto& alg : {sl2(Q), free_nilpotent({{"a", 0}, {"b", 0}}, 3, Q), super_example(Q)}) {
        const SymbolMap beta = SymbolMap::standard(alg, 4);
        for (std::size_t i = 0; i < alg->dim(); ++i) {
            const LieElement a = alg->element(i);
            if (alg->parity(i) == 1) continue;
            SymElement power = SymElement::one(alg);
            EnvElement jpower = EnvElement::one(alg);
            for (int n = 1; n <= 4; ++n) {
                power = power * s(a);
                jpower = jpower * j(a);
                CHECK(beta.symmetrize(power) == jpower);
            }
        }
        // n! beta(a_1 ... a_n) = sum_s alpha(s) j(a_s1) ... j(a_sn).
        for (int n = 1; n <= 3; ++n) {
            std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
            for (;;) {
                std::vector<int> par;
                SymElement product = SymElement::one(alg);
                for (std::size_t k : idx) {
                    par.push_back(alg->parity(k));
                    product = product * s(alg->element(k));
                }
                std::vector<std::size_t> order(idx.size());
                std::iota(order.begin(), order.end(), 0);
                EnvElement sum(alg);
                do {
                    EnvElement w = EnvElement::one(alg);
                    for (std::size_t k : order) w = w * j(alg->element(idx[k]));
                    sum += oracle::odd_inversion_sign(par, order) > 0 ? w : -w;
                } while (std::next_permutation(order.begin(), order.end()));
                const Scalar nfact(Q, mpq_class(oracle::factorial(n)));
                CHECK(nfact * beta.symmetrize(product) == sum);
                std::size_t pos = 0;
                while (pos < idx.size() && ++idx[pos] == alg->dim()) idx[pos++] = 0;
                if (pos == idx.size()) break;
            }
        }
    }
}

TEST_CASE("compatibility with the coproducts") {
    for (const auto& alg : {heisenberg(Q), sl2(Q), super_example(Q), free_nilpotent({{"a", 0}, {"b", 0}}, 3, Q)})
        CHECK(compatibility_check(SymbolMap::standard(alg, 4), 4).passed());
}

TEST_CASE("conjugated actions are the coderivations") {
    for (const auto& alg : {heisenberg(Q), sl2(Q), super_example(Q)}) {
        const SymbolMap beta = SymbolMap::standard(alg, 4);
        for (std::size_t i = 0; i < alg->dim(); ++i)
            for (auto kind : {ActionKind::adjoint, ActionKind::left, ActionKind::right}) {
                CHECK(conjugation_check(beta, kind, alg->element(i), 3).passed());
            }
    }
}

TEST_CASE("left minus right is adjoint on the coderivation side") {
    for (const auto& alg : {heisenberg(Q), sl2(Q), super_example(Q)})
        for (std::size_t i = 0; i < alg->dim(); ++i) {
            const LieElement a = alg->element(i);
            const Coderivation plus = coderivation(phi_c(Scalar(Q, 1L), 5), a);
            const Coderivation minus = coderivation(phi_c(Scalar(Q, -1L), 5), a);
            const Coderivation adj = coderivation(phi_0(Q, 5), a);
            for (const auto& m : monomials_up_to(alg, 3)) CHECK(plus(m) + minus(m) == adj(m));
        }
}

TEST_CASE("strong PBW properties") {
    const auto h = heisenberg(Q);
    const Scalar two(Q, 2L), three(Q, 3L), six(Q, 6L);
    const std::vector<LieDerivation> hd{LieDerivation::diagonal(h, {1, 2, 3}), LieDerivation::diagonal(h, {0, 1, 1})};
    const std::vector<LieMorphism> ha{
        LieMorphism(h, h, {two * h->element("x"), three * h->element("y"), six * h->element("z")}),
        LieMorphism(h, h, {h->element("y"), h->element("x"), -h->element("z")})};
    CHECK(strong_pbw_check(SymbolMap::standard(h, 5), hd, ha, 5).passed());

    const auto s2 = sl2(Q);
    const std::vector<LieDerivation> sd{LieDerivation::diagonal(s2, {1, -1, 0})};
    const std::vector<LieMorphism> sa{
        LieMorphism(s2, s2, {s2->element("f"), s2->element("e"), -s2->element("h")}),
        LieMorphism(s2, s2, {two * s2->element("e"), frac(Q, 1, 2) * s2->element("f"), s2->element("h")})};
    CHECK(strong_pbw_check(SymbolMap::standard(s2, 4), sd, sa, 4).passed());

    const auto sup = super_example(Q);
    const std::vector<LieDerivation> od{LieDerivation::diagonal(sup, {2, 1, 1}), LieDerivation::diagonal(sup, {0, 1, -1})};
    CHECK(strong_pbw_check(SymbolMap::standard(sup, 4), od, {}, 4).passed());
}

TEST_CASE("derivation and morphism extensions") {
    const auto h = heisenberg(Q);
    const LieDerivation d = LieDerivation::diagonal(h, {1, 2, 3});
    const LieElement x = h->element("x"), y = h->element("y");
    CHECK(sym_derivation(d, s(x) * s(y)) == Scalar(Q, 3L) * (s(x) * s(y)));
    CHECK(env_derivation(d, j(y) * j(x)) == Scalar(Q, 3L) * (j(y) * j(x)));
    const LieMorphism swap(h, h, {y, x, -h->element("z")});
    CHECK(env_apply(swap, j(x) * j(y)) == j(y) * j(x));
}

TEST_CASE("concurrent symbol evaluation") {
    const auto alg = free_nilpotent({{"a", 0}, {"b", 0}}, 3, Q);
    const auto inputs = monomials_up_to(alg, 3);
    std::vector<EnvElement> expected;
    {
        const SymbolMap fresh = SymbolMap::standard(alg, 3);
        for (const auto& m : inputs) expected.push_back(fresh.symmetrize(m));
    }
    const SymbolMap shared = SymbolMap::standard(alg, 3);
    std::atomic<int> wrong{0};
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < 8; ++w)
        workers.emplace_back([&, w] {
            std::mt19937_64 rng(w);
            std::vector<std::size_t> order(inputs.size());
            std::iota(order.begin(), order.end(), 0);
            std::shuffle(order.begin(), order.end(), rng);
            for (std::size_t k : order)
                if (!(shared.symmetrize(inputs[k]) == expected[k])) ++wrong;
        });
    for (auto& t : workers) t.join();
    CHECK(wrong.load() == 0);
}

}  // TEST_SUITE
