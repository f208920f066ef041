#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "regval/errors.hpp"
#include "regval/valuation.hpp"

using namespace regval;
using namespace testing_support;

namespace {

ValuationRing rank2() { return ValuationRing::zn_lex(Field::rationals(), {"s", "t"}); }
ValuationRing dense() { return ValuationRing::dense_sqrt2(Field::rationals(), {"s", "t"}); }

Value zv(std::vector<std::int64_t> c) { return Value{std::move(c), false}; }

// random nonzero fraction of small polynomials in the parameters
FieldElement random_fraction(std::mt19937& rng, const ValuationRing& V) {
    const Ring& r = V.param_ring();
    std::uniform_int_distribution<int> nterms(1, 3);
    Poly num(r), den(r);
    while (num.is_zero()) num = random_poly(rng, r, nterms(rng), 3);
    while (den.is_zero()) den = random_poly(rng, r, nterms(rng), 3);
    return FieldElement::fraction(V.fraction_field(), num, den);
}

// sign of a + b*sqrt(2) in long double; exact enough for the small inputs used here
int float_sign(const Value& v) {
    long double x = static_cast<long double>(v.c[0]) + static_cast<long double>(v.c[1]) * std::sqrt(2.0L);
    return x > 0 ? 1 : (x < 0 ? -1 : 0);
}

}  // namespace

TEST_SUITE("valuation") {

TEST_CASE("values in the rank-2 model") {
    auto V = rank2();
    const auto& G = V.group();
    CHECK(V.value_of(V.parse("s")) == zv({1, 0}));
    CHECK(V.value_of(V.parse("1")) == zv({0, 0}));
    CHECK(V.value_of(V.parse("s/t^3")) == zv({1, -3}));
    CHECK(V.value_of(V.parse("0")).infinite);
    CHECK(G.format(V.value_of(V.parse("s/t^3"))) == "(1,-3)");
    CHECK_THROWS_AS(V.parse("s/0"), ZeroDenominator);
}

TEST_CASE("membership and units") {
    auto V = rank2();
    CHECK(V.is_member(V.parse("s/t^3")));
    CHECK_FALSE(V.is_unit(V.parse("s/t^3")));
    CHECK_FALSE(V.is_member(V.parse("t/s")));
    CHECK(V.is_member(V.parse("1 + s")));
    CHECK(V.is_unit(V.parse("1 + s")));
}

TEST_CASE("radicals of principal ideals") {
    auto V = rank2();
    CHECK(V.prime_name(V.rad_principal(V.parse("t"))) == "N");
    CHECK(V.prime_name(V.rad_principal(V.parse("s"))) == "p");
    CHECK(V.prime_name(V.rad_principal(V.parse("s/t^5"))) == "p");
    CHECK(V.prime_name(V.rad_principal(V.parse("s + t^2"))) == "N");
    CHECK_THROWS_AS(V.rad_principal(V.parse("1 + s")), UnitInput);
    CHECK_THROWS_AS(V.rad_principal(V.parse("0")), ZeroInput);
    CHECK_THROWS_AS(V.rad_principal(V.parse("1/t")), NegativeValue);
    auto D = dense();
    CHECK(D.prime_name(D.rad_principal(D.parse("s"))) == "N");
    CHECK(D.prime_name(D.rad_principal(D.parse("t/s"))) == "N");
}

TEST_CASE("finite generation and limit primes") {
    auto V = rank2();
    CHECK(V.is_fg_prime(V.prime_by_name("p")));
    CHECK(V.is_fg_prime(V.prime_by_name("N")));
    CHECK_THROWS_AS(V.is_fg_prime(V.zero_prime()), ZeroPrimeInput);
    auto D = dense();
    CHECK_FALSE(D.is_fg_prime(D.maximal_prime()));
    auto Z1 = ValuationRing::zn_lex(Field::rationals(), {"t"});
    CHECK(Z1.is_fg_prime(Z1.maximal_prime()));
    for (auto P : V.primes()) CHECK(V.is_limit_prime(P) == (P.index == 0));
    CHECK_FALSE(D.is_limit_prime(D.maximal_prime()));
    CHECK(D.is_limit_prime(D.zero_prime()));
}

TEST_CASE("prime chain") {
    auto V = ValuationRing::zn_lex(Field::rationals(), {"a", "b", "c"});
    auto Ps = V.primes();
    REQUIRE(Ps.size() == 4);
    CHECK(V.group().convex_subgroups() == 4);
    CHECK(V.prime_name(Ps[1]) == "p1");
    CHECK(V.prime_by_name("P2") == Ps[2]);
    CHECK(V.trace_params(Ps[2]) == std::vector<std::string>{"a", "b"});
    CHECK(V.surviving_params(Ps[2]) == std::vector<std::string>{"c"});
    CHECK(dense().primes().size() == 2);
    CHECK_THROWS_AS(V.prime_by_name("q"), InvalidValuation);
}

TEST_CASE("residue fields and maps") {
    auto V = rank2();
    auto p = V.prime_by_name("p"), N = V.maximal_prime();
    Field Qt = Field::function_field(Field::rationals(), {"t"});
    CHECK(V.residue_field(p) == Qt);
    CHECK(V.residue_map(p, V.parse("s/s")).is_one());
    CHECK(V.residue_map(p, V.parse("t")) == FieldElement::transcendental(Qt, "t"));
    CHECK(V.residue_map(p, V.parse("s + t^2 + s*t")) == FieldElement::transcendental(Qt, "t") * FieldElement::transcendental(Qt, "t"));
    CHECK(V.residue_map(p, V.parse("(s + s*t)/(s*t^2)")) ==
          (FieldElement::transcendental(Qt, "t") + FieldElement::one(Qt)) /
              (FieldElement::transcendental(Qt, "t") * FieldElement::transcendental(Qt, "t")));
    CHECK(V.residue_map(p, V.parse("s/t")).is_zero());
    CHECK_THROWS_AS(V.residue_map(p, V.parse("t/s")), NegativeValue);
    CHECK(V.residue_field(N) == Field::rationals());
    CHECK(V.residue_map(N, V.parse("1 + s + t")).is_one());
    CHECK(V.residue_map(V.zero_prime(), V.parse("s/t")) == V.parse("s/t"));
    auto D = dense();
    CHECK(D.residue_field(D.maximal_prime()) == Field::rationals());
    CHECK(D.residue_map(D.maximal_prime(), D.parse("(3 + s)/(2 + t^2)")) ==
          FieldElement::from_rational(Field::rationals(), mpq_class(3, 2)));
    CHECK(D.residue_map(D.maximal_prime(), D.parse("t/s")).is_zero());
}

TEST_CASE("global dimension bound") {
    CHECK(dense().gldim_bound(2) == 3);
    CHECK(ValuationRing::zn_lex(Field::rationals(), {"t"}).gldim_bound(1) == 1);
    CHECK(rank2().gldim_bound(2) == 3);
}

TEST_CASE("dense group sign agrees with floating point") {
    auto G = ValueGroup::dense_sqrt2();
    for (std::int64_t a = -40; a <= 40; ++a)
        for (std::int64_t b = -40; b <= 40; ++b) CHECK(G.sign(zv({a, b})) == float_sign(zv({a, b})));
}

TEST_CASE("valuation axioms on random fractions") {
    std::mt19937 rng(29);
    for (const auto& V : {rank2(), dense(), ValuationRing::zn_lex(Field::prime(3), {"a", "b", "c"})}) {
        const auto& G = V.group();
        for (int i = 0; i < 150; ++i) {
            auto x = random_fraction(rng, V), y = random_fraction(rng, V);
            Value vx = V.value_of(x), vy = V.value_of(y);
            CHECK(V.value_of(x * y) == vx + vy);
            Value vs = V.value_of(x + y);
            CHECK(G.compare(vs, G.min(vx, vy)) >= 0);
            if (G.compare(vx, vy) != 0) CHECK(vs == G.min(vx, vy));
        }
    }
}

TEST_CASE("rad_principal matches the prime definitions") {
    std::mt19937 rng(31);
    auto V = ValuationRing::zn_lex(Field::rationals(), {"a", "b", "c"});
    int tested = 0;
    for (int i = 0; i < 400; ++i) {
        auto x = random_fraction(rng, V);
        Value v = V.value_of(x);
        if (V.group().sign(v) <= 0) continue;
        ++tested;
        // x lies in P_j iff the first j coordinates are lexicographically positive
        std::size_t smallest = 0;
        for (std::size_t j = 1; j <= 3 && smallest == 0; ++j) {
            bool in = false;
            for (std::size_t k = 0; k < j && !in; ++k) {
                if (v.c[k] > 0) in = true;
                if (v.c[k] != 0) break;
            }
            if (in) smallest = j;
        }
        CHECK(V.rad_principal(x).index == smallest);
        // powers stay in the same radical
        CHECK(V.rad_principal(x * x * x) == V.rad_principal(x));
    }
    CHECK(tested > 50);
}

TEST_CASE("dense maximal ideal is idempotent on monomials") {
    auto D = dense();
    const auto& G = D.group();
    for (std::int64_t a = -6; a <= 6; ++a)
        for (std::int64_t b = -6; b <= 6; ++b) {
            Value v = zv({a, b});
            if (G.sign(v) <= 0) continue;
            // a strictly smaller positive monomial value exists, so no minimal positive element
            bool smaller = false;
            for (std::int64_t c = -30; c <= 30 && !smaller; ++c)
                for (std::int64_t d = -30; d <= 30 && !smaller; ++d) {
                    Value w = zv({c, d});
                    if (G.sign(w) > 0 && G.compare(w, v) < 0 && G.compare(w + w, v) <= 0) smaller = true;
                }
            CHECK(smaller);
        }
}

}  // TEST_SUITE
