#include "doctest.h"
#include "helpers.hpp"
#include "regval/errors.hpp"

using namespace regval;
using namespace testing_support;

namespace {

FieldElement q(long n, long d = 1) { return FieldElement::from_rational(Field::rationals(), mpq_class(n, d)); }

FieldElement random_element(std::mt19937& rng, const Field& f) {
    std::uniform_int_distribution<long> small(-5, 5);
    switch (f.kind()) {
    case Field::Kind::Rationals: {
        long d = small(rng);
        return FieldElement::from_rational(f, mpq_class(small(rng), d == 0 ? 1 : std::labs(d)));
    }
    case Field::Kind::Prime: return FieldElement::from_int(f, small(rng));
    case Field::Kind::Function: {
        const Ring& r = f.poly_ring();
        Poly num(r), den(r);
        std::uniform_int_distribution<int> ex(0, 2);
        for (int i = 0; i < 2; ++i) {
            Monomial m(r.nvars()), m2(r.nvars());
            for (std::size_t j = 0; j < r.nvars(); ++j) {
                m.set(j, ex(rng));
                m2.set(j, ex(rng));
            }
            num += Poly::term(r, m, random_element(rng, f.base()));
            den += Poly::term(r, m2, random_element(rng, f.base()));
        }
        if (den.is_zero()) den = Poly::from_int(r, 1);
        return FieldElement::fraction(f, num, den);
    }
    }
    return {};
}

std::vector<Field> sample_fields() {
    Field Q = Field::rationals(), F5 = Field::prime(5);
    return {Q, F5, Field::function_field(Q, {"t"}), Field::function_field(F5, {"t", "u"}),
            Field::function_field(Field::function_field(Q, {"t"}), {"w"})};
}

}  // namespace

TEST_SUITE("field") {

TEST_CASE("rational arithmetic") {
    CHECK(q(1, 2) + q(1, 3) == q(5, 6));
    CHECK((q(1, 2) - q(1, 2)).is_zero());
    CHECK(q(2, 4) == q(1, 2));
    CHECK_THROWS_AS(q(1) / q(0), DivisionByZero);
}

TEST_CASE("prime field arithmetic") {
    Field F5 = Field::prime(5);
    auto e = [&](long v) { return FieldElement::from_int(F5, v); };
    CHECK(e(3) * e(4) == e(2));
    CHECK(e(3).inverse() == e(2));
    CHECK(e(-1) == e(4));
    CHECK(FieldElement::from_rational(F5, mpq_class(1, 2)) == e(3));
    CHECK_THROWS_AS(Field::prime(6), InvalidField);
    CHECK_THROWS_AS(e(1) + q(1), DescriptorMismatch);
}

TEST_CASE("function field inverse pair") {
    Field Qt = Field::function_field(Field::rationals(), {"t"});
    FieldElement t = FieldElement::transcendental(Qt, "t");
    FieldElement one = FieldElement::one(Qt);
    FieldElement a = t / (t + one), b = (t + one) / t;
    CHECK((a * b).is_one());
    CHECK(a.to_string() == "(t)/(t + 1)");
    // lowest terms and monic denominator
    FieldElement c = (t * t - one) / (FieldElement::from_int(Qt, 2) * t + FieldElement::from_int(Qt, 2));
    CHECK(c.denominator().is_one());
    CHECK(c.to_string() == "1/2*t - 1/2");
}

TEST_CASE("multivariate gcd inside function fields") {
    Field K = Field::function_field(Field::rationals(), {"s", "t"});
    auto s = FieldElement::transcendental(K, "s"), t = FieldElement::transcendental(K, "t");
    auto one = FieldElement::one(K);
    FieldElement x = (s * s - t * t) / ((s + t) * (s * t + one));
    CHECK(x == (s - t) / (s * t + one));
}

TEST_CASE("embeddings") {
    Field Q = Field::rationals(), F5 = Field::prime(5);
    Field Qt = Field::function_field(Q, {"t"}), Qtu = Field::function_field(Q, {"t", "u"});
    Field F5tu = Field::function_field(F5, {"t", "u"});
    auto two = field_embed(FieldElement::from_int(Q, 2), Qt);
    CHECK(two == FieldElement::from_int(Qt, 2));
    CHECK(field_embed(FieldElement::one(F5), F5tu).is_one());
    auto t = FieldElement::transcendental(Qt, "t");
    CHECK(field_embed(t, Qtu) == FieldElement::transcendental(Qtu, "t"));
    CHECK_THROWS_AS(field_embed(FieldElement::one(F5), Qt), NoCanonicalEmbedding);
    CHECK_THROWS_AS(field_embed(FieldElement::transcendental(Qtu, "u"), Qt), NoCanonicalEmbedding);
}

TEST_CASE("descriptor invariants") {
    Field Q = Field::rationals();
    CHECK(Field::function_field(Q, {"t"}) == Field::function_field(Q, {"t"}));
    CHECK(Field::function_field(Q, {"t"}) != Field::function_field(Q, {"u"}));
    CHECK_THROWS_AS(Field::function_field(Q, {"t", "t"}), InvalidField);
    CHECK_THROWS_AS(Field::function_field(Field::function_field(Q, {"t"}), {"t"}), InvalidField);
    CHECK(Field::function_field(Field::prime(7), {"t"}).characteristic() == 7);
}

TEST_CASE("field axioms on random triples") {
    std::mt19937 rng(7);
    for (const Field& f : sample_fields()) {
        CAPTURE(f.to_string());
        for (int i = 0; i < 25; ++i) {
            auto a = random_element(rng, f), b = random_element(rng, f), c = random_element(rng, f);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK(a * (b + c) == a * b + a * c);
            if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
            CHECK(a.canonical() == a);
            CHECK(a.canonical().canonical() == a.canonical());
        }
    }
}

}  // TEST_SUITE
