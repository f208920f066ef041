#include "doctest.h"
#include "algebra_gen.hpp"
#include "helpers.hpp"
#include "regval/algebra.hpp"
#include "regval/errors.hpp"
#include "regval/regularity.hpp"

using namespace regval;
using namespace testing_support;

namespace {

ValuationRing rank2() { return ValuationRing::zn_lex(Field::rationals(), {"s", "t"}); }

PresentedAlgebra x_chart() {
    return PresentedAlgebra(rank2(), {"Y", "Z"}, std::vector<std::string>{"s + t*Z^3 - Z*Y^2"});
}

Ideal ideal_of(const Ring& r, const std::vector<std::string>& gens) {
    std::vector<Poly> ps;
    for (const auto& g : gens) ps.push_back(P(r, g));
    return Ideal(r, ps);
}

}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("fibres of the X-chart") {
    auto A = x_chart();
    const auto& V = A.base();
    auto N = V.prime_by_name("N"), p = V.prime_by_name("p"), zero = V.zero_prime();

    Ideal fN = A.fibre_ideal(N);
    CHECK(fN.ring().field() == Field::rationals());
    CHECK(fN == ideal_of(fN.ring(), {"Z*Y^2"}));

    Ideal fp = A.fibre_ideal(p);
    CHECK(fp.ring().field() == Field::function_field(Field::rationals(), {"t"}));
    CHECK(fp == ideal_of(fp.ring(), {"t*Z^3 - Z*Y^2"}));

    Ideal f0 = A.fibre_ideal(zero);
    CHECK(f0 == ideal_of(f0.ring(), {"s + t*Z^3 - Z*Y^2"}));

    for (auto P : V.primes()) CHECK(A.fibre_dim(P) == 1);
}

TEST_CASE("generic fibre keeps the relations verbatim") {
    auto A = x_chart();
    auto zero = A.base().zero_prime();
    for (const auto& f : A.relations()) {
        Poly g = A.to_fibre(zero, f);
        CHECK(g.terms().size() == f.terms().size());
        CHECK(g == parse_poly(f.to_string(), g.ring()));
    }
}

TEST_CASE("fibre dimensions of simple algebras") {
    auto V = rank2();
    PresentedAlgebra line(V, {"X"}, std::vector<std::string>{});
    PresentedAlgebra torus(V, {"X", "Y"}, std::vector<std::string>{"X*Y - 1"});
    for (auto P : V.primes()) {
        CHECK(line.fibre_dim(P) == 1);
        CHECK(torus.fibre_dim(P) == 1);
    }
    CHECK(fibre_dimension_invariant(torus).passed);
}

TEST_CASE("flatness is checked") {
    auto V = rank2();
    CHECK_THROWS_AS(PresentedAlgebra(V, {"X"}, std::vector<std::string>{"s*X"}), InvalidAlgebra);
    CHECK_THROWS_AS(PresentedAlgebra(V, {"X"}, std::vector<std::string>{"(s + t)*X"}), InvalidAlgebra);
    CHECK_THROWS_AS(PresentedAlgebra(V, {"X"}, std::vector<std::string>{"t*X + s"}), InvalidAlgebra);
    CHECK_THROWS_AS(PresentedAlgebra(V, {"X"}, std::vector<std::string>{"1"}), InvalidAlgebra);
    CHECK_NOTHROW(PresentedAlgebra(V, {"X"}, std::vector<std::string>{"t*X - 1"}));
    CHECK_NOTHROW(PresentedAlgebra(V, {"X", "Y"}, std::vector<std::string>{"s*X^3 - Y^2 + t"}));
    // a variable name clashing with a parameter
    CHECK_THROWS_AS(PresentedAlgebra(V, {"s"}, std::vector<std::string>{}), InvalidAlgebra);
}

TEST_CASE("empty fibres") {
    auto V = rank2();
    PresentedAlgebra A(V, {"X"}, std::vector<std::string>{"t*X - 1"});
    CHECK_THROWS_AS(A.fibre_dim(V.maximal_prime()), EmptyFibre);
    CHECK(A.fibre_dim(V.zero_prime()) == 0);
    CHECK(fibre_dimension_invariant(A).passed);
    auto pt = make_point(A, "R", "N", {});
    CHECK_THROWS_AS(build_chart(A, pt), PointNotOnFibre);
}

TEST_CASE("charts of the elliptic points") {
    auto A = x_chart();
    const Ring& r = A.ring();

    Chart q = build_chart(A, make_point(A, "Q", "p", {"Y", "Z"}));
    CHECK(q.center == ideal_of(r, {"s + t*Z^3 - Z*Y^2", "Y", "Z", "s"}));
    CHECK(q.trace == std::vector<std::string>{"s"});
    CHECK(q.inverted == std::vector<std::string>{"t"});
    CHECK(q.fibre_local_dim == 1);
    CHECK(q.base_is_fg());
    CHECK(cotangent_dim(q) == 2);
    CHECK(fibre_cotangent_dim(q) == 2);

    Chart q2 = build_chart(A, make_point(A, "Q''", "N", {"Y", "Z"}));
    CHECK(q2.center == ideal_of(r, {"Y", "Z", "s", "t"}));
    CHECK(q2.inverted.empty());
    CHECK(q2.fibre_local_dim == 1);
    CHECK(cotangent_dim(q2) == 3);

    PresentedAlgebra Zc(A.base(), {"X", "Y"}, std::vector<std::string>{"s*X^3 - Y^2 + t"});
    Chart q1 = build_chart(Zc, make_point(Zc, "Q'", "N", {"X - 1", "Y"}));
    CHECK(cotangent_dim(q1) == 2);
    auto basis = cotangent_basis(q1);
    REQUIRE(basis.size() == 2);
    CHECK(basis[0] == Zc.parse("X - 1"));
    CHECK(basis[1] == Zc.parse("Y"));

    PresentedAlgebra Yc(A.base(), {"X", "Z"}, std::vector<std::string>{"s*X^3 + t*Z^3 - Z"});
    Chart g = build_chart(Yc, make_point(Yc, "G", "0", {"X", "Z"}));
    CHECK(g.inverted == std::vector<std::string>{"s", "t"});
    CHECK(g.fibre_local_dim == 1);
    CHECK(cotangent_dim(g) == 1);
}

TEST_CASE("point errors") {
    auto A = x_chart();
    CHECK_THROWS_AS(build_chart(A, make_point(A, "off", "N", {"Y - 1", "Z - 1"})), PointNotOnFibre);
    // t in the center although the base prime is p
    CHECK_THROWS_AS(build_chart(A, make_point(A, "mixed", "p", {"Y", "Z", "t"})), InconsistentBasePrime);
    // center over p whose residue field is not a coordinate field
    CHECK_THROWS_AS(build_chart(A, make_point(A, "conic", "p", {"Y^2 + 1", "Z"})), UnsupportedResidueField);
    CHECK_THROWS(make_point(A, "bad", "q", {"Y"}));
}

TEST_CASE("strange T cotangent space") {
    auto D = ValuationRing::dense_sqrt2(Field::rationals(), {"t", "u"});
    PresentedAlgebra L(D, {"X"}, std::vector<std::string>{});
    Chart c = build_chart(L, make_point(L, "T", "N", {"X"}));
    CHECK_FALSE(c.base_is_fg());
    CHECK(c.trace == std::vector<std::string>{"t", "u"});
    CHECK(cotangent_dim(c) == 1);
    CHECK(fibre_cotangent_dim(c) == 1);
    CHECK(c.fibre_local_dim == 1);
}

TEST_CASE("random primitive hypersurfaces are flat with constant fibre dimension") {
    std::mt19937 rng(20261016);
    auto V = rank2();
    for (int trial = 0; trial < 15; ++trial) {
        PresentedAlgebra A = random_primitive_algebra(rng, V, 1 + trial % 2);
        for (const auto& u : V.params()) {
            Ideal I = A.ideal();
            CHECK(saturation(I, Poly::variable(A.ring(), u)) == I);
        }
        auto inv = fibre_dimension_invariant(A);
        CHECK_MESSAGE(inv.passed, A.to_string() << ": " << inv.detail);
    }
}

}
