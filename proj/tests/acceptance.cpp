// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <set>

#include "algebra_gen.hpp"
#include "helpers.hpp"
#include "regval/errors.hpp"
#include "regval/report.hpp"
#include "regval/regularity.hpp"

using namespace regval;
using namespace testing_support;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

Ideal ideal_of(const Ring& r, const std::vector<std::string>& gens) {
    std::vector<Poly> ps;
    for (const auto& g : gens) ps.push_back(P(r, g));
    return Ideal(r, ps);
}

// ---------------------------------------------------------------- 1

Outcome elliptic() {
    Outcome o;
    auto t0 = Clock::now();
    auto V = ValuationRing::zn_lex(Field::rationals(), {"s", "t"});
    PresentedAlgebra X(V, {"Y", "Z"}, std::vector<std::string>{"s + t*Z^3 - Z*Y^2"});
    Ideal fN = X.fibre_ideal(V.prime_by_name("N"));
    o.require(fN == ideal_of(fN.ring(), {"Z*Y^2"}), "fibre over N is " + fN.to_string());
    Ideal fp = X.fibre_ideal(V.prime_by_name("p"));
    o.require(fp.ring().field() == Field::function_field(Field::rationals(), {"t"}), "fibre field over p");
    o.require(fp == ideal_of(fp.ring(), {"t*Z^3 - Z*Y^2"}), "fibre over p is " + fp.to_string());
    for (auto P : V.primes()) o.require(X.fibre_dim(P) == 1, "fibre dimension over " + V.prime_name(P));

    auto res = run_scenario(builtin_scenario("elliptic-rank2"), RunOptions{});
    std::map<std::string, nlohmann::ordered_json> pts;
    for (const auto& c : res.report.at("charts")) {
        for (const auto& f : c.at("fibres")) o.require(f.at("dim") == 1, c.at("name").get<std::string>() + " fibre dim");
        for (const auto& p : c.at("points")) pts[p.at("point").get<std::string>()] = p;
    }
    const auto& q = pts["Q"];
    o.require(q.at("status") == "Regular" && q.at("wdim") == 2 && q.at("sequence").size() == 2, "Q: " + q.dump());
    const auto& q1 = pts["Q'"];
    o.require(q1.at("status") == "Regular" && q1.at("wdim") == 2, "Q': " + q1.dump());
    const auto& q2 = pts["Q''"];
    o.require(q2.at("status") == "NotRegular" && q2.at("certificate") == "CotangentOverflow" &&
                  q2.at("overflow").at("dim_T") == 3 && q2.at("overflow").at("bound") == 2 && q2.at("wdim") == "infinite",
              "Q'': " + q2.dump());
    const auto& g = pts["G"];
    o.require(g.at("base_prime") == "0" && g.at("status") == "Regular" && g.at("wdim") == 1, "G: " + g.dump());
    o.require(res.failed_checks == 0 && res.errors == 0, "report checks failed");
    double secs = seconds_since(t0);
    o.require(secs < 60, "runtime " + std::to_string(secs) + " s");
    if (o.ok)
        o.detail = "Q wdim 2 (Y, Z); Q' wdim 2; Q'' CotangentOverflow(3 > 2), wdim infinite; G wdim 1; " +
                   std::to_string(secs) + " s";
    return o;
}

// ---------------------------------------------------------------- 2

Outcome strange_t() {
    Outcome o;
    auto D = ValuationRing::dense_sqrt2(Field::rationals(), {"t", "u"});
    PresentedAlgebra L(D, {"X"}, std::vector<std::string>{});
    Chart c = build_chart(L, make_point(L, "T", "N", {"X"}));
    auto v = classify(c);
    o.require(v.cotangent_dim == 1, "dim T = " + std::to_string(v.cotangent_dim));
    o.require(v.status == Status::Regular && v.wdim.is_finite() && v.wdim.value == 2, "wdim " + v.wdim.to_string());
    o.require(v.witness && v.witness->elements.size() == 2 && v.witness->elements[0] == L.parse("X") &&
                  v.witness->elements[1] == L.parse("t"),
              "sequence is not (X, t)");
    // independent check of the witness: X is a nonzerodivisor on the fibre, t on the flat algebra
    Ideal fib = c.fibre;
    o.require(local_nonzerodivisor(fib, parse_poly("X", fib.ring()), c.fibre_trace), "X is not regular on the fibre");
    o.require(saturation(L.ideal(), L.parse("t")) == L.ideal(), "t-torsion");
    o.require(grade_extension_check(c, v), "grade extension");
    auto res = run_scenario(builtin_scenario("strange-T"), RunOptions{});
    const auto& p = res.report.at("charts")[0].at("points")[0];
    o.require(p.at("grade").at("lower_bound").get<int>() >= 2, "grade lower bound");
    if (o.ok) o.detail = "dim T 1, wdim 2, sequence (X, t), grade of M >= 2";
    return o;
}

// ---------------------------------------------------------------- 3

Outcome dense_line() {
    Outcome o;
    auto D = ValuationRing::dense_sqrt2(Field::rationals(), {"s", "t"});
    o.require(!D.is_fg_prime(D.maximal_prime()), "N finitely generated");
    PresentedAlgebra L(D, {"X"}, std::vector<std::string>{});
    Chart c = build_chart(L, make_point(L, "L0", "N", {"X"}));
    auto v = classify(c);
    o.require(v.fibre_cotangent_dim == c.fibre_local_dim, "fibre over N singular at the point");
    o.require(v.status == Status::Regular, "point not regular");
    o.require(cotangent_dim(c) == fibre_cotangent_dim(c), "cotangent space not computed on the fibre");
    o.require(v.wdim.value == 2 && D.gldim_bound(v.wdim.value) == 3, "gldim bound " + std::to_string(D.gldim_bound(v.wdim.value)));
    auto res = run_scenario(builtin_scenario("dense-affine-line"), RunOptions{});
    for (const auto& p : res.report.at("charts")[0].at("points")) {
        if (p.at("base_prime") != "N") continue;
        o.require(p.at("cotangent_source") == "fibre", "report cotangent source");
        o.require(p.at("gldim_bound") == 3, "report gldim bound");
    }
    if (o.ok) o.detail = "N not finitely generated; fibre regular; Regular via fibre branch; gldim bound 3";
    return o;
}

// ---------------------------------------------------------------- 4

Outcome theorem_consistency() {
    Outcome o;
    std::mt19937 rng(424242);
    std::vector<ValuationRing> bases{ValuationRing::zn_lex(Field::rationals(), {"t"}),
                                     ValuationRing::zn_lex(Field::rationals(), {"s", "t"})};
    int algebras = 0, points = 0, regular = 0, violations = 0, checks = 0;
    std::string first;
    for (int trial = 0; algebras < 24 && trial < 400; ++trial) {
        const auto& V = bases[trial % 2];
        std::optional<PresentedAlgebra> A;
        try {
            A = random_primitive_algebra(rng, V, 1 + trial % 3);
        } catch (const Error&) {
            continue;
        }
        std::vector<std::pair<Chart, RegularityVerdict>> done;
        for (const auto& pt : origin_points(*A)) {
            try {
                Chart c = build_chart(*A, pt);
                done.emplace_back(c, classify(c));
            } catch (const UnsupportedResidueField&) {
            } catch (const PointNotOnFibre&) {
            } catch (const InconsistentBasePrime&) {
            } catch (const EmptyFibre&) {
            }
        }
        if (done.empty()) continue;
        ++algebras;
        auto fd = fibre_dimension_invariant(*A);
        ++checks;
        if (!fd.passed) {
            ++violations;
            if (first.empty()) first = A->to_string() + " fibre dimension " + fd.detail;
        }
        for (const auto& [c, v] : done) {
            ++points;
            if (v.status == Status::Regular) ++regular;
            for (const auto& chk : point_invariants(c, v, true)) {
                if (chk.skipped) continue;
                ++checks;
                if (!chk.passed) {
                    ++violations;
                    if (first.empty()) first = A->to_string() + " " + chk.name + ": " + chk.detail;
                }
            }
        }
    }
    o.require(algebras >= 20, "only " + std::to_string(algebras) + " algebras");
    o.require(regular > 0, "no regular verdicts");
    o.require(violations == 0, std::to_string(violations) + " violations, first: " + first);
    o.detail = std::to_string(algebras) + " algebras, " + std::to_string(points) + " points, " +
               std::to_string(regular) + " regular, " + std::to_string(checks) + " checks, " +
               std::to_string(violations) + " violations" + (o.ok ? "" : "; " + o.detail);
    return o;
}

// ---------------------------------------------------------------- 5

std::vector<Monomial> monomials_up_to(std::size_t n, int deg) {
    std::vector<Monomial> out;
    std::function<void(std::size_t, int, Monomial&)> rec = [&](std::size_t i, int left, Monomial& m) {
        if (i == n) {
            out.push_back(m);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            m.set(i, e);
            rec(i + 1, left - e, m);
        }
        m.set(i, 0);
    };
    Monomial m(n);
    rec(0, deg, m);
    return out;
}

bool divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

bool oracle_member(const std::vector<Monomial>& gens, const Monomial& m) {
    for (const auto& g : gens)
        if (divides(g, m)) return true;
    return false;
}

Monomial times(const Monomial& a, const Monomial& b) {
    Monomial c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c.set(i, a[i] + b[i]);
    return c;
}

int oracle_dim(const std::vector<Monomial>& gens, std::size_t n) {
    int best = -1;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        bool free = true;
        for (const auto& g : gens) {
            bool inside = true;
            for (std::size_t i = 0; i < n; ++i)
                if (g[i] > 0 && !(mask >> i & 1u)) inside = false;
            if (inside) free = false;
        }
        if (free) best = std::max(best, __builtin_popcount(mask));
    }
    return best;
}

Outcome groebner_oracle() {
    Outcome o;
    auto t0 = Clock::now();
    long ideals = 0, comparisons = 0, mismatches = 0;
    std::string first;
    auto mismatch = [&](const std::string& what) {
        ++mismatches;
        if (first.empty()) first = what;
    };
    for (std::size_t n = 1; n <= 3; ++n) {
        std::vector<std::string> names{"x", "y", "z"};
        names.resize(n);
        Ring r = qq_ring(names);
        auto gens_pool = monomials_up_to(n, 4);
        auto tests = monomials_up_to(n, 5);
        auto term = [&](const Monomial& m) { return Poly::term(r, m, FieldElement::one(r.field())); };
        std::vector<std::vector<std::size_t>> subsets{{}};
        for (std::size_t a = 0; a < gens_pool.size(); ++a) {
            subsets.push_back({a});
            for (std::size_t b = a + 1; b < gens_pool.size(); ++b) {
                subsets.push_back({a, b});
                for (std::size_t c = b + 1; c < gens_pool.size(); ++c) subsets.push_back({a, b, c});
            }
        }
        std::size_t k = 0;
        for (const auto& sub : subsets) {
            ++ideals;
            std::vector<Monomial> gens;
            std::vector<Poly> polys;
            for (auto i : sub) {
                gens.push_back(gens_pool[i]);
                polys.push_back(term(gens_pool[i]));
            }
            Ideal I(r, polys);
            std::string name = I.to_string();
            for (const auto& m : tests) {
                ++comparisons;
                if (I.contains(term(m)) != oracle_member(gens, m)) mismatch("membership " + name);
            }
            // a binomial lies in a monomial ideal iff both terms do
            const auto& m1 = tests[k % tests.size()];
            const auto& m2 = tests[(k * 7 + 3) % tests.size()];
            if (m1 != m2) {
                ++comparisons;
                bool want = oracle_member(gens, m1) && oracle_member(gens, m2);
                if (I.contains(term(m1) + term(m2)) != want) mismatch("binomial membership " + name);
            }
            // colon by one monomial, cycling through the pool
            const auto& f = gens_pool[(k * 5 + 1) % gens_pool.size()];
            Ideal C = colon(I, term(f));
            for (const auto& m : tests) {
                ++comparisons;
                if (C.contains(term(m)) != oracle_member(gens, times(m, f))) mismatch("colon " + name);
            }
            // saturation at each variable: exponents of the generators are at most 4
            for (std::size_t v = 0; v < n; ++v) {
                Ideal S = saturation(I, Poly::variable(r, v));
                Monomial x4(n);
                x4.set(v, 4);
                for (const auto& m : tests) {
                    ++comparisons;
                    if (S.contains(term(m)) != oracle_member(gens, times(m, x4))) mismatch("saturation " + name);
                }
            }
            ++comparisons;
            if (krull_dim(I) != oracle_dim(gens, n)) mismatch("krull_dim " + name);
            ++k;
        }
    }
    double secs = seconds_since(t0);
    o.require(mismatches == 0, std::to_string(mismatches) + " mismatches, first: " + first);
    o.require(secs < 30, "runtime " + std::to_string(secs) + " s");
    o.detail = std::to_string(ideals) + " ideals, " + std::to_string(comparisons) + " comparisons, " +
               std::to_string(mismatches) + " mismatches, " + std::to_string(secs) + " s" +
               (o.ok ? "" : "; " + o.detail);
    return o;
}

// ---------------------------------------------------------------- 6

FieldElement random_fraction(std::mt19937& rng, const ValuationRing& V) {
    const Ring& r = V.param_ring();
    std::uniform_int_distribution<int> nterms(1, 3);
    Poly num(r), den(r);
    while (num.is_zero()) num = random_poly(rng, r, nterms(rng), 3);
    while (den.is_zero()) den = random_poly(rng, r, nterms(rng), 3);
    return FieldElement::fraction(V.fraction_field(), num, den);
}

Outcome valuation_axioms() {
    Outcome o;
    std::mt19937 rng(99);
    std::vector<std::pair<std::string, ValuationRing>> models{
        {"rank-1", ValuationRing::zn_lex(Field::rationals(), {"t"})},
        {"rank-2", ValuationRing::zn_lex(Field::rationals(), {"s", "t"})},
        {"dense", ValuationRing::dense_sqrt2(Field::rationals(), {"s", "t"})},
    };
    long violations = 0, pairs = 0;
    for (const auto& [name, V] : models) {
        const auto& G = V.group();
        for (int i = 0; i < 1000; ++i) {
            ++pairs;
            FieldElement x = random_fraction(rng, V), y = random_fraction(rng, V);
            Value vx = V.value_of(x), vy = V.value_of(y);
            if (!(V.value_of(x * y) == vx + vy)) ++violations;
            FieldElement s = x + y;
            if (!s.is_zero() && G.compare(V.value_of(s), G.min(vx, vy)) < 0) ++violations;
        }
    }
    auto R2 = models[1].second;
    o.require(R2.prime_name(R2.rad_principal(R2.parse("t"))) == "N", "rad(t) != N");
    o.require(R2.prime_name(R2.rad_principal(R2.parse("s"))) == "p", "rad(s) != p");
    o.require(violations == 0, std::to_string(violations) + " violations");
    o.detail = std::to_string(pairs) + " pairs over 3 models, " + std::to_string(violations) +
               " violations; rad(t) = N, rad(s) = p" + (o.ok ? "" : "; " + o.detail);
    return o;
}

// ---------------------------------------------------------------- 7

Outcome determinism() {
    Outcome o;
    for (const auto& [name, desc] : list_builtins()) {
        auto a = run_scenario(builtin_scenario(name), RunOptions{}).report.dump(2);
        auto b = run_scenario(builtin_scenario(name), RunOptions{}).report.dump(2);
        o.require(a == b, name + " differs between runs");
    }
    if (o.ok) o.detail = "all builtins byte-identical across two runs";
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {"elliptic example", elliptic},
        {"strange T", strange_t},
        {"dense valuation line", dense_line},
        {"theorem consistency", theorem_consistency},
        {"groebner oracle", groebner_oracle},
        {"valuation axioms", valuation_axioms},
        {"determinism", determinism},
    };
    int failed = 0, idx = 0;
    for (const auto& c : criteria) {
        ++idx;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        if (!o.ok) ++failed;
        std::cout << (o.ok ? "PASS" : "FAIL") << " [" << idx << "] " << c.name << ": " << o.detail << std::endl;
    }
    return failed ? 1 : 0;
}
