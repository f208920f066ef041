#include <algorithm>

#include "regval/errors.hpp"
#include "regval/regularity.hpp"

namespace regval {

namespace {

std::vector<Poly> build_pool(const Ideal& I, int pool_degree, const std::vector<std::size_t>& extra) {
    const Ring& r = I.ring();
    std::vector<Poly> gens;
    for (const auto& g : I.generators())
        if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
    std::vector<Poly> pool = gens;
    auto add = [&](Poly p) {
        if (!p.is_zero() && std::find(pool.begin(), pool.end(), p) == pool.end()) pool.push_back(std::move(p));
    };
    const long coeffs[][2] = {{1, 1}, {1, -1}, {1, 2}, {2, 1}, {1, -2}, {2, -1}};
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            for (const auto& ab : coeffs)
                add(gens[i] * Poly::from_int(r, ab[0]) + gens[j] * Poly::from_int(r, ab[1]));
    if (gens.size() > 2) {
        Poly sum(r);
        for (const auto& g : gens) sum += g;
        add(sum);
    }
    for (std::size_t k : extra)
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t j = 0; j < gens.size(); ++j)
                if (i != j) add(gens[i] + Poly::variable(r, k) * gens[j]);
    if (pool_degree >= 1)
        for (const auto& g : gens)
            for (std::size_t x = 0; x < r.nvars(); ++x) add(Poly::variable(r, x) * g);
    if (pool_degree >= 2)
        for (const auto& g : gens)
            for (std::size_t x = 0; x < r.nvars(); ++x)
                for (std::size_t y = x; y < r.nvars(); ++y) add(Poly::variable(r, x) * Poly::variable(r, y) * g);
    return pool;
}

GradeResult greedy_grade(const Ideal& J0, const Ideal& I, const std::optional<Ideal>& P, int pool_degree,
                         const std::vector<std::size_t>& extra) {
    if (J0.plus(I).is_unit()) throw PreconditionViolated("grade of an ideal that is the unit ideal in the quotient");
    std::vector<Poly> pool = build_pool(I, pool_degree, extra);
    GradeResult res;
    Ideal J = J0;
    std::vector<char> used(pool.size(), 0);
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t k = 0; k < pool.size(); ++k) {
            if (used[k]) continue;
            const Poly& f = pool[k];
            bool ok;
            if (P) {
                ok = P->contains(f) && local_nonzerodivisor(J, f, *P);
            } else {
                ok = !J.contains(f) && !J.plus({f}).is_unit() && colon(J, f) == J;
            }
            if (!ok) continue;
            used[k] = 1;
            res.sequence.push_back(f);
            J = J.plus({f});
            progress = true;
            break;
        }
    }
    res.length = static_cast<int>(res.sequence.size());
    return res;
}

}  // namespace

GradeResult grade_search(const Ideal& J, const Ideal& I, const std::optional<Ideal>& P, int pool_degree) {
    if (J.ring() != I.ring() || (P && P->ring() != I.ring())) throw RingMismatch("grade_search across rings");
    return greedy_grade(J, I, P, pool_degree, {});
}

PolynomialGrade polynomial_grade(const Ideal& J, const Ideal& I, const std::optional<Ideal>& P, int max_extra_vars) {
    PolynomialGrade out;
    const Ring& r = I.ring();
    for (int j = 0; j <= max_extra_vars; ++j) {
        std::vector<std::string> vars = r.vars();
        std::vector<std::size_t> extra;
        for (int k = 1; k <= j; ++k) {
            std::string w = "_W" + std::to_string(k);
            while (std::find(vars.begin(), vars.end(), w) != vars.end()) w = "_" + w;
            extra.push_back(vars.size());
            vars.push_back(w);
        }
        Ring rj = Ring::make(r.field(), vars, r.order().kind == MonomialOrder::Kind::Lex ? MonomialOrder::lex()
                                                                                          : MonomialOrder::grevlex());
        std::optional<Ideal> Pj;
        if (P) Pj = P->rename_into(rj);
        int g = greedy_grade(J.rename_into(rj), I.rename_into(rj), Pj, 1, extra).length;
        out.per_extension.push_back(g);
        out.grade = std::max(out.grade, g);
    }
    std::size_t n = out.per_extension.size();
    out.stable = n >= 2 && out.per_extension[n - 1] == out.per_extension[n - 2];
    out.grade = std::min(out.grade, static_cast<int>(I.generators().size()));
    return out;
}

std::string to_string(CMStatus s) {
    switch (s) {
    case CMStatus::CM: return "CM";
    case CMStatus::NotCM: return "NotCM";
    case CMStatus::Unknown: return "Unknown";
    }
    return "";
}

std::optional<Poly> fibre_socle_witness(const Chart& c) {
    const Ideal& J = c.fibre;
    const Ideal& P = c.fibre_trace;
    Ideal S = colon(J, P);
    for (const auto& h : S.generators())
        if (!locally_zero(J, h, P)) return h;
    return std::nullopt;
}

CMResult fibre_cm_check(const Chart& c) {
    CMResult res;
    GradeResult g = grade_search(c.fibre, c.fibre_trace, c.fibre_trace, 1);
    res.depth = g.length;
    res.witness = g.sequence;
    if (g.length >= c.fibre_local_dim) {
        res.status = CMStatus::CM;
    } else if (c.fibre_local_dim == 1) {
        if (auto h = fibre_socle_witness(c)) {
            res.status = CMStatus::NotCM;
            res.witness = {*h};
        }
    }
    return res;
}

bool grade_extension_check(const Chart& c, const RegularityVerdict& v) {
    if (v.status != Status::Regular) throw PreconditionViolated("grade extension needs a regular point");
    if (c.base_is_zero()) throw PreconditionViolated("grade extension needs a nonzero base prime");
    return v.wdim.is_finite() && v.wdim.value == 1 + fibre_cm_check(c).depth;
}

}  // namespace regval
