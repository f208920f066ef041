#include "regval/algebra.hpp"

#include <algorithm>
#include <map>

#include "regval/errors.hpp"

namespace regval {

namespace {

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

Ring chart_ring(const ValuationRing& base, const std::vector<std::string>& vars) {
    try {
        return Ring::make(base.kappa0(), concat(base.params(), vars));
    } catch (const RingMismatch& e) {
        throw InvalidAlgebra(e.what());
    }
}

std::vector<Poly> trace_polys(const Ring& r, const std::vector<std::string>& names) {
    std::vector<Poly> out;
    for (const auto& n : names) out.push_back(Poly::variable(r, n));
    return out;
}

}  // namespace

PresentedAlgebra::PresentedAlgebra(ValuationRing base, std::vector<std::string> vars,
                                   const std::vector<std::string>& relations)
    : base_(std::move(base)), vars_(std::move(vars)), ring_(chart_ring(base_, vars_)) {
    for (const auto& text : relations) {
        Poly f = parse_poly(text, ring_);
        if (!f.is_zero()) relations_.push_back(std::move(f));
    }
    ideal_ = Ideal(ring_, relations_);
    check_flat();
}

PresentedAlgebra::PresentedAlgebra(ValuationRing base, std::vector<std::string> vars, std::vector<Poly> relations)
    : base_(std::move(base)), vars_(std::move(vars)), ring_(chart_ring(base_, vars_)) {
    for (auto& f : relations) {
        if (f.ring() != ring_) throw RingMismatch("relation outside " + ring_.to_string());
        if (!f.is_zero()) relations_.push_back(std::move(f));
    }
    ideal_ = Ideal(ring_, relations_);
    check_flat();
}

PresentedAlgebra PresentedAlgebra::with_relations(const std::vector<Poly>& more) const {
    std::vector<Poly> rel = relations_;
    rel.insert(rel.end(), more.begin(), more.end());
    return PresentedAlgebra(base_, vars_, rel);
}

// No parameter torsion in the chart, and no relation whose content lies in N
// unless it is redundant after dividing out its monomial content.
void PresentedAlgebra::check_flat() const {
    if (ideal_.is_zero()) return;
    if (ideal_.is_unit()) throw InvalidAlgebra("relations generate the unit ideal");
    const auto& G = base_.group();
    std::size_t m = base_.params().size();
    for (const auto& u : base_.params())
        if (saturation(ideal_, Poly::variable(ring_, u)) != ideal_)
            throw InvalidAlgebra("relations have " + u + "-torsion");
    for (const auto& f : relations_) {
        Value best = Value::inf();
        Monomial best_m(m);
        for (const auto& t : f.terms()) {
            Monomial pm(m);
            for (std::size_t i = 0; i < m; ++i) pm.set(i, t.m[i]);
            Value v = base_.value_of_monomial(pm);
            if (G.compare(v, best) < 0) {
                best = v;
                best_m = pm;
            }
        }
        if (G.sign(best) == 0) continue;
        Monomial content(ring_.nvars());
        for (std::size_t i = 0; i < m; ++i) content.set(i, best_m[i]);
        bool divides = std::all_of(f.terms().begin(), f.terms().end(),
                                   [&](const Term& t) { return content.divides(t.m); });
        if (divides) {
            std::vector<Term> ts;
            for (const auto& t : f.terms()) ts.push_back({content.quotient_of(t.m), t.c});
            if (ideal_.contains(Poly::from_terms(ring_, ts))) continue;
        }
        throw InvalidAlgebra("relation " + f.to_string() + " has content in the maximal ideal");
    }
}

Ring PresentedAlgebra::fibre_ring(BasePrime P) const { return Ring::make(base_.residue_field(P), vars_); }

Poly PresentedAlgebra::to_fibre(BasePrime P, const Poly& f) const {
    if (f.ring() != ring_) throw RingMismatch("fibre image of a polynomial outside " + ring_.to_string());
    const Ring& pr = base_.param_ring();
    Ring fr = fibre_ring(P);
    std::size_t m = base_.params().size();
    std::map<Monomial, std::vector<Term>> parts;
    for (const auto& t : f.terms()) {
        Monomial xm(vars_.size()), um(m);
        for (std::size_t i = 0; i < m; ++i) um.set(i, t.m[i]);
        for (std::size_t i = 0; i < vars_.size(); ++i) xm.set(i, t.m[m + i]);
        parts[xm].push_back({um, t.c});
    }
    std::vector<Term> out;
    for (auto& [xm, ts] : parts) {
        FieldElement c = base_.residue_map(P, Poly::from_terms(pr, std::move(ts)));
        if (!c.is_zero()) out.push_back({xm, c});
    }
    return Poly::from_terms(fr, std::move(out));
}

Ideal PresentedAlgebra::fibre_ideal(BasePrime P) const {
    std::vector<Poly> g;
    for (const auto& f : relations_) g.push_back(to_fibre(P, f));
    return Ideal(fibre_ring(P), g);
}

int PresentedAlgebra::fibre_dim(BasePrime P) const {
    Ideal J = fibre_ideal(P);
    if (J.is_unit()) throw EmptyFibre("fibre over " + base_.prime_name(P) + " is empty");
    return krull_dim(J);
}

std::string PresentedAlgebra::to_string() const {
    std::string s = "R[";
    for (std::size_t i = 0; i < vars_.size(); ++i) s += (i ? "," : "") + vars_[i];
    s += "]";
    if (relations_.empty()) return s;
    s += "/(";
    for (std::size_t i = 0; i < relations_.size(); ++i) s += (i ? ", " : "") + relations_[i].to_string();
    return s + ")";
}

PointSpec make_point(const PresentedAlgebra& A, std::string name, const std::string& base_prime,
                     const std::vector<std::string>& generators) {
    PointSpec pt{std::move(name), A.base().prime_by_name(base_prime), {}};
    for (const auto& g : generators) pt.generators.push_back(A.parse(g));
    return pt;
}

Chart build_chart(const PresentedAlgebra& A, const PointSpec& pt) {
    const auto& V = A.base();
    const Ring& r = A.ring();
    BasePrime P = pt.base_prime;
    std::vector<std::string> trace = V.trace_params(P);
    std::vector<Poly> gens = A.relations();
    for (const auto& g : pt.generators) {
        if (g.ring() != r) throw RingMismatch("point generator outside " + r.to_string());
        gens.push_back(g);
    }
    for (auto& u : trace_polys(r, trace)) gens.push_back(std::move(u));
    Ideal center(r, gens);
    if (center.is_unit()) throw PointNotOnFibre(pt.name + " does not lie on " + A.to_string());

    Ideal trace_ideal(r, trace_polys(r, trace));
    Ideal base_part = eliminate(center, A.vars());
    for (const auto& g : base_part.generators())
        if (!trace_ideal.contains(g))
            throw InconsistentBasePrime(pt.name + " lies over a prime larger than " + V.prime_name(P) + " (" +
                                        g.to_string() + " in the trace)");

    auto coords = CoordinateCenter::find(center, A.vars());
    if (!coords) throw UnsupportedResidueField("center of " + pt.name + " is not a coordinate point");

    std::vector<std::string> inverted;
    for (const auto& u : V.params())
        if (std::find(trace.begin(), trace.end(), u) == trace.end()) inverted.push_back(u);

    Ideal fibre = A.fibre_ideal(P);
    if (fibre.is_unit()) throw EmptyFibre("fibre over " + V.prime_name(P) + " is empty");
    int fdim = krull_dim(fibre);
    std::vector<Poly> fgens = fibre.generators();
    for (const auto& g : pt.generators) fgens.push_back(A.to_fibre(P, g));
    Ideal ftrace(fibre.ring(), fgens);
    if (ftrace.is_unit()) throw PointNotOnFibre(pt.name + " misses the fibre over " + V.prime_name(P));
    auto fcoords = CoordinateCenter::find(ftrace, A.vars());
    if (!fcoords) throw UnsupportedResidueField("fibre center of " + pt.name + " is not a coordinate point");

    int local = fdim - krull_dim(ftrace);
    return Chart{A, pt, center, trace, inverted, *coords, fibre, ftrace, *fcoords, fdim, local};
}

namespace {

std::vector<std::vector<Poly>> rows_of(const std::vector<Poly>& fs, const std::vector<std::string>& vars) {
    if (fs.empty()) return {};
    return jacobian(fs, vars);
}

// relations plus the parameters that die in T: below the last trace parameter
std::vector<Poly> effective_relations(const Chart& c) {
    std::vector<Poly> out = c.algebra.relations();
    if (c.trace.size() > 1)
        for (std::size_t i = 0; i + 1 < c.trace.size(); ++i) out.push_back(Poly::variable(c.algebra.ring(), c.trace[i]));
    return out;
}

struct Greedy {
    std::vector<Poly> chosen;
    std::size_t base_rank = 0;
};

Greedy greedy_basis(const std::vector<std::vector<Poly>>& base_rows, const std::vector<Poly>& candidates,
                    const std::vector<Poly>& candidate_images, const std::vector<std::string>& vars,
                    const CoordinateCenter& at) {
    Greedy g;
    Matrix M;
    for (const auto& row : base_rows) {
        std::vector<FieldElement> er;
        for (const auto& x : row) er.push_back(at.evaluate(x));
        M.push_back(std::move(er));
    }
    g.base_rank = rank(M);
    std::size_t cur = g.base_rank;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        auto row = jacobian({candidate_images[k]}, vars)[0];
        std::vector<FieldElement> er;
        for (const auto& x : row) er.push_back(at.evaluate(x));
        M.push_back(er);
        std::size_t nr = rank(M);
        if (nr > cur) {
            cur = nr;
            g.chosen.push_back(candidates[k]);
        } else {
            M.pop_back();
        }
    }
    return g;
}

}  // namespace

std::vector<Poly> center_generators(const Chart& c) {
    std::vector<Poly> out = c.point.generators;
    if (!c.base_is_zero() && c.base_is_fg())
        for (const auto& u : c.trace) out.push_back(Poly::variable(c.algebra.ring(), u));
    return out;
}

std::vector<Poly> cotangent_basis(const Chart& c) {
    auto cands = center_generators(c);
    if (c.base_is_zero() || c.base_is_fg()) {
        const auto& vars = c.algebra.ring().vars();
        return greedy_basis(rows_of(effective_relations(c), vars), cands, cands, vars, c.coords).chosen;
    }
    std::vector<Poly> images;
    for (const auto& g : cands) images.push_back(c.algebra.to_fibre(c.point.base_prime, g));
    return greedy_basis(rows_of(c.fibre.generators(), c.algebra.vars()), cands, images, c.algebra.vars(),
                        c.fibre_coords)
        .chosen;
}

int cotangent_dim(const Chart& c) {
    if (c.base_is_zero() || c.base_is_fg()) {
        auto rows = rows_of(effective_relations(c), c.algebra.ring().vars());
        return static_cast<int>(c.coords.height()) - static_cast<int>(rows.empty() ? 0 : rank_at(rows, c.coords));
    }
    return fibre_cotangent_dim(c);
}

int fibre_cotangent_dim(const Chart& c) {
    auto rows = rows_of(c.fibre.generators(), c.algebra.vars());
    return static_cast<int>(c.fibre_coords.height()) - static_cast<int>(rows.empty() ? 0 : rank_at(rows, c.fibre_coords));
}

}  // namespace regval
