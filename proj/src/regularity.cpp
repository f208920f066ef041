#include "regval/regularity.hpp"

#include <algorithm>
#include <numeric>

#include "regval/errors.hpp"

namespace regval {

std::string to_string(Status s) {
    switch (s) {
    case Status::Regular: return "Regular";
    case Status::NotRegular: return "NotRegular";
    case Status::Unknown: return "Unknown";
    }
    return "";
}

std::string to_string(Certificate c) {
    switch (c) {
    case Certificate::None: return "None";
    case Certificate::FibreSmooth: return "FibreSmooth";
    case Certificate::KoszulRadical: return "KoszulRadical";
    case Certificate::CotangentOverflow: return "CotangentOverflow";
    case Certificate::FibreNotCM: return "FibreNotCM";
    case Certificate::NonFgFibreSingular: return "NonFgFibreSingular";
    }
    return "";
}

std::string WDim::to_string() const {
    switch (kind) {
    case Kind::Finite: return std::to_string(value);
    case Kind::Infinite: return "infinite";
    case Kind::Unknown: return "unknown";
    }
    return "";
}

bool locally_zero(const Ideal& J, const Poly& h, const Ideal& P) {
    if (J.contains(h)) return true;
    Ideal ann = colon(J, h);
    for (const auto& g : ann.generators())
        if (!P.contains(g)) return true;
    return false;
}

bool local_nonzerodivisor(const Ideal& J, const Poly& f, const Ideal& P) {
    if (f.is_zero() || J.contains(f)) return false;
    Ideal C = colon(J, f);
    for (const auto& h : C.generators())
        if (!locally_zero(J, h, P)) return false;
    return true;
}

namespace {

Ideal fibre_quotient(const Chart& c, BasePrime P, const std::vector<Poly>& prev) {
    Ideal J = c.algebra.fibre_ideal(P);
    std::vector<Poly> more;
    for (const auto& g : prev) more.push_back(c.algebra.to_fibre(P, g));
    return J.plus(more);
}

// g in K[X] with K = kappa0(params): clear denominators, remove the content
// and read the result in the chart ring
Poly clear_to_chart(const PresentedAlgebra& A, const Poly& g) {
    const auto& V = A.base();
    const Ring& pr = V.param_ring();
    const Ring& r = A.ring();
    Poly L = Poly::from_int(pr, 1);
    for (const auto& t : g.terms()) {
        const Poly& d = t.c.denominator();
        L = exact_div(L * d, poly_gcd(L, d));
    }
    std::vector<Poly> coeffs;
    Poly content(pr);
    for (const auto& t : g.terms()) {
        Poly cf = t.c.numerator() * exact_div(L, t.c.denominator());
        content = poly_gcd(content, cf);
        coeffs.push_back(std::move(cf));
    }
    std::size_t m = V.params().size();
    std::vector<Term> out;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        Poly cf = exact_div(coeffs[k], content);
        for (const auto& ct : cf.terms()) {
            Monomial mono(r.nvars());
            for (std::size_t i = 0; i < m; ++i) mono.set(i, ct.m[i]);
            for (std::size_t i = 0; i < g.ring().nvars(); ++i) mono.set(m + i, g.terms()[k].m[i]);
            out.push_back({mono, ct.c});
        }
    }
    return Poly::from_terms(r, std::move(out));
}

// f is a nonzerodivisor on the generic fibre of O/(prev), certified by
// annihilators whose chart lifts avoid the center
bool generic_nonzerodivisor(const Chart& c, const std::vector<Poly>& prev, const Poly& f) {
    BasePrime zero = c.algebra.base().zero_prime();
    Ideal J = fibre_quotient(c, zero, prev);
    Poly fk = c.algebra.to_fibre(zero, f);
    if (fk.is_zero() || J.contains(fk)) return false;
    Ideal C = colon(J, fk);
    for (const auto& h : C.generators()) {
        if (J.contains(h)) continue;
        Ideal ann = colon(J, h);
        bool unit_found = false;
        for (const auto& g : ann.generators())
            if (!c.center.contains(clear_to_chart(c.algebra, g))) {
                unit_found = true;
                break;
            }
        if (!unit_found) return false;
    }
    return true;
}

bool fibre_nonzerodivisor(const Chart& c, const std::vector<Poly>& prev, const Poly& f) {
    BasePrime P = c.point.base_prime;
    return local_nonzerodivisor(fibre_quotient(c, P, prev), c.algebra.to_fibre(P, f), c.fibre_trace);
}

FieldElement as_base_element(const Chart& c, const Poly& g) {
    const auto& V = c.algebra.base();
    const Ring& pr = V.param_ring();
    return FieldElement::fraction(V.fraction_field(), g.rename_into(pr), Poly::from_int(pr, 1));
}

std::optional<BasePrime> radical_of(const Chart& c, const Poly& g) {
    try {
        return c.algebra.base().rad_principal(as_base_element(c, g));
    } catch (const Error&) {
        return std::nullopt;
    }
}

bool involves_only_params(const Chart& c, const Poly& g) {
    std::size_t m = c.algebra.base().params().size();
    for (std::size_t i = m; i < c.algebra.ring().nvars(); ++i)
        if (g.involves(i)) return false;
    return true;
}

}  // namespace

RegularSequenceWitness lift_regular_sequence(const Chart& c) {
    const auto& A = c.algebra;
    const Ring& r = A.ring();
    std::vector<Poly> lifts = cotangent_basis(c);
    RegularSequenceWitness W;

    if (c.base_is_zero()) {
        for (std::size_t i = 0; i < lifts.size(); ++i) {
            if (!fibre_nonzerodivisor(c, W.elements, lifts[i]))
                throw ColonFailed("element " + std::to_string(i + 1) + " (" + lifts[i].to_string() + ")");
            W.elements.push_back(lifts[i]);
            W.proofs.push_back("generic-fibre colon");
        }
    } else if (c.base_is_fg()) {
        Poly pi = Poly::variable(r, c.trace.back());
        auto it = std::find(lifts.begin(), lifts.end(), pi);
        if (it != lifts.end()) {
            lifts.erase(it);
            W.elements.push_back(pi);
            W.proofs.push_back("parameter on a flat algebra");
            std::vector<Poly> prev;
            for (std::size_t i = 0; i < lifts.size(); ++i) {
                if (!fibre_nonzerodivisor(c, prev, lifts[i]))
                    throw ColonFailed("element " + std::to_string(i + 2) + " (" + lifts[i].to_string() + ")");
                prev.push_back(lifts[i]);
                W.elements.push_back(lifts[i]);
                W.proofs.push_back("fibre-local colon");
            }
            W.base_element = pi;
        } else {
            // all but the last element keep the quotient flat; the last one
            // may instead be checked on the generic fibre
            std::vector<std::size_t> perm(lifts.size());
            std::iota(perm.begin(), perm.end(), 0);
            bool found = false;
            do {
                std::vector<Poly> prev;
                std::vector<std::string> proofs;
                bool ok = true;
                for (std::size_t k = 0; k < perm.size() && ok; ++k) {
                    const Poly& x = lifts[perm[k]];
                    if (fibre_nonzerodivisor(c, prev, x))
                        proofs.push_back("fibre-local colon");
                    else if (k + 1 == perm.size() && generic_nonzerodivisor(c, prev, x))
                        proofs.push_back("generic-fibre colon");
                    else
                        ok = false;
                    prev.push_back(x);
                }
                if (ok) {
                    W.elements = prev;
                    W.proofs = proofs;
                    found = true;
                }
            } while (!found && std::next_permutation(perm.begin(), perm.end()));
            if (!found) throw ColonFailed("no ordering of the lifted cotangent basis is regular");
            Ideal E = eliminate(Ideal(r, A.relations()).plus(W.elements), A.vars());
            for (const auto& g : E.generators()) {
                auto rad = radical_of(c, g);
                if (rad && *rad == c.point.base_prime) {
                    W.base_element = g;
                    break;
                }
            }
        }
    } else {
        for (std::size_t i = 0; i < lifts.size(); ++i) {
            if (!fibre_nonzerodivisor(c, W.elements, lifts[i]))
                throw ColonFailed("element " + std::to_string(i + 1) + " (" + lifts[i].to_string() + ")");
            W.elements.push_back(lifts[i]);
            W.proofs.push_back("fibre-local colon");
        }
        Poly u = Poly::variable(r, A.base().params().front());
        W.elements.push_back(u);
        W.proofs.push_back("appended base element");
        W.base_element = u;
    }

    // radical and generation flags
    Ideal gen = Ideal(r, A.relations()).plus(W.elements);
    if (c.base_is_zero()) {
        BasePrime zero = A.base().zero_prime();
        Ideal Jk = fibre_quotient(c, zero, W.elements);
        W.radical_flag = W.generates_center = true;
        for (const auto& g : c.point.generators) {
            Poly gk = A.to_fibre(zero, g);
            if (!radical_membership(gk, Jk)) W.radical_flag = false;
            if (!Jk.contains(gk)) W.generates_center = false;
        }
        W.generates_center = W.generates_center && W.radical_flag;
        return W;
    }
    if (!W.base_element) return W;
    Ideal with_b = gen.plus({*W.base_element});
    W.radical_flag = true;
    for (const auto& g : c.point.generators)
        if (!radical_membership(g, with_b)) W.radical_flag = false;
    if (c.base_is_fg()) {
        const auto& V = A.base();
        Poly pi = Poly::variable(r, c.trace.back());
        Value vb = V.value_of(as_base_element(c, *W.base_element)), vp = V.value_of(as_base_element(c, pi));
        bool b_generates = V.coarse_value(c.point.base_prime, vb) == V.coarse_value(c.point.base_prime, vp) &&
                           gen.contains(*W.base_element);
        W.generates_center = W.radical_flag && b_generates;
        for (const auto& g : c.point.generators)
            if (!gen.contains(g)) W.generates_center = false;
    } else {
        W.generates_center = W.radical_flag;
        Ideal xs = Ideal(r, A.relations()).plus(std::vector<Poly>(W.elements.begin(), W.elements.end() - 1));
        std::vector<Poly> tr;
        for (const auto& u : c.trace) tr.push_back(Poly::variable(r, u));
        xs = xs.plus(tr);
        for (const auto& g : c.point.generators)
            if (!xs.contains(g)) W.generates_center = false;
    }
    return W;
}

WDim wdim_of(const Chart& c, const RegularityVerdict& v) {
    switch (v.status) {
    case Status::Regular: return WDim::finite(c.fibre_local_dim + (c.base_is_zero() ? 0 : 1));
    case Status::NotRegular: return WDim::infinite();
    case Status::Unknown: return WDim::unknown();
    }
    return WDim::unknown();
}

int wdim_upper_bound(const Chart& c, const RegularityVerdict& v) {
    if (c.base_is_zero()) return c.fibre_local_dim;
    int bound = std::min(v.fibre_cotangent_dim + 1, c.fibre_local_dim + 1);
    if (v.witness && v.witness->radical_flag && v.witness->base_element)
        bound = std::min(bound, static_cast<int>(v.witness->elements.size()));
    return bound;
}

RegularityVerdict classify(const Chart& c) {
    RegularityVerdict v;
    v.cotangent_dim = cotangent_dim(c);
    v.fibre_cotangent_dim = fibre_cotangent_dim(c);
    v.fibre_local_dim = c.fibre_local_dim;
    try {
        v.witness = lift_regular_sequence(c);
    } catch (const ColonFailed& e) {
        v.note = e.what();
    }
    bool base_nonzero = !c.base_is_zero();
    bool perfect = c.algebra.base().residue_field(c.point.base_prime).is_perfect();
    bool fibre_regular = v.fibre_cotangent_dim == c.fibre_local_dim;

    if (fibre_regular && perfect) {
        v.status = Status::Regular;
        v.certificate = Certificate::FibreSmooth;
    } else if (v.witness && v.witness->radical_flag && (!base_nonzero || v.witness->base_element)) {
        v.status = Status::Regular;
        v.certificate = Certificate::KoszulRadical;
    } else if (v.cotangent_dim > c.fibre_local_dim + (base_nonzero ? 1 : 0)) {
        v.status = Status::NotRegular;
        v.certificate = Certificate::CotangentOverflow;
        v.overflow_dim = v.cotangent_dim;
        v.overflow_bound = c.fibre_local_dim + (base_nonzero ? 1 : 0);
    } else if (c.fibre_local_dim == 1 && (v.socle_witness = fibre_socle_witness(c))) {
        v.status = Status::NotRegular;
        v.certificate = Certificate::FibreNotCM;
    } else if (base_nonzero && !c.base_is_fg() && perfect && !fibre_regular) {
        v.status = Status::NotRegular;
        v.certificate = Certificate::NonFgFibreSingular;
    }
    v.wdim = wdim_of(c, v);
    return v;
}

// ------------------------------------------------------------- invariants

std::vector<CheckResult> point_invariants(const Chart& c, const RegularityVerdict& v, bool deep) {
    std::vector<CheckResult> out;
    auto add = [&](std::string name, bool passed, std::string detail) {
        out.push_back({std::move(name), passed, false, std::move(detail)});
    };
    auto skip = [&](std::string name, std::string detail) { out.push_back({std::move(name), true, true, std::move(detail)}); };
    const std::string& pn = c.point.name;

    if (v.status == Status::Regular) {
        int w = v.wdim.value;
        int lo = c.base_is_zero() ? 0 : 1, hi = wdim_upper_bound(c, v);
        add("wdim-range", w >= lo && w <= hi,
            pn + ": wdim " + std::to_string(w) + " in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        if (v.witness)
            add("witness-length", static_cast<int>(v.witness->elements.size()) == w,
                pn + ": sequence length " + std::to_string(v.witness->elements.size()) + ", wdim " + std::to_string(w));
        else
            add("witness-length", false, pn + ": no regular sequence was certified (" + v.note + ")");
        if (!c.base_is_zero())
            add("grade-extension", grade_extension_check(c, v), pn + ": wdim = 1 + depth of the fibre local ring");
        add("cotangent-below-wdim", v.cotangent_dim <= w,
            pn + ": dim T " + std::to_string(v.cotangent_dim) + " <= wdim " + std::to_string(w));
        add("cotangent-bound", v.cotangent_dim <= c.fibre_local_dim + 1,
            pn + ": dim T <= fibre local dim + 1");
        if (v.witness && v.witness->generates_center) {
            int expect = c.base_is_zero() || c.base_is_fg() ? w : w - 1;
            add("cotangent-equality", v.cotangent_dim == expect,
                pn + ": dim T " + std::to_string(v.cotangent_dim) + ", expected " + std::to_string(expect));
        }
    }

    if (v.witness) {
        const auto& V = c.algebra.base();
        std::vector<Poly> gens = c.algebra.relations();
        gens.insert(gens.end(), v.witness->elements.begin(), v.witness->elements.end());
        Ideal E = eliminate(Ideal(c.algebra.ring(), gens), c.algebra.vars());
        std::size_t top = 0;
        bool ok = true;
        for (const auto& g : E.generators()) {
            if (!involves_only_params(c, g)) continue;
            auto rad = radical_of(c, g);
            if (!rad) {
                ok = false;
                break;
            }
            top = std::max(top, rad->index);
        }
        ok = ok && (top == 0 || top == c.point.base_prime.index);
        add("distribution-trace", ok,
            pn + ": trace of the sequence is " + (ok ? V.prime_name(BasePrime{top}) : std::string("outside {0, base}")));
    }

    if (deep && v.status == Status::Regular && v.witness && !v.witness->elements.empty()) {
        const Poly& t1 = v.witness->elements.front();
        try {
            PresentedAlgebra B = c.algebra.with_relations({t1});
            Chart cb = build_chart(B, c.point);
            RegularityVerdict vb = classify(cb);
            if (vb.status == Status::Regular)
                add("regular-prime", vb.wdim.value == v.wdim.value - 1,
                    pn + " modulo " + t1.to_string() + ": wdim " + vb.wdim.to_string());
            else if (vb.status == Status::NotRegular)
                add("regular-prime", false, pn + " modulo " + t1.to_string() + " is not regular");
            else
                skip("regular-prime", pn + " modulo " + t1.to_string() + ": verdict unknown");
        } catch (const Error& e) {
            skip("regular-prime", pn + " modulo " + t1.to_string() + ": " + e.what());
        }
    }
    return out;
}

CheckResult fibre_dimension_invariant(const PresentedAlgebra& A) {
    const auto& V = A.base();
    std::optional<int> dim;
    std::string detail;
    bool ok = true;
    for (auto P : V.primes()) {
        Ideal J = A.fibre_ideal(P);
        if (J.is_unit()) {
            detail += V.prime_name(P) + ": empty; ";
            continue;
        }
        int d = krull_dim(J);
        detail += V.prime_name(P) + ": " + std::to_string(d) + "; ";
        if (dim && *dim != d) ok = false;
        if (!dim) dim = d;
    }
    if (!detail.empty()) detail.resize(detail.size() - 2);
    return {"fibre-dimension", ok, false, detail};
}

}  // namespace regval
