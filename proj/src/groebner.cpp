#include "regval/groebner.hpp"

#include <algorithm>
#include <atomic>

#include "regval/errors.hpp"

namespace regval {

namespace {

std::atomic<std::size_t> g_budget{100000};

struct Pair {
    std::size_t i, j;
    Monomial lcm;
};

Poly spoly(const Poly& f, const Poly& g, const Monomial& lcm) {
    Monomial mf = f.lm().quotient_of(lcm), mg = g.lm().quotient_of(lcm);
    // f, g are monic
    return f.mul_term(mf, FieldElement::one(f.field())).sub_mul_term(FieldElement::one(f.field()), mg, g);
}

// Gebauer-Moeller update after adding polys[h]
void update(const std::vector<Poly>& polys, std::vector<char>& active, std::vector<Pair>& B, std::size_t h) {
    const Monomial& lh = polys[h].lm();
    std::vector<Pair> C;
    for (std::size_t g = 0; g < h; ++g)
        if (active[g]) C.push_back({g, h, lh.lcm(polys[g].lm())});
    std::vector<Pair> D;
    while (!C.empty()) {
        Pair p = std::move(C.front());
        C.erase(C.begin());
        bool keep = lh.coprime(polys[p.i].lm());
        if (!keep) {
            keep = true;
            for (const auto& q : C)
                if (q.lcm.divides(p.lcm)) { keep = false; break; }
            if (keep)
                for (const auto& q : D)
                    if (q.lcm.divides(p.lcm)) { keep = false; break; }
        }
        if (keep) D.push_back(std::move(p));
    }
    std::vector<Pair> kept;
    for (auto& p : B) {
        bool drop = lh.divides(p.lcm) && lh.lcm(polys[p.i].lm()) != p.lcm &&
                    lh.lcm(polys[p.j].lm()) != p.lcm;
        if (!drop) kept.push_back(std::move(p));
    }
    for (auto& p : D)
        if (!lh.coprime(polys[p.i].lm())) kept.push_back(std::move(p));
    B = std::move(kept);
    for (std::size_t g = 0; g < h; ++g)
        if (active[g] && lh.divides(polys[g].lm())) active[g] = 0;
    active[h] = 1;
}

std::vector<Poly> active_set(const std::vector<Poly>& polys, const std::vector<char>& active) {
    std::vector<Poly> out;
    for (std::size_t i = 0; i < polys.size(); ++i)
        if (active[i]) out.push_back(polys[i]);
    return out;
}

}  // namespace

std::size_t spair_budget() { return g_budget.load(); }
void set_spair_budget(std::size_t n) { g_budget.store(n); }

Poly normal_form(const Poly& f, const std::vector<Poly>& G) {
    const Ring& r = f.ring();
    for (const auto& g : G)
        if (g.ring() != r) throw RingMismatch("normal form against a basis of another ring");
    std::vector<Term> rem;
    Poly p = f;
    while (!p.is_zero()) {
        const Poly* red = nullptr;
        for (const auto& g : G)
            if (!g.is_zero() && g.lm().divides(p.lm())) {
                red = &g;
                break;
            }
        if (red) {
            Monomial m = red->lm().quotient_of(p.lm());
            FieldElement c = p.lc() / red->lc();
            p = p.sub_mul_term(c, m, *red);
        } else {
            rem.push_back(p.lead());
            p = p - Poly::term(r, p.lm(), p.lc());
        }
    }
    return Poly::from_terms(r, std::move(rem));
}

std::vector<Poly> buchberger(const std::vector<Poly>& gens) {
    if (gens.empty()) return {};
    const Ring& r = gens.front().ring();
    const auto& ord = r.order();
    std::vector<Poly> polys;
    std::vector<char> active;
    std::vector<Pair> B;
    auto add = [&](Poly h) -> bool {
        h = h.monic();
        if (h.is_constant()) return false;
        polys.push_back(std::move(h));
        active.push_back(0);
        update(polys, active, B, polys.size() - 1);
        return true;
    };
    for (const auto& f : gens) {
        if (f.ring() != r) throw RingMismatch("generators in different rings");
        Poly h = normal_form(f, active_set(polys, active));
        if (h.is_zero()) continue;
        if (!add(std::move(h))) return {Poly::from_int(r, 1)};
    }
    std::size_t processed = 0;
    const std::size_t budget = spair_budget();
    while (!B.empty()) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < B.size(); ++k) {
            int c = ord.compare(B[k].lcm, B[best].lcm);
            if (c < 0 || (c == 0 && std::make_pair(B[k].j, B[k].i) < std::make_pair(B[best].j, B[best].i)))
                best = k;
        }
        Pair p = std::move(B[best]);
        B.erase(B.begin() + static_cast<std::ptrdiff_t>(best));
        if (++processed > budget)
            throw BudgetExceeded("more than " + std::to_string(budget) + " S-pairs in " + r.to_string());
        Poly h = normal_form(spoly(polys[p.i], polys[p.j], p.lcm), active_set(polys, active));
        if (h.is_zero()) continue;
        if (!add(std::move(h))) return {Poly::from_int(r, 1)};
    }
    // minimal basis, then tail reduction
    std::vector<Poly> G = active_set(polys, active);
    std::vector<Poly> out;
    for (std::size_t k = 0; k < G.size(); ++k) {
        std::vector<Poly> others;
        for (std::size_t l = 0; l < G.size(); ++l)
            if (l != k) others.push_back(G[l]);
        out.push_back(normal_form(G[k], others).monic());
    }
    std::sort(out.begin(), out.end(), [&](const Poly& a, const Poly& b) { return ord.compare(a.lm(), b.lm()) > 0; });
    return out;
}

// ------------------------------------------------------------------ Ideal

Ideal::Ideal(Ring r, std::vector<Poly> gens) : ring_(std::move(r)) {
    for (auto& g : gens) {
        if (g.ring() != ring_) throw RingMismatch("generator outside " + ring_.to_string());
        if (!g.is_zero()) gens_.push_back(std::move(g));
    }
}

const std::vector<Poly>& Ideal::basis() const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->bases.find(ring_.order());
    if (it == cache_->bases.end()) it = cache_->bases.emplace(ring_.order(), buchberger(gens_)).first;
    return it->second;
}

std::vector<Poly> Ideal::basis(const MonomialOrder& ord) const {
    if (ord == ring_.order()) return basis();
    {
        std::lock_guard<std::mutex> lock(cache_->mu);
        auto it = cache_->bases.find(ord);
        if (it != cache_->bases.end()) return it->second;
    }
    Ring other = ring_.with_order(ord);
    std::vector<Poly> moved;
    for (const auto& g : gens_) moved.push_back(g.reorder(other));
    std::vector<Poly> G;
    for (const auto& g : buchberger(moved)) G.push_back(g.reorder(ring_));
    std::lock_guard<std::mutex> lock(cache_->mu);
    return cache_->bases.emplace(ord, std::move(G)).first->second;
}

bool Ideal::contains(const Poly& f) const { return normal_form(f, basis()).is_zero(); }

bool Ideal::contains(const Ideal& J) const {
    for (const auto& g : J.generators())
        if (!contains(g)) return false;
    return true;
}

bool Ideal::is_unit() const {
    const auto& G = basis();
    return G.size() == 1 && G[0].is_constant();
}

bool Ideal::is_zero() const { return gens_.empty(); }

Ideal Ideal::plus(const std::vector<Poly>& more) const {
    std::vector<Poly> g = gens_;
    g.insert(g.end(), more.begin(), more.end());
    return Ideal(ring_, std::move(g));
}

Ideal Ideal::rename_into(const Ring& target) const {
    std::vector<Poly> g;
    for (const auto& p : gens_) g.push_back(p.rename_into(target));
    return Ideal(target, std::move(g));
}

bool Ideal::operator==(const Ideal& o) const {
    if (ring_ != o.ring_) return false;
    return basis() == o.basis();
}

std::string Ideal::to_string() const {
    std::string s = "<";
    for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? ", " : "") + gens_[i].to_string();
    return s + ">";
}

// ------------------------------------------------------------- operations

namespace {

// ring with one extra variable in front, eliminated first
Ring extended(const Ring& r, const std::string& base) {
    std::vector<std::string> vars{base};
    int k = 0;
    while (r.index_of(vars[0]) >= 0) vars[0] = base + std::to_string(++k);
    vars.insert(vars.end(), r.vars().begin(), r.vars().end());
    std::vector<bool> mask(vars.size(), false);
    mask[0] = true;
    return Ring::make(r.field(), vars, MonomialOrder::block(mask));
}

// generators of (J ∩ original ring) for J in the extended ring, back in r
Ideal drop_first(const std::vector<Poly>& gens, const Ring& r) {
    std::vector<Poly> keep;
    for (const auto& g : buchberger(gens))
        if (!g.involves(0)) keep.push_back(g.rename_into(r));
    return Ideal(r, keep);
}

}  // namespace

std::pair<Poly, bool> nf_membership(const Poly& f, const Ideal& I) {
    if (f.ring() != I.ring()) throw RingMismatch("membership across rings");
    Poly nf = normal_form(f, I.basis());
    bool in = nf.is_zero();
    return {std::move(nf), in};
}

Ideal intersect(const Ideal& I, const Ideal& J) {
    if (I.ring() != J.ring()) throw RingMismatch("intersection across rings");
    const Ring& r = I.ring();
    if (I.is_zero() || J.is_zero()) return Ideal(r, {});
    Ring ext = extended(r, "_w");
    Poly w = Poly::variable(ext, 0);
    Poly one_minus_w = Poly::from_int(ext, 1) - w;
    std::vector<Poly> gens;
    for (const auto& g : I.generators()) gens.push_back(w * g.rename_into(ext));
    for (const auto& g : J.generators()) gens.push_back(one_minus_w * g.rename_into(ext));
    return drop_first(gens, r);
}

Ideal colon(const Ideal& I, const Poly& f) {
    if (f.ring() != I.ring()) throw RingMismatch("colon across rings");
    if (f.is_zero()) throw ZeroDivisorInput("colon by the zero polynomial");
    const Ring& r = I.ring();
    if (f.is_constant()) return I;
    Ideal inter = intersect(I, Ideal(r, {f}));
    std::vector<Poly> q;
    for (const auto& g : inter.generators()) q.push_back(exact_div(g, f));
    return Ideal(r, q);
}

Ideal colon(const Ideal& I, const Ideal& J) {
    if (J.is_zero()) return Ideal::unit(I.ring());
    Ideal acc = colon(I, J.generators().front());
    for (std::size_t k = 1; k < J.generators().size(); ++k) acc = intersect(acc, colon(I, J.generators()[k]));
    return acc;
}

Ideal saturation(const Ideal& I, const Poly& f) {
    if (f.ring() != I.ring()) throw RingMismatch("saturation across rings");
    if (f.is_zero()) throw ZeroDivisorInput("saturation by the zero polynomial");
    const Ring& r = I.ring();
    if (f.is_constant()) return I;
    Ring ext = extended(r, "_w");
    std::vector<Poly> gens;
    for (const auto& g : I.generators()) gens.push_back(g.rename_into(ext));
    gens.push_back(Poly::from_int(ext, 1) - Poly::variable(ext, 0) * f.rename_into(ext));
    return drop_first(gens, r);
}

bool radical_membership(const Poly& f, const Ideal& I) {
    if (f.ring() != I.ring()) throw RingMismatch("radical membership across rings");
    if (f.is_zero()) return true;
    const Ring& r = I.ring();
    Ring ext = Ring::make(r.field(), extended(r, "_w").vars());
    std::vector<Poly> gens;
    for (const auto& g : I.generators()) gens.push_back(g.rename_into(ext));
    gens.push_back(Poly::from_int(ext, 1) - Poly::variable(ext, 0) * f.rename_into(ext));
    auto G = buchberger(gens);
    return G.size() == 1 && G[0].is_constant();
}

Ideal leading_ideal(const Ideal& I) {
    std::vector<Poly> lts;
    for (const auto& g : I.basis()) lts.push_back(Poly::term(I.ring(), g.lm(), FieldElement::one(I.ring().field())));
    return Ideal(I.ring(), lts);
}

int krull_dim(const Ideal& I) {
    if (I.is_unit()) return -1;
    const Ring& r = I.ring();
    std::size_t n = r.nvars();
    std::vector<std::uint64_t> supports;
    for (const auto& g : I.basis()) {
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (g.lm()[i] > 0) s |= std::uint64_t{1} << i;
        supports.push_back(s);
    }
    if (n > 24) throw RingMismatch("krull_dim supports at most 24 variables");
    int best = 0;
    for (std::uint64_t S = 0; S < (std::uint64_t{1} << n); ++S) {
        int size = __builtin_popcountll(S);
        if (size <= best) continue;
        bool independent = true;
        for (auto s : supports)
            if ((s & ~S) == 0) { independent = false; break; }
        if (independent) best = size;
    }
    return best;
}

Ideal eliminate(const Ideal& I, const std::vector<std::string>& drop) {
    const Ring& r = I.ring();
    if (drop.empty()) return I;
    std::vector<bool> mask(r.nvars(), false);
    for (const auto& v : drop) {
        int i = r.index_of(v);
        if (i < 0) throw UnknownVariable(v);
        mask[static_cast<std::size_t>(i)] = true;
    }
    std::vector<Poly> keep;
    for (const auto& g : I.basis(MonomialOrder::block(mask))) {
        bool free = true;
        for (std::size_t i = 0; i < r.nvars(); ++i)
            if (mask[i] && g.involves(i)) { free = false; break; }
        if (free) keep.push_back(g);
    }
    return Ideal(r, keep);
}

}  // namespace regval
