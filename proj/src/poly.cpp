#include "regval/poly.hpp"

#include <algorithm>
#include <limits>
#include <mutex>

#include "regval/errors.hpp"

namespace regval {

// ---------------------------------------------------------------- Monomial

namespace {

std::int32_t checked_add(std::int32_t a, std::int32_t b) {
    std::int64_t s = std::int64_t{a} + b;
    if (s > std::numeric_limits<std::int32_t>::max() || s < 0)
        throw ExponentOverflow("exponent out of range");
    return static_cast<std::int32_t>(s);
}

}  // namespace

std::int64_t Monomial::degree() const {
    std::int64_t d = 0;
    for (auto x : e_) d += x;
    return d;
}

bool Monomial::is_one() const {
    return std::all_of(e_.begin(), e_.end(), [](std::int32_t x) { return x == 0; });
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = checked_add(e_[i], o.e_[i]);
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] > o.e_[i]) return false;
    return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
    Monomial r(o);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = o.e_[i] - e_[i];
    return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = std::max(e_[i], o.e_[i]);
    return r;
}

Monomial Monomial::gcd(const Monomial& o) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = std::min(e_[i], o.e_[i]);
    return r;
}

bool Monomial::coprime(const Monomial& o) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] && o.e_[i]) return false;
    return true;
}

Monomial Monomial::pow(std::int64_t k) const {
    Monomial r(*this);
    for (auto& x : r.e_) {
        std::int64_t v = std::int64_t{x} * k;
        if (v > std::numeric_limits<std::int32_t>::max()) throw ExponentOverflow("power too large");
        x = static_cast<std::int32_t>(v);
    }
    return r;
}

// ----------------------------------------------------------- MonomialOrder

namespace {

// grevlex restricted to variables whose mask bit equals `want`
int grevlex_part(const Monomial& a, const Monomial& b, const std::vector<bool>* mask, bool want) {
    std::int64_t da = 0, db = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (mask && (*mask)[i] != want) continue;
        da += a[i];
        db += b[i];
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (mask && (*mask)[i] != want) continue;
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
}

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
    switch (kind) {
    case Kind::Lex:
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        return 0;
    case Kind::GrevLex: return grevlex_part(a, b, nullptr, true);
    case Kind::Block: {
        int c = grevlex_part(a, b, &eliminated, true);
        return c ? c : grevlex_part(a, b, &eliminated, false);
    }
    }
    return 0;
}

std::string MonomialOrder::to_string() const {
    switch (kind) {
    case Kind::Lex: return "lex";
    case Kind::GrevLex: return "grevlex";
    case Kind::Block: {
        std::string s = "block(";
        for (bool b : eliminated) s += b ? '1' : '0';
        return s + ")";
    }
    }
    return "?";
}

// -------------------------------------------------------------------- Ring

struct RingDesc {
    Field field;
    std::vector<std::string> vars;
    MonomialOrder order;
};

struct RingRegistry {
    std::mutex mu;
    std::vector<std::unique_ptr<RingDesc>> all;
    static RingRegistry& get() {
        static RingRegistry r;
        return r;
    }
};

Ring Ring::make(Field f, std::vector<std::string> vars, MonomialOrder ord) {
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (vars[i] == vars[j]) throw RingMismatch("duplicate variable " + vars[i]);
    for (const auto& n : f.all_names())
        if (std::find(vars.begin(), vars.end(), n) != vars.end())
            throw RingMismatch("variable " + n + " clashes with a transcendental of " + f.to_string());
    if (ord.kind == MonomialOrder::Kind::Block && ord.eliminated.size() != vars.size())
        throw RingMismatch("block order mask has wrong length");
    auto& reg = RingRegistry::get();
    std::lock_guard<std::mutex> lock(reg.mu);
    for (auto& d : reg.all)
        if (d->field == f && d->vars == vars && d->order == ord) {
            Ring r;
            r.d_ = d.get();
            return r;
        }
    reg.all.push_back(std::make_unique<RingDesc>(RingDesc{f, std::move(vars), std::move(ord)}));
    Ring r;
    r.d_ = reg.all.back().get();
    return r;
}

const Field& Ring::field() const { return d_->field; }
const std::vector<std::string>& Ring::vars() const { return d_->vars; }
std::size_t Ring::nvars() const { return d_->vars.size(); }
const MonomialOrder& Ring::order() const { return d_->order; }

int Ring::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < d_->vars.size(); ++i)
        if (d_->vars[i] == name) return static_cast<int>(i);
    return -1;
}

Ring Ring::with_order(const MonomialOrder& ord) const { return make(field(), vars(), ord); }

std::string Ring::to_string() const {
    std::string s = field().to_string() + "[";
    for (std::size_t i = 0; i < nvars(); ++i) s += (i ? "," : "") + vars()[i];
    return s + "]";
}

// -------------------------------------------------------------------- Poly

Poly Poly::constant(const Ring& r, const FieldElement& c) {
    Poly p(r);
    FieldElement cc = field_embed(c, r.field());
    if (!cc.is_zero()) p.t_.push_back({Monomial(r.nvars()), std::move(cc)});
    return p;
}

Poly Poly::from_int(const Ring& r, long v) { return constant(r, FieldElement::from_int(r.field(), v)); }

Poly Poly::variable(const Ring& r, std::size_t i) {
    Monomial m(r.nvars());
    m.set(i, 1);
    return term(r, std::move(m), FieldElement::one(r.field()));
}

Poly Poly::variable(const Ring& r, const std::string& name) {
    int i = r.index_of(name);
    if (i < 0) throw UnknownVariable(name);
    return variable(r, static_cast<std::size_t>(i));
}

Poly Poly::term(const Ring& r, Monomial m, FieldElement c) {
    if (m.size() != r.nvars()) throw RingMismatch("monomial length");
    Poly p(r);
    if (!c.is_zero()) p.t_.push_back({std::move(m), std::move(c)});
    return p;
}

Poly Poly::from_terms(const Ring& r, std::vector<Term> terms) {
    const auto& ord = r.order();
    std::sort(terms.begin(), terms.end(),
              [&](const Term& a, const Term& b) { return ord.compare(a.m, b.m) > 0; });
    Poly p(r);
    for (auto& t : terms) {
        if (!p.t_.empty() && p.t_.back().m == t.m) {
            p.t_.back().c += t.c;
            if (p.t_.back().c.is_zero()) p.t_.pop_back();
        } else if (!t.c.is_zero()) {
            p.t_.push_back(std::move(t));
        }
    }
    return p;
}

bool Poly::is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_one()); }

bool Poly::is_one() const { return t_.size() == 1 && t_[0].m.is_one() && t_[0].c.is_one(); }

std::int64_t Poly::total_degree() const {
    std::int64_t d = -1;
    for (const auto& t : t_) d = std::max(d, t.m.degree());
    return d;
}

std::int32_t Poly::degree_in(std::size_t var) const {
    std::int32_t d = t_.empty() ? -1 : 0;
    for (const auto& t : t_) d = std::max(d, t.m[var]);
    return d;
}

bool Poly::involves(std::size_t var) const {
    for (const auto& t : t_)
        if (t.m[var] > 0) return true;
    return false;
}

FieldElement Poly::constant_term() const {
    if (!t_.empty() && t_.back().m.is_one()) return t_.back().c;
    return FieldElement::zero(field());
}

void Poly::check_same(const Poly& o) const {
    if (r_ != o.r_) throw RingMismatch(r_.to_string() + " vs " + o.r_.to_string());
}

Poly Poly::operator+(const Poly& o) const {
    check_same(o);
    if (o.t_.empty()) return *this;
    if (t_.empty()) return o;
    const auto& ord = r_.order();
    Poly r(r_);
    r.t_.reserve(t_.size() + o.t_.size());
    std::size_t i = 0, j = 0;
    while (i < t_.size() && j < o.t_.size()) {
        int c = ord.compare(t_[i].m, o.t_[j].m);
        if (c > 0) r.t_.push_back(t_[i++]);
        else if (c < 0) r.t_.push_back(o.t_[j++]);
        else {
            FieldElement s = t_[i].c + o.t_[j].c;
            if (!s.is_zero()) r.t_.push_back({t_[i].m, std::move(s)});
            ++i;
            ++j;
        }
    }
    for (; i < t_.size(); ++i) r.t_.push_back(t_[i]);
    for (; j < o.t_.size(); ++j) r.t_.push_back(o.t_[j]);
    return r;
}

Poly Poly::operator-() const {
    Poly r(*this);
    for (auto& t : r.t_) t.c = -t.c;
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    check_same(o);
    if (t_.empty() || o.t_.empty()) return Poly(r_);
    if (t_.size() == 1) return o.mul_term(t_[0].m, t_[0].c);
    if (o.t_.size() == 1) return mul_term(o.t_[0].m, o.t_[0].c);
    std::vector<Term> prods;
    prods.reserve(t_.size() * o.t_.size());
    for (const auto& a : t_)
        for (const auto& b : o.t_) prods.push_back({a.m * b.m, a.c * b.c});
    return from_terms(r_, std::move(prods));
}

Poly Poly::scale(const FieldElement& c) const {
    if (c.is_zero()) return Poly(r_);
    Poly r(*this);
    for (auto& t : r.t_) t.c *= c;
    return r;
}

Poly Poly::mul_term(const Monomial& m, const FieldElement& c) const {
    if (c.is_zero()) return Poly(r_);
    Poly r(r_);
    r.t_.reserve(t_.size());
    for (const auto& t : t_) r.t_.push_back({t.m * m, t.c * c});
    return r;
}

Poly Poly::sub_mul_term(const FieldElement& c, const Monomial& m, const Poly& g) const {
    check_same(g);
    const auto& ord = r_.order();
    Poly r(r_);
    r.t_.reserve(t_.size() + g.t_.size());
    std::size_t i = 0, j = 0;
    FieldElement nc = -c;
    while (i < t_.size() && j < g.t_.size()) {
        Monomial gm = g.t_[j].m * m;
        int cmp = ord.compare(t_[i].m, gm);
        if (cmp > 0) {
            r.t_.push_back(t_[i++]);
        } else if (cmp < 0) {
            r.t_.push_back({std::move(gm), g.t_[j].c * nc});
            ++j;
        } else {
            FieldElement s = t_[i].c + g.t_[j].c * nc;
            if (!s.is_zero()) r.t_.push_back({t_[i].m, std::move(s)});
            ++i;
            ++j;
        }
    }
    for (; i < t_.size(); ++i) r.t_.push_back(t_[i]);
    for (; j < g.t_.size(); ++j) r.t_.push_back({g.t_[j].m * m, g.t_[j].c * nc});
    return r;
}

Poly Poly::pow(std::int64_t k) const {
    if (k < 0) throw RingMismatch("negative power");
    Poly result = from_int(r_, 1), base = *this;
    while (k) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

Poly Poly::monic() const {
    if (t_.empty() || lc().is_one()) return *this;
    return scale(lc().inverse());
}

Poly Poly::derivative(std::size_t var) const {
    std::vector<Term> out;
    for (const auto& t : t_) {
        if (t.m[var] == 0) continue;
        Monomial m = t.m;
        m.set(var, t.m[var] - 1);
        FieldElement c = t.c * FieldElement::from_int(field(), t.m[var]);
        if (!c.is_zero()) out.push_back({std::move(m), std::move(c)});
    }
    Poly p(r_);
    p.t_ = std::move(out);
    return p;
}

Poly Poly::reorder(const Ring& target) const {
    if (target.field() != field() || target.vars() != r_.vars())
        throw RingMismatch("reorder needs identical field and variables");
    if (target == r_) return *this;
    std::vector<Term> ts = t_;
    Poly p = from_terms(target, std::move(ts));
    return p;
}

Poly Poly::rename_into(const Ring& target) const {
    std::vector<int> idx(r_.nvars());
    for (std::size_t i = 0; i < r_.nvars(); ++i) idx[i] = target.index_of(r_.vars()[i]);
    std::vector<Term> out;
    out.reserve(t_.size());
    for (const auto& t : t_) {
        Monomial m(target.nvars());
        for (std::size_t i = 0; i < r_.nvars(); ++i) {
            if (t.m[i] == 0) continue;
            if (idx[i] < 0) throw RingMismatch("variable " + r_.vars()[i] + " missing in " + target.to_string());
            m.set(static_cast<std::size_t>(idx[i]), t.m[i]);
        }
        out.push_back({std::move(m), field_embed(t.c, target.field())});
    }
    return from_terms(target, std::move(out));
}

Poly Poly::map(const Ring& target, const std::function<FieldElement(const FieldElement&)>& coef,
               const std::vector<Poly>& images) const {
    if (images.size() != r_.nvars()) throw RingMismatch("map needs one image per variable");
    for (const auto& im : images)
        if (im.ring() != target) throw RingMismatch("image outside target ring");
    // cache powers per variable
    std::vector<std::vector<Poly>> powers(r_.nvars());
    Poly acc(target);
    for (const auto& t : t_) {
        FieldElement c = coef(t.c);
        if (c.is_zero()) continue;
        Poly p = Poly::constant(target, c);
        for (std::size_t i = 0; i < r_.nvars() && !p.is_zero(); ++i) {
            std::int32_t e = t.m[i];
            if (e == 0) continue;
            auto& pw = powers[i];
            if (pw.empty()) pw.push_back(images[i]);
            while (static_cast<std::int32_t>(pw.size()) < e) pw.push_back(pw.back() * images[i]);
            p = p * pw[static_cast<std::size_t>(e - 1)];
        }
        acc += p;
    }
    return acc;
}

bool Poly::operator==(const Poly& o) const {
    if (r_ != o.r_ || t_.size() != o.t_.size()) return false;
    for (std::size_t i = 0; i < t_.size(); ++i)
        if (t_[i].m != o.t_[i].m || t_[i].c != o.t_[i].c) return false;
    return true;
}

namespace {

bool top_level_sum(const std::string& s) {
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (depth == 0 && s[i] == ' ') return true;
    }
    return false;
}

}  // namespace

std::string Poly::to_string() const {
    if (t_.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < t_.size(); ++k) {
        const auto& t = t_[k];
        bool neg = t.c.prints_negative();
        FieldElement a = neg ? -t.c : t.c;
        if (k == 0) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        std::string mono;
        for (std::size_t i = 0; i < r_.nvars(); ++i) {
            if (t.m[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += r_.vars()[i];
            if (t.m[i] > 1) mono += "^" + std::to_string(t.m[i]);
        }
        std::string cs = a.to_string();
        bool sumlike = top_level_sum(cs);
        if (mono.empty()) {
            out += sumlike ? "(" + cs + ")" : cs;
        } else if (a.is_one()) {
            out += mono;
        } else {
            out += (sumlike ? "(" + cs + ")" : cs) + "*" + mono;
        }
    }
    return out;
}

// ---------------------------------------------------------- substitutions

Poly substitute(const Poly& f, const std::map<std::string, Poly>& bindings, const Ring& target) {
    const Ring& src = f.ring();
    std::vector<Poly> images;
    images.reserve(src.nvars());
    for (const auto& v : src.vars()) {
        auto it = bindings.find(v);
        if (it != bindings.end()) {
            if (it->second.ring() != target) throw RingMismatch("binding for " + v + " outside target ring");
            images.push_back(it->second);
        } else if (target.index_of(v) >= 0) {
            images.push_back(Poly::variable(target, v));
        } else if (f.involves(static_cast<std::size_t>(src.index_of(v)))) {
            throw RingMismatch("no image for variable " + v);
        } else {
            images.push_back(Poly(target));
        }
    }
    for (const auto& [k, _] : bindings)
        if (src.index_of(k) < 0) throw RingMismatch("binding for unknown variable " + k);
    const Field& tf = target.field();
    return f.map(target, [&](const FieldElement& c) { return field_embed(c, tf); }, images);
}

std::vector<std::vector<Poly>> jacobian(const std::vector<Poly>& fs, const std::vector<std::string>& vars) {
    std::vector<std::vector<Poly>> J;
    for (const auto& f : fs) {
        if (!fs.empty() && f.ring() != fs.front().ring()) throw RingMismatch("jacobian rows in different rings");
        std::vector<Poly> row;
        for (const auto& v : vars) {
            int i = f.ring().index_of(v);
            if (i < 0) throw RingMismatch("variable " + v + " not in " + f.ring().to_string());
            row.push_back(f.derivative(static_cast<std::size_t>(i)));
        }
        J.push_back(std::move(row));
    }
    return J;
}

// -------------------------------------------------------------------- gcd

Poly exact_div(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    const Ring& r = a.ring();
    std::vector<Term> q;
    Poly rem = a;
    FieldElement binv = b.lc().inverse();
    while (!rem.is_zero()) {
        if (!b.lm().divides(rem.lm())) throw RingMismatch("inexact polynomial division");
        Monomial m = b.lm().quotient_of(rem.lm());
        FieldElement c = rem.lc() * binv;
        rem = rem.sub_mul_term(c, m, b);
        q.push_back({std::move(m), std::move(c)});
    }
    return Poly::from_terms(r, std::move(q));
}

namespace {

// coefficients of f viewed as a polynomial in `var`, keyed by exponent
std::map<std::int32_t, Poly> coeffs_in(const Poly& f, std::size_t var) {
    std::map<std::int32_t, std::vector<Term>> parts;
    for (const auto& t : f.terms()) {
        Monomial m = t.m;
        m.set(var, 0);
        parts[t.m[var]].push_back({std::move(m), t.c});
    }
    std::map<std::int32_t, Poly> out;
    for (auto& [e, ts] : parts) out.emplace(e, Poly::from_terms(f.ring(), std::move(ts)));
    return out;
}

Poly lead_coeff_in(const Poly& f, std::size_t var) {
    return coeffs_in(f, var).rbegin()->second;
}

Poly content_in(const Poly& f, std::size_t var) {
    Poly g(f.ring());
    for (auto& [e, c] : coeffs_in(f, var)) {
        g = poly_gcd(g, c);
        if (g.is_one()) break;
    }
    return g;
}

Poly prem(Poly a, const Poly& b, std::size_t var) {
    std::int32_t db = b.degree_in(var);
    Poly lb = lead_coeff_in(b, var);
    while (!a.is_zero() && a.degree_in(var) >= db) {
        std::int32_t da = a.degree_in(var);
        Poly la = lead_coeff_in(a, var);
        Monomial shift(a.ring().nvars());
        shift.set(var, da - db);
        a = (lb.is_one() ? a : lb * a) - (la * b).mul_term(shift, FieldElement::one(a.field()));
    }
    return a;
}

// canonical associate used inside remainder sequences: integer-primitive
// with positive leading coefficient over QQ, monic elsewhere
Poly normalized(const Poly& f) {
    if (f.is_zero() || f.field().kind() != Field::Kind::Rationals) return f.monic();
    mpz_class g = 0, l = 1;
    for (const auto& t : f.terms()) {
        const mpq_class& q = t.c.rational();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    }
    mpq_class s(l, g);
    s.canonicalize();
    if (f.lc().rational() < 0) s = -s;
    return f.scale(FieldElement::from_rational(f.field(), s));
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.ring() != b.ring()) throw RingMismatch("gcd operands in different rings");
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    const Ring& r = a.ring();
    if (a.is_constant() || b.is_constant()) return Poly::from_int(r, 1);
    if (a == b) return a.monic();
    std::size_t var = r.nvars();
    for (std::size_t i = 0; i < r.nvars() && var == r.nvars(); ++i)
        if (a.involves(i) || b.involves(i)) var = i;
    if (!a.involves(var)) return poly_gcd(a, content_in(b, var));
    if (!b.involves(var)) return poly_gcd(content_in(a, var), b);
    Poly ca = content_in(a, var), cb = content_in(b, var);
    Poly pa = normalized(exact_div(a, ca)), pb = normalized(exact_div(b, cb));
    if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
    Poly g(r);
    while (true) {
        Poly rem = prem(pa, pb, var);
        if (rem.is_zero()) {
            g = pb;
            break;
        }
        if (rem.degree_in(var) == 0) {
            g = Poly::from_int(r, 1);
            break;
        }
        pa = pb;
        pb = normalized(exact_div(rem, content_in(rem, var)));
    }
    g = exact_div(g, content_in(g, var));
    return (poly_gcd(ca, cb) * g).monic();
}

}  // namespace regval
