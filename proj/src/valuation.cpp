#include "regval/valuation.hpp"

#include <algorithm>

#include "regval/errors.hpp"

namespace regval {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ExponentOverflow("value coordinate overflow");
    return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw ExponentOverflow("value coordinate overflow");
    return r;
}

}  // namespace

Value Value::operator+(const Value& o) const {
    if (infinite || o.infinite) return inf();
    Value r{c, false};
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = checked_add(c[i], o.c[i]);
    return r;
}

Value Value::operator-(const Value& o) const {
    if (o.infinite) throw InvalidValuation("subtracting an infinite value");
    if (infinite) return inf();
    Value r{c, false};
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = checked_sub(c[i], o.c[i]);
    return r;
}

// ------------------------------------------------------------- ValueGroup

ValueGroup ValueGroup::zn_lex(std::size_t rank) {
    if (rank == 0) throw InvalidValuation("ZnLex rank must be at least 1");
    ValueGroup g;
    g.kind_ = Kind::ZnLex;
    g.n_ = rank;
    return g;
}

ValueGroup ValueGroup::dense_sqrt2() {
    ValueGroup g;
    g.kind_ = Kind::DenseRank1;
    g.n_ = 1;
    return g;
}

int ValueGroup::sign(const Value& v) const {
    if (v.infinite) return 1;
    if (kind_ == Kind::ZnLex) {
        for (auto x : v.c)
            if (x != 0) return x > 0 ? 1 : -1;
        return 0;
    }
    // a + b*sqrt(2)
    __int128 a = v.c[0], b = v.c[1];
    if (a >= 0 && b >= 0) return (a == 0 && b == 0) ? 0 : 1;
    if (a <= 0 && b <= 0) return -1;
    __int128 a2 = a * a, b2 = 2 * b * b;
    if (a > 0) return a2 > b2 ? 1 : -1;
    return b2 > a2 ? 1 : -1;
}

int ValueGroup::compare(const Value& a, const Value& b) const {
    if (a.infinite || b.infinite) return a.infinite == b.infinite ? 0 : (a.infinite ? 1 : -1);
    if (kind_ == Kind::ZnLex) {
        for (std::size_t i = 0; i < a.c.size(); ++i)
            if (a.c[i] != b.c[i]) return a.c[i] < b.c[i] ? -1 : 1;
        return 0;
    }
    return sign(a - b);
}

std::string ValueGroup::format(const Value& v) const {
    if (v.infinite) return "inf";
    if (kind_ == Kind::DenseRank1) {
        auto a = v.c[0], b = v.c[1];
        if (b == 0) return std::to_string(a);
        std::string root = (b == 1 || b == -1) ? "sqrt(2)" : std::to_string(b < 0 ? -b : b) + "*sqrt(2)";
        if (a == 0) return (b < 0 ? "-" : "") + root;
        return std::to_string(a) + (b < 0 ? " - " : " + ") + root;
    }
    if (v.c.size() == 1) return std::to_string(v.c[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < v.c.size(); ++i) s += (i ? "," : "") + std::to_string(v.c[i]);
    return s + ")";
}

// ---------------------------------------------------------- ValuationRing

ValuationRing::ValuationRing(Field kappa0, std::vector<std::string> params, ValueGroup g)
    : kappa0_(kappa0), params_(std::move(params)), group_(g), frac_(Field::function_field(kappa0, params_)) {}

ValuationRing ValuationRing::zn_lex(Field kappa0, std::vector<std::string> params) {
    if (params.empty()) throw InvalidValuation("a valuation needs at least one parameter");
    return ValuationRing(kappa0, params, ValueGroup::zn_lex(params.size()));
}

ValuationRing ValuationRing::dense_sqrt2(Field kappa0, std::vector<std::string> params) {
    if (params.size() != 2) throw InvalidValuation("dense_sqrt2 takes exactly two parameters");
    return ValuationRing(kappa0, params, ValueGroup::dense_sqrt2());
}

Value ValuationRing::value_of_monomial(const Monomial& m) const {
    if (group_.kind() == ValueGroup::Kind::ZnLex) {
        Value v = group_.zero();
        for (std::size_t i = 0; i < m.size(); ++i) v.c[i] = m[i];
        return v;
    }
    return Value{{m[0], m[1]}, false};
}

Value ValuationRing::value_of(const Poly& f) const {
    if (f.ring() != param_ring()) throw RingMismatch("value of a polynomial outside " + param_ring().to_string());
    Value best = Value::inf();
    for (const auto& t : f.terms()) best = group_.min(best, value_of_monomial(t.m));
    return best;
}

Value ValuationRing::value_of(const FieldElement& x_in) const {
    FieldElement x = x_in.field() == frac_ ? x_in : field_embed(x_in, frac_);
    if (x.is_zero()) return Value::inf();
    return value_of(x.numerator()) - value_of(x.denominator());
}

bool ValuationRing::is_member(const FieldElement& x) const { return group_.sign(value_of(x)) >= 0; }

bool ValuationRing::is_unit(const FieldElement& x) const {
    Value v = value_of(x);
    return !v.infinite && group_.sign(v) == 0;
}

FieldElement ValuationRing::parse(const std::string& text) const {
    try {
        return parse_poly(text, Ring::make(frac_, {})).constant_term();
    } catch (const DivisionByZero& e) {
        throw ZeroDenominator(text);
    }
}

std::vector<BasePrime> ValuationRing::primes() const {
    std::vector<BasePrime> out;
    for (std::size_t j = 0; j <= group_.rank(); ++j) out.push_back({j});
    return out;
}

std::string ValuationRing::prime_name(BasePrime P) const {
    if (P.index == 0) return "0";
    if (P.index == group_.rank()) return "N";
    if (group_.rank() == 2) return "p";
    return "p" + std::to_string(P.index);
}

BasePrime ValuationRing::prime_by_name(const std::string& name) const {
    for (auto P : primes())
        if (prime_name(P) == name) return P;
    if (name.size() > 1 && (name[0] == 'p' || name[0] == 'P') &&
        std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        std::size_t j = std::stoul(name.substr(1));
        if (j <= group_.rank()) return {j};
    }
    throw InvalidValuation("no prime named " + name + " in " + describe());
}

BasePrime ValuationRing::rad_principal(const FieldElement& x) const {
    Value v = value_of(x);
    if (v.infinite) throw ZeroInput("radical of the zero ideal is not principal-generated here");
    int s = group_.sign(v);
    if (s < 0) throw NegativeValue(x.to_string() + " is not in the valuation ring");
    if (s == 0) throw UnitInput(x.to_string() + " is a unit");
    if (group_.kind() == ValueGroup::Kind::DenseRank1) return maximal_prime();
    for (std::size_t i = 0; i < v.c.size(); ++i)
        if (v.c[i] != 0) return {i + 1};
    return maximal_prime();
}

bool ValuationRing::is_fg_prime(BasePrime P) const {
    if (P.index == 0) throw ZeroPrimeInput("finite generation is asked of nonzero primes");
    return group_.kind() == ValueGroup::Kind::ZnLex;
}

bool ValuationRing::is_limit_prime(BasePrime P) const { return P.index == 0; }

std::vector<std::string> ValuationRing::trace_params(BasePrime P) const {
    if (group_.kind() == ValueGroup::Kind::DenseRank1) return P.index == 0 ? std::vector<std::string>{} : params_;
    return {params_.begin(), params_.begin() + static_cast<std::ptrdiff_t>(P.index)};
}

std::vector<std::string> ValuationRing::surviving_params(BasePrime P) const {
    if (group_.kind() == ValueGroup::Kind::DenseRank1) return P.index == 0 ? params_ : std::vector<std::string>{};
    return {params_.begin() + static_cast<std::ptrdiff_t>(P.index), params_.end()};
}

Value ValuationRing::coarse_value(BasePrime P, const Value& v) const {
    if (v.infinite) return v;
    if (group_.kind() == ValueGroup::Kind::DenseRank1) return P.index == 0 ? group_.zero() : v;
    Value r = v;
    for (std::size_t i = P.index; i < r.c.size(); ++i) r.c[i] = 0;
    return r;
}

Field ValuationRing::residue_field(BasePrime P) const {
    if (P.index == 0) return frac_;
    auto rest = surviving_params(P);
    if (rest.empty()) return kappa0_;
    return Field::function_field(kappa0_, rest);
}

namespace {

// terms of f with minimal coarsened value, moved into the residue field
struct LeadPart {
    Value value;
    FieldElement image;
};

}  // namespace

FieldElement ValuationRing::residue_map(BasePrime P, const FieldElement& x_in) const {
    FieldElement x = x_in.field() == frac_ ? x_in : field_embed(x_in, frac_);
    if (P.index == 0) return x;
    Field kp = residue_field(P);
    if (x.is_zero()) return FieldElement::zero(kp);
    auto rest = surviving_params(P);
    std::size_t cut = params_.size() - rest.size();
    auto lead = [&](const Poly& f) {
        Value best = Value::inf();
        for (const auto& t : f.terms()) best = group_.min(best, coarse_value(P, value_of_monomial(t.m)));
        FieldElement img = FieldElement::zero(kp);
        if (rest.empty()) {
            for (const auto& t : f.terms())
                if (coarse_value(P, value_of_monomial(t.m)) == best) img += field_embed(t.c, kp);
        } else {
            const Ring& kr = kp.poly_ring();
            std::vector<Term> ts;
            for (const auto& t : f.terms()) {
                if (coarse_value(P, value_of_monomial(t.m)) != best) continue;
                Monomial m(rest.size());
                for (std::size_t i = 0; i < rest.size(); ++i) m.set(i, t.m[cut + i]);
                ts.push_back({m, t.c});
            }
            img = FieldElement::fraction(kp, Poly::from_terms(kr, ts), Poly::from_int(kr, 1));
        }
        return LeadPart{best, img};
    };
    LeadPart n = lead(x.numerator()), d = lead(x.denominator());
    int s = group_.sign(n.value - d.value);
    if (s < 0) throw NegativeValue(x.to_string() + " has negative value at " + prime_name(P));
    if (s > 0) return FieldElement::zero(kp);
    return n.image / d.image;
}

FieldElement ValuationRing::residue_map(BasePrime P, const Poly& f) const {
    return residue_map(P, FieldElement::fraction(frac_, f, Poly::from_int(param_ring(), 1)));
}

int ValuationRing::gldim_bound(int wdim) const { return noetherian() ? wdim : wdim + 1; }

std::string ValuationRing::describe() const {
    std::string ps;
    for (std::size_t i = 0; i < params_.size(); ++i) ps += (i ? "," : "") + params_[i];
    if (group_.kind() == ValueGroup::Kind::DenseRank1)
        return "dense_sqrt2 valuation on " + kappa0_.to_string() + "(" + ps + ")";
    return "zlex rank " + std::to_string(group_.rank()) + " valuation on " + kappa0_.to_string() + "(" + ps + ")";
}

}  // namespace regval
