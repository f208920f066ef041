#include "regval/field.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <set>

#include "regval/errors.hpp"
#include "regval/poly.hpp"

namespace regval {

struct FieldDesc {
    Field::Kind kind;
    std::int64_t p = 0;
    const FieldDesc* base = nullptr;
    std::vector<std::string> names;
    Ring poly_ring;
};

struct FieldRegistry {
    std::mutex mu;
    std::vector<std::unique_ptr<FieldDesc>> all;

    static FieldRegistry& get() {
        static FieldRegistry r;
        return r;
    }

    // returns the interned descriptor and whether it is new
    std::pair<FieldDesc*, bool> intern(Field::Kind k, std::int64_t p, const FieldDesc* base,
                                       const std::vector<std::string>& names) {
        std::lock_guard<std::mutex> lock(mu);
        for (auto& d : all)
            if (d->kind == k && d->p == p && d->base == base && d->names == names)
                return {d.get(), false};
        auto d = std::make_unique<FieldDesc>();
        d->kind = k;
        d->p = p;
        d->base = base;
        d->names = names;
        all.push_back(std::move(d));
        return {all.back().get(), true};
    }

    static Field wrap(const FieldDesc* d) { return Field(d); }
};

namespace {

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
    std::int64_t r0 = p, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    return ((s0 % p) + p) % p;
}

std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t p) {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % p);
}

bool valid_name(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    });
}

}  // namespace

Field Field::rationals() {
    return FieldRegistry::wrap(FieldRegistry::get().intern(Kind::Rationals, 0, nullptr, {}).first);
}

Field Field::prime(std::int64_t p) {
    if (!is_prime(p) || p >= (std::int64_t{1} << 62))
        throw InvalidField("prime field order must be a prime, got " + std::to_string(p));
    return FieldRegistry::wrap(FieldRegistry::get().intern(Kind::Prime, p, nullptr, {}).first);
}

Field Field::function_field(Field base, std::vector<std::string> names) {
    if (names.empty()) throw InvalidField("function field needs at least one transcendental");
    std::set<std::string> seen;
    for (const auto& n : base.all_names()) seen.insert(n);
    for (const auto& n : names) {
        if (!valid_name(n)) throw InvalidField("bad transcendental name '" + n + "'");
        if (!seen.insert(n).second) throw InvalidField("transcendental '" + n + "' is not fresh");
    }
    auto [d, fresh] = FieldRegistry::get().intern(Kind::Function, 0, base.d_, names);
    if (fresh) d->poly_ring = Ring::make(base, names, MonomialOrder::lex());
    return FieldRegistry::wrap(d);
}

Field::Kind Field::kind() const { return d_->kind; }

std::int64_t Field::characteristic() const {
    switch (d_->kind) {
    case Kind::Rationals: return 0;
    case Kind::Prime: return d_->p;
    case Kind::Function: return base().characteristic();
    }
    return 0;
}

std::int64_t Field::order() const { return d_->p; }
Field Field::base() const { return Field(d_->base); }
const std::vector<std::string>& Field::names() const { return d_->names; }
const Ring& Field::poly_ring() const { return d_->poly_ring; }

Field Field::prime_subfield() const {
    return d_->kind == Kind::Function ? base().prime_subfield() : *this;
}

std::vector<std::string> Field::all_names() const {
    if (d_->kind != Kind::Function) return {};
    auto out = base().all_names();
    out.insert(out.end(), d_->names.begin(), d_->names.end());
    return out;
}

bool Field::is_perfect() const {
    // char 0 fields and finite fields; GF(p)(t) is not perfect
    return characteristic() == 0 || d_->kind == Kind::Prime;
}

std::string Field::to_string() const {
    switch (d_->kind) {
    case Kind::Rationals: return "QQ";
    case Kind::Prime: return "GF(" + std::to_string(d_->p) + ")";
    case Kind::Function: {
        std::string s = base().to_string() + "(";
        for (std::size_t i = 0; i < d_->names.size(); ++i) s += (i ? "," : "") + d_->names[i];
        return s + ")";
    }
    }
    return "?";
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement() : f_(Field::rationals()), v_(mpq_class(0)) {}

FieldElement FieldElement::zero(Field f) { return from_int(f, 0); }
FieldElement FieldElement::one(Field f) { return from_int(f, 1); }

FieldElement FieldElement::from_int(Field f, long v) {
    switch (f.kind()) {
    case Field::Kind::Rationals: return FieldElement(f, mpq_class(v));
    case Field::Kind::Prime: {
        std::int64_t p = f.order();
        return FieldElement(f, ((static_cast<std::int64_t>(v) % p) + p) % p);
    }
    case Field::Kind::Function: {
        const Ring& r = f.poly_ring();
        auto rf = std::make_shared<RatFunc>();
        rf->num = Poly::constant(r, from_int(f.base(), v));
        rf->den = Poly::from_int(r, 1);
        return FieldElement(f, std::shared_ptr<const RatFunc>(std::move(rf)));
    }
    }
    return {};
}

FieldElement FieldElement::from_rational(Field f, const mpq_class& q_in) {
    if (q_in.get_den() == 0) throw DivisionByZero("rational with zero denominator");
    mpq_class q = q_in;
    q.canonicalize();
    switch (f.kind()) {
    case Field::Kind::Rationals: return FieldElement(f, q);
    case Field::Kind::Prime: {
        mpz_class p = f.order();
        mpz_class n = q.get_num() % p, d = q.get_den() % p;
        if (n < 0) n += p;
        if (d == 0) throw DivisionByZero("denominator vanishes mod " + p.get_str());
        return FieldElement(f, n.get_si()) / FieldElement(f, d.get_si());
    }
    case Field::Kind::Function: {
        const Ring& r = f.poly_ring();
        auto rf = std::make_shared<RatFunc>();
        rf->num = Poly::constant(r, from_rational(f.base(), q));
        rf->den = Poly::from_int(r, 1);
        return FieldElement(f, std::shared_ptr<const RatFunc>(std::move(rf)));
    }
    }
    return {};
}

FieldElement FieldElement::transcendental(Field f, const std::string& name) {
    if (f.kind() != Field::Kind::Function) throw UnknownVariable(name);
    int i = f.poly_ring().index_of(name);
    if (i < 0) return field_embed(transcendental(f.base(), name), f);
    return make_fraction(f, Poly::variable(f.poly_ring(), static_cast<std::size_t>(i)),
                         Poly::from_int(f.poly_ring(), 1));
}

FieldElement FieldElement::fraction(Field f, const Poly& num, const Poly& den) {
    if (f.kind() != Field::Kind::Function) throw DescriptorMismatch("fraction() needs a function field");
    if (num.ring() != f.poly_ring() || den.ring() != f.poly_ring())
        throw RingMismatch("fraction parts must live in " + f.poly_ring().to_string());
    return make_fraction(f, num, den);
}

FieldElement FieldElement::make_fraction(Field f, Poly num, Poly den) {
    if (den.is_zero()) throw DivisionByZero("zero denominator");
    auto rf = std::make_shared<RatFunc>();
    if (num.is_zero()) {
        rf->num = num;
        rf->den = Poly::from_int(f.poly_ring(), 1);
    } else {
        if (!den.is_constant() && !num.is_constant()) {
            Poly g = poly_gcd(num, den);
            if (!g.is_constant()) {
                num = exact_div(num, g);
                den = exact_div(den, g);
            }
        }
        FieldElement c = den.lc();
        if (!c.is_one()) {
            FieldElement ci = c.inverse();
            num = num.scale(ci);
            den = den.scale(ci);
        }
        rf->num = std::move(num);
        rf->den = std::move(den);
    }
    return FieldElement(f, std::shared_ptr<const RatFunc>(std::move(rf)));
}

bool FieldElement::is_zero() const {
    switch (v_.index()) {
    case 0: return sgn(std::get<0>(v_)) == 0;
    case 1: return std::get<1>(v_) == 0;
    default: return std::get<2>(v_)->num.is_zero();
    }
}

bool FieldElement::is_one() const {
    switch (v_.index()) {
    case 0: return std::get<0>(v_) == 1;
    case 1: return std::get<1>(v_) == 1;
    default: {
        const auto& r = *std::get<2>(v_);
        return r.den.is_one() && r.num.is_one();
    }
    }
}

static void same_field(const Field& a, const Field& b) {
    if (a != b) throw DescriptorMismatch(a.to_string() + " vs " + b.to_string());
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    same_field(f_, o.f_);
    switch (v_.index()) {
    case 0: return FieldElement(f_, mpq_class(std::get<0>(v_) + std::get<0>(o.v_)));
    case 1: return FieldElement(f_, (std::get<1>(v_) + std::get<1>(o.v_)) % f_.order());
    default: {
        const auto& a = *std::get<2>(v_);
        const auto& b = *std::get<2>(o.v_);
        if (a.num.is_zero()) return o;
        if (b.num.is_zero()) return *this;
        if (a.den == b.den) return make_fraction(f_, a.num + b.num, a.den);
        if (a.den.is_constant() || b.den.is_constant())
            return make_fraction(f_, a.num * b.den + b.num * a.den, a.den * b.den);
        // only the common part of the denominators can cancel
        Poly d = poly_gcd(a.den, b.den);
        Poly ad = exact_div(a.den, d), bd = exact_div(b.den, d);
        Poly num = a.num * bd + b.num * ad;
        if (num.is_zero()) return zero(f_);
        Poly den = a.den * bd;
        if (!d.is_constant()) {
            Poly g = poly_gcd(num, d);
            if (!g.is_constant()) {
                num = exact_div(num, g);
                den = exact_div(den, g);
            }
        }
        FieldElement c = den.lc();
        if (!c.is_one()) {
            FieldElement ci = c.inverse();
            num = num.scale(ci);
            den = den.scale(ci);
        }
        auto rf = std::make_shared<RatFunc>(RatFunc{std::move(num), std::move(den)});
        return FieldElement(f_, std::shared_ptr<const RatFunc>(std::move(rf)));
    }
    }
}

FieldElement FieldElement::operator-() const {
    switch (v_.index()) {
    case 0: return FieldElement(f_, mpq_class(-std::get<0>(v_)));
    case 1: {
        std::int64_t x = std::get<1>(v_);
        return FieldElement(f_, x == 0 ? 0 : f_.order() - x);
    }
    default: {
        const auto& a = *std::get<2>(v_);
        auto rf = std::make_shared<RatFunc>(RatFunc{-a.num, a.den});
        return FieldElement(f_, std::shared_ptr<const RatFunc>(std::move(rf)));
    }
    }
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
    same_field(f_, o.f_);
    switch (v_.index()) {
    case 0: return FieldElement(f_, mpq_class(std::get<0>(v_) * std::get<0>(o.v_)));
    case 1: return FieldElement(f_, mod_mul(std::get<1>(v_), std::get<1>(o.v_), f_.order()));
    default: {
        const auto& a = *std::get<2>(v_);
        const auto& b = *std::get<2>(o.v_);
        if (a.num.is_zero() || b.num.is_zero()) return zero(f_);
        // cross-cancel so the product is already reduced
        Poly an = a.num, ad = a.den, bn = b.num, bd = b.den;
        if (!an.is_constant() && !bd.is_constant()) {
            Poly g = poly_gcd(an, bd);
            if (!g.is_constant()) { an = exact_div(an, g); bd = exact_div(bd, g); }
        }
        if (!bn.is_constant() && !ad.is_constant()) {
            Poly g = poly_gcd(bn, ad);
            if (!g.is_constant()) { bn = exact_div(bn, g); ad = exact_div(ad, g); }
        }
        Poly num = an * bn, den = ad * bd;
        FieldElement c = den.lc();
        if (!c.is_one()) {
            FieldElement ci = c.inverse();
            num = num.scale(ci);
            den = den.scale(ci);
        }
        auto rf = std::make_shared<RatFunc>(RatFunc{std::move(num), std::move(den)});
        return FieldElement(f_, std::shared_ptr<const RatFunc>(std::move(rf)));
    }
    }
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero in " + f_.to_string());
    switch (v_.index()) {
    case 0: return FieldElement(f_, mpq_class(1 / std::get<0>(v_)));
    case 1: return FieldElement(f_, mod_inverse(std::get<1>(v_), f_.order()));
    default: {
        const auto& a = *std::get<2>(v_);
        return make_fraction(f_, a.den, a.num);
    }
    }
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
    same_field(f_, o.f_);
    if (o.is_zero()) throw DivisionByZero("division by zero in " + f_.to_string());
    return *this * o.inverse();
}

bool FieldElement::operator==(const FieldElement& o) const {
    if (f_ != o.f_) return false;
    switch (v_.index()) {
    case 0: return std::get<0>(v_) == std::get<0>(o.v_);
    case 1: return std::get<1>(v_) == std::get<1>(o.v_);
    default: {
        const auto& a = *std::get<2>(v_);
        const auto& b = *std::get<2>(o.v_);
        return a.num == b.num && a.den == b.den;
    }
    }
}

FieldElement FieldElement::canonical() const {
    switch (v_.index()) {
    case 0: {
        mpq_class q = std::get<0>(v_);
        q.canonicalize();
        return FieldElement(f_, q);
    }
    case 1: return FieldElement(f_, ((std::get<1>(v_) % f_.order()) + f_.order()) % f_.order());
    default: {
        const auto& a = *std::get<2>(v_);
        return make_fraction(f_, a.num, a.den);
    }
    }
}

const mpq_class& FieldElement::rational() const { return std::get<0>(v_); }
std::int64_t FieldElement::residue() const { return std::get<1>(v_); }
const Poly& FieldElement::numerator() const { return std::get<2>(v_)->num; }
const Poly& FieldElement::denominator() const { return std::get<2>(v_)->den; }

bool FieldElement::prints_negative() const {
    switch (v_.index()) {
    case 0: return sgn(std::get<0>(v_)) < 0;
    case 1: return false;
    default: {
        const auto& a = *std::get<2>(v_);
        return !a.num.is_zero() && a.num.lc().prints_negative();
    }
    }
}

bool FieldElement::prints_atomic() const {
    switch (v_.index()) {
    case 0: return std::get<0>(v_).get_den() == 1;
    case 1: return true;
    default: {
        const auto& a = *std::get<2>(v_);
        if (!a.den.is_one() || a.num.size() > 1) return false;
        return a.num.is_zero() || a.num.lc().prints_atomic();
    }
    }
}

std::string FieldElement::to_string() const {
    switch (v_.index()) {
    case 0: return std::get<0>(v_).get_str();
    case 1: return std::to_string(std::get<1>(v_));
    default: {
        const auto& a = *std::get<2>(v_);
        if (a.den.is_one()) return a.num.to_string();
        return "(" + a.num.to_string() + ")/(" + a.den.to_string() + ")";
    }
    }
}

// ---------------------------------------------------------------------------

bool embeds_into(const Field& from, const Field& target) {
    if (from == target) return true;
    if (target.kind() != Field::Kind::Function) return false;
    if (embeds_into(from, target.base())) return true;
    if (from.kind() != Field::Kind::Function) return false;
    const auto& tn = target.names();
    for (const auto& n : from.names())
        if (std::find(tn.begin(), tn.end(), n) == tn.end()) return false;
    return embeds_into(from.base(), target.base());
}

FieldElement field_embed(const FieldElement& a, const Field& target) {
    const Field& from = a.field();
    if (from == target) return a;
    if (!embeds_into(from, target))
        throw NoCanonicalEmbedding(from.to_string() + " -> " + target.to_string());
    const Ring& r = target.poly_ring();
    if (embeds_into(from, target.base()))
        return FieldElement::fraction(target, Poly::constant(r, field_embed(a, target.base())),
                                      Poly::from_int(r, 1));
    return FieldElement::fraction(target, a.numerator().rename_into(r),
                                  a.denominator().rename_into(r));
}

}  // namespace regval
