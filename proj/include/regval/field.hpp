#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace regval {

struct FieldDesc;
struct RatFunc;
class Ring;
class Poly;

// Handle to an interned field descriptor. Descriptors are created once and
// never freed, so two handles are equal exactly when the descriptors are
// structurally equal.
class Field {
public:
    enum class Kind { Rationals, Prime, Function };

    static Field rationals();
    static Field prime(std::int64_t p);
    static Field function_field(Field base, std::vector<std::string> names);

    Kind kind() const;
    std::int64_t characteristic() const;
    // modulus of a prime field
    std::int64_t order() const;
    // base of a function field
    Field base() const;
    const std::vector<std::string>& names() const;
    // base[names] with lex order, the home of numerators and denominators
    const Ring& poly_ring() const;

    // bottom of the tower (QQ or GF(p))
    Field prime_subfield() const;
    // transcendentals of the whole tower, outermost last
    std::vector<std::string> all_names() const;
    bool is_perfect() const;

    std::string to_string() const;

    bool operator==(const Field& o) const { return d_ == o.d_; }
    bool operator!=(const Field& o) const { return d_ != o.d_; }

private:
    explicit Field(const FieldDesc* d) : d_(d) {}
    const FieldDesc* d_;
    friend struct FieldRegistry;
};

// An element of a field in canonical form.
class FieldElement {
public:
    // zero of QQ
    FieldElement();
    static FieldElement zero(Field f);
    static FieldElement one(Field f);
    static FieldElement from_int(Field f, long v);
    static FieldElement from_rational(Field f, const mpq_class& q);
    // a transcendental of f (or of a field below it in the tower)
    static FieldElement transcendental(Field f, const std::string& name);
    // num/den in f.poly_ring(); den must be nonzero
    static FieldElement fraction(Field f, const Poly& num, const Poly& den);

    const Field& field() const { return f_; }
    bool is_zero() const;
    bool is_one() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement inverse() const;
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    // Re-run canonicalization; a no-op on values built through the API.
    FieldElement canonical() const;

    // accessors by kind
    const mpq_class& rational() const;
    std::int64_t residue() const;
    const Poly& numerator() const;
    const Poly& denominator() const;

    // true when the value carries a leading minus sign in print form
    bool prints_negative() const;
    // true when it prints as a single factor (no +, -, / inside)
    bool prints_atomic() const;
    std::string to_string() const;

private:
    using Value = std::variant<mpq_class, std::int64_t, std::shared_ptr<const RatFunc>>;
    FieldElement(Field f, Value v) : f_(f), v_(std::move(v)) {}
    static FieldElement make_fraction(Field f, Poly num, Poly den);

    Field f_;
    Value v_;
};

// Image of `a` under the canonical inclusion into `target`.
FieldElement field_embed(const FieldElement& a, const Field& target);
bool embeds_into(const Field& from, const Field& target);

}  // namespace regval
