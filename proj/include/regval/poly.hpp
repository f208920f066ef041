#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "regval/field.hpp"

namespace regval {

// Exponent vector. Arithmetic is overflow checked.
class Monomial {
public:
    using Storage = boost::container::small_vector<std::int32_t, 8>;

    Monomial() = default;
    explicit Monomial(std::size_t n) : e_(n, 0) {}
    explicit Monomial(std::vector<std::int32_t> e) : e_(e.begin(), e.end()) {}

    std::size_t size() const { return e_.size(); }
    std::int32_t operator[](std::size_t i) const { return e_[i]; }
    void set(std::size_t i, std::int32_t v) { e_[i] = v; }
    std::int64_t degree() const;
    bool is_one() const;

    Monomial operator*(const Monomial& o) const;
    bool divides(const Monomial& o) const;
    // o / *this, requires divides(o)
    Monomial quotient_of(const Monomial& o) const;
    Monomial lcm(const Monomial& o) const;
    Monomial gcd(const Monomial& o) const;
    bool coprime(const Monomial& o) const;
    Monomial pow(std::int64_t k) const;

    bool operator==(const Monomial& o) const { return e_ == o.e_; }
    bool operator!=(const Monomial& o) const { return e_ != o.e_; }
    bool operator<(const Monomial& o) const { return e_ < o.e_; }

private:
    Storage e_;
};

struct MonomialOrder {
    enum class Kind { Lex, GrevLex, Block };
    Kind kind = Kind::GrevLex;
    // Block: variables flagged here are compared first (grevlex among
    // themselves), ties broken by grevlex on the remaining variables.
    std::vector<bool> eliminated;

    static MonomialOrder lex() { return {Kind::Lex, {}}; }
    static MonomialOrder grevlex() { return {Kind::GrevLex, {}}; }
    static MonomialOrder block(std::vector<bool> eliminated) {
        return {Kind::Block, std::move(eliminated)};
    }

    // <0, 0, >0
    int compare(const Monomial& a, const Monomial& b) const;
    std::string to_string() const;
    bool operator==(const MonomialOrder& o) const {
        return kind == o.kind && eliminated == o.eliminated;
    }
    bool operator<(const MonomialOrder& o) const {
        if (kind != o.kind) return kind < o.kind;
        return eliminated < o.eliminated;
    }
};

struct RingDesc;

// Interned (field, variables, order) triple.
class Ring {
public:
    Ring() = default;
    static Ring make(Field f, std::vector<std::string> vars,
                     MonomialOrder ord = MonomialOrder::grevlex());

    const Field& field() const;
    const std::vector<std::string>& vars() const;
    std::size_t nvars() const;
    const MonomialOrder& order() const;
    // -1 when absent
    int index_of(const std::string& name) const;

    Ring with_order(const MonomialOrder& ord) const;
    std::string to_string() const;

    bool operator==(const Ring& o) const { return d_ == o.d_; }
    bool operator!=(const Ring& o) const { return d_ != o.d_; }

private:
    const RingDesc* d_ = nullptr;
    friend struct RingRegistry;
};

struct Term {
    Monomial m;
    FieldElement c;
};

// Sparse polynomial; terms are kept sorted in descending order of the ring's
// monomial order and never hold zero coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(Ring r) : r_(std::move(r)) {}
    static Poly constant(const Ring& r, const FieldElement& c);
    static Poly from_int(const Ring& r, long v);
    static Poly variable(const Ring& r, std::size_t i);
    static Poly variable(const Ring& r, const std::string& name);
    static Poly term(const Ring& r, Monomial m, FieldElement c);
    // terms in any order; duplicates are combined
    static Poly from_terms(const Ring& r, std::vector<Term> terms);

    const Ring& ring() const { return r_; }
    const Field& field() const { return r_.field(); }
    const std::vector<Term>& terms() const { return t_; }
    std::size_t size() const { return t_.size(); }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    bool is_one() const;
    const Term& lead() const { return t_.front(); }
    const Monomial& lm() const { return t_.front().m; }
    const FieldElement& lc() const { return t_.front().c; }
    std::int64_t total_degree() const;
    std::int32_t degree_in(std::size_t var) const;
    // true when some term has a positive exponent at var
    bool involves(std::size_t var) const;
    // coefficient of the constant monomial
    FieldElement constant_term() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly scale(const FieldElement& c) const;
    Poly mul_term(const Monomial& m, const FieldElement& c) const;
    // *this - c * m * g, the reduction step
    Poly sub_mul_term(const FieldElement& c, const Monomial& m, const Poly& g) const;
    Poly pow(std::int64_t k) const;
    Poly monic() const;
    Poly derivative(std::size_t var) const;

    // Same polynomial in a ring with the same field and variables but a
    // different order.
    Poly reorder(const Ring& target) const;
    // Move into `target` by variable name; coefficients are embedded.
    Poly rename_into(const Ring& target) const;
    // General homomorphism: coefficients through `coef`, variable i to images[i].
    Poly map(const Ring& target, const std::function<FieldElement(const FieldElement&)>& coef,
             const std::vector<Poly>& images) const;

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    void check_same(const Poly& o) const;
    Ring r_;
    std::vector<Term> t_;
};

// Value of a function-field element: num/den in lowest terms, den with
// leading coefficient 1 (lex).
struct RatFunc {
    Poly num;
    Poly den;
};

// Image of f under the substitution var -> binding; unbound variables go to
// the variable of the same name in `target`. Coefficients are embedded.
Poly substitute(const Poly& f, const std::map<std::string, Poly>& bindings, const Ring& target);

std::vector<std::vector<Poly>> jacobian(const std::vector<Poly>& fs,
                                        const std::vector<std::string>& vars);

Poly parse_poly(const std::string& text, const Ring& ring);

// multivariate helpers used by the function-field arithmetic
Poly poly_gcd(const Poly& a, const Poly& b);
// a / b when b divides a exactly; throws otherwise
Poly exact_div(const Poly& a, const Poly& b);

}  // namespace regval
