#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "regval/field.hpp"
#include "regval/poly.hpp"

namespace regval {

// Element of a value group. ZnLex stores the exponent vector, DenseRank1
// stores (a, b) for a + b*sqrt(2). `infinite` marks v(0).
struct Value {
    std::vector<std::int64_t> c;
    bool infinite = false;

    static Value inf() { return Value{{}, true}; }
    Value operator+(const Value& o) const;
    Value operator-(const Value& o) const;
    bool operator==(const Value& o) const { return infinite == o.infinite && (infinite || c == o.c); }
    bool operator!=(const Value& o) const { return !(*this == o); }
};

class ValueGroup {
public:
    enum class Kind { ZnLex, DenseRank1 };

    static ValueGroup zn_lex(std::size_t rank);
    static ValueGroup dense_sqrt2();

    Kind kind() const { return kind_; }
    // rank of the group = number of nonzero primes
    std::size_t rank() const { return kind_ == Kind::ZnLex ? n_ : 1; }
    // length of the coordinate vector
    std::size_t width() const { return kind_ == Kind::ZnLex ? n_ : 2; }
    std::size_t convex_subgroups() const { return rank() + 1; }

    Value zero() const { return Value{std::vector<std::int64_t>(width(), 0), false}; }
    int sign(const Value& v) const;
    int compare(const Value& a, const Value& b) const;
    Value min(const Value& a, const Value& b) const { return compare(a, b) <= 0 ? a : b; }
    std::string format(const Value& v) const;

private:
    Kind kind_ = Kind::ZnLex;
    std::size_t n_ = 1;
};

// Prime of the valuation ring, numbered along the chain 0 = P_0 ⊂ ... ⊂ P_rank = N.
struct BasePrime {
    std::size_t index = 0;
    bool operator==(const BasePrime& o) const { return index == o.index; }
    bool operator!=(const BasePrime& o) const { return index != o.index; }
    bool operator<(const BasePrime& o) const { return index < o.index; }
};

// Monomial valuation on kappa0(u_1..u_m). ZnLex is split: v(u_i) = e_i.
// DenseRank1 has two parameters with v(u_1) = 1, v(u_2) = sqrt(2).
class ValuationRing {
public:
    static ValuationRing zn_lex(Field kappa0, std::vector<std::string> params);
    static ValuationRing dense_sqrt2(Field kappa0, std::vector<std::string> params);

    const Field& kappa0() const { return kappa0_; }
    const std::vector<std::string>& params() const { return params_; }
    const ValueGroup& group() const { return group_; }
    // kappa0(params)
    const Field& fraction_field() const { return frac_; }
    // kappa0[params], lex
    const Ring& param_ring() const { return frac_.poly_ring(); }
    bool noetherian() const { return group_.kind() == ValueGroup::Kind::ZnLex && group_.rank() == 1; }

    Value value_of_monomial(const Monomial& m) const;
    Value value_of(const Poly& f) const;
    Value value_of(const FieldElement& x) const;
    bool is_member(const FieldElement& x) const;
    bool is_unit(const FieldElement& x) const;
    // elements of fraction_field() from text such as "s/t^3"
    FieldElement parse(const std::string& text) const;

    std::vector<BasePrime> primes() const;
    BasePrime zero_prime() const { return {0}; }
    BasePrime maximal_prime() const { return {group_.rank()}; }
    std::string prime_name(BasePrime P) const;
    BasePrime prime_by_name(const std::string& name) const;

    BasePrime rad_principal(const FieldElement& x) const;
    bool is_fg_prime(BasePrime P) const;
    bool is_limit_prime(BasePrime P) const;
    // parameters generating P ∩ kappa0[params]
    std::vector<std::string> trace_params(BasePrime P) const;
    // parameters that stay transcendental in the residue field
    std::vector<std::string> surviving_params(BasePrime P) const;
    // the P-coarsened valuation: leading coordinates up to P
    Value coarse_value(BasePrime P, const Value& v) const;

    Field residue_field(BasePrime P) const;
    FieldElement residue_map(BasePrime P, const FieldElement& x) const;
    FieldElement residue_map(BasePrime P, const Poly& f) const;

    int gldim_bound(int wdim) const;
    std::string describe() const;

private:
    ValuationRing(Field kappa0, std::vector<std::string> params, ValueGroup g);

    Field kappa0_;
    std::vector<std::string> params_;
    ValueGroup group_;
    Field frac_;
};

}  // namespace regval
