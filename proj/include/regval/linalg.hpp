#pragma once

#include <optional>
#include <string>
#include <vector>

#include "regval/groebner.hpp"

namespace regval {

using Matrix = std::vector<std::vector<FieldElement>>;

// Rank by Gaussian elimination; all entries must share one field.
std::size_t rank(Matrix m);

// A prime whose lex basis (with `high` variables above the rest) consists of
// polynomials x - phi with x a single variable. The residue field is then
// field(free variables), and reduction modulo the basis evaluates there.
class CoordinateCenter {
public:
    static std::optional<CoordinateCenter> find(const Ideal& P, const std::vector<std::string>& high);

    const Ideal& prime() const { return prime_; }
    const std::vector<std::string>& free_vars() const { return free_; }
    // variables solved for by the basis
    const std::vector<std::string>& bound_vars() const { return bound_; }
    const Field& residue_field() const { return residue_; }
    FieldElement evaluate(const Poly& f) const;
    // height of the prime in the polynomial ring
    std::size_t height() const { return bound_.size(); }

private:
    Ideal prime_;
    Ring lex_;
    std::vector<Poly> basis_;
    std::vector<std::string> free_, bound_;
    Field residue_ = Field::rationals();
};

// Rank of a polynomial matrix after reduction to the residue field of a center.
std::size_t rank_at(const std::vector<std::vector<Poly>>& m, const CoordinateCenter& c);

}  // namespace regval
