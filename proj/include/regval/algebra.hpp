#pragma once

#include <optional>
#include <string>
#include <vector>

#include "regval/groebner.hpp"
#include "regval/linalg.hpp"
#include "regval/valuation.hpp"

namespace regval {

// A = R[X]/I with relations in kappa0[params][X]. All ideal work happens in
// the chart ring kappa0[params, X].
class PresentedAlgebra {
public:
    PresentedAlgebra(ValuationRing base, std::vector<std::string> vars, const std::vector<std::string>& relations);
    PresentedAlgebra(ValuationRing base, std::vector<std::string> vars, std::vector<Poly> relations);

    const ValuationRing& base() const { return base_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const Ring& ring() const { return ring_; }
    const std::vector<Poly>& relations() const { return relations_; }
    const Ideal& ideal() const { return ideal_; }

    Poly parse(const std::string& text) const { return parse_poly(text, ring_); }
    PresentedAlgebra with_relations(const std::vector<Poly>& more) const;

    // residue_field(P)[X]
    Ring fibre_ring(BasePrime P) const;
    Poly to_fibre(BasePrime P, const Poly& f) const;
    Ideal fibre_ideal(BasePrime P) const;
    int fibre_dim(BasePrime P) const;

    std::string to_string() const;

private:
    void check_flat() const;

    ValuationRing base_;
    std::vector<std::string> vars_;
    Ring ring_;
    std::vector<Poly> relations_;
    Ideal ideal_;
};

struct PointSpec {
    std::string name;
    BasePrime base_prime;
    std::vector<Poly> generators;
};

PointSpec make_point(const PresentedAlgebra& A, std::string name, const std::string& base_prime,
                     const std::vector<std::string>& generators);

struct Chart {
    PresentedAlgebra algebra;
    PointSpec point;
    // relations + generators + trace of the base prime; also the center
    Ideal center;
    std::vector<std::string> trace;
    std::vector<std::string> inverted;
    CoordinateCenter coords;
    Ideal fibre;
    // image of the center in the fibre ring
    Ideal fibre_trace;
    CoordinateCenter fibre_coords;
    int fibre_dim = 0;
    int fibre_local_dim = 0;

    bool base_is_zero() const { return point.base_prime.index == 0; }
    bool base_is_fg() const { return !base_is_zero() && algebra.base().is_fg_prime(point.base_prime); }
};

Chart build_chart(const PresentedAlgebra& A, const PointSpec& pt);

// Candidates for a basis of T (or of the fibre cotangent space when the base
// prime is not finitely generated), in the order they are tried.
std::vector<Poly> center_generators(const Chart& c);
// Greedy basis of T among center_generators, as chart polynomials.
std::vector<Poly> cotangent_basis(const Chart& c);
int cotangent_dim(const Chart& c);
// dim of the fibre cotangent space at the fibre trace
int fibre_cotangent_dim(const Chart& c);

}  // namespace regval
