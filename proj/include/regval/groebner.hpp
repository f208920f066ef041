#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "regval/poly.hpp"

namespace regval {

// Maximum number of S-pairs a single basis computation may process.
std::size_t spair_budget();
void set_spair_budget(std::size_t n);

// Reduced Groebner basis of the polynomials (all in one ring) for that
// ring's order, sorted by decreasing leading monomial. {1} for the unit ideal.
std::vector<Poly> buchberger(const std::vector<Poly>& gens);

// Fully reduced remainder of f modulo G.
Poly normal_form(const Poly& f, const std::vector<Poly>& G);

class Ideal {
public:
    Ideal() = default;
    Ideal(Ring r, std::vector<Poly> gens);
    static Ideal unit(const Ring& r) { return Ideal(r, {Poly::from_int(r, 1)}); }

    const Ring& ring() const { return ring_; }
    const std::vector<Poly>& generators() const { return gens_; }

    // reduced basis for the ring's own order (cached)
    const std::vector<Poly>& basis() const;
    // reduced basis for another order, returned in the ideal's ring
    std::vector<Poly> basis(const MonomialOrder& ord) const;

    bool contains(const Poly& f) const;
    bool contains(const Ideal& J) const;
    bool is_unit() const;
    bool is_zero() const;
    Ideal plus(const std::vector<Poly>& more) const;
    Ideal plus(const Ideal& J) const { return plus(J.generators()); }
    // same ideal, moved to another ring by variable name
    Ideal rename_into(const Ring& target) const;

    bool operator==(const Ideal& o) const;
    bool operator!=(const Ideal& o) const { return !(*this == o); }
    std::string to_string() const;

private:
    struct Cache {
        std::mutex mu;
        std::map<MonomialOrder, std::vector<Poly>> bases;
    };
    Ring ring_;
    std::vector<Poly> gens_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

std::pair<Poly, bool> nf_membership(const Poly& f, const Ideal& I);
Ideal colon(const Ideal& I, const Poly& f);
Ideal colon(const Ideal& I, const Ideal& J);
Ideal intersect(const Ideal& I, const Ideal& J);
Ideal saturation(const Ideal& I, const Poly& f);
bool radical_membership(const Poly& f, const Ideal& I);
// -1 for the unit ideal
int krull_dim(const Ideal& I);
Ideal eliminate(const Ideal& I, const std::vector<std::string>& drop);

// Ideal generated by the leading monomials of the basis.
Ideal leading_ideal(const Ideal& I);

}  // namespace regval
