#pragma once

#include <random>
#include <string>
#include <vector>

#include "regval/poly.hpp"

namespace testing_support {

using namespace regval;

inline Ring qq_ring(std::vector<std::string> vars, MonomialOrder ord = MonomialOrder::grevlex()) {
    return Ring::make(Field::rationals(), std::move(vars), ord);
}

inline Poly P(const Ring& r, const std::string& s) { return parse_poly(s, r); }

// random polynomial with small integer coefficients
inline Poly random_poly(std::mt19937& rng, const Ring& r, int terms, int maxdeg) {
    std::uniform_int_distribution<int> coef(-3, 3), ex(0, maxdeg);
    std::vector<Term> ts;
    for (int i = 0; i < terms; ++i) {
        Monomial m(r.nvars());
        for (std::size_t j = 0; j < r.nvars(); ++j) m.set(j, ex(rng));
        ts.push_back({m, FieldElement::from_int(r.field(), coef(rng))});
    }
    return Poly::from_terms(r, ts);
}

}  // namespace testing_support
