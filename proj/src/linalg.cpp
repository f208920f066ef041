#include "regval/linalg.hpp"

#include <algorithm>

#include "regval/errors.hpp"

namespace regval {

std::size_t rank(Matrix m) {
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size(), r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        FieldElement inv = m[r][c].inverse();
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (m[i][c].is_zero()) continue;
            FieldElement f = m[i][c] * inv;
            for (std::size_t k = c; k < cols; ++k) m[i][k] = m[i][k] - f * m[r][k];
        }
        ++r;
    }
    return r;
}

std::optional<CoordinateCenter> CoordinateCenter::find(const Ideal& P, const std::vector<std::string>& high) {
    const Ring& r = P.ring();
    for (int attempt = 0; attempt < 2; ++attempt) {
        std::vector<std::string> order = high;
        if (attempt == 1) {
            if (high.size() < 2) break;
            std::reverse(order.begin(), order.end());
        }
        for (const auto& v : r.vars())
            if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
        Ring lex = Ring::make(r.field(), order, MonomialOrder::lex());
        std::vector<Poly> gens;
        for (const auto& g : P.generators()) gens.push_back(g.rename_into(lex));
        auto G = buchberger(gens);
        if (G.size() == 1 && G[0].is_constant()) return std::nullopt;
        bool ok = true;
        std::vector<std::string> bound;
        for (const auto& g : G) {
            if (g.lm().degree() != 1) {
                ok = false;
                break;
            }
            for (std::size_t i = 0; i < lex.nvars(); ++i)
                if (g.lm()[i] == 1) bound.push_back(lex.vars()[i]);
        }
        if (!ok) continue;
        CoordinateCenter c;
        c.prime_ = P;
        c.lex_ = lex;
        c.basis_ = std::move(G);
        c.bound_ = bound;
        for (const auto& v : r.vars())
            if (std::find(bound.begin(), bound.end(), v) == bound.end()) c.free_.push_back(v);
        c.residue_ = c.free_.empty() ? r.field() : Field::function_field(r.field(), c.free_);
        return c;
    }
    return std::nullopt;
}

FieldElement CoordinateCenter::evaluate(const Poly& f) const {
    Poly nf = normal_form(f.rename_into(lex_), basis_);
    if (free_.empty()) return nf.constant_term();
    const Ring& pr = residue_.poly_ring();
    return FieldElement::fraction(residue_, nf.rename_into(pr), Poly::from_int(pr, 1));
}

std::size_t rank_at(const std::vector<std::vector<Poly>>& m, const CoordinateCenter& c) {
    Matrix e;
    for (const auto& row : m) {
        std::vector<FieldElement> er;
        for (const auto& x : row) er.push_back(c.evaluate(x));
        e.push_back(std::move(er));
    }
    return rank(std::move(e));
}

}  // namespace regval
