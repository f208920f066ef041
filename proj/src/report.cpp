#include "regval/report.hpp"

#include <sstream>

#include "regval/errors.hpp"
#include "regval/regularity.hpp"

namespace regval {

namespace {

using json = nlohmann::ordered_json;

json poly_list(const std::vector<Poly>& ps) {
    json a = json::array();
    for (const auto& p : ps) a.push_back(p.to_string());
    return a;
}

json wdim_json(const WDim& w) {
    if (w.is_finite()) return w.value;
    return w.to_string();
}

json error_json(const Error& e) { return json{{"kind", e.kind()}, {"message", e.message()}}; }

Poly determinant(std::vector<std::vector<Poly>> m) {
    std::size_t n = m.size();
    if (n == 1) return m[0][0];
    const Ring& r = m[0][0].ring();
    Poly det(r);
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c].is_zero()) continue;
        std::vector<std::vector<Poly>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Poly> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        Poly term = m[0][c] * determinant(std::move(minor));
        det = c % 2 ? det - term : det + term;
    }
    return det;
}

void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = from; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

// J + minors of size codim of the Jacobian
Ideal singular_locus(const Ideal& J, int dim) {
    const Ring& r = J.ring();
    std::size_t codim = r.nvars() - static_cast<std::size_t>(dim);
    std::vector<Poly> gens = J.generators();
    if (codim == 0 || gens.empty()) return J;
    auto jac = jacobian(gens, r.vars());
    std::vector<std::vector<std::size_t>> rows, cols;
    std::vector<std::size_t> cur;
    subsets(jac.size(), codim, 0, cur, rows);
    subsets(r.nvars(), codim, 0, cur, cols);
    std::vector<Poly> out = gens;
    for (const auto& rs : rows)
        for (const auto& cs : cols) {
            std::vector<std::vector<Poly>> m;
            for (auto i : rs) {
                std::vector<Poly> row;
                for (auto k : cs) row.push_back(jac[i][k]);
                m.push_back(std::move(row));
            }
            Poly d = determinant(std::move(m));
            if (!d.is_zero()) out.push_back(std::move(d));
        }
    return Ideal(r, out);
}

json base_json(const ValuationRing& V) {
    json primes = json::array();
    for (auto P : V.primes()) {
        json p{{"name", V.prime_name(P)}};
        p["finitely_generated"] = P.index == 0 ? json(nullptr) : json(V.is_fg_prime(P));
        p["limit"] = V.is_limit_prime(P);
        p["trace"] = V.trace_params(P);
        p["residue_field"] = V.residue_field(P).to_string();
        primes.push_back(std::move(p));
    }
    return json{{"description", V.describe()},
                {"params", V.params()},
                {"noetherian", V.noetherian()},
                {"primes", std::move(primes)}};
}

json fibres_json(const PresentedAlgebra& A) {
    const auto& V = A.base();
    json out = json::array();
    for (auto P : V.primes()) {
        Ideal J = A.fibre_ideal(P);
        json f{{"prime", V.prime_name(P)}, {"field", J.ring().field().to_string()}, {"ideal", J.to_string()}};
        if (J.is_unit()) {
            f["dim"] = "empty";
        } else {
            int d = krull_dim(J);
            f["dim"] = d;
            Ideal S = singular_locus(J, d);
            f["singular_locus"] = Ideal(S.ring(), S.basis()).to_string();
            f["singular_locus_dim"] = krull_dim(S);
        }
        out.push_back(std::move(f));
    }
    return out;
}

json check_json(const CheckResult& c, const std::string& scope) {
    return json{{"name", c.name}, {"scope", scope}, {"passed", c.passed}, {"skipped", c.skipped}, {"detail", c.detail}};
}

struct Tally {
    int points = 0, regular = 0, not_regular = 0, unknown = 0, errors = 0, checks = 0, failed = 0, skipped = 0;
};

json point_json(const Scenario& s, const PresentedAlgebra& A, const ScenarioPoint& sp, const RunOptions& opt,
                json& checks, Tally& t) {
    json pj{{"point", sp.name}, {"base_prime", sp.base_prime}, {"generators", sp.generators}};
    ++t.points;
    try {
        PointSpec pt = make_point(A, sp.name, sp.base_prime, sp.generators);
        Chart c = build_chart(A, pt);
        RegularityVerdict v = classify(c);
        const auto& V = A.base();
        pj["center"] = c.center.to_string();
        pj["inverted"] = c.inverted;
        if (s.wants("classify") || s.wants("wdim")) {
            pj["status"] = to_string(v.status);
            pj["certificate"] = to_string(v.certificate);
            if (v.certificate == Certificate::CotangentOverflow)
                pj["overflow"] = json{{"dim_T", v.overflow_dim}, {"bound", v.overflow_bound}};
            if (v.socle_witness) pj["socle_witness"] = v.socle_witness->to_string();
        }
        if (s.wants("wdim")) {
            pj["wdim"] = wdim_json(v.wdim);
            pj["wdim_upper_bound"] = wdim_upper_bound(c, v);
        }
        if (v.witness) {
            pj["sequence"] = poly_list(v.witness->elements);
            pj["proofs"] = v.witness->proofs;
            pj["radical_flag"] = v.witness->radical_flag;
            pj["base_element"] = v.witness->base_element ? json(v.witness->base_element->to_string()) : json(nullptr);
        } else {
            pj["sequence"] = json::array();
        }
        if (!v.note.empty()) pj["note"] = v.note;
        if (s.wants("cotangent")) {
            pj["cotangent_dim"] = v.cotangent_dim;
            pj["cotangent_basis"] = poly_list(cotangent_basis(c));
            pj["cotangent_source"] = c.base_is_zero() || c.base_is_fg() ? "chart" : "fibre";
            pj["fibre_cotangent_dim"] = v.fibre_cotangent_dim;
            pj["fibre_local_dim"] = v.fibre_local_dim;
        }
        if (s.wants("grade")) {
            CMResult cm = fibre_cm_check(c);
            json g{{"lower_bound", v.witness ? static_cast<int>(v.witness->elements.size()) : 0},
                   {"fibre_depth", cm.depth},
                   {"fibre_cm", to_string(cm.status)},
                   {"fibre_witness", poly_list(cm.witness)}};
            pj["grade"] = std::move(g);
        }
        if (s.wants("gldim_bound")) {
            if (v.status == Status::Regular)
                pj["gldim_bound"] = V.gldim_bound(v.wdim.value);
            else
                pj["gldim_bound"] = v.status == Status::NotRegular ? "infinite" : "unknown";
        }
        switch (v.status) {
        case Status::Regular: ++t.regular; break;
        case Status::NotRegular: ++t.not_regular; break;
        case Status::Unknown: ++t.unknown; break;
        }
        for (const auto& chk : point_invariants(c, v, opt.deep_checks)) {
            ++t.checks;
            if (chk.skipped) ++t.skipped;
            else if (!chk.passed) ++t.failed;
            checks.push_back(check_json(chk, sp.name));
        }
    } catch (const Error& e) {
        ++t.errors;
        pj["status"] = "Error";
        pj["error"] = error_json(e);
    }
    return pj;
}

}  // namespace

RunResult run_scenario(const Scenario& s, const RunOptions& opt) {
    ValuationRing V = s.make_base();
    json report;
    report["scenario"] = s.name;
    report["description"] = s.description;
    report["field"] = V.kappa0().to_string();
    report["base"] = base_json(V);
    json charts = json::array(), checks = json::array();
    Tally t;
    for (const auto& sc : s.charts) {
        json cj{{"name", sc.name}, {"vars", sc.vars}, {"relations", sc.relations}};
        try {
            PresentedAlgebra A(V, sc.vars, sc.relations);
            cj["algebra"] = A.to_string();
            if (s.wants("fibres")) cj["fibres"] = fibres_json(A);
            CheckResult fd = fibre_dimension_invariant(A);
            ++t.checks;
            if (!fd.passed) ++t.failed;
            checks.push_back(check_json(fd, sc.name));
            json pts = json::array();
            for (const auto& sp : sc.points) pts.push_back(point_json(s, A, sp, opt, checks, t));
            cj["points"] = std::move(pts);
        } catch (const Error& e) {
            ++t.errors;
            cj["error"] = error_json(e);
        }
        charts.push_back(std::move(cj));
    }
    report["charts"] = std::move(charts);
    report["checks"] = std::move(checks);
    report["summary"] = json{{"points", t.points},         {"regular", t.regular}, {"not_regular", t.not_regular},
                             {"unknown", t.unknown},       {"errors", t.errors},   {"checks", t.checks},
                             {"checks_failed", t.failed}, {"checks_skipped", t.skipped}};
    RunResult res;
    res.report = std::move(report);
    res.unknown = t.unknown;
    res.errors = t.errors;
    res.failed_checks = t.failed;
    return res;
}

std::string render_text(const nlohmann::ordered_json& r) {
    std::ostringstream out;
    out << "scenario " << r.at("scenario").get<std::string>() << "\n";
    out << "base: " << r.at("base").at("description").get<std::string>() << "\n";
    for (const auto& c : r.at("charts")) {
        out << "\n[" << c.at("name").get<std::string>() << "] ";
        if (c.contains("error")) {
            out << "error " << c.at("error").at("kind").get<std::string>() << ": "
                << c.at("error").at("message").get<std::string>() << "\n";
            continue;
        }
        out << c.at("algebra").get<std::string>() << "\n";
        if (c.contains("fibres"))
            for (const auto& f : c.at("fibres")) {
                out << "  fibre over " << f.at("prime").get<std::string>() << ": " << f.at("ideal").get<std::string>()
                    << " over " << f.at("field").get<std::string>() << ", dim " << f.at("dim").dump() << "\n";
            }
        for (const auto& p : c.at("points")) {
            out << "  point " << p.at("point").get<std::string>() << " over " << p.at("base_prime").get<std::string>()
                << ": ";
            if (p.contains("error")) {
                out << "error " << p.at("error").at("kind").get<std::string>() << ": "
                    << p.at("error").at("message").get<std::string>() << "\n";
                continue;
            }
            if (p.contains("status"))
                out << p.at("status").get<std::string>() << " (" << p.at("certificate").get<std::string>() << ")";
            if (p.contains("wdim")) {
                const auto& w = p.at("wdim");
                out << ", wdim " << (w.is_string() ? w.get<std::string>() : w.dump());
            }
            if (p.contains("cotangent_dim")) out << ", dim T " << p.at("cotangent_dim").dump();
            if (!p.at("sequence").empty()) {
                out << ", sequence (";
                bool first = true;
                for (const auto& e : p.at("sequence")) {
                    out << (first ? "" : ", ") << e.get<std::string>();
                    first = false;
                }
                out << ")";
            }
            out << "\n";
        }
    }
    const auto& sm = r.at("summary");
    out << "\n" << sm.at("points").dump() << " points: " << sm.at("regular").dump() << " regular, "
        << sm.at("not_regular").dump() << " not regular, " << sm.at("unknown").dump() << " unknown, "
        << sm.at("errors").dump() << " errors\n";
    out << "checks: " << sm.at("checks").dump() << " run, " << sm.at("checks_failed").dump() << " failed, "
        << sm.at("checks_skipped").dump() << " skipped\n";
    for (const auto& c : r.at("checks"))
        if (!c.at("passed").get<bool>())
            out << "  FAILED " << c.at("name").get<std::string>() << ": " << c.at("detail").get<std::string>() << "\n";
    return out.str();
}

}  // namespace regval
