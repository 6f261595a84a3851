#pragma once

#include <json.hpp>

#include "spinforms/clifford.hpp"
#include "spinforms/monopole.hpp"
#include "spinforms/wigner.hpp"

namespace spinforms {

using Json = nlohmann::ordered_json;

/// Exact scalars render as their canonical exact string; floating ones with 17
/// significant digits. Keeps golden files byte-stable.
inline std::string scalar_string(const Scalar& s) { return s.to_string(); }

inline Json polynomial_json(const Polynomial& p) {
    Json terms = Json::array();
    for (const auto& [m, c] : p.terms()) {
        Json term;
        Json mono = Json::object();
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] != 0) mono[p.vars()->name(i)] = m[i];
        term["monomial"] = mono;
        term["coeff"] = scalar_string(c);
        terms.push_back(term);
    }
    Json out;
    out["terms"] = terms;
    out["text"] = p.to_text();
    return out;
}

inline Json form_json(const DifferentialForm& f) {
    const auto& M = f.manifold();
    // deterministic order: by degree, then mask
    std::vector<std::pair<std::uint32_t, const Polynomial*>> entries;
    for (const auto& [m, p] : f.components()) entries.push_back({m, &p});
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        int da = std::popcount(a.first), db = std::popcount(b.first);
        return da != db ? da < db : a.first < b.first;
    });
    Json comps = Json::array();
    for (const auto& [mask, poly] : entries) {
        Json entry;
        Json idx = Json::array();
        for (int i = 0; i < M->dim(); ++i)
            if (mask & (1u << i)) idx.push_back(M->frame_labels()[i]);
        entry["frame"] = idx;
        entry["coeff"] = polynomial_json(*poly);
        comps.push_back(entry);
    }
    Json out;
    out["manifold"] = M->name();
    out["components"] = comps;
    return out;
}

inline Json manifold_json(const FrameManifold& M) {
    Json out;
    out["name"] = M.name();
    out["dim"] = M.dim();
    out["frame_labels"] = M.frame_labels();
    Json vars = Json::array();
    for (std::size_t i = 0; i < M.vars()->size(); ++i) vars.push_back(M.vars()->name(i));
    out["variables"] = vars;
    Json metric = Json::array();
    for (int a = 0; a < M.dim(); ++a) metric.push_back(polynomial_json(M.metric_entry(a)));
    out["metric_diag"] = metric;
    Json structure = Json::array();
    for (int a = 0; a < M.dim(); ++a)
        for (int b = 0; b < M.dim(); ++b)
            for (int c = 0; c < M.dim(); ++c) {
                Scalar v = M.structure_constant(a, b, c);
                if (v.is_zero()) continue;
                Json entry;
                entry["a"] = M.frame_labels()[a];
                entry["b"] = M.frame_labels()[b];
                entry["c"] = M.frame_labels()[c];
                entry["value"] = scalar_string(v);
                structure.push_back(entry);
            }
    out["structure_constants"] = structure;
    out["volume_coeff"] = polynomial_json(M.volume_coeff());
    return out;
}

inline Json matrix_json(const ScalarMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_string(m.at(r, c)));
        rows.push_back(row);
    }
    return rows;
}

/// First-order operator entries as {"d<label>": coeff}.
inline Json first_order_matrix_json(const FirstOrderMatrix& m, const std::vector<std::string>& labels) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.dim; ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.dim; ++c) {
            Json entry = Json::object();
            for (const auto& [axis, coef] : m.at(r, c)) entry["d" + labels[axis]] = scalar_string(coef);
            row.push_back(entry);
        }
        rows.push_back(row);
    }
    return rows;
}

inline Json eigen_report_json(const EigenReport& rep) {
    Json out;
    out["operator"] = rep.operator_label;
    out["eigenvalue"] = scalar_string(rep.eigenvalue);
    out["residual"] = rep.exact ? std::string("0") : format17(rep.residual);
    out["exact"] = rep.exact;
    return out;
}

inline std::string eigen_report_csv_row(const std::string& op, HalfInt j, HalfInt n, HalfInt m,
                                        const Scalar& eigenvalue, double residual) {
    return op + "," + j.to_string() + "," + n.to_string() + "," + m.to_string() + "," +
           scalar_string(eigenvalue) + "," + format17(residual);
}

}  // namespace spinforms
