#pragma once

#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "io.hpp"
#include "model_l2.hpp"
#include "potentials.hpp"
#include "scattering.hpp"
#include "transparency.hpp"
#include "version.hpp"

namespace wellscat {

/// Extra `# key=value` metadata lines supplied by the caller.
using MetaList = std::vector<std::pair<std::string, std::string>>;

namespace emit_detail {

inline void write_meta(std::ostringstream& oss, const MetaList& meta) {
    for (const auto& [key, value] : meta) oss << "# " << key << '=' << value << '\n';
}

inline void write_header(std::ostringstream& oss, bool with_chi_hash, const MetaList& extra) {
    oss << "# tool=" << version_string << '\n';
    if (with_chi_hash) oss << "# chi_hash=" << chi_definition_hash() << '\n';
    write_meta(oss, extra);
}

/// JSON value for a double that may be +/-inf (JSON itself has no infinity).
inline nlohmann::ordered_json json_number(double v) {
    if (std::isfinite(v)) return v;
    return v > 0 ? "infinity" : "-infinity";
}

} // namespace emit_detail

/// Phase curve as CSV, ascending in k: columns k, delta, Re S, Im S.
inline std::string phase_curve_csv(const PhaseCurve& curve, const MetaList& extra = {}) {
    std::ostringstream oss;
    emit_detail::write_header(oss, true, extra);
    oss << "# l=" << curve.l << '\n';
    oss << "# n=" << curve.n << '\n';
    oss << "# lambda=" << fmt_double(curve.lambda) << '\n';
    oss << "# k_max_used=" << fmt_double(curve.k_max_used) << '\n';
    oss << "# branch_anchored_at_infinity=" << (curve.branch_anchored_at_infinity ? "true" : "false")
        << '\n';
    oss << "k,delta,re_s,im_s\n";
    for (std::size_t i = curve.points.size(); i-- > 0;) {
        const PhasePoint& p = curve.points[i];
        oss << csv_field(fmt_double(p.k)) << ',' << csv_field(fmt_double(p.delta)) << ','
            << csv_field(fmt_double(p.s_eigenvalue.real())) << ','
            << csv_field(fmt_double(p.s_eigenvalue.imag())) << '\n';
    }
    return oss.str();
}

/// Zero scan as CSV: one row per refined zero, then one per tangency.
inline std::string zero_scan_csv(const ZeroScan& scan, const MetaList& extra = {}) {
    std::ostringstream oss;
    emit_detail::write_header(oss, true, extra);
    oss << "# variable=" << scan.variable << '\n';
    oss << "# l=" << scan.l << '\n';
    oss << "# n=" << scan.n << '\n';
    oss << "# lambda=" << fmt_double(scan.lambda) << '\n';
    oss << "# " << (scan.variable == 'k' ? 'R' : 'k') << '=' << fmt_double(scan.fixed_value)
        << '\n';
    oss << "# lo=" << fmt_double(scan.lo) << '\n';
    oss << "# hi=" << fmt_double(scan.hi) << '\n';
    oss << "# grid_step=" << fmt_double(scan.grid_step) << '\n';
    oss << "kind,root,bracket_lo,bracket_hi,f_at_root\n";
    for (const ZeroRecord& z : scan.zeros) {
        oss << "zero," << csv_field(fmt_double(z.root)) << ','
            << csv_field(fmt_double(z.bracket_lo)) << ',' << csv_field(fmt_double(z.bracket_hi))
            << ',' << csv_field(fmt_double(z.f_at_root)) << '\n';
    }
    for (double t : scan.tangencies) oss << "tangency," << csv_field(fmt_double(t)) << ",,,\n";
    return oss.str();
}

/// Spectrum flow as CSV: k, the m lowest eigenvalues, and the top one.
inline std::string spectrum_flow_csv(const SpectrumFlow& flow, int m_lowest = 6,
                                     const MetaList& extra = {}) {
    std::ostringstream oss;
    emit_detail::write_header(oss, true, extra);
    const int m = std::min(m_lowest, flow.N);
    oss << "# N=" << flow.N << '\n';
    oss << "# top_slope=" << fmt_double(flow.top_slope) << '\n';
    oss << "# slope_k_lo=" << fmt_double(flow.slope_k_lo) << '\n';
    oss << "# slope_k_hi=" << fmt_double(flow.slope_k_hi) << '\n';
    oss << "# min_gap=" << fmt_double(flow.min_gap) << '\n';
    oss << 'k';
    for (int j = 1; j <= m; ++j) oss << ",mu_" << j;
    oss << ",mu_top\n";
    for (std::size_t s = 0; s < flow.k.size(); ++s) {
        oss << csv_field(fmt_double(flow.k[s]));
        const std::vector<double>& ev = flow.eigenvalues[s];
        for (int j = 0; j < m; ++j)
            oss << ',' << csv_field(fmt_double(ev[static_cast<std::size_t>(j)]));
        oss << ',' << csv_field(fmt_double(ev.back())) << '\n';
    }
    return oss.str();
}

/// Radius suggestion as CSV: the sampled (R, joint margin) curve.
inline std::string suggest_r_csv(const SuggestedR& sug, const MetaList& extra = {}) {
    std::ostringstream oss;
    emit_detail::write_header(oss, true, extra);
    oss << "# R_best=" << fmt_double(sug.R_best) << '\n';
    oss << "# margin=" << fmt_double(sug.margin) << '\n';
    oss << "# scans_clean=" << (sug.scans_clean ? "true" : "false") << '\n';
    oss << "R,margin\n";
    for (const auto& [R, margin] : sug.samples)
        oss << csv_field(fmt_double(R)) << ',' << csv_field(fmt_double(margin)) << '\n';
    return oss.str();
}

/// Non-transparency certificate as ordered JSON.
inline std::string certificate_json(const TransparencyCertificate& cert) {
    nlohmann::ordered_json j;
    j["tool"] = version_string;
    j["chi_hash"] = chi_definition_hash();
    j["config"] = {{"R", cert.config.R},
                   {"x0_norm", cert.config.x0_norm},
                   {"lambda", cert.config.lambda}};
    j["n"] = cert.n;
    j["l_max"] = cert.l_max;
    j["lt_max"] = cert.lt_max;
    j["k_lo"] = cert.k_lo;
    j["k_hi"] = cert.k_hi;
    j["grid_step"] = cert.grid_step;
    j["margin_threshold"] = cert.margin_threshold;
    nlohmann::ordered_json zeros = nlohmann::ordered_json::array();
    for (const auto& [lt, roots] : cert.unit_well_zeros)
        zeros.push_back({{"l_tilde", lt}, {"zeros", roots}});
    j["unit_well_zeros"] = zeros;
    j["margin"] = emit_detail::json_number(cert.margin);
    j["pass"] = cert.pass;
    j["witness"] = {{"l_tilde", cert.witness_lt},
                    {"k", cert.witness_k},
                    {"l", cert.witness_l}};
    j["boundary_violation"] = cert.boundary_violation;
    j["tangency_found"] = cert.tangency_found;
    j["nu_star_unit"] = cert.nu_star_unit;
    j["nu_star_scaled"] = cert.nu_star_scaled;
    j["truncation_covers"] = cert.truncation_covers;
    j["diagnostics"] = cert.diagnostics;
    return j.dump(2) + "\n";
}

/// Levinson consistency report as ordered JSON; extras become string fields.
inline std::string levinson_json(const LevinsonReport& rep, const MetaList& extra = {}) {
    nlohmann::ordered_json j;
    j["tool"] = version_string;
    j["chi_hash"] = chi_definition_hash();
    for (const auto& [key, value] : extra) j[key] = value;
    j["winding"] = rep.winding;
    j["n_bound"] = rep.n_bound;
    j["half_bound"] = rep.half_bound;
    j["residual"] = rep.residual;
    j["pass"] = rep.pass;
    return j.dump(2) + "\n";
}

} // namespace wellscat
