#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "llt/lattice_pmf.hpp"
#include "llt/llt_stats.hpp"

namespace llt {

// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

nlohmann::json pmf_to_json(const LatticePmf &p);
// Goes through make_pmf, so the result is canonical.
LatticePmf pmf_from_json(const nlohmann::json &j, bool unnormalized = false);

nlohmann::json report_to_json(const LltReport &r);
LltReport report_from_json(const nlohmann::json &j);

nlohmann::json decomposition_to_json(const ProofDecomposition &d);

// Header: n,a,b,eps,v,window_diff,shift_diff,llt_err,b_window_diff,b_llt_err,mod_dev_<d>...
std::string sweep_csv_header(const std::set<std::int64_t> &moduli);
std::string sweep_csv_row(const LltReport &r, const std::set<std::int64_t> &moduli);
void write_sweep_csv(std::ostream &os, const std::vector<LltReport> &rows,
                     const std::set<std::int64_t> &moduli);

/// Static SVG line chart of b*window_diff and b*llt_err against n (log x).
std::string render_sweep_svg(const std::vector<LltReport> &rows);

} // namespace llt
