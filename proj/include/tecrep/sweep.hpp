#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "tecrep/bounds.hpp"
#include "tecrep/chain.hpp"

namespace tecrep {

/// Rectangular parameter grid over (eta0, L_tot).  Defaults cover the
/// whole region of interest for the small block codes.
struct GridSpec {
    double eta0_min = 0.70;
    double eta0_max = 0.995;
    double eta0_step = 0.005;
    double l_min_km = 50.0;
    double l_max_km = 1400.0;
    double l_step_km = 10.0;

    std::vector<double> eta0_values() const;
    std::vector<double> l_values() const;
};

struct McSpec {
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    int workers = 1;
};

struct RegionCell {
    double eta0 = 0.0;
    double l_tot_km = 0.0;  // realized: N * L_0
    std::uint64_t n_stations = 1;
    double r_fg = 0.0;
    double r_fg_se = 0.0;  // 0 when the FG rate was computed exactly
    double r_cg = 0.0;
    double r_plob = 0.0;
    double r_tgw = 0.0;
    bool fg_beats = false;  // exact: r_fg > r_plob; MC: r_fg - 3 se > r_plob
    bool cg_beats = false;
    bool fg_mc = false;     // FG estimated by Monte Carlo
    double ratio_r = 0.0;   // r_fg / r_cg, NaN where r_cg == 0
};

struct RegionMap {
    CodeParams code;
    double e = 0.0;
    double eta_c = 1.0;
    double l_att_km = 20.0;
    XDrawModel x_draw = XDrawModel::parity_fidelity;
    GridSpec grid;
    McSpec mc;
    std::size_t n_eta = 0;
    std::size_t n_l = 0;
    std::vector<RegionCell> cells;  // row-major: [eta index][distance index]

    const RegionCell& at(std::size_t eta_idx, std::size_t l_idx) const {
        return cells[eta_idx * n_l + l_idx];
    }
};

/// Evaluate all rates over the grid.  Coupling loss enters the station
/// statistics through eta_eff = eta_c * eta0 while the distance mapping
/// keeps the bare eta0.  Cells are independent work items; Monte Carlo
/// seeds derive from the cell index, so any worker schedule produces the
/// same map.
RegionMap scan_region(const CodeParams& code, double e, double eta_c,
                      const GridSpec& grid, const McSpec& mc,
                      XDrawModel x_draw = XDrawModel::parity_fidelity,
                      double l_att_km = 20.0, const ChainCaps& caps = {});

enum class CutoffMethod { cg, fg };

struct CutoffResult {
    std::uint64_t n_star = 0;  // largest N with a positive key
    bool bounded = true;       // false: still positive at max_n
};

/// Largest N with a positive key: exact for CG, a 3-sigma Monte Carlo
/// decision for FG.  Scan by doubling, then bisection; per-N seeds derive
/// from mc.seed.
CutoffResult positive_key_cutoff(const CodeParams& code,
                                 const ChannelParams& channel,
                                 CutoffMethod method, const McSpec& mc = {},
                                 XDrawModel x_draw = XDrawModel::parity_fidelity,
                                 std::uint64_t max_n = 1000000);

/// Sharpen a beat-region edge along one eta0 row: bisect the distance
/// between a beating and a non-beating probe down to tol_km, using the
/// same flag rule as scan_region cells (Monte Carlo probes take seeds
/// derived from the probe distance).  Returns the bracket midpoint.
double refine_beat_boundary(const CodeParams& code, double e, double eta_c,
                            double eta0, CutoffMethod method, double l_beat_km,
                            double l_off_km, double tol_km, const McSpec& mc,
                            XDrawModel x_draw = XDrawModel::parity_fidelity,
                            double l_att_km = 20.0, const ChainCaps& caps = {});

struct ContourSet {
    std::vector<double> levels;
    std::vector<std::vector<std::size_t>> crossing_cells;  // per level
    std::vector<std::size_t> fg_only_cells;  // r_cg == 0 but r_fg > 0
};

/// Cells where ratio_r crosses each level (a 4-neighbour sits below it).
ContourSet ratio_contours(const RegionMap& map, const std::vector<double>& levels);

/// One row per cell; floats printed with 9 significant digits.
void write_region_csv(const RegionMap& map, std::ostream& os);

}  // namespace tecrep
