#include "tecrep/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "tecrep/rng.hpp"

namespace tecrep {

namespace {

// eta0^N can underflow to zero on extreme grids; the bounds vanish there
double plob_or_zero(double eta) { return eta > 0.0 ? plob(eta) : 0.0; }
double tgw_or_zero(double eta) { return eta > 0.0 ? tgw(eta) : 0.0; }

std::vector<double> arange(double lo, double hi, double step) {
    std::vector<double> out;
    if (!(step > 0.0) || hi < lo) return out;
    const auto count = static_cast<std::size_t>(
        std::floor((hi - lo) / step + 1e-9));
    out.reserve(count + 1);
    for (std::size_t i = 0; i <= count; ++i) out.push_back(lo + step * i);
    return out;
}

}  // namespace

std::vector<double> GridSpec::eta0_values() const {
    return arange(eta0_min, eta0_max, eta0_step);
}

std::vector<double> GridSpec::l_values() const {
    return arange(l_min_km, l_max_km, l_step_km);
}

RegionMap scan_region(const CodeParams& code, double e, double eta_c,
                      const GridSpec& grid, const McSpec& mc,
                      XDrawModel x_draw, double l_att_km,
                      const ChainCaps& caps) {
    const std::vector<double> etas = grid.eta0_values();
    const std::vector<double> dists = grid.l_values();
    if (etas.empty() || dists.empty())
        throw std::invalid_argument("scan_region: empty grid");
    for (double eta0 : etas)
        if (!(eta0 > 0.0 && eta0 < 1.0))
            throw std::invalid_argument("scan_region: eta0 grid outside (0,1)");

    RegionMap map{code,        e,  eta_c, l_att_km, x_draw,
                  grid,        mc, etas.size(), dists.size(),
                  std::vector<RegionCell>(etas.size() * dists.size())};

    std::atomic<std::size_t> next_row{0};
    auto scan_row = [&](std::size_t row) {
        const double eta0 = etas[row];
        const ChannelParams channel(eta0, e, eta_c, l_att_km);
        const StationTable table = build_station_table(code, channel, x_draw);
        const double two_np = 2.0 * code.n_p();
        for (std::size_t col = 0; col < dists.size(); ++col) {
            const std::size_t cell_idx = row * dists.size() + col;
            RegionCell cell;
            cell.eta0 = eta0;
            cell.n_stations = stations_for_distance(channel, dists[col]);
            cell.l_tot_km = total_distance_km(channel, cell.n_stations);
            const double eta_line = pow_int(eta0, cell.n_stations);
            cell.r_plob = plob_or_zero(eta_line);
            cell.r_tgw = tgw_or_zero(eta_line);

            const ChainSpec spec(table, cell.n_stations);
            cell.r_cg = cg_rate(spec).r_per_mode;

            if (multinomial_term_count(cell.n_stations, table.rows.size()) <=
                caps.multinomial_terms) {
                cell.r_fg = fg_rate_multinomial(spec, caps).r_per_mode;
                cell.fg_beats = cell.r_fg > cell.r_plob;
            } else {
                const RateResult fg = fg_rate_monte_carlo(
                    spec, mc.samples, derive_seed(mc.seed, cell_idx), 1);
                cell.r_fg = fg.r_per_mode;
                cell.r_fg_se = *fg.std_err / two_np;
                cell.fg_mc = true;
                cell.fg_beats = cell.r_fg - 3.0 * cell.r_fg_se > cell.r_plob;
            }
            cell.cg_beats = cell.r_cg > cell.r_plob;
            cell.ratio_r = cell.r_cg > 0.0
                               ? cell.r_fg / cell.r_cg
                               : std::numeric_limits<double>::quiet_NaN();
            map.cells[cell_idx] = cell;
        }
    };

    int workers = mc.workers;
    if (workers <= 0)
        workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (workers == 1) {
        for (std::size_t row = 0; row < etas.size(); ++row) scan_row(row);
    } else {
        auto worker_fn = [&] {
            for (std::size_t row = next_row.fetch_add(1); row < etas.size();
                 row = next_row.fetch_add(1))
                scan_row(row);
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker_fn);
        for (auto& th : pool) th.join();
    }
    return map;
}

CutoffResult positive_key_cutoff(const CodeParams& code,
                                 const ChannelParams& channel,
                                 CutoffMethod method, const McSpec& mc,
                                 XDrawModel x_draw, std::uint64_t max_n) {
    const StationTable table = build_station_table(code, channel, x_draw);

    // predicates work on underflow-proof quantities: the CG bracket, and
    // the Monte Carlo sample mean before the p0^N scaling
    auto positive = [&](std::uint64_t n) -> bool {
        if (method == CutoffMethod::cg) {
            const double qn = iterate_error(table.e0, n);
            return table.p0 > 0.0 && 1.0 - 2.0 * binary_entropy(qn) > 0.0;
        }
        const ChainSpec spec(table, n);
        const RateResult fg = fg_rate_monte_carlo(spec, mc.samples,
                                                  derive_seed(mc.seed, n), 1);
        const double scale = pow_int(table.p0, n);
        if (scale > 0.0)
            return fg.k_logical > 3.0 * *fg.std_err && fg.k_logical > 0.0;
        return false;
    };

    if (!positive(1)) return {0, true};
    std::uint64_t lo = 1, hi = 2;
    while (hi <= max_n && positive(hi)) {
        lo = hi;
        hi *= 2;
    }
    if (hi > max_n) {
        if (positive(max_n)) return {max_n, false};
        hi = max_n;
    }
    // positive(lo) held, positive(hi) failed
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (positive(mid))
            lo = mid;
        else
            hi = mid;
    }
    return {lo, true};
}

double refine_beat_boundary(const CodeParams& code, double e, double eta_c,
                            double eta0, CutoffMethod method, double l_beat_km,
                            double l_off_km, double tol_km, const McSpec& mc,
                            XDrawModel x_draw, double l_att_km,
                            const ChainCaps& caps) {
    if (!(tol_km > 0.0))
        throw std::invalid_argument("refine_beat_boundary: tol_km must be positive");
    const ChannelParams channel(eta0, e, eta_c, l_att_km);
    const StationTable table = build_station_table(code, channel, x_draw);

    auto beats = [&](double l) -> bool {
        const std::uint64_t n = stations_for_distance(channel, l);
        const double r_plob = plob_or_zero(pow_int(eta0, n));
        const ChainSpec spec(table, n);
        if (method == CutoffMethod::cg)
            return cg_rate(spec).r_per_mode > r_plob;
        if (multinomial_term_count(n, table.rows.size()) <=
            caps.multinomial_terms)
            return fg_rate_multinomial(spec, caps).r_per_mode > r_plob;
        const RateResult fg = fg_rate_monte_carlo(
            spec, mc.samples,
            derive_seed(mc.seed, static_cast<std::uint64_t>(
                                     std::llround(l * 1024.0))),
            1);
        const double se = *fg.std_err / (2.0 * code.n_p());
        return fg.r_per_mode - 3.0 * se > r_plob;
    };

    if (!beats(l_beat_km) || beats(l_off_km))
        throw std::invalid_argument(
            "refine_beat_boundary: bracket must run from a beating to a "
            "non-beating distance");
    double lo = l_beat_km, hi = l_off_km;
    while (std::abs(hi - lo) > tol_km) {
        const double mid = (lo + hi) / 2.0;
        if (beats(mid))
            lo = mid;
        else
            hi = mid;
    }
    return (lo + hi) / 2.0;
}

ContourSet ratio_contours(const RegionMap& map, const std::vector<double>& levels) {
    if (map.cells.empty())
        throw std::invalid_argument("ratio_contours: empty map");
    ContourSet set;
    set.levels = levels;
    set.crossing_cells.resize(levels.size());

    auto defined = [&](std::size_t idx) {
        return !std::isnan(map.cells[idx].ratio_r);
    };
    for (std::size_t idx = 0; idx < map.cells.size(); ++idx) {
        const RegionCell& cell = map.cells[idx];
        if (!defined(idx)) {
            if (cell.r_fg > 0.0) set.fg_only_cells.push_back(idx);
            continue;
        }
        const std::size_t row = idx / map.n_l;
        const std::size_t col = idx % map.n_l;
        for (std::size_t lv = 0; lv < levels.size(); ++lv) {
            if (cell.ratio_r < levels[lv]) continue;
            bool crossing = false;
            const auto probe = [&](std::size_t r2, std::size_t c2) {
                const std::size_t j = r2 * map.n_l + c2;
                if (!defined(j) || map.cells[j].ratio_r < levels[lv])
                    crossing = true;
            };
            if (row > 0) probe(row - 1, col);
            if (row + 1 < map.n_eta) probe(row + 1, col);
            if (col > 0) probe(row, col - 1);
            if (col + 1 < map.n_l) probe(row, col + 1);
            if (crossing) set.crossing_cells[lv].push_back(idx);
        }
    }
    return set;
}

void write_region_csv(const RegionMap& map, std::ostream& os) {
    os << "eta0,l_tot_km,N,r_fg,r_fg_se,r_cg,r_plob,r_tgw,fg_beats,cg_beats,"
          "ratio_r\n";
    char buf[320];
    for (const RegionCell& cell : map.cells) {
        std::snprintf(buf, sizeof buf,
                      "%.9g,%.9g,%llu,%.9g,%.9g,%.9g,%.9g,%.9g,%d,%d,%.9g\n",
                      cell.eta0, cell.l_tot_km,
                      static_cast<unsigned long long>(cell.n_stations),
                      cell.r_fg, cell.r_fg_se, cell.r_cg, cell.r_plob,
                      cell.r_tgw, cell.fg_beats ? 1 : 0, cell.cg_beats ? 1 : 0,
                      cell.ratio_r);
        os << buf;
    }
}

}  // namespace tecrep
