// tecrep: key rates of one-way repeater chains built from
// teleportation-based error-correcting stations, with the repeaterless
// PLOB/TGW benchmarks and region sweeps.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tecrep/json_io.hpp"
#include "tecrep/version.hpp"

using nlohmann::json;
using namespace tecrep;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadArgs = 1;
constexpr int kExitVerifyFail = 2;
constexpr int kExitCapRefusal = 3;

struct CommonParams {
    int n = 2;
    int m = 2;
    double eta0 = 0.9;
    double e = 0.0;
    double eta_c = 1.0;
    double l_att = 20.0;
    std::string x_draw = "parity-fidelity";
};

void add_common(CLI::App* cmd, CommonParams& p) {
    cmd->add_option("-n", p.n, "sub-blocks per code block")->capture_default_str();
    cmd->add_option("-m", p.m, "qubits per sub-block")->capture_default_str();
    cmd->add_option("--eta0", p.eta0, "per-segment transmission, in (0,1)")
        ->capture_default_str();
    cmd->add_option("--e", p.e, "physical flip rate, in [0,0.5)")
        ->capture_default_str();
    cmd->add_option("--eta-c", p.eta_c, "coupling efficiency, in (0,1]")
        ->capture_default_str();
    cmd->add_option("--l-att", p.l_att, "attenuation length [km]")
        ->capture_default_str();
    cmd->add_option("--x-draw", p.x_draw,
                    "X-majority draw model: parity-fidelity | qubit-rate")
        ->check(CLI::IsMember({"parity-fidelity", "qubit-rate"}))
        ->capture_default_str();
}

/// Config-file values fill in everything the command line left untouched.
void apply_config(CLI::App* cmd, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
    json cfg;
    in >> cfg;
    for (auto& [key, value] : cfg.items()) {
        CLI::Option* opt = nullptr;
        try {
            opt = cmd->get_option("--" + key);
        } catch (const CLI::OptionNotFound&) {
            try {
                opt = cmd->get_option("-" + key);
            } catch (const CLI::OptionNotFound&) {
                throw CLI::ValidationError("--config", "unknown key: " + key);
            }
        }
        if (opt->count() > 0) continue;  // flags win over the file
        std::string text = value.is_string() ? value.get<std::string>()
                                             : value.dump();
        opt->add_result(text);
        opt->run_callback();
    }
}

void write_output(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << payload;
}

json common_config_json(const CommonParams& p) {
    return json{{"n", p.n},       {"m", p.m},
                {"eta0", p.eta0}, {"e", p.e},
                {"eta_c", p.eta_c}, {"l_att", p.l_att},
                {"x_draw", p.x_draw}};
}

std::string csv_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string join_u(const std::vector<int>& u) {
    std::string s;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (i) s += ';';
        s += std::to_string(u[i]);
    }
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"one-way repeater chain key-rate calculator"};
    app.set_version_flag("--version", std::string("tecrep ") + kVersion);
    app.require_subcommand(1);

    // ---- station ----
    CommonParams sp;
    std::string s_out, s_format = "json", s_config;
    CLI::App* station = app.add_subcommand(
        "station", "per-station syndrome table (w, ez, ex rows, P0, E0)");
    add_common(station, sp);
    station->add_option("--out", s_out, "output path (default stdout)");
    station->add_option("--format", s_format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    station->add_option("--config", s_config, "JSON config file");

    // ---- verify ----
    CommonParams vp;
    std::uint64_t v_trials = 1000000, v_seed = 1;
    int v_workers = 1;
    std::string v_out, v_config;
    CLI::App* verify = app.add_subcommand(
        "verify", "bit-level simulation vs the analytic table");
    add_common(verify, vp);
    verify->add_option("--trials", v_trials, "simulation trials")
        ->capture_default_str();
    verify->add_option("--samples", v_trials,
                       "alias for --trials")->group("");
    verify->add_option("--seed", v_seed, "RNG seed")
        ->envname("TECREP_SEED")->capture_default_str();
    verify->add_option("--workers", v_workers, "worker threads (0 = auto)")
        ->envname("TECREP_WORKERS")->capture_default_str();
    verify->add_option("--out", v_out, "output path (default stdout)");
    verify->add_option("--config", v_config, "JSON config file");

    // ---- rate ----
    CommonParams rp;
    std::uint64_t r_n_stations = 1, r_samples = 100000, r_seed = 1;
    int r_workers = 1;
    std::string r_method = "auto", r_out, r_format = "json", r_config;
    CLI::App* rate = app.add_subcommand(
        "rate", "chain rates beside the PLOB/TGW/direct benchmarks");
    add_common(rate, rp);
    rate->add_option("--n-stations", r_n_stations, "number of stations N")
        ->capture_default_str();
    rate->add_option("--method", r_method,
                     "auto | cg | fg-exact | fg-multinomial | fg-monte-carlo")
        ->check(CLI::IsMember(
            {"auto", "cg", "fg-exact", "fg-multinomial", "fg-monte-carlo"}))
        ->capture_default_str();
    rate->add_option("--samples", r_samples, "Monte Carlo samples")
        ->capture_default_str();
    rate->add_option("--seed", r_seed, "RNG seed")
        ->envname("TECREP_SEED")->capture_default_str();
    rate->add_option("--workers", r_workers, "worker threads (0 = auto)")
        ->envname("TECREP_WORKERS")->capture_default_str();
    rate->add_option("--out", r_out, "output path (default stdout)");
    rate->add_option("--format", r_format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    rate->add_option("--config", r_config, "JSON config file");

    // ---- cutoff ----
    CommonParams cp;
    std::string c_method = "cg", c_out, c_config;
    std::uint64_t c_samples = 100000, c_seed = 1, c_max_n = 1000000;
    CLI::App* cutoff = app.add_subcommand(
        "cutoff", "largest N with a positive key");
    add_common(cutoff, cp);
    cutoff->add_option("--method", c_method, "cg | fg")
        ->check(CLI::IsMember({"cg", "fg"}))->capture_default_str();
    cutoff->add_option("--samples", c_samples, "Monte Carlo samples (fg)")
        ->capture_default_str();
    cutoff->add_option("--seed", c_seed, "RNG seed")
        ->envname("TECREP_SEED")->capture_default_str();
    cutoff->add_option("--max-n", c_max_n, "scan limit")->capture_default_str();
    cutoff->add_option("--out", c_out, "output path (default stdout)");
    cutoff->add_option("--config", c_config, "JSON config file");

    // ---- sweep ----
    CommonParams wp;
    GridSpec w_grid;
    std::uint64_t w_samples = 100000, w_seed = 1;
    int w_workers = 1;
    std::string w_out, w_format = "csv", w_config;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "region map over (eta0, L_tot) with beat-PLOB flags");
    add_common(sweep, wp);
    sweep->add_option("--eta0-min", w_grid.eta0_min)->capture_default_str();
    sweep->add_option("--eta0-max", w_grid.eta0_max)->capture_default_str();
    sweep->add_option("--eta0-step", w_grid.eta0_step)->capture_default_str();
    sweep->add_option("--l-min", w_grid.l_min_km)->capture_default_str();
    sweep->add_option("--l-max", w_grid.l_max_km)->capture_default_str();
    sweep->add_option("--l-step", w_grid.l_step_km)->capture_default_str();
    sweep->add_option("--samples", w_samples, "Monte Carlo samples per cell")
        ->capture_default_str();
    sweep->add_option("--seed", w_seed, "RNG seed")
        ->envname("TECREP_SEED")->capture_default_str();
    sweep->add_option("--workers", w_workers, "worker threads (0 = auto)")
        ->envname("TECREP_WORKERS")->capture_default_str();
    sweep->add_option("--out", w_out,
                      "output path (prefix when --format both)");
    sweep->add_option("--format", w_format, "csv | json | both")
        ->check(CLI::IsMember({"csv", "json", "both"}));
    sweep->add_option("--config", w_config, "JSON config file");

    try {
        app.parse(argc, argv);

        if (station->parsed()) {
            if (!s_config.empty()) apply_config(station, s_config);
            const CodeParams code(sp.n, sp.m);
            const ChannelParams channel(sp.eta0, sp.e, sp.eta_c, sp.l_att);
            const StationTable table =
                build_station_table(code, channel, x_draw_from_string(sp.x_draw));
            json cfg = common_config_json(sp);
            cfg["format"] = s_format;
            if (s_format == "json") {
                json out{{"version", kVersion}, {"config", cfg},
                         {"table", to_json(table)},
                         {"single_station_key",
                          single_station_key(code, channel,
                                             x_draw_from_string(sp.x_draw))}};
                write_output(s_out, out.dump(2) + "\n");
            } else {
                std::ostringstream os;
                os << "# tecrep " << kVersion << " station " << cfg.dump() << "\n";
                os << "u,w,ez,ex\n";
                for (const StationStats& row : table.rows)
                    os << join_u(row.u) << ',' << csv_num(row.w) << ','
                       << csv_num(row.err.ez) << ',' << csv_num(row.err.ex)
                       << "\n";
                os << "# p0=" << csv_num(table.p0)
                   << " e0=" << csv_num(table.e0) << "\n";
                write_output(s_out, os.str());
            }
            return kExitOk;
        }

        if (verify->parsed()) {
            if (!v_config.empty()) apply_config(verify, v_config);
            const CodeParams code(vp.n, vp.m);
            const ChannelParams channel(vp.eta0, vp.e, vp.eta_c, vp.l_att);
            const OracleRun run =
                simulate_station(code, channel, v_trials, v_seed, v_workers);
            const ComparisonReport chosen = compare_with_analytic(
                build_station_table(code, channel,
                                    x_draw_from_string(vp.x_draw)),
                run);
            const ComparisonReport parity = compare_with_analytic(
                build_station_table(code, channel, XDrawModel::parity_fidelity),
                run);
            const ComparisonReport literal = compare_with_analytic(
                build_station_table(code, channel, XDrawModel::qubit_rate), run);

            const char* adjudicated =
                parity.max_abs_z <= literal.max_abs_z ? "parity-fidelity"
                                                      : "qubit-rate";
            json cfg = common_config_json(vp);
            cfg["trials"] = v_trials;
            cfg["seed"] = v_seed;
            cfg["workers"] = v_workers;
            json out{{"version", kVersion},
                     {"config", cfg},
                     {"rng", run.rng_name},
                     {"report", to_json(chosen)},
                     {"adjudication",
                      json{{"parity_fidelity_max_abs_z", parity.max_abs_z},
                           {"qubit_rate_max_abs_z", literal.max_abs_z},
                           {"matched", adjudicated}}},
                     {"oracle", to_json(run)}};
            write_output(v_out, out.dump(2) + "\n");
            std::cerr << "x-draw adjudication: parity-fidelity max|z|="
                      << parity.max_abs_z << ", qubit-rate max|z|="
                      << literal.max_abs_z << "; matched: " << adjudicated
                      << "\n";
            return chosen.all_within_3sigma ? kExitOk : kExitVerifyFail;
        }

        if (rate->parsed()) {
            if (!r_config.empty()) apply_config(rate, r_config);
            const CodeParams code(rp.n, rp.m);
            const ChannelParams channel(rp.eta0, rp.e, rp.eta_c, rp.l_att);
            const StationTable table =
                build_station_table(code, channel, x_draw_from_string(rp.x_draw));
            const ChainSpec spec(table, r_n_stations);

            const RateResult cg = cg_rate(spec);
            RateResult fg;
            std::string method = r_method;
            if (method == "auto")
                method = to_string(pick_fg_method(spec));
            if (method == "cg")
                fg = cg;
            else if (method == "fg-exact")
                fg = fg_rate_exact(spec);
            else if (method == "fg-multinomial")
                fg = fg_rate_multinomial(spec);
            else
                fg = fg_rate_monte_carlo(spec, r_samples, r_seed, r_workers);

            const double l_tot = total_distance_km(channel, r_n_stations);
            const double eta_line = pow_int(rp.eta0, r_n_stations);
            json cfg = common_config_json(rp);
            cfg["n_stations"] = r_n_stations;
            cfg["method"] = r_method;
            cfg["samples"] = r_samples;
            cfg["seed"] = r_seed;
            json out{{"version", kVersion},
                     {"config", cfg},
                     {"n_stations", r_n_stations},
                     {"l_tot_km", l_tot},
                     {"eta_line", eta_line},
                     {"cg", to_json(cg)},
                     {"fg", to_json(fg)},
                     {"r_plob", plob(eta_line)},
                     {"r_tgw", tgw(eta_line)},
                     {"r_direct", direct_rate(eta_line)}};
            if (r_format == "json") {
                write_output(r_out, out.dump(2) + "\n");
            } else {
                std::ostringstream os;
                os << "# tecrep " << kVersion << " rate " << cfg.dump() << "\n";
                os << "N,l_tot_km,r_fg,r_fg_se,r_cg,r_plob,r_tgw,r_direct\n";
                os << r_n_stations << ',' << csv_num(l_tot) << ','
                   << csv_num(fg.r_per_mode) << ','
                   << csv_num(fg.std_err ? *fg.std_err / (2.0 * code.n_p()) : 0.0)
                   << ',' << csv_num(cg.r_per_mode) << ','
                   << csv_num(plob(eta_line)) << ',' << csv_num(tgw(eta_line))
                   << ',' << csv_num(direct_rate(eta_line)) << "\n";
                write_output(r_out, os.str());
            }
            return kExitOk;
        }

        if (cutoff->parsed()) {
            if (!c_config.empty()) apply_config(cutoff, c_config);
            const CodeParams code(cp.n, cp.m);
            const ChannelParams channel(cp.eta0, cp.e, cp.eta_c, cp.l_att);
            McSpec mc{c_samples, c_seed, 1};
            const CutoffResult res = positive_key_cutoff(
                code, channel,
                c_method == "cg" ? CutoffMethod::cg : CutoffMethod::fg, mc,
                x_draw_from_string(cp.x_draw), c_max_n);
            json cfg = common_config_json(cp);
            cfg["method"] = c_method;
            cfg["samples"] = c_samples;
            cfg["seed"] = c_seed;
            cfg["max_n"] = c_max_n;
            json out{{"version", kVersion},
                     {"config", cfg},
                     {"n_star", res.n_star},
                     {"bounded", res.bounded},
                     {"l_tot_km",
                      res.n_star > 0 ? total_distance_km(channel, res.n_star)
                                     : 0.0}};
            write_output(c_out, out.dump(2) + "\n");
            return kExitOk;
        }

        if (sweep->parsed()) {
            if (!w_config.empty()) apply_config(sweep, w_config);
            const CodeParams code(wp.n, wp.m);
            McSpec mc{w_samples, w_seed, w_workers};
            const RegionMap map =
                scan_region(code, wp.e, wp.eta_c, w_grid, mc,
                            x_draw_from_string(wp.x_draw), wp.l_att);
            json cfg = common_config_json(wp);
            cfg["samples"] = w_samples;
            cfg["seed"] = w_seed;
            cfg["workers"] = w_workers;
            cfg["format"] = w_format;
            cfg["grid"] = json{{"eta0_min", w_grid.eta0_min},
                               {"eta0_max", w_grid.eta0_max},
                               {"eta0_step", w_grid.eta0_step},
                               {"l_min_km", w_grid.l_min_km},
                               {"l_max_km", w_grid.l_max_km},
                               {"l_step_km", w_grid.l_step_km}};
            std::cerr << "sweep config: " << cfg.dump() << "\n";

            std::ostringstream csv;
            csv << "# tecrep " << kVersion << " sweep " << cfg.dump() << "\n";
            write_region_csv(map, csv);
            if (w_format == "csv") {
                write_output(w_out, csv.str());
            } else if (w_format == "json") {
                json out = to_json(map);
                out["config"] = cfg;
                write_output(w_out, out.dump(2) + "\n");
            } else {
                if (w_out.empty())
                    throw CLI::ValidationError("--out",
                                               "--format both needs --out");
                write_output(w_out + ".csv", csv.str());
                json out = to_json(map);
                out["config"] = cfg;
                write_output(w_out + ".json", out.dump(2) + "\n");
            }
            return kExitOk;
        }
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kExitOk : kExitBadArgs;
    } catch (const CapExceeded& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitCapRefusal;
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitBadArgs;
    } catch (const std::domain_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitBadArgs;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitBadArgs;
    }
    return kExitOk;
}
