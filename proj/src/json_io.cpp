#include "tecrep/json_io.hpp"

#include <cmath>

#include "tecrep/version.hpp"

namespace tecrep {

using nlohmann::json;

json to_json(const CodeParams& code) {
    return json{{"n", code.n}, {"m", code.m}};
}

json to_json(const ChannelParams& channel) {
    return json{{"eta0", channel.eta0},
                {"e", channel.e},
                {"eta_c", channel.eta_c},
                {"l_att_km", channel.l_att_km}};
}

json to_json(const StationTable& table) {
    json rows = json::array();
    for (const StationStats& row : table.rows)
        rows.push_back(json{{"u", row.u},
                            {"w", row.w},
                            {"ez", row.err.ez},
                            {"ex", row.err.ex}});
    return json{{"code", to_json(table.code)},
                {"channel", to_json(table.channel)},
                {"x_draw", to_string(table.x_draw)},
                {"rows", rows},
                {"p0", table.p0},
                {"e0", table.e0}};
}

StationTable station_table_from_json(const json& j) {
    const CodeParams code(j.at("code").at("n").get<int>(),
                          j.at("code").at("m").get<int>());
    const auto& jc = j.at("channel");
    const ChannelParams channel(
        jc.at("eta0").get<double>(), jc.at("e").get<double>(),
        jc.at("eta_c").get<double>(), jc.at("l_att_km").get<double>());
    StationTable table{code, channel,
                       x_draw_from_string(j.at("x_draw").get<std::string>()),
                       {}, j.at("p0").get<double>(), j.at("e0").get<double>()};
    for (const json& jr : j.at("rows")) {
        StationStats row;
        row.u = jr.at("u").get<std::vector<int>>();
        row.w = jr.at("w").get<double>();
        row.err = ErrorPair(jr.at("ez").get<double>(), jr.at("ex").get<double>());
        table.rows.push_back(std::move(row));
    }
    return table;
}

json to_json(const RateResult& result) {
    json j{{"k_logical", result.k_logical},
           {"r_per_mode", result.r_per_mode},
           {"method", to_string(result.method)}};
    if (result.std_err) j["std_err"] = *result.std_err;
    if (result.samples) j["samples"] = *result.samples;
    if (result.seed) j["seed"] = *result.seed;
    return j;
}

json to_json(const OracleRun& run) {
    json classes = json::array();
    for (const OracleEstimate& est : run.per_class) {
        if (est.samples == 0) continue;
        classes.push_back(json{{"u", est.u},
                               {"lost_rows", est.lost_rows},
                               {"acceptable", est.acceptable},
                               {"samples", est.samples},
                               {"conclusive", est.conclusive},
                               {"x_errors", est.x_errors},
                               {"z_errors", est.z_errors},
                               {"q_hat", est.q_hat()},
                               {"q_se", est.q_se()},
                               {"ex_hat", est.ex_hat()},
                               {"ex_se", est.ex_se()},
                               {"ez_hat", est.ez_hat()},
                               {"ez_se", est.ez_se()}});
    }
    return json{{"code", to_json(run.code)},
                {"channel", to_json(run.channel)},
                {"trials", run.trials},
                {"seed", run.seed},
                {"rng", run.rng_name},
                {"conclusive_total", run.conclusive_total},
                {"classes", classes}};
}

json to_json(const ComparisonReport& report) {
    json rows = json::array();
    for (const ClassComparison& cmp : report.rows)
        rows.push_back(json{{"u", cmp.u},
                            {"samples", cmp.samples},
                            {"conclusive", cmp.conclusive},
                            {"q_analytic", cmp.q_analytic},
                            {"q_hat", cmp.q_hat},
                            {"z_q", cmp.z_q},
                            {"p_q", cmp.p_q},
                            {"ex_analytic", cmp.ex_analytic},
                            {"ex_hat", cmp.ex_hat},
                            {"z_ex", cmp.z_ex},
                            {"p_ex", cmp.p_ex},
                            {"ez_analytic", cmp.ez_analytic},
                            {"ez_hat", cmp.ez_hat},
                            {"z_ez", cmp.z_ez},
                            {"p_ez", cmp.p_ez},
                            {"flagged", cmp.flagged}});
    return json{{"x_draw", to_string(report.x_draw)},
                {"max_abs_z", report.max_abs_z},
                {"min_p_value", report.min_p_value},
                {"all_within_3sigma", report.all_within_3sigma},
                {"p0_analytic", report.p0_analytic},
                {"p0_hat", report.p0_hat},
                {"z_p0", report.z_p0},
                {"rows", rows}};
}

json to_json(const RegionMap& map) {
    json cells = json::array();
    for (const RegionCell& cell : map.cells)
        cells.push_back(json{
            {"eta0", cell.eta0},
            {"l_tot_km", cell.l_tot_km},
            {"N", cell.n_stations},
            {"r_fg", cell.r_fg},
            {"r_fg_se", cell.r_fg_se},
            {"r_cg", cell.r_cg},
            {"r_plob", cell.r_plob},
            {"r_tgw", cell.r_tgw},
            {"fg_beats", cell.fg_beats},
            {"cg_beats", cell.cg_beats},
            {"fg_mc", cell.fg_mc},
            {"ratio_r", std::isnan(cell.ratio_r) ? json() : json(cell.ratio_r)}});
    return json{{"version", kVersion},
                {"code", to_json(map.code)},
                {"e", map.e},
                {"eta_c", map.eta_c},
                {"l_att_km", map.l_att_km},
                {"x_draw", to_string(map.x_draw)},
                {"grid",
                 json{{"eta0_min", map.grid.eta0_min},
                      {"eta0_max", map.grid.eta0_max},
                      {"eta0_step", map.grid.eta0_step},
                      {"l_min_km", map.grid.l_min_km},
                      {"l_max_km", map.grid.l_max_km},
                      {"l_step_km", map.grid.l_step_km}}},
                {"mc", json{{"samples", map.mc.samples}, {"seed", map.mc.seed}}},
                {"n_eta", map.n_eta},
                {"n_l", map.n_l},
                {"cells", cells}};
}

}  // namespace tecrep
