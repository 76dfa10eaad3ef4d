#include "tecrep/station.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tecrep {

const char* to_string(XDrawModel model) {
    switch (model) {
        case XDrawModel::parity_fidelity: return "parity-fidelity";
        case XDrawModel::qubit_rate: return "qubit-rate";
    }
    return "?";
}

XDrawModel x_draw_from_string(const std::string& name) {
    if (name == "parity-fidelity") return XDrawModel::parity_fidelity;
    if (name == "qubit-rate") return XDrawModel::qubit_rate;
    throw std::invalid_argument("unknown x-draw model: " + name);
}

namespace {

double binom_d(int a, int b) {
    return binomial(static_cast<std::uint64_t>(a), b).convert_to<double>();
}

/// P(majority of `voters` independent fidelity-f votes is faithful),
/// i.e. fewer than half of the votes flipped.
double majority_fidelity(int voters, double f) {
    double total = 0.0;
    for (int k = 0; k <= (voters - 1) / 2; ++k)
        total += binom_d(voters, k) *
                 pow_int(f, static_cast<std::uint64_t>(voters - k)) *
                 pow_int(1.0 - f, static_cast<std::uint64_t>(k));
    return total;
}

double draw_probability(int voters, double per_vote_product) {
    if (voters % 2 != 0) return 0.0;
    return binom_d(voters, voters / 2) *
           pow_int(per_vote_product, static_cast<std::uint64_t>(voters / 2));
}

void require_acceptable(const PatternClass& cls, const char* who) {
    if (!cls.acceptable)
        throw std::invalid_argument(std::string(who) + ": class not acceptable");
}

}  // namespace

double subblock_parity_fidelity(int m, double e) {
    if (m < 1) throw std::invalid_argument("subblock_parity_fidelity: m < 1");
    if (!(e >= 0.0 && e < 0.5))
        throw std::invalid_argument("subblock_parity_fidelity: e outside [0,0.5)");
    double total = 0.0;
    for (int k = 0; 2 * k <= m; ++k)
        total += binom_d(m, 2 * k) *
                 pow_int(1.0 - e, static_cast<std::uint64_t>(m - 2 * k)) *
                 pow_int(e, static_cast<std::uint64_t>(2 * k));
    return total;
}

XStats x_error_stats(const PatternClass& cls, const CodeParams& code, double e,
                     XDrawModel model) {
    require_acceptable(cls, "x_error_stats");
    const int voters = cls.u[0];  // complete sub-blocks vote
    const double f = subblock_parity_fidelity(code.m, e);
    const double faithful = majority_fidelity(voters, f);
    const double per_pair = model == XDrawModel::parity_fidelity
                                ? f * (1.0 - f)
                                : e * (1.0 - e);
    const double draw = draw_probability(voters, per_pair);
    XStats s;
    s.p_conc = 1.0 - draw;
    s.err = std::max(0.0, (1.0 - draw - faithful) / (1.0 - draw));
    return s;
}

ZStats z_error_stats(const PatternClass& cls, const CodeParams& code, double e) {
    require_acceptable(cls, "z_error_stats");
    ZStats s;
    s.p_conc = 1.0;
    double faith_prod = 1.0;  // prod over rows of (2 F_i - 1)
    for (int k = 0; k < code.m; ++k) {
        if (cls.u[k] == 0) continue;
        const int survivors = code.m - k;
        const double faithful = majority_fidelity(survivors, 1.0 - e);
        const double draw = draw_probability(survivors, e * (1.0 - e));
        const double cond_fidelity = faithful / (1.0 - draw);
        const auto reps = static_cast<std::uint64_t>(cls.u[k]);
        s.p_conc *= pow_int(1.0 - draw, reps);
        faith_prod *= pow_int(2.0 * cond_fidelity - 1.0, reps);
    }
    s.err = (1.0 - faith_prod) / 2.0;
    return s;
}

double conclusive_rate(const PatternClass& cls, const CodeParams& code, double e,
                       XDrawModel model) {
    if (!cls.acceptable) return 0.0;
    return x_error_stats(cls, code, e, model).p_conc *
           z_error_stats(cls, code, e).p_conc;
}

double parity_fidelity_product(const std::vector<double>& fidelities) {
    double prod = 1.0;
    for (double f : fidelities) prod *= 2.0 * f - 1.0;
    return (1.0 + prod) / 2.0;
}

StationTable build_station_table(const CodeParams& code,
                                 const ChannelParams& channel,
                                 XDrawModel model) {
    StationTable table{code, channel, model, {}, 0.0, 0.0};
    const double eta = channel.eta_eff();
    double weighted_err = 0.0;
    for (const PatternClass& cls : enumerate_classes(code)) {
        if (!cls.acceptable) continue;
        const XStats xs = x_error_stats(cls, code, channel.e, model);
        const ZStats zs = z_error_stats(cls, code, channel.e);
        // w = p_{n_LP} * P_{u|n_LP} * q_conc; the binomials cancel, leaving
        // omega * eta^(nm-n_LP) (1-eta)^n_LP * q_conc.
        const double w =
            cls.omega.convert_to<double>() *
            pow_int(eta, static_cast<std::uint64_t>(code.n_p() - cls.n_lp)) *
            pow_int(1.0 - eta, static_cast<std::uint64_t>(cls.n_lp)) *
            (xs.p_conc * zs.p_conc);
        StationStats row;
        row.u = cls.u;
        row.w = w;
        row.err = ErrorPair(zs.err, xs.err);
        table.rows.push_back(std::move(row));
        table.p0 += w;
        weighted_err += w * (zs.err + xs.err) / 2.0;
    }
    table.e0 = table.p0 > 0.0 ? weighted_err / table.p0 : 0.0;
    return table;
}

double single_station_key(const CodeParams& code, const ChannelParams& channel,
                          XDrawModel model) {
    const StationTable table = build_station_table(code, channel, model);
    double key = 0.0;
    for (const StationStats& row : table.rows)
        key += row.w * std::max(1.0 - binary_entropy(row.err.ez) -
                                    binary_entropy(row.err.ex),
                                0.0);
    return key;
}

}  // namespace tecrep
