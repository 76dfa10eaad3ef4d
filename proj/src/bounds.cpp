#include "tecrep/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tecrep {

namespace {
const double kLn2 = std::log(2.0);

void require_open_unit(double eta, const char* who) {
    if (!(eta > 0.0 && eta < 1.0))
        throw std::domain_error(std::string(who) + ": eta must lie in (0,1)");
}
}  // namespace

double tgw(double eta) {
    require_open_unit(eta, "tgw");
    return (std::log1p(eta) - std::log1p(-eta)) / kLn2;
}

double plob(double eta) {
    require_open_unit(eta, "plob");
    return -std::log1p(-eta) / kLn2;
}

double direct_rate(double eta) {
    if (!(eta > 0.0 && eta <= 1.0))
        throw std::domain_error("direct_rate: eta must lie in (0,1]");
    return eta / 2.0;
}

double total_distance_km(const ChannelParams& channel, std::uint64_t n_stations) {
    return static_cast<double>(n_stations) * channel.unit_distance_km();
}

std::uint64_t stations_for_distance(const ChannelParams& channel,
                                    double l_tot_km) {
    if (!(l_tot_km > 0.0))
        throw std::domain_error("stations_for_distance: distance must be positive");
    const auto n = static_cast<std::int64_t>(
        std::llround(l_tot_km / channel.unit_distance_km()));
    return n < 1 ? 1 : static_cast<std::uint64_t>(n);
}

double beat_plob_threshold(const CodeParams& code, const ChannelParams& channel,
                           std::uint64_t n_stations, double q_n) {
    if (n_stations < 1)
        throw std::domain_error("beat_plob_threshold: need n_stations >= 1");
    const double bracket = 1.0 - 2.0 * binary_entropy(q_n);
    if (!(bracket > 0.0))
        throw std::domain_error("beat_plob_threshold: 1 - 2 h(Q_N) must be positive");
    const double base = 2.88 * code.n_p() / bracket;
    return channel.eta0 *
           std::pow(base, 1.0 / static_cast<double>(n_stations));
}

std::vector<double> DistanceGrid::l_tot_km() const {
    std::vector<double> out;
    out.reserve(n_values.size());
    const double unit = -l_att_km * std::log(eta0);
    for (std::uint64_t n : n_values)
        out.push_back(static_cast<double>(n) * unit);
    return out;
}

}  // namespace tecrep
