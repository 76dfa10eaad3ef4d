#pragma once

#include <cstdint>
#include <vector>

#include "tecrep/core_model.hpp"

namespace tecrep {

/// TGW repeaterless upper bound log2((1+eta)/(1-eta)), eta in (0,1).
double tgw(double eta);

/// PLOB repeaterless bound log2(1/(1-eta)), eta in (0,1).  Computed via
/// log1p so it stays accurate down to eta ~ 1e-300.
double plob(double eta);

/// Direct single-photon transmission rate eta/2, eta in (0,1].
double direct_rate(double eta);

/// Total distance spanned by N segments: -N * L_att * ln(eta0).
double total_distance_km(const ChannelParams& channel, std::uint64_t n_stations);

/// Station count whose realized distance is closest to l_tot (at least 1).
std::uint64_t stations_for_distance(const ChannelParams& channel,
                                    double l_tot_km);

/// Success-probability threshold above which a chain of N stations beats
/// the PLOB bound at long distance: eta0 * (2.88 N_p / (1-2h(Q_N)))^(1/N).
double beat_plob_threshold(const CodeParams& code, const ChannelParams& channel,
                           std::uint64_t n_stations, double q_n);

/// Station counts with their realized total distances for one eta0.
struct DistanceGrid {
    double eta0;
    double l_att_km;
    std::vector<std::uint64_t> n_values;

    std::vector<double> l_tot_km() const;
};

}  // namespace tecrep
