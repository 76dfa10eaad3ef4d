#pragma once

#include <vector>

#include "tecrep/core_model.hpp"

namespace tecrep {

/// Equivalence class of photon-loss configurations for an (n,m) block.
/// u[k] counts sub-blocks that kept (m-k) photons, k = 0..m-1; sub-blocks
/// that lost everything are carried in `lost_rows` so that the classes
/// partition all 2^(nm) configurations.
struct PatternClass {
    std::vector<int> u;
    int lost_rows = 0;
    int n_lp = 0;
    BigInt omega = 1;
    bool acceptable = false;
};

/// One concrete loss configuration (true = photon lost at that slot).
struct RawPattern {
    int n = 0;
    int m = 0;
    std::vector<bool> lost;  // row-major, n*m entries

    bool at(int i, int j) const { return lost[static_cast<std::size_t>(i) * m + j]; }
};

/// All pattern classes of the code, in lexicographic order of u.
std::vector<PatternClass> enumerate_classes(const CodeParams& code);

/// Number of loss configurations in the class: the sub-block arrangement
/// count times the within-row placement counts.
BigInt multiplicity(const PatternClass& cls, const CodeParams& code);

/// Probability that exactly n_lp of the n*m photons are lost, at the
/// effective transmission eta_c * eta0.
double loss_count_prob(const CodeParams& code, const ChannelParams& channel,
                       int n_lp);

/// Probability of the class among all configurations with the same loss
/// count: omega / C(nm, n_lp).
double class_prob_given_loss(const PatternClass& cls, const CodeParams& code,
                             int n_lp);

/// Classify a concrete configuration.
PatternClass class_of(const RawPattern& pattern);

/// Direct acceptability: every row keeps a photon and some row is complete.
bool raw_acceptable(const RawPattern& pattern);

}  // namespace tecrep
