#pragma once

#include <string>
#include <vector>

#include "tecrep/core_model.hpp"
#include "tecrep/patterns.hpp"

namespace tecrep {

/// How the X-majority draw probability is formed for an even number of
/// voting sub-blocks.  `parity_fidelity` builds it from the sub-block
/// parity fidelity f_X0 (this is what the bit-level protocol produces);
/// `qubit_rate` builds it from the raw qubit error rate e instead.  Both
/// are kept selectable; `verify` adjudicates them against the simulator.
enum class XDrawModel {
    parity_fidelity,
    qubit_rate,
};

const char* to_string(XDrawModel model);
XDrawModel x_draw_from_string(const std::string& name);

struct XStats {
    double p_conc;  // 1 - draw probability of the X majority
    double err;     // logical X error after discarding draws
};

struct ZStats {
    double p_conc;  // product of per-row no-draw probabilities
    double err;     // logical Z error after discarding draws
};

/// Probability that the X-parity of a complete m-qubit sub-block is
/// observed faithfully (an even number of outcome flips).
double subblock_parity_fidelity(int m, double e);

/// X-majority statistics of an acceptable class (u[0] voters).
XStats x_error_stats(const PatternClass& cls, const CodeParams& code, double e,
                     XDrawModel model = XDrawModel::parity_fidelity);

/// Z-side statistics: per-row majorities followed by the n-row parity.
ZStats z_error_stats(const PatternClass& cls, const CodeParams& code, double e);

/// Probability that both logical outcomes are assignable (no draws);
/// zero for unacceptable classes.
double conclusive_rate(const PatternClass& cls, const CodeParams& code, double e,
                       XDrawModel model = XDrawModel::parity_fidelity);

/// Even-error probability of independent voters with fidelities f:
/// (1 + prod(2 f_i - 1))/2.
double parity_fidelity_product(const std::vector<double>& fidelities);

/// One informative syndrome: joint probability w (loss count x class x
/// conclusive) and its logical error pair.
struct StationStats {
    std::vector<int> u;
    double w = 0.0;
    ErrorPair err;
};

struct StationTable {
    CodeParams code;
    ChannelParams channel;
    XDrawModel x_draw;
    std::vector<StationStats> rows;  // acceptable classes, lex order of u
    double p0 = 0.0;                 // sum of w
    double e0 = 0.0;                 // w-weighted mean of (ez+ex)/2
};

StationTable build_station_table(const CodeParams& code,
                                 const ChannelParams& channel,
                                 XDrawModel model = XDrawModel::parity_fidelity);

/// Key rate of a single station: sum_u w_u max[1 - h(E_Z) - h(E_X), 0].
double single_station_key(const CodeParams& code, const ChannelParams& channel,
                          XDrawModel model = XDrawModel::parity_fidelity);

}  // namespace tecrep
