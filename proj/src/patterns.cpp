#include "tecrep/patterns.hpp"

#include <numeric>
#include <stdexcept>

namespace tecrep {

namespace {

void finalize(PatternClass& cls, const CodeParams& code) {
    cls.n_lp = code.m * cls.lost_rows;
    for (int k = 0; k < code.m; ++k) cls.n_lp += k * cls.u[k];
    cls.acceptable = cls.lost_rows == 0 && cls.u[0] >= 1;
    cls.omega = multiplicity(cls, code);
}

}  // namespace

std::vector<PatternClass> enumerate_classes(const CodeParams& code) {
    std::vector<PatternClass> out;
    std::vector<int> u(static_cast<std::size_t>(code.m), 0);
    // depth-first over all u with sum <= n; the remainder is lost_rows
    auto rec = [&](auto&& self, int k, int left) -> void {
        if (k == code.m) {
            PatternClass cls;
            cls.u = u;
            cls.lost_rows = left;
            finalize(cls, code);
            out.push_back(std::move(cls));
            return;
        }
        for (int v = 0; v <= left; ++v) {
            u[static_cast<std::size_t>(k)] = v;
            self(self, k + 1, left - v);
        }
        u[static_cast<std::size_t>(k)] = 0;
    };
    rec(rec, 0, code.n);
    return out;
}

BigInt multiplicity(const PatternClass& cls, const CodeParams& code) {
    if (static_cast<int>(cls.u.size()) != code.m)
        throw std::invalid_argument("multiplicity: class vector length != m");
    int total = cls.lost_rows;
    for (int v : cls.u) {
        if (v < 0) throw std::invalid_argument("multiplicity: negative count");
        total += v;
    }
    if (cls.lost_rows < 0 || total != code.n)
        throw std::invalid_argument("multiplicity: counts do not sum to n");

    // multinomial(n; u_0..u_{m-1}, lost_rows)
    BigInt omega = 1;
    int left = code.n;
    for (int k = 0; k < code.m; ++k) {
        omega *= binomial(static_cast<std::uint64_t>(left), cls.u[k]);
        left -= cls.u[k];
    }
    // within-row placements: C(m,s)^{u_s}; rows with all photons lost
    // admit a single placement.
    for (int s = 1; s < code.m; ++s) {
        const BigInt ways = binomial(static_cast<std::uint64_t>(code.m), s);
        for (int r = 0; r < cls.u[s]; ++r) omega *= ways;
    }
    return omega;
}

double loss_count_prob(const CodeParams& code, const ChannelParams& channel,
                       int n_lp) {
    const int np = code.n_p();
    if (n_lp < 0 || n_lp > np)
        throw std::invalid_argument("loss_count_prob: n_lp outside [0, n*m]");
    const double eta = channel.eta_eff();
    const double c = binomial(static_cast<std::uint64_t>(np), n_lp)
                         .convert_to<double>();
    return c * pow_int(eta, static_cast<std::uint64_t>(np - n_lp)) *
           pow_int(1.0 - eta, static_cast<std::uint64_t>(n_lp));
}

double class_prob_given_loss(const PatternClass& cls, const CodeParams& code,
                             int n_lp) {
    if (cls.n_lp != n_lp)
        throw std::invalid_argument("class_prob_given_loss: loss count mismatch");
    const double total =
        binomial(static_cast<std::uint64_t>(code.n_p()), n_lp).convert_to<double>();
    return cls.omega.convert_to<double>() / total;
}

PatternClass class_of(const RawPattern& pattern) {
    const CodeParams code(pattern.n, pattern.m);
    if (pattern.lost.size() != static_cast<std::size_t>(code.n_p()))
        throw std::invalid_argument("class_of: pattern size != n*m");
    PatternClass cls;
    cls.u.assign(static_cast<std::size_t>(pattern.m), 0);
    for (int i = 0; i < pattern.n; ++i) {
        int survivors = 0;
        for (int j = 0; j < pattern.m; ++j)
            if (!pattern.at(i, j)) ++survivors;
        if (survivors == 0)
            ++cls.lost_rows;
        else
            ++cls.u[static_cast<std::size_t>(pattern.m - survivors)];
    }
    finalize(cls, code);
    return cls;
}

bool raw_acceptable(const RawPattern& pattern) {
    bool full_row = false;
    for (int i = 0; i < pattern.n; ++i) {
        int survivors = 0;
        for (int j = 0; j < pattern.m; ++j)
            if (!pattern.at(i, j)) ++survivors;
        if (survivors == 0) return false;
        if (survivors == pattern.m) full_row = true;
    }
    return full_row;
}

}  // namespace tecrep
