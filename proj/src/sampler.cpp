#include "entwit/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace entwit {

std::array<std::array<double, 2>, 2> outcome_probabilities(const TwoQubitState& state,
                                                           MeasurementSetting theta_a,
                                                           MeasurementSetting theta_b) {
    const Operator id = Operator::identity(2);
    const Operator la = angle_observable(theta_a);
    const Operator lb = angle_observable(theta_b);
    // spectral projectors (1 +- l)/2
    const std::array<Operator, 2> pa{(id + la) * Complex(0.5), (id - la) * Complex(0.5)};
    const std::array<Operator, 2> pb{(id + lb) * Complex(0.5), (id - lb) * Complex(0.5)};
    std::array<std::array<double, 2>, 2> p{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) p[i][j] = std::max(expectation(state, tensor(pa[i], pb[j])), 0.0);
    return p;
}

CountTable sample_discrete(const TwoQubitState& state, MeasurementSetting theta_a,
                           MeasurementSetting theta_b, std::int64_t n, std::uint64_t seed,
                           std::uint64_t stream) {
    if (n < 1) throw ValidationError("sample_discrete: n must be >= 1");
    const auto p = outcome_probabilities(state, theta_a, theta_b);
    const std::array<double, 4> cdf{p[0][0], p[0][0] + p[0][1], p[0][0] + p[0][1] + p[1][0],
                                    p[0][0] + p[0][1] + p[1][0] + p[1][1]};
    CounterRng rng(seed, stream);
    std::array<std::int64_t, 4> cells{};
    for (std::int64_t k = 0; k < n; ++k) {
        const double u = rng.uniform() * cdf[3];
        int c = 0;
        while (c < 3 && !(u < cdf[c])) ++c;
        ++cells[c];
    }
    CountTable t;
    t.counts = {{{cells[0], cells[1]}, {cells[2], cells[3]}}};
    t.n_total = n;
    t.theta_a = theta_a;
    t.theta_b = theta_b;
    return t;
}

Estimate estimate_correlation(const CountTable& table) {
    if (table.n_total < 1) throw ValidationError("estimate_correlation: empty table");
    const auto& c = table.counts;
    const double n = static_cast<double>(table.n_total);
    Estimate e;
    e.n = table.n_total;
    e.mean = static_cast<double>(c[0][0] + c[1][1] - c[0][1] - c[1][0]) / n;
    e.std_error = std::sqrt(std::max(1.0 - e.mean * e.mean, 0.0) / n);
    return e;
}

ChshResult chsh_estimate(const TwoQubitState& state, const ChshSettings& settings,
                         std::int64_t n_per_setting, std::uint64_t seed) {
    if (n_per_setting < 2) throw ValidationError("chsh_estimate: n_per_setting must be >= 2");
    const std::array<std::pair<MeasurementSetting, MeasurementSetting>, 4> pairs{{
        {settings.a1, settings.b1},
        {settings.a1, settings.b2},
        {settings.a2, settings.b1},
        {settings.a2, settings.b2},
    }};
    std::array<double, 4> corr{};
    double var = 0.0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const Estimate e = estimate_correlation(
            sample_discrete(state, pairs[k].first, pairs[k].second, n_per_setting, seed, k));
        corr[k] = e.mean;
        var += e.std_error * e.std_error;
    }
    const double se = std::sqrt(var);
    ChshResult r = make_chsh_result(corr, settings, 3.0 * se, 5.0 * se);
    r.std_error = se;
    return r;
}

GaussianSample sample_gaussian(const GaussianJointState& state, QuadratureBasis basis,
                               std::int64_t n, std::uint64_t seed, std::uint64_t stream) {
    if (n < 2) throw ValidationError("sample_gaussian: n must be >= 2");
    const bool pos = basis == QuadratureBasis::Position;
    const double sd_plus = pos ? state.dxp() : state.dpp();
    const double sd_minus = pos ? state.dxm() : state.dpm();
    CounterRng rng(seed, stream);
    GaussianSample out;
    out.samples.reserve(static_cast<std::size_t>(n));
    double mean = 0.0;
    std::vector<double> joint(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k) {
        const double up = sd_plus * rng.normal();
        const double um = sd_minus * rng.normal();
        const double ua = (up + um) / std::numbers::sqrt2;
        const double ub = (up - um) / std::numbers::sqrt2;
        out.samples.emplace_back(ua, ub);
        joint[k] = pos ? (ua - ub) / std::numbers::sqrt2 : (ua + ub) / std::numbers::sqrt2;
        mean += joint[k];
    }
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : joint) ss += (v - mean) * (v - mean);
    const double s = std::sqrt(ss / static_cast<double>(n - 1));
    out.width = {s, s / std::sqrt(2.0 * static_cast<double>(n - 1)), n};
    return out;
}

EprReidResult epr_reid_estimate(const GaussianJointState& state, std::int64_t n, std::uint64_t seed) {
    const Estimate x = sample_gaussian(state, QuadratureBasis::Position, n, seed, 0).width;
    const Estimate p = sample_gaussian(state, QuadratureBasis::Momentum, n, seed, 1).width;
    const double product = x.mean * p.mean;
    const double rel = std::sqrt(std::pow(x.std_error / x.mean, 2) + std::pow(p.std_error / p.mean, 2));
    const double bound = state.hbar() / 2.0;
    return epr_reid_from_widths(x.mean, p.mean, state.hbar(), 3.0 * product * rel / bound);
}

}  // namespace entwit
