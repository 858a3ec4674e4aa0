#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "entwit/chsh.hpp"
#include "entwit/gaussian.hpp"
#include "entwit/qubit.hpp"
#include "entwit/rng.hpp"

namespace entwit {

// counts[i][j]: outcome i on a, j on b, index 0 is the +1 eigenvalue.
// Cells in order ++, +-, -+, --.
struct CountTable {
    std::array<std::array<std::int64_t, 2>, 2> counts{};
    std::int64_t n_total = 0;
    MeasurementSetting theta_a;
    MeasurementSetting theta_b;
};

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t n = 0;
};

// Exact joint outcome probabilities for l_{theta_a} (x) l_{theta_b}, same cell layout as CountTable.
std::array<std::array<double, 2>, 2> outcome_probabilities(const TwoQubitState& state,
                                                           MeasurementSetting theta_a,
                                                           MeasurementSetting theta_b);

// n i.i.d. joint outcomes drawn by inverse CDF from stream (seed, stream).
CountTable sample_discrete(const TwoQubitState& state, MeasurementSetting theta_a,
                           MeasurementSetting theta_b, std::int64_t n, std::uint64_t seed,
                           std::uint64_t stream = 0);

// (N++ + N-- - N+- - N-+)/N with plug-in error sqrt((1 - mean^2)/N).
Estimate estimate_correlation(const CountTable& table);

// Four independent runs, one stream per correlation (stream k for a1b1, a1b2, a2b1, a2b2).
// The verdict margin is 3 combined standard errors; the Tsirelson error check allows
// 5 combined standard errors of sampling noise above 2 sqrt(2).
ChshResult chsh_estimate(const TwoQubitState& state, const ChshSettings& settings,
                         std::int64_t n_per_setting, std::uint64_t seed);

enum class QuadratureBasis { Position, Momentum };

struct GaussianSample {
    std::vector<std::pair<double, double>> samples;  // (u_a, u_b)
    // Sample standard deviation of (u_a - u_b)/sqrt(2) for position or (u_a + u_b)/sqrt(2)
    // for momentum; std_error assumes Gaussian data, s / sqrt(2 (n - 1)).
    Estimate width;
};

GaussianSample sample_gaussian(const GaussianJointState& state, QuadratureBasis basis,
                               std::int64_t n, std::uint64_t seed, std::uint64_t stream = 0);

// EPR-Reid from one position run (stream 0) and one momentum run (stream 1). The margin
// is 3 standard errors of the product, expressed relative to hbar/2.
EprReidResult epr_reid_estimate(const GaussianJointState& state, std::int64_t n, std::uint64_t seed);

}  // namespace entwit
