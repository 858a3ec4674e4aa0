#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entwit/operator.hpp"
#include "entwit/qubit.hpp"
#include "entwit/verdict.hpp"

namespace entwit {

// Half-wave-plate angle in radians, canonicalized to [0, pi).
class MeasurementSetting {
public:
    MeasurementSetting() = default;
    explicit MeasurementSetting(double theta);

    double theta() const noexcept { return theta_; }

    friend bool operator==(const MeasurementSetting&, const MeasurementSetting&) = default;

private:
    double theta_ = 0.0;
};

// Order: a1, a2, b1, b2.
struct ChshSettings {
    MeasurementSetting a1, a2, b1, b2;

    std::array<double, 4> radians() const { return {a1.theta(), a2.theta(), b1.theta(), b2.theta()}; }

    // (0, pi/4, pi/8, 3pi/8): optimal for |Phi+>.
    static ChshSettings green();
    // (0, pi/4, 0, pi/2): saturates the classical bound for rho_cl.
    static ChshSettings yellow();
};

// sigma_z cos(2 theta) + sigma_x sin(2 theta)
Operator angle_observable(MeasurementSetting theta);

// p[i][j]: probability of outcome i on a and j on b, where outcome k is the k-th basis
// vector after the local basis change.
struct CorrelationMatrix {
    std::array<std::array<double, 2>, 2> p{};
    std::string basis_a = "original";
    std::string basis_b = "original";

    double sum() const { return p[0][0] + p[0][1] + p[1][0] + p[1][1]; }
};

CorrelationMatrix correlation_matrix(const TwoQubitState& state, const Operator& ua,
                                     const Operator& ub, std::string basis_a = "custom",
                                     std::string basis_b = "custom");

// B = a1 b1 - a1 b2 + a2 b1 + a2 b2
Operator chsh_operator(const Operator& a1, const Operator& a2, const Operator& b1,
                       const Operator& b2);
Operator chsh_operator(const ChshSettings& s);

struct ChshResult {
    // a1b1, a1b2, a2b1, a2b2
    std::array<double, 4> correlations{};
    double value = 0.0;
    ChshSettings settings;
    Verdict verdict = Verdict::Inconclusive;
    // Set for finite-statistics estimates only.
    std::optional<double> std_error;
    double margin = 0.0;
};

inline constexpr double kTsirelsonTolerance = 1e-9;

// Combines four correlations with the CHSH signs and applies the verdict rule. The
// Tsirelson error fires above 2 sqrt(2) + kTsirelsonTolerance + tsirelson_slack; estimates
// pass their statistical slack here.
ChshResult make_chsh_result(const std::array<double, 4>& correlations, const ChshSettings& settings,
                            double verdict_margin, double tsirelson_slack = 0.0);

ChshResult chsh_evaluate(const TwoQubitState& state, const ChshSettings& settings,
                         double verdict_margin = 0.0);

// <l_{theta_a} (x) l_{theta_b}> for each theta_b in grid.
std::vector<std::pair<double, double>> chsh_scan(const TwoQubitState& state,
                                                 MeasurementSetting theta_a,
                                                 const std::vector<double>& grid);

// Exhaustive search over settings on a uniform grid of points_per_axis angles in [0, pi)
// per setting; returns the exact evaluation at the best grid point.
ChshResult chsh_grid_search(const TwoQubitState& state, int points_per_axis);

}  // namespace entwit
