#include "entwit/chsh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace entwit {

namespace {

constexpr double kTsirelson = 2.0 * std::numbers::sqrt2;

double clamp_probability(double p) { return (p < 0.0 && p > -1e-12) ? 0.0 : p; }

}  // namespace

MeasurementSetting::MeasurementSetting(double theta) {
    if (!std::isfinite(theta)) throw ValidationError("measurement angle must be finite");
    double t = std::fmod(theta, std::numbers::pi);
    if (t < 0.0) t += std::numbers::pi;
    if (t >= std::numbers::pi) t = 0.0;
    theta_ = t;
}

ChshSettings ChshSettings::green() {
    using std::numbers::pi;
    return {MeasurementSetting(0.0), MeasurementSetting(pi / 4), MeasurementSetting(pi / 8),
            MeasurementSetting(3 * pi / 8)};
}

ChshSettings ChshSettings::yellow() {
    using std::numbers::pi;
    return {MeasurementSetting(0.0), MeasurementSetting(pi / 4), MeasurementSetting(0.0),
            MeasurementSetting(pi / 2)};
}

Operator angle_observable(MeasurementSetting theta) {
    const double t = 2.0 * theta.theta();
    return pauli(Axis::Z) * Complex(std::cos(t)) + pauli(Axis::X) * Complex(std::sin(t));
}

CorrelationMatrix correlation_matrix(const TwoQubitState& state, const Operator& ua,
                                     const Operator& ub, std::string basis_a,
                                     std::string basis_b) {
    if (ua.dim() != 2 || ub.dim() != 2) {
        throw ValidationError("correlation_matrix: basis changes must have dimension 2");
    }
    if (!is_unitary(ua) || !is_unitary(ub)) {
        throw ValidationError("correlation_matrix: basis change is not unitary");
    }
    const Operator u = tensor(ua, ub);
    const Operator rotated = u.adjoint() * state.rho() * u;
    CorrelationMatrix out;
    out.basis_a = std::move(basis_a);
    out.basis_b = std::move(basis_b);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.p[i][j] = clamp_probability(rotated(2 * i + j, 2 * i + j).real());
    return out;
}

Operator chsh_operator(const Operator& a1, const Operator& a2, const Operator& b1,
                       const Operator& b2) {
    return tensor(a1, b1) - tensor(a1, b2) + tensor(a2, b1) + tensor(a2, b2);
}

Operator chsh_operator(const ChshSettings& s) {
    return chsh_operator(angle_observable(s.a1), angle_observable(s.a2), angle_observable(s.b1),
                         angle_observable(s.b2));
}

ChshResult make_chsh_result(const std::array<double, 4>& correlations, const ChshSettings& settings,
                            double verdict_margin, double tsirelson_slack) {
    if (!(verdict_margin >= 0.0)) throw ValidationError("verdict margin must be >= 0");
    if (!(tsirelson_slack >= 0.0)) throw ValidationError("Tsirelson slack must be >= 0");
    ChshResult r;
    r.correlations = correlations;
    r.settings = settings;
    r.margin = verdict_margin;
    r.value = std::abs(correlations[0] - correlations[1] + correlations[2] + correlations[3]);
    if (r.value > kTsirelson + kTsirelsonTolerance + tsirelson_slack) {
        r.verdict = Verdict::TsirelsonViolationError;
    } else if (r.value > 2.0 + verdict_margin) {
        r.verdict = Verdict::EntanglementVerified;
    } else {
        r.verdict = Verdict::Inconclusive;
    }
    return r;
}

ChshResult chsh_evaluate(const TwoQubitState& state, const ChshSettings& settings,
                         double verdict_margin) {
    const Operator a1 = angle_observable(settings.a1);
    const Operator a2 = angle_observable(settings.a2);
    const Operator b1 = angle_observable(settings.b1);
    const Operator b2 = angle_observable(settings.b2);
    const std::array<double, 4> corr{
        expectation(state, tensor(a1, b1)), expectation(state, tensor(a1, b2)),
        expectation(state, tensor(a2, b1)), expectation(state, tensor(a2, b2))};
    return make_chsh_result(corr, settings, verdict_margin);
}

std::vector<std::pair<double, double>> chsh_scan(const TwoQubitState& state,
                                                 MeasurementSetting theta_a,
                                                 const std::vector<double>& grid) {
    if (grid.empty()) throw ValidationError("chsh_scan: grid is empty");
    const Operator a = angle_observable(theta_a);
    std::vector<std::pair<double, double>> out;
    out.reserve(grid.size());
    for (double tb : grid) {
        out.emplace_back(tb, expectation(state, tensor(a, angle_observable(MeasurementSetting(tb)))));
    }
    return out;
}

ChshResult chsh_grid_search(const TwoQubitState& state, int points_per_axis) {
    if (points_per_axis < 2) throw ValidationError("chsh_grid_search: need at least 2 points per axis");
    // Within the z-x plane <l_alpha (x) l_beta> = c(alpha)^T T c(beta) with
    // c(t) = (cos 2t, sin 2t) and T the z/x correlation tensor.
    const Operator z = pauli(Axis::Z);
    const Operator x = pauli(Axis::X);
    const double tzz = expectation(state, tensor(z, z));
    const double tzx = expectation(state, tensor(z, x));
    const double txz = expectation(state, tensor(x, z));
    const double txx = expectation(state, tensor(x, x));

    const int n = points_per_axis;
    std::vector<double> angle(n), c(n), s(n);
    for (int k = 0; k < n; ++k) {
        angle[k] = std::numbers::pi * k / n;
        c[k] = std::cos(2 * angle[k]);
        s[k] = std::sin(2 * angle[k]);
    }
    // row[a][b] = correlation for a-angle index a and b-angle index b
    std::vector<double> corr(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const double ta = c[a] * tzz + s[a] * txz;
            const double tb = c[a] * tzx + s[a] * txx;
            corr[a * n + b] = ta * c[b] + tb * s[b];
        }

    double best = -1.0;
    std::array<int, 4> arg{0, 0, 0, 0};
    for (int a1 = 0; a1 < n; ++a1)
        for (int a2 = 0; a2 < n; ++a2) {
            const double* r1 = &corr[a1 * n];
            const double* r2 = &corr[a2 * n];
            for (int b1 = 0; b1 < n; ++b1)
                for (int b2 = 0; b2 < n; ++b2) {
                    const double v = std::abs(r1[b1] - r1[b2] + r2[b1] + r2[b2]);
                    if (v > best) {
                        best = v;
                        arg = {a1, a2, b1, b2};
                    }
                }
        }
    const ChshSettings settings{MeasurementSetting(angle[arg[0]]), MeasurementSetting(angle[arg[1]]),
                                MeasurementSetting(angle[arg[2]]), MeasurementSetting(angle[arg[3]])};
    return chsh_evaluate(state, settings);
}

}  // namespace entwit
