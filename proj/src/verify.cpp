#include "entwit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "entwit/gaussian.hpp"
#include "entwit/parallel.hpp"
#include "entwit/qubit.hpp"

namespace entwit {

namespace {

constexpr double kTsirelson = 2.0 * std::numbers::sqrt2;

// Disjoint stream ranges per suite.
std::uint64_t stream_id(std::uint64_t suite, std::uint64_t index) { return (suite << 40) | index; }

struct CaseOutcome {
    double metric = 0.0;
    bool violated = false;
    Json detail;
};

// Folds per-case outcomes in index order; `worst` is the maximum metric.
SuiteResult fold(std::string name, const std::vector<CaseOutcome>& cases) {
    SuiteResult r;
    r.name = std::move(name);
    r.cases = static_cast<std::int64_t>(cases.size());
    r.worst = cases.empty() ? 0.0 : -INFINITY;
    for (const auto& c : cases) {
        r.worst = std::max(r.worst, c.metric);
        if (c.violated) {
            ++r.violations;
            if (r.failing_case.is_null()) r.failing_case = c.detail;
        }
    }
    r.passed = r.violations == 0;
    return r;
}

}  // namespace

ChshSettings random_settings(CounterRng& rng) {
    const double pi = std::numbers::pi;
    return {MeasurementSetting(pi * rng.uniform()), MeasurementSetting(pi * rng.uniform()),
            MeasurementSetting(pi * rng.uniform()), MeasurementSetting(pi * rng.uniform())};
}

SuiteResult verify_separable_chsh_bound(std::uint64_t seed, const VerifySizes& sizes) {
    std::vector<CaseOutcome> out(static_cast<std::size_t>(sizes.ensembles));
    parallel_for(out.size(), [&](std::size_t e) {
        const std::uint64_t stream = stream_id(1, e);
        const int n_terms = 1 + static_cast<int>(e % 4);
        const SeparableEnsemble ens = sample_separable(seed, n_terms, stream);
        const TwoQubitState state = assemble(ens);
        CounterRng rng = CounterRng(seed, stream).substream(1);
        CaseOutcome worst{-1.0, false, nullptr};
        for (int q = 0; q < sizes.quads_per_ensemble; ++q) {
            const ChshSettings s = random_settings(rng);
            const ChshResult r = chsh_evaluate(state, s);
            if (r.value > worst.metric) {
                worst.metric = r.value;
                if (r.value > 2.0 + kTsirelsonTolerance) {
                    worst.violated = true;
                    worst.detail = Json{{"ensemble", e}, {"rho", state.rho()}, {"result", r}};
                }
            }
        }
        out[e] = std::move(worst);
    });
    return fold("separable-chsh-bound", out);
}

SuiteResult verify_chsh_square_identity(std::uint64_t seed, const VerifySizes& sizes) {
    std::vector<CaseOutcome> out(static_cast<std::size_t>(sizes.identity_quads));
    parallel_for(out.size(), [&](std::size_t i) {
        CounterRng rng(seed, stream_id(2, i));
        const ChshSettings s = random_settings(rng);
        const Operator a1 = angle_observable(s.a1), a2 = angle_observable(s.a2);
        const Operator b1 = angle_observable(s.b1), b2 = angle_observable(s.b2);
        const Operator b = chsh_operator(a1, a2, b1, b2);
        const Operator rhs = Operator::identity(4) * Complex(4.0) +
                             tensor(commutator(a1, a2), commutator(b1, b2));
        const double err = max_abs_diff(b * b, rhs);
        CaseOutcome c{err, err > 1e-12, nullptr};
        if (c.violated) c.detail = Json{{"settings_rad", s.radians()}, {"max_abs_error", err}};
        out[i] = std::move(c);
    });
    return fold("chsh-square-identity", out);
}

SuiteResult verify_tsirelson_norm(std::uint64_t seed, const VerifySizes& sizes) {
    std::vector<CaseOutcome> out(static_cast<std::size_t>(sizes.identity_quads) + 1);
    parallel_for(out.size(), [&](std::size_t i) {
        if (i == 0) {
            // the green settings must reach the bound
            const double norm = operator_norm(chsh_operator(ChshSettings::green()));
            const double dev = std::abs(norm - kTsirelson);
            CaseOutcome c{norm, dev > kTsirelsonTolerance, nullptr};
            if (c.violated) c.detail = Json{{"case", "green settings"}, {"norm", norm}};
            out[i] = std::move(c);
            return;
        }
        CounterRng rng(seed, stream_id(3, i));
        const ChshSettings s = random_settings(rng);
        const double norm = operator_norm(chsh_operator(s));
        CaseOutcome c{norm, norm > kTsirelson + kTsirelsonTolerance, nullptr};
        if (c.violated) c.detail = Json{{"settings_rad", s.radians()}, {"norm", norm}};
        out[i] = std::move(c);
    });
    return fold("tsirelson-norm", out);
}

SuiteResult verify_separable_epr_reid_bound(std::uint64_t seed, const VerifySizes& sizes) {
    const double hbar = 1.0;
    std::vector<CaseOutcome> out(static_cast<std::size_t>(sizes.mixtures));
    parallel_for(out.size(), [&](std::size_t i) {
        CounterRng rng(seed, stream_id(4, i));
        const ProductMixture mix = mix_of_products(random_admissible_components(rng, hbar), hbar);
        const JointWidths exact = mix.exact_widths();
        const MixtureEstimate est = mix.sample(sizes.samples, rng.substream(1));
        const double bound = hbar / 2.0;
        // Metric: how far the estimate falls below the bound, in standard errors.
        const double shortfall = (bound - est.product) / est.std_error;
        const bool exact_bad = exact.product() < bound * (1.0 - 1e-12);
        CaseOutcome c{shortfall, shortfall > 5.0 || exact_bad, nullptr};
        if (c.violated) {
            c.detail = Json{{"mixture", i},
                            {"estimated_product", est.product},
                            {"std_error", est.std_error},
                            {"exact_product", exact.product()}};
        }
        out[i] = std::move(c);
    });
    return fold("separable-epr-reid-bound", out);
}

SuiteResult verify_ppt_implication(std::uint64_t seed, const VerifySizes& sizes) {
    std::vector<CaseOutcome> out(static_cast<std::size_t>(sizes.states));
    parallel_for(out.size(), [&](std::size_t i) {
        CounterRng rng(seed, stream_id(5, i));
        // Mixed states rarely violate CHSH, so every other case is pure.
        const TwoQubitState state = (i % 2) ? haar_pure_state(rng) : hilbert_schmidt_state(rng);
        const ChshResult best = chsh_grid_search(state, sizes.grid_points);
        const bool violates = best.value > 2.0 + 1e-6;
        const bool bad = violates && ppt_oracle(state) != Separability::Entangled;
        CaseOutcome c{best.value, bad, nullptr};
        if (bad) c.detail = Json{{"state", i}, {"rho", state.rho()}, {"result", best}};
        out[i] = std::move(c);
    });
    return fold("ppt-one-way-implication", out);
}

SuiteResult verify_state(const Operator& rho) {
    SuiteResult r;
    r.name = "state-validation";
    r.cases = 1;
    std::string why;
    const bool ok = rho.dim() == 4 && is_density_matrix(rho, &why);
    if (rho.dim() != 4) why = "dimension is not 4";
    r.worst = std::abs(rho.trace().real() - 1.0);
    if (!ok) {
        r.passed = false;
        r.violations = 1;
        r.failing_case = Json{{"reason", why}, {"rho", rho}};
    }
    return r;
}

bool VerifyReport::all_passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

VerifyReport run_verification(std::uint64_t seed, const VerifySizes& sizes,
                              const std::optional<Operator>& extra_state) {
    VerifyReport report;
    report.seed = seed;
    report.sizes = sizes;
    report.suites.push_back(verify_separable_chsh_bound(seed, sizes));
    report.suites.push_back(verify_chsh_square_identity(seed, sizes));
    report.suites.push_back(verify_tsirelson_norm(seed, sizes));
    report.suites.push_back(verify_separable_epr_reid_bound(seed, sizes));
    report.suites.push_back(verify_ppt_implication(seed, sizes));
    if (extra_state) report.suites.push_back(verify_state(*extra_state));
    return report;
}

void to_json(Json& j, const SuiteResult& s) {
    j = Json{{"name", s.name},
             {"passed", s.passed},
             {"cases", s.cases},
             {"violations", s.violations},
             {"worst", s.worst},
             {"failing_case", s.failing_case}};
}

void to_json(Json& j, const VerifyReport& r) {
    j = Json{{"seed", r.seed},
             {"sizes",
              {{"ensembles", r.sizes.ensembles},
               {"quads_per_ensemble", r.sizes.quads_per_ensemble},
               {"identity_quads", r.sizes.identity_quads},
               {"mixtures", r.sizes.mixtures},
               {"samples", r.sizes.samples},
               {"states", r.sizes.states},
               {"grid_points", r.sizes.grid_points}}},
             {"suites", r.suites},
             {"all_passed", r.all_passed()}};
}

}  // namespace entwit
