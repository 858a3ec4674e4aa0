#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entwit/chsh.hpp"
#include "entwit/json_io.hpp"
#include "entwit/operator.hpp"
#include "entwit/rng.hpp"

namespace entwit {

// Uniform angles in [0, pi) for all four settings.
ChshSettings random_settings(CounterRng& rng);

struct VerifySizes {
    int ensembles = 200;           // random separable ensembles
    int quads_per_ensemble = 100;  // setting quadruples per ensemble
    int identity_quads = 10000;    // quadruples for the B^2 identity and norm bound
    int mixtures = 100;            // product-Gaussian mixtures
    std::int64_t samples = 20000;  // draws per mixture
    int states = 1000;             // random states (mixed/pure alternating) for the PPT implication
    int grid_points = 12;          // CHSH grid search resolution per setting
};

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::int64_t cases = 0;
    std::int64_t violations = 0;
    // Worst observed value of the suite's figure of merit (see README).
    double worst = 0.0;
    Json failing_case;  // null when passed
};

struct VerifyReport {
    std::uint64_t seed = 0;
    VerifySizes sizes;
    std::vector<SuiteResult> suites;

    bool all_passed() const;
};

SuiteResult verify_separable_chsh_bound(std::uint64_t seed, const VerifySizes& sizes);
SuiteResult verify_chsh_square_identity(std::uint64_t seed, const VerifySizes& sizes);
SuiteResult verify_tsirelson_norm(std::uint64_t seed, const VerifySizes& sizes);
SuiteResult verify_separable_epr_reid_bound(std::uint64_t seed, const VerifySizes& sizes);
SuiteResult verify_ppt_implication(std::uint64_t seed, const VerifySizes& sizes);
// Density-matrix validation of a user-supplied operator.
SuiteResult verify_state(const Operator& rho);

VerifyReport run_verification(std::uint64_t seed, const VerifySizes& sizes,
                              const std::optional<Operator>& extra_state = std::nullopt);

void to_json(Json& j, const SuiteResult& s);
void to_json(Json& j, const VerifyReport& r);

}  // namespace entwit
