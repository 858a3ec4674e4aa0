#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "entwit/operator.hpp"
#include "entwit/rng.hpp"

namespace entwit {

// Validated two-qubit density matrix.
class TwoQubitState {
public:
    // Throws ValidationError unless rho is a 4x4 density matrix.
    explicit TwoQubitState(Operator rho);

    const Operator& rho() const noexcept { return rho_; }

private:
    Operator rho_;
};

struct ProductTerm {
    double weight;
    Operator rho_a;
    Operator rho_b;
};

// sum_i w_i rho_a^(i) (x) rho_b^(i)
struct SeparableEnsemble {
    std::vector<ProductTerm> terms;

    void validate() const;
};

TwoQubitState bell_phi_plus();
// (|11><11| + |00><00|) / 2
TwoQubitState classical_correlated();
// p |Phi+><Phi+| + (1 - p) 1/4, p in [0, 1].
TwoQubitState werner(double p);

TwoQubitState assemble(const SeparableEnsemble& ens);

// (U_a (x) U_b)^dagger rho (U_a (x) U_b)
TwoQubitState rotate(const TwoQubitState& state, const Operator& ua, const Operator& ub);

// Real expectation tr(rho obs) of a Hermitian 4x4 observable.
double expectation(const TwoQubitState& state, const Operator& obs);

enum class Separability { Separable, Entangled };

std::string_view to_string(Separability s) noexcept;

double min_partial_transpose_eigenvalue(const TwoQubitState& state);

// Peres-Horodecki test; exact for two qubits.
Separability ppt_oracle(const TwoQubitState& state);

// Random single-qubit states.
Operator haar_pure_qubit(CounterRng& rng);
Operator random_mixed_qubit(CounterRng& rng);  // uniform in the Bloch ball

enum class FactorMix { Balanced, PureOnly, MixedOnly };

// Normalized uniform weights. With FactorMix::Balanced each factor is a Haar-random
// pure state or a Bloch-ball mixed state with probability 1/2.
SeparableEnsemble sample_separable(std::uint64_t seed, int n_terms, std::uint64_t stream = 0,
                                   FactorMix mix = FactorMix::Balanced);

// G G^dagger / tr(G G^dagger) for a complex Ginibre 4x4 matrix G.
TwoQubitState hilbert_schmidt_state(CounterRng& rng);
TwoQubitState haar_pure_state(CounterRng& rng);

}  // namespace entwit
