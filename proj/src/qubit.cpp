#include "entwit/qubit.hpp"

#include <cmath>
#include <numbers>

namespace entwit {

namespace {

constexpr double kWeightTol = 1e-12;
constexpr double kPptThreshold = -1e-10;

}  // namespace

TwoQubitState::TwoQubitState(Operator rho) : rho_(std::move(rho)) {
    if (rho_.dim() != 4) throw ValidationError("two-qubit state must have dimension 4");
    require_density_matrix(rho_, "TwoQubitState");
}

void SeparableEnsemble::validate() const {
    if (terms.empty()) throw ValidationError("separable ensemble has no terms");
    double total = 0.0;
    for (const auto& t : terms) {
        if (!(t.weight >= 0.0 && t.weight <= 1.0)) {
            throw ValidationError("separable ensemble weight outside [0, 1]");
        }
        if (t.rho_a.dim() != 2 || t.rho_b.dim() != 2) {
            throw ValidationError("separable ensemble factors must have dimension 2");
        }
        require_density_matrix(t.rho_a, "separable ensemble factor a");
        require_density_matrix(t.rho_b, "separable ensemble factor b");
        total += t.weight;
    }
    if (std::abs(total - 1.0) > kWeightTol) {
        throw ValidationError("separable ensemble weights sum to " + std::to_string(total));
    }
}

TwoQubitState bell_phi_plus() {
    // |Phi+><Phi+| written out so that the 1/2 entries are exact
    Operator rho(4);
    rho(0, 0) = rho(0, 3) = rho(3, 0) = rho(3, 3) = 0.5;
    return TwoQubitState(std::move(rho));
}

TwoQubitState classical_correlated() {
    const std::array<double, 4> d{0.5, 0.0, 0.0, 0.5};
    return TwoQubitState(Operator::diagonal(d));
}

TwoQubitState werner(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("werner: p must lie in [0, 1]");
    return TwoQubitState(bell_phi_plus().rho() * Complex(p) +
                         Operator::identity(4) * Complex((1.0 - p) / 4.0));
}

TwoQubitState assemble(const SeparableEnsemble& ens) {
    ens.validate();
    Operator rho(4);
    for (const auto& t : ens.terms) rho += tensor(t.rho_a, t.rho_b) * Complex(t.weight);
    return TwoQubitState(std::move(rho));
}

TwoQubitState rotate(const TwoQubitState& state, const Operator& ua, const Operator& ub) {
    if (!is_unitary(ua) || !is_unitary(ub)) throw ValidationError("rotate: basis change is not unitary");
    const Operator u = tensor(ua, ub);
    return TwoQubitState(u.adjoint() * state.rho() * u);
}

double expectation(const TwoQubitState& state, const Operator& obs) {
    if (obs.dim() != 4) throw ValidationError("expectation: observable must have dimension 4");
    if (!is_hermitian(obs)) throw ValidationError("expectation: observable is not Hermitian");
    // tr(rho obs) without forming the full product
    Complex t = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) t += state.rho()(i, k) * obs(k, i);
    return t.real();
}

std::string_view to_string(Separability s) noexcept {
    return s == Separability::Separable ? "separable" : "entangled";
}

double min_partial_transpose_eigenvalue(const TwoQubitState& state) {
    return eigenvalues_hermitian(partial_transpose(state.rho(), Subsystem::B)).min();
}

Separability ppt_oracle(const TwoQubitState& state) {
    return min_partial_transpose_eigenvalue(state) < kPptThreshold ? Separability::Entangled
                                                                   : Separability::Separable;
}

Operator haar_pure_qubit(CounterRng& rng) {
    std::array<Complex, 2> v;
    double norm2 = 0.0;
    do {
        for (auto& z : v) z = Complex(rng.normal(), rng.normal());
        norm2 = std::norm(v[0]) + std::norm(v[1]);
    } while (norm2 == 0.0);
    const double s = 1.0 / std::sqrt(norm2);
    for (auto& z : v) z *= s;
    return Operator::projector(v);
}

Operator random_mixed_qubit(CounterRng& rng) {
    // direction uniform on the sphere, radius with density ~ r^2
    double nx, ny, nz, n2;
    do {
        nx = rng.normal();
        ny = rng.normal();
        nz = rng.normal();
        n2 = nx * nx + ny * ny + nz * nz;
    } while (n2 == 0.0);
    const double r = std::cbrt(rng.uniform()) / std::sqrt(n2);
    // (1 + r.sigma)/2 with the Pauli convention used throughout
    Operator rho = Operator::identity(2) + pauli(Axis::X) * Complex(r * nx) +
                   pauli(Axis::Y) * Complex(r * ny) + pauli(Axis::Z) * Complex(r * nz);
    rho *= 0.5;
    return rho;
}

SeparableEnsemble sample_separable(std::uint64_t seed, int n_terms, std::uint64_t stream,
                                   FactorMix mix) {
    if (n_terms < 1) throw ValidationError("sample_separable: n_terms must be >= 1");
    CounterRng rng(seed, stream);
    auto factor = [&]() {
        bool pure = false;
        switch (mix) {
            case FactorMix::Balanced: pure = rng.uniform() < 0.5; break;
            case FactorMix::PureOnly: pure = true; break;
            case FactorMix::MixedOnly: pure = false; break;
        }
        return pure ? haar_pure_qubit(rng) : random_mixed_qubit(rng);
    };

    SeparableEnsemble ens;
    ens.terms.reserve(n_terms);
    double total = 0.0;
    for (int i = 0; i < n_terms; ++i) {
        const double w = rng.uniform_open_low();
        total += w;
        Operator a = factor();
        Operator b = factor();
        ens.terms.push_back({w, std::move(a), std::move(b)});
    }
    for (auto& t : ens.terms) t.weight /= total;
    return ens;
}

TwoQubitState hilbert_schmidt_state(CounterRng& rng) {
    Operator g(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
    Operator rho = g * g.adjoint();
    rho *= Complex(1.0 / rho.trace().real());
    // remove rounding-level anti-Hermitian residue
    rho = (rho + rho.adjoint()) * Complex(0.5);
    return TwoQubitState(std::move(rho));
}

TwoQubitState haar_pure_state(CounterRng& rng) {
    std::array<Complex, 4> v;
    double norm = 0.0;
    for (auto& z : v) {
        z = Complex(rng.normal(), rng.normal());
        norm += std::norm(z);
    }
    for (auto& z : v) z /= std::sqrt(norm);
    Operator rho = Operator::projector(v);
    rho = (rho + rho.adjoint()) * Complex(0.5);
    return TwoQubitState(std::move(rho));
}

}  // namespace entwit
