#include <doctest.h>

#include <cmath>
#include <numbers>

#include "entwit/chsh.hpp"
#include "entwit/operator.hpp"
#include "entwit/qubit.hpp"
#include "oracles.hpp"

using namespace entwit;

namespace {

const Complex I{0.0, 1.0};

oracle::Matrix to_plain(const Operator& op) { return {op.entries().begin(), op.entries().end()}; }

Operator random_hermitian(CounterRng& rng, int dim) {
    Operator h(dim);
    for (int i = 0; i < dim; ++i) {
        h(i, i) = rng.normal();
        for (int j = i + 1; j < dim; ++j) {
            h(i, j) = Complex(rng.normal(), rng.normal());
            h(j, i) = std::conj(h(i, j));
        }
    }
    return h;
}

int levi_civita(int i, int j, int k) {
    if (i == j || j == k || i == k) return 0;
    return ((i + 1) % 3 == j) ? 1 : -1;
}

}  // namespace

TEST_CASE("Operator construction checks dimension and entry count") {
    CHECK_THROWS_AS(Operator(3), ValidationError);
    const std::array<Complex, 3> three{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(Operator(2, three), ValidationError);
    CHECK(Operator::identity(4).trace() == Complex(4.0));
}

TEST_CASE("pauli matrices") {
    const Operator z = pauli(Axis::Z);
    CHECK(z(0, 0) == Complex(-1.0));
    CHECK(z(1, 1) == Complex(1.0));
    CHECK(z(0, 1) == Complex(0.0));
    CHECK(pauli(Axis::X) * pauli(Axis::X) == Operator::identity(2));
    CHECK(max_abs_diff(pauli(Axis::X) * pauli(Axis::Y), I * pauli(Axis::Z)) == 0.0);
    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
        const Operator p = pauli(a);
        CHECK(is_hermitian(p));
        CHECK(is_unitary(p));
        CHECK(p.trace() == Complex(0.0));
    }
}

TEST_CASE("Pauli product and commutator algebra") {
    const std::array<Operator, 3> s{pauli(Axis::X), pauli(Axis::Y), pauli(Axis::Z)};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Operator product_rhs = Operator::identity(2) * Complex(i == j ? 1.0 : 0.0);
            Operator comm_rhs(2);
            for (int k = 0; k < 3; ++k) {
                product_rhs += s[k] * (I * double(levi_civita(i, j, k)));
                comm_rhs += s[k] * (2.0 * I * double(levi_civita(i, j, k)));
            }
            CHECK(max_abs_diff(s[i] * s[j], product_rhs) <= 1e-15);
            CHECK(max_abs_diff(commutator(s[i], s[j]), comm_rhs) <= 1e-15);
        }
}

TEST_CASE("hadamard maps sigma_z to sigma_x") {
    const Operator h = hadamard();
    CHECK(is_unitary(h));
    CHECK(max_abs_diff(h.adjoint() * pauli(Axis::Z) * h, pauli(Axis::X)) <= 1e-15);
}

TEST_CASE("tensor product") {
    CHECK(tensor(Operator::identity(2), Operator::identity(2)) == Operator::identity(4));
    const Operator zz = tensor(pauli(Axis::Z), pauli(Axis::Z));
    const std::array<double, 4> expected{1.0, -1.0, -1.0, 1.0};
    CHECK(zz == Operator::diagonal(expected));
    CHECK_THROWS_AS(tensor(Operator::identity(4), Operator::identity(2)), ValidationError);

    CounterRng rng(11, 0);
    for (int t = 0; t < 50; ++t) {
        const Operator a = random_hermitian(rng, 2);
        const Operator b = random_hermitian(rng, 2);
        CHECK(std::abs(tensor(a, b).trace() - a.trace() * b.trace()) <= 1e-13);
    }
}

TEST_CASE("partial trace") {
    const Operator half = Operator::identity(2) * Complex(0.5);
    CHECK(max_abs_diff(partial_trace(bell_phi_plus().rho(), Subsystem::A), half) == 0.0);
    CHECK(max_abs_diff(partial_trace(bell_phi_plus().rho(), Subsystem::B), half) == 0.0);
    CHECK(max_abs_diff(partial_trace(classical_correlated().rho(), Subsystem::A), half) == 0.0);

    CounterRng rng(12, 0);
    for (int t = 0; t < 200; ++t) {
        const Operator ra = random_mixed_qubit(rng);
        const Operator rb = random_mixed_qubit(rng);
        CHECK(max_abs_diff(partial_trace(tensor(ra, rb), Subsystem::B), ra) <= 1e-15);
        CHECK(max_abs_diff(partial_trace(tensor(ra, rb), Subsystem::A), rb) <= 1e-15);
    }

    SUBCASE("rejects non-density input") {
        Operator bad = Operator::identity(4) * Complex(0.9 / 4.0);
        CHECK_THROWS_AS(partial_trace(bad, Subsystem::A), ValidationError);
        CHECK_THROWS_AS(partial_trace(Operator::identity(2), Subsystem::A), ValidationError);
    }
}

TEST_CASE("partial transpose") {
    CHECK(partial_transpose(classical_correlated().rho()) == classical_correlated().rho());
    CounterRng rng(13, 0);
    for (int t = 0; t < 50; ++t) {
        const Operator rho = hilbert_schmidt_state(rng).rho();
        CHECK(partial_transpose(partial_transpose(rho)) == rho);
        CHECK(is_hermitian(partial_transpose(rho)));
        // transposing both halves is the full transpose
        CHECK(partial_transpose(partial_transpose(rho, Subsystem::A), Subsystem::B) == rho.transpose());
    }
    // oracle: explicit PT of |Phi+><Phi+| is the swap/2, eigenvalues (-1/2, 1/2, 1/2, 1/2)
    const auto pt = partial_transpose(bell_phi_plus().rho());
    const auto ref = oracle::hermitian_eigenvalues(to_plain(pt), 4);
    CHECK(ref[0] == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(eigenvalues_hermitian(pt).min() == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("eigenvalues_hermitian") {
    const auto z = eigenvalues_hermitian(pauli(Axis::Z)).eigenvalues;
    CHECK(z == std::vector<double>{-1.0, 1.0});
    for (double v : eigenvalues_hermitian(Operator::identity(4)).eigenvalues) CHECK(v == doctest::Approx(1.0));

    const Operator b = chsh_operator(ChshSettings::green());
    const auto ref = oracle::hermitian_eigenvalues(to_plain(b), 4);
    const auto got = eigenvalues_hermitian(b).eigenvalues;
    const double t = 2.0 * std::numbers::sqrt2;
    const std::array<double, 4> expected{-t, 0.0, 0.0, t};
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(ref[i] - expected[i]) <= 1e-12);
        CHECK(std::abs(got[i] - expected[i]) <= 1e-12);
    }

    CHECK_THROWS_AS(eigenvalues_hermitian(Operator(2, {0.0, 1.0, 0.0, 0.0})), ValidationError);
}

TEST_CASE("eigendecomposition reconstructs the input and matches the oracle") {
    CounterRng rng(14, 0);
    for (int t = 0; t < 200; ++t) {
        const int dim = (t % 2) ? 4 : 2;
        const Operator a = random_hermitian(rng, dim);
        const EigenDecomposition d = eigendecompose_hermitian(a);
        const auto lambda = Operator::diagonal(d.spectrum.eigenvalues);
        const Operator back = d.vectors * lambda * d.vectors.adjoint();
        CHECK(max_abs_diff(a, back) <= 1e-12 * (1.0 + a.max_abs()));
        CHECK(std::is_sorted(d.spectrum.eigenvalues.begin(), d.spectrum.eigenvalues.end()));
        const auto ref = oracle::hermitian_eigenvalues(to_plain(a), dim);
        for (int i = 0; i < dim; ++i) CHECK(std::abs(ref[i] - d.spectrum.eigenvalues[i]) <= 1e-11);
    }
}

TEST_CASE("operator_norm") {
    CHECK(operator_norm(pauli(Axis::X)) == doctest::Approx(1.0).epsilon(1e-15));
    // [sigma_x, sigma_z] = -2i sigma_y is anti-Hermitian; i[.,.] is the Hermitian form
    const Operator comm = commutator(pauli(Axis::X), pauli(Axis::Z));
    CHECK(operator_norm(I * comm) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(operator_norm(comm), ValidationError);

    CounterRng rng(15, 0);
    const double pi = std::numbers::pi;
    for (int t = 0; t < 500; ++t) {
        const ChshSettings s{MeasurementSetting(pi * rng.uniform()), MeasurementSetting(pi * rng.uniform()),
                             MeasurementSetting(pi * rng.uniform()), MeasurementSetting(pi * rng.uniform())};
        const Operator b = chsh_operator(s);
        CHECK(operator_norm(b * b) <= 8.0 + 1e-12);
    }
}

TEST_CASE("density-matrix spectra stay in [0, 1] and sum to one") {
    CounterRng rng(16, 0);
    for (int t = 0; t < 500; ++t) {
        const Spectrum s = eigenvalues_hermitian(hilbert_schmidt_state(rng).rho());
        CHECK(s.min() >= -1e-12);
        CHECK(s.max() <= 1.0 + 1e-12);
        CHECK(std::abs(s.sum() - 1.0) <= 1e-12);
    }
}
