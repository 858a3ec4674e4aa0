#include <doctest.h>

#include <cmath>
#include <numbers>

#include "entwit/chsh.hpp"
#include "entwit/parallel.hpp"
#include "entwit/qubit.hpp"
#include "entwit/verify.hpp"
#include "oracles.hpp"

using namespace entwit;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

Operator pure_projector(int index) {
    std::array<Complex, 2> v{0.0, 0.0};
    v[index] = 1.0;
    return Operator::projector(v);
}

}  // namespace

TEST_CASE("bell_phi_plus") {
    const Operator& rho = bell_phi_plus().rho();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const bool corner = (i == 0 || i == 3) && (j == 0 || j == 3);
            CHECK(rho(i, j) == Complex(corner ? 0.5 : 0.0));
        }
    CHECK(purity(rho) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("classical_correlated") {
    const std::array<double, 4> d{0.5, 0.0, 0.0, 0.5};
    CHECK(classical_correlated().rho() == Operator::diagonal(d));
    CHECK(purity(classical_correlated().rho()) == doctest::Approx(0.5));
    CHECK(ppt_oracle(classical_correlated()) == Separability::Separable);
}

TEST_CASE("TwoQubitState rejects invalid matrices") {
    CHECK_THROWS_AS(TwoQubitState(Operator::identity(4) * Complex(0.9 / 4)), ValidationError);
    CHECK_THROWS_AS(TwoQubitState(Operator::identity(2) * Complex(0.5)), ValidationError);
    const std::array<double, 4> negative{1.2, -0.2, 0.0, 0.0};
    CHECK_THROWS_AS(TwoQubitState(Operator::diagonal(negative)), ValidationError);
}

TEST_CASE("assemble") {
    const Operator half = Operator::identity(2) * Complex(0.5);
    SeparableEnsemble single{{{1.0, half, half}}};
    CHECK(max_abs_diff(assemble(single).rho(), Operator::identity(4) * Complex(0.25)) == 0.0);

    SeparableEnsemble two{{{0.5, pure_projector(1), pure_projector(1)},
                           {0.5, pure_projector(0), pure_projector(0)}}};
    CHECK(assemble(two).rho() == classical_correlated().rho());

    SUBCASE("invalid ensembles") {
        SeparableEnsemble bad_weight{{{0.7, half, half}}};
        CHECK_THROWS_AS(assemble(bad_weight), ValidationError);
        SeparableEnsemble neg{{{1.5, half, half}, {-0.5, half, half}}};
        CHECK_THROWS_AS(assemble(neg), ValidationError);
        SeparableEnsemble bad_factor{{{1.0, Operator::identity(2), half}}};
        CHECK_THROWS_AS(assemble(bad_factor), ValidationError);
        CHECK_THROWS_AS(assemble(SeparableEnsemble{}), ValidationError);
    }
}

TEST_CASE("assembled separable states are PPT (1000 random ensembles)") {
    for (int e = 0; e < 1000; ++e) {
        const auto ens = sample_separable(77, 1 + e % 5, static_cast<std::uint64_t>(e));
        const TwoQubitState s = assemble(ens);
        // oracle eigenvalues of the partial transpose
        const Operator pt = partial_transpose(s.rho());
        const auto ref = oracle::hermitian_eigenvalues({pt.entries().begin(), pt.entries().end()}, 4);
        CHECK(ref[0] >= -1e-10);
        CHECK(ppt_oracle(s) == Separability::Separable);
    }
}

TEST_CASE("sample_separable") {
    const auto pure = sample_separable(5, 1, 0, FactorMix::PureOnly);
    REQUIRE(pure.terms.size() == 1);
    CHECK(pure.terms[0].weight == 1.0);
    CHECK(purity(assemble(pure).rho()) == doctest::Approx(1.0).epsilon(1e-12));

    // deterministic under the seed, different across streams
    const auto a = sample_separable(9, 3, 4);
    const auto b = sample_separable(9, 3, 4);
    const auto c = sample_separable(9, 3, 5);
    CHECK(assemble(a).rho() == assemble(b).rho());
    CHECK_FALSE(assemble(a).rho() == assemble(c).rho());

    // both factor kinds show up under the balanced mix
    int pure_count = 0, mixed_count = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
        for (const auto& t : sample_separable(3, 2, s).terms) {
            for (const Operator* f : {&t.rho_a, &t.rho_b}) {
                (std::abs(purity(*f) - 1.0) < 1e-12 ? pure_count : mixed_count)++;
            }
        }
    }
    CHECK(pure_count > 300);
    CHECK(mixed_count > 300);
    CHECK_THROWS_AS(sample_separable(1, 0), ValidationError);
}

TEST_CASE("haar_pure_state") {
    CounterRng rng(23, 0);
    for (int t = 0; t < 100; ++t) CHECK(purity(haar_pure_state(rng).rho()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("parallel and serial ensemble sampling agree") {
    std::vector<Operator> serial, parallel(64, Operator(4));
    for (std::size_t i = 0; i < 64; ++i) serial.push_back(assemble(sample_separable(21, 3, i)).rho());
    parallel_for(64, [&](std::size_t i) { parallel[i] = assemble(sample_separable(21, 3, i)).rho(); }, 4);
    for (std::size_t i = 0; i < 64; ++i) CHECK(serial[i] == parallel[i]);
}

TEST_CASE("MeasurementSetting canonicalizes to [0, pi)") {
    CHECK(MeasurementSetting(kPi).theta() == 0.0);
    CHECK(MeasurementSetting(-kPi / 4).theta() == doctest::Approx(3 * kPi / 4));
    CHECK(MeasurementSetting(kPi / 2).theta() == kPi / 2);
    CHECK(MeasurementSetting(5 * kPi / 8 + 2 * kPi).theta() == doctest::Approx(5 * kPi / 8));
    CHECK_THROWS_AS(MeasurementSetting(NAN), ValidationError);
}

TEST_CASE("angle_observable") {
    CHECK(max_abs_diff(angle_observable(MeasurementSetting(0.0)), pauli(Axis::Z)) == 0.0);
    CHECK(max_abs_diff(angle_observable(MeasurementSetting(kPi / 4)), pauli(Axis::X)) <= 1e-15);
    const Operator sum = angle_observable(MeasurementSetting(kPi / 8)) +
                         angle_observable(MeasurementSetting(3 * kPi / 8));
    const Operator diff = angle_observable(MeasurementSetting(kPi / 8)) -
                          angle_observable(MeasurementSetting(3 * kPi / 8));
    CHECK(max_abs_diff(sum, pauli(Axis::X) * Complex(kSqrt2)) <= 1e-15);
    CHECK(max_abs_diff(diff, pauli(Axis::Z) * Complex(kSqrt2)) <= 1e-15);

    CounterRng rng(31, 0);
    for (int t = 0; t < 100; ++t) {
        const Operator l = angle_observable(MeasurementSetting(10.0 * rng.normal()));
        CHECK(is_hermitian(l));
        CHECK(is_involution(l, 1e-15));
        const Spectrum s = eigenvalues_hermitian(l);
        CHECK(s.min() == doctest::Approx(-1.0));
        CHECK(s.max() == doctest::Approx(1.0));
    }
}

TEST_CASE("correlation matrices") {
    const Operator id = Operator::identity(2);
    const Operator h = hadamard();

    const auto phi = correlation_matrix(bell_phi_plus(), id, id);
    CHECK(phi.p[0][0] == 0.5);
    CHECK(phi.p[1][1] == 0.5);
    CHECK(phi.p[0][1] == 0.0);
    CHECK(phi.p[1][0] == 0.0);

    const auto cl_h = correlation_matrix(classical_correlated(), h, h);
    for (const auto& row : cl_h.p)
        for (double v : row) CHECK(std::abs(v - 0.25) <= 1e-12);

    const auto phi_h = correlation_matrix(bell_phi_plus(), h, h);
    CHECK(std::abs(phi_h.p[0][0] - 0.5) <= 1e-12);
    CHECK(std::abs(phi_h.p[1][1] - 0.5) <= 1e-12);
    CHECK(std::abs(phi_h.p[0][1]) <= 1e-12);
    CHECK(std::abs(phi_h.p[1][0]) <= 1e-12);

    CHECK_THROWS_AS(correlation_matrix(bell_phi_plus(), id * Complex(2.0), id), ValidationError);
}

TEST_CASE("correlation matrix marginals equal the reduced-state probabilities") {
    CounterRng rng(41, 0);
    for (int t = 0; t < 200; ++t) {
        const TwoQubitState s = hilbert_schmidt_state(rng);
        // random real rotation in the z-x plane and the Hadamard
        const Operator ua = angle_observable(MeasurementSetting(rng.uniform() * kPi));
        const Operator ub = hadamard();
        const auto m = correlation_matrix(s, ua, ub);
        CHECK(std::abs(m.sum() - 1.0) <= 1e-12);
        const Operator ra = ua.adjoint() * partial_trace(s.rho(), Subsystem::B) * ua;
        const Operator rb = ub.adjoint() * partial_trace(s.rho(), Subsystem::A) * ub;
        for (int i = 0; i < 2; ++i) {
            CHECK(std::abs(m.p[i][0] + m.p[i][1] - ra(i, i).real()) <= 1e-12);
            CHECK(std::abs(m.p[0][i] + m.p[1][i] - rb(i, i).real()) <= 1e-12);
        }
    }
}

TEST_CASE("expectation") {
    const Operator zz = tensor(pauli(Axis::Z), pauli(Axis::Z));
    const Operator xx = tensor(pauli(Axis::X), pauli(Axis::X));
    CHECK(expectation(bell_phi_plus(), zz) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(expectation(classical_correlated(), zz) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(expectation(classical_correlated(), xx)) <= 1e-15);
    CHECK(expectation(bell_phi_plus(), xx) == doctest::Approx(1.0).epsilon(1e-15));
    const Operator not_hermitian = tensor(Operator(2, {0.0, 1.0, 0.0, 0.0}), Operator::identity(2));
    CHECK_THROWS_AS(expectation(bell_phi_plus(), not_hermitian), ValidationError);
}

TEST_CASE("Hadamard rotation turns zz statistics into xx statistics") {
    const Operator zz = tensor(pauli(Axis::Z), pauli(Axis::Z));
    const Operator xx = tensor(pauli(Axis::X), pauli(Axis::X));
    CounterRng rng(42, 0);
    for (int t = 0; t < 200; ++t) {
        const TwoQubitState s = hilbert_schmidt_state(rng);
        // rotate() applies (U (x) U)^dagger rho (U (x) U); H sigma_z H = sigma_x
        const TwoQubitState r = rotate(s, hadamard(), hadamard());
        CHECK(std::abs(expectation(r, zz) - expectation(s, xx)) <= 1e-12);
    }
    for (const auto& s : {bell_phi_plus(), classical_correlated()}) {
        const TwoQubitState r = rotate(s, hadamard(), hadamard());
        CHECK(std::abs(expectation(r, zz) - expectation(s, xx)) <= 1e-12);
    }
}

TEST_CASE("ppt oracle") {
    CHECK(ppt_oracle(bell_phi_plus()) == Separability::Entangled);
    CHECK(min_partial_transpose_eigenvalue(bell_phi_plus()) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(ppt_oracle(werner(0.3)) == Separability::Separable);
    CHECK(ppt_oracle(werner(0.35)) == Separability::Entangled);
    CHECK_THROWS_AS(werner(1.5), ValidationError);
}

TEST_CASE("Werner family PPT boundary sits at p = 1/3") {
    // oracle: sign of the smallest PT eigenvalue from the Jacobi routine, coarse scan then bisection
    auto min_pt = [](double p) {
        const Operator pt = partial_transpose(werner(p).rho());
        return oracle::hermitian_eigenvalues({pt.entries().begin(), pt.entries().end()}, 4)[0];
    };
    double lo = 0.0, hi = 1.0;
    for (int k = 0; k <= 1000; ++k) {
        const double p = k * 1e-3;
        if (min_pt(p) < 0.0) {
            hi = p;
            lo = p - 1e-3;
            break;
        }
    }
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (min_pt(mid) < 0.0 ? hi : lo) = mid;
    }
    CHECK(std::abs(hi - 1.0 / 3.0) <= 1e-9);
    CHECK(ppt_oracle(werner(1.0 / 3.0 - 1e-3)) == Separability::Separable);
    CHECK(ppt_oracle(werner(1.0 / 3.0 + 1e-3)) == Separability::Entangled);
}

TEST_CASE("chsh_operator") {
    const Operator b = chsh_operator(ChshSettings::green());
    CHECK(is_hermitian(b));
    const Operator expected = (tensor(pauli(Axis::Z), pauli(Axis::Z)) + tensor(pauli(Axis::X), pauli(Axis::X))) *
                              Complex(kSqrt2);
    CHECK(max_abs_diff(b, expected) <= 1e-15);
    CHECK(operator_norm(b) == doctest::Approx(2.0 * kSqrt2).epsilon(1e-14));

    // identical (hence commuting) settings on a obey the classical bound
    CounterRng rng(51, 0);
    for (int t = 0; t < 200; ++t) {
        const MeasurementSetting a(rng.uniform() * kPi);
        const ChshSettings s{a, a, MeasurementSetting(rng.uniform() * kPi), MeasurementSetting(rng.uniform() * kPi)};
        CHECK(operator_norm(chsh_operator(s)) <= 2.0 + 1e-12);
    }
}

TEST_CASE("B^2 identity over random settings") {
    CounterRng rng(52, 0);
    for (int t = 0; t < 1000; ++t) {
        const ChshSettings s = random_settings(rng);
        const Operator a1 = angle_observable(s.a1), a2 = angle_observable(s.a2);
        const Operator b1 = angle_observable(s.b1), b2 = angle_observable(s.b2);
        const Operator b = chsh_operator(a1, a2, b1, b2);
        const Operator rhs = Operator::identity(4) * Complex(4.0) + tensor(commutator(a1, a2), commutator(b1, b2));
        CHECK(max_abs_diff(b * b, rhs) <= 1e-12);
    }
}

TEST_CASE("chsh_evaluate examples") {
    const auto green = ChshSettings::green();
    const auto yellow = ChshSettings::yellow();

    const ChshResult phi = chsh_evaluate(bell_phi_plus(), green);
    CHECK(std::abs(phi.value - 2.0 * kSqrt2) <= 1e-12);
    CHECK(phi.verdict == Verdict::EntanglementVerified);

    const ChshResult cl = chsh_evaluate(classical_correlated(), green);
    CHECK(std::abs(cl.value - kSqrt2) <= 1e-12);
    CHECK(cl.verdict == Verdict::Inconclusive);

    for (const auto& s : {bell_phi_plus(), classical_correlated()}) {
        const ChshResult r = chsh_evaluate(s, yellow);
        CHECK(std::abs(r.value - 2.0) <= 1e-12);
        CHECK(r.verdict == Verdict::Inconclusive);
    }

    // margin moves the verified threshold
    CHECK(chsh_evaluate(bell_phi_plus(), green, 0.9).verdict == Verdict::Inconclusive);
    CHECK_THROWS_AS(chsh_evaluate(bell_phi_plus(), green, -0.1), ValidationError);
}

TEST_CASE("make_chsh_result flags values above the Tsirelson bound") {
    const std::array<double, 4> impossible{1.0, -1.0, 1.0, 1.0};
    CHECK(make_chsh_result(impossible, ChshSettings::green(), 0.0).verdict == Verdict::TsirelsonViolationError);
    const std::array<double, 4> at_bound{1 / kSqrt2, -1 / kSqrt2, 1 / kSqrt2, 1 / kSqrt2};
    CHECK(make_chsh_result(at_bound, ChshSettings::green(), 0.0).verdict == Verdict::EntanglementVerified);
}

TEST_CASE("Werner states below the CHSH threshold but above the PPT threshold") {
    // p = 0.6 is entangled (p > 1/3) yet its best CHSH value 2 sqrt(2) p < 2
    const TwoQubitState w = werner(0.6);
    CHECK(ppt_oracle(w) == Separability::Entangled);
    const ChshResult best = chsh_grid_search(w, 16);
    CHECK(best.value == doctest::Approx(2.0 * kSqrt2 * 0.6).epsilon(1e-12));
    CHECK(best.verdict == Verdict::Inconclusive);
}

TEST_CASE("chsh_scan reproduces the correlation curves") {
    std::vector<double> grid;
    for (int k = 0; k < 181; ++k) grid.push_back(kPi * k / 180.0);
    const auto phi0 = chsh_scan(bell_phi_plus(), MeasurementSetting(0.0), grid);
    const auto cl0 = chsh_scan(classical_correlated(), MeasurementSetting(0.0), grid);
    const auto phi45 = chsh_scan(bell_phi_plus(), MeasurementSetting(kPi / 4), grid);
    const auto cl45 = chsh_scan(classical_correlated(), MeasurementSetting(kPi / 4), grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        CHECK(std::abs(phi0[k].second - std::cos(2 * grid[k])) <= 1e-12);
        CHECK(std::abs(cl0[k].second - std::cos(2 * grid[k])) <= 1e-12);
        CHECK(std::abs(phi45[k].second - std::sin(2 * grid[k])) <= 1e-12);
        CHECK(std::abs(cl45[k].second) <= 1e-12);
    }
    CHECK_THROWS_AS(chsh_scan(bell_phi_plus(), MeasurementSetting(0.0), {}), ValidationError);
}

TEST_CASE("chsh_grid_search finds the Tsirelson point for Phi+") {
    const ChshResult r = chsh_grid_search(bell_phi_plus(), 8);
    CHECK(r.value == doctest::Approx(2.0 * kSqrt2).epsilon(1e-12));
    CHECK(chsh_grid_search(classical_correlated(), 8).value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("CHSH violation implies PPT entanglement (one-way)") {
    CounterRng rng(61, 0);
    int violating = 0;
    for (int t = 0; t < 300; ++t) {
        // pure states violate often; mix in some HS-random mixed states
        const TwoQubitState s = (t % 2) ? hilbert_schmidt_state(rng)
                                        : TwoQubitState([&] {
                                              std::array<Complex, 4> v;
                                              for (auto& z : v) z = Complex(rng.normal(), rng.normal());
                                              double n = 0;
                                              for (auto& z : v) n += std::norm(z);
                                              for (auto& z : v) z /= std::sqrt(n);
                                              return Operator::projector(v);
                                          }());
        const ChshResult r = chsh_grid_search(s, 12);
        CHECK(r.value <= 2.0 * kSqrt2 + 1e-9);
        if (r.value > 2.0 + 1e-6) {
            ++violating;
            CHECK(ppt_oracle(s) == Separability::Entangled);
        }
    }
    CHECK(violating > 10);
}
