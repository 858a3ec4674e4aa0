#pragma once

#include <array>
#include <complex>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace entwit {

using Complex = std::complex<double>;

// Raised when an input violates a documented precondition (dimension, Hermiticity,
// density-matrix validity, parameter ranges).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Axis { X, Y, Z };
enum class Subsystem { A, B };

// Dense complex square matrix of dimension 2 or 4. Row-major; for dimension 4
// the basis order is (|00>, |01>, |10>, |11>) with subsystem a as the left
// (slow) tensor factor.
class Operator {
public:
    static constexpr int kMaxDim = 4;

    // Zero operator.
    explicit Operator(int dim);
    // Row-major entries; entries.size() must equal dim * dim.
    Operator(int dim, std::span<const Complex> entries);
    Operator(int dim, std::initializer_list<Complex> entries);

    static Operator identity(int dim);
    static Operator diagonal(std::span<const double> diag);
    // |v><v| for a (not necessarily normalized) vector v of length 2 or 4.
    static Operator projector(std::span<const Complex> v);

    int dim() const noexcept { return dim_; }
    const Complex& operator()(int row, int col) const noexcept { return data_[row * dim_ + col]; }
    Complex& operator()(int row, int col) noexcept { return data_[row * dim_ + col]; }
    std::span<const Complex> entries() const noexcept {
        return {data_.data(), static_cast<std::size_t>(dim_ * dim_)};
    }

    Operator adjoint() const;
    Operator transpose() const;
    Complex trace() const noexcept;

    Operator& operator+=(const Operator& rhs);
    Operator& operator-=(const Operator& rhs);
    Operator& operator*=(Complex s) noexcept;

    friend Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }
    friend Operator operator-(Operator lhs, const Operator& rhs) { return lhs -= rhs; }
    friend Operator operator*(Operator lhs, Complex s) { return lhs *= s; }
    friend Operator operator*(Complex s, Operator rhs) { return rhs *= s; }
    friend Operator operator*(const Operator& lhs, const Operator& rhs);

    bool operator==(const Operator& rhs) const noexcept;

    // Largest entrywise modulus.
    double max_abs() const noexcept;

private:
    int dim_;
    std::array<Complex, kMaxDim * kMaxDim> data_{};
};

double max_abs_diff(const Operator& a, const Operator& b);

bool is_hermitian(const Operator& a);
bool is_unitary(const Operator& a, double tol = 1e-12);
bool is_involution(const Operator& a, double tol = 1e-12);

Operator commutator(const Operator& a, const Operator& b);

// Pauli matrices with sigma_z = |1><1| - |0><0| and sigma_y = i|0><1| - i|1><0|,
// so that sigma_x sigma_y = i sigma_z.
Operator pauli(Axis axis);
// (sigma_x + sigma_z) / sqrt(2).
Operator hadamard();

// Kronecker product a (x) b; both factors must be dimension 2.
Operator tensor(const Operator& a, const Operator& b);

// Eigenvalues of a Hermitian operator, ascending.
struct Spectrum {
    std::vector<double> eigenvalues;

    double min() const { return eigenvalues.front(); }
    double max() const { return eigenvalues.back(); }
    double sum() const;
};

Spectrum eigenvalues_hermitian(const Operator& a);

struct EigenDecomposition {
    Spectrum spectrum;
    Operator vectors;  // columns are orthonormal eigenvectors
};
EigenDecomposition eigendecompose_hermitian(const Operator& a);

// max |eigenvalue| of a Hermitian operator.
double operator_norm(const Operator& a);

// Density-matrix checks: Hermitian, unit trace within 1e-12 and min eigenvalue >= -1e-12.
bool is_density_matrix(const Operator& rho, std::string* why = nullptr);
void require_density_matrix(const Operator& rho, const char* context);

Operator partial_trace(const Operator& rho, Subsystem over);
Operator partial_transpose(const Operator& rho, Subsystem on = Subsystem::B);

double purity(const Operator& rho);

}  // namespace entwit
