#include "entwit/operator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace entwit {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kDensityTol = 1e-12;

void check_dim(int dim) {
    if (dim != 2 && dim != 4) {
        throw ValidationError("operator dimension must be 2 or 4, got " + std::to_string(dim));
    }
}

void require_same_dim(const Operator& a, const Operator& b, const char* what) {
    if (a.dim() != b.dim()) {
        throw ValidationError(std::string(what) + ": dimension mismatch (" +
                              std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
    }
}

void require_hermitian(const Operator& a, const char* what) {
    if (!is_hermitian(a)) throw ValidationError(std::string(what) + ": operator is not Hermitian");
}

}  // namespace

Operator::Operator(int dim) : dim_(dim) { check_dim(dim); }

Operator::Operator(int dim, std::span<const Complex> entries) : dim_(dim) {
    check_dim(dim);
    if (entries.size() != static_cast<std::size_t>(dim * dim)) {
        throw ValidationError("operator of dimension " + std::to_string(dim) + " needs " +
                              std::to_string(dim * dim) + " entries, got " +
                              std::to_string(entries.size()));
    }
    std::copy(entries.begin(), entries.end(), data_.begin());
}

Operator::Operator(int dim, std::initializer_list<Complex> entries)
    : Operator(dim, std::span<const Complex>(entries.begin(), entries.size())) {}

Operator Operator::identity(int dim) {
    Operator out(dim);
    for (int i = 0; i < dim; ++i) out(i, i) = 1.0;
    return out;
}

Operator Operator::diagonal(std::span<const double> diag) {
    Operator out(static_cast<int>(diag.size()));
    for (int i = 0; i < out.dim(); ++i) out(i, i) = diag[i];
    return out;
}

Operator Operator::projector(std::span<const Complex> v) {
    Operator out(static_cast<int>(v.size()));
    for (int i = 0; i < out.dim(); ++i)
        for (int j = 0; j < out.dim(); ++j) out(i, j) = v[i] * std::conj(v[j]);
    return out;
}

Operator Operator::adjoint() const {
    Operator out(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) out(i, j) = std::conj((*this)(j, i));
    return out;
}

Operator Operator::transpose() const {
    Operator out(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) out(i, j) = (*this)(j, i);
    return out;
}

Complex Operator::trace() const noexcept {
    Complex t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

Operator& Operator::operator+=(const Operator& rhs) {
    require_same_dim(*this, rhs, "operator +");
    for (int k = 0; k < dim_ * dim_; ++k) data_[k] += rhs.data_[k];
    return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
    require_same_dim(*this, rhs, "operator -");
    for (int k = 0; k < dim_ * dim_; ++k) data_[k] -= rhs.data_[k];
    return *this;
}

Operator& Operator::operator*=(Complex s) noexcept {
    for (int k = 0; k < dim_ * dim_; ++k) data_[k] *= s;
    return *this;
}

Operator operator*(const Operator& lhs, const Operator& rhs) {
    require_same_dim(lhs, rhs, "operator *");
    const int n = lhs.dim();
    Operator out(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Complex a = lhs(i, k);
            if (a == 0.0) continue;
            for (int j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
        }
    return out;
}

bool Operator::operator==(const Operator& rhs) const noexcept {
    if (dim_ != rhs.dim_) return false;
    return std::equal(data_.begin(), data_.begin() + dim_ * dim_, rhs.data_.begin());
}

double Operator::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& z : entries()) m = std::max(m, std::abs(z));
    return m;
}

double max_abs_diff(const Operator& a, const Operator& b) {
    require_same_dim(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k)
        m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
    return m;
}

bool is_hermitian(const Operator& a) {
    return max_abs_diff(a, a.adjoint()) <= kHermitianTol * (1.0 + a.max_abs());
}

bool is_unitary(const Operator& a, double tol) {
    return max_abs_diff(a.adjoint() * a, Operator::identity(a.dim())) <= tol;
}

bool is_involution(const Operator& a, double tol) {
    return max_abs_diff(a * a, Operator::identity(a.dim())) <= tol;
}

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

Operator pauli(Axis axis) {
    const Complex i{0.0, 1.0};
    switch (axis) {
        case Axis::X: return Operator(2, {0.0, 1.0, 1.0, 0.0});
        case Axis::Y: return Operator(2, {0.0, i, -i, 0.0});
        case Axis::Z: return Operator(2, {-1.0, 0.0, 0.0, 1.0});
    }
    throw ValidationError("unknown Pauli axis");
}

Operator hadamard() {
    return (pauli(Axis::X) + pauli(Axis::Z)) * Complex(1.0 / std::numbers::sqrt2);
}

Operator tensor(const Operator& a, const Operator& b) {
    if (a.dim() != 2 || b.dim() != 2) {
        throw ValidationError("tensor: both factors must have dimension 2");
    }
    Operator out(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return out;
}

double Spectrum::sum() const {
    double s = 0.0;
    for (double v : eigenvalues) s += v;
    return s;
}

EigenDecomposition eigendecompose_hermitian(const Operator& a) {
    require_hermitian(a, "eigendecompose_hermitian");
    const int n = a.dim();
    Eigen::MatrixXcd m(n, n);
    // Symmetrize so the solver sees an exactly Hermitian matrix.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigendecompose_hermitian: eigensolver did not converge");
    }
    EigenDecomposition out{Spectrum{}, Operator(n)};
    out.spectrum.eigenvalues.resize(n);
    for (int i = 0; i < n; ++i) {
        out.spectrum.eigenvalues[i] = solver.eigenvalues()(i);
        for (int j = 0; j < n; ++j) out.vectors(j, i) = solver.eigenvectors()(j, i);
    }
    return out;
}

Spectrum eigenvalues_hermitian(const Operator& a) { return eigendecompose_hermitian(a).spectrum; }

double operator_norm(const Operator& a) {
    const Spectrum s = eigenvalues_hermitian(a);
    return std::max(std::abs(s.min()), std::abs(s.max()));
}

bool is_density_matrix(const Operator& rho, std::string* why) {
    auto fail = [&](std::string msg) {
        if (why) *why = std::move(msg);
        return false;
    };
    if (!is_hermitian(rho)) return fail("not Hermitian");
    const Complex tr = rho.trace();
    if (std::abs(tr.real() - 1.0) > kDensityTol || std::abs(tr.imag()) > kDensityTol) {
        return fail("trace " + std::to_string(tr.real()) + " differs from 1");
    }
    const double lo = eigenvalues_hermitian(rho).min();
    if (lo < -kDensityTol) return fail("negative eigenvalue " + std::to_string(lo));
    return true;
}

void require_density_matrix(const Operator& rho, const char* context) {
    std::string why;
    if (!is_density_matrix(rho, &why)) {
        throw ValidationError(std::string(context) + ": invalid density matrix (" + why + ")");
    }
}

Operator partial_trace(const Operator& rho, Subsystem over) {
    if (rho.dim() != 4) throw ValidationError("partial_trace: operator must have dimension 4");
    require_density_matrix(rho, "partial_trace");
    Operator out(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                if (over == Subsystem::A) {
                    out(i, j) += rho(2 * k + i, 2 * k + j);
                } else {
                    out(i, j) += rho(2 * i + k, 2 * j + k);
                }
            }
    return out;
}

Operator partial_transpose(const Operator& rho, Subsystem on) {
    if (rho.dim() != 4) throw ValidationError("partial_transpose: operator must have dimension 4");
    Operator out(4);
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
            for (int j = 0; j < 2; ++j)
                for (int l = 0; l < 2; ++l) {
                    // element <i k| rho |j l> with i,j on a and k,l on b
                    const Complex v = rho(2 * i + k, 2 * j + l);
                    if (on == Subsystem::B) {
                        out(2 * i + l, 2 * j + k) = v;
                    } else {
                        out(2 * j + k, 2 * i + l) = v;
                    }
                }
    return out;
}

double purity(const Operator& rho) { return (rho * rho).trace().real(); }

}  // namespace entwit
