#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qkdsc {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. All Hilbert spaces in this library have
/// dimension <= 16, so storage and algorithms are deliberately simple.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    double max_abs() const;

    bool is_hermitian(double tol = 1e-12) const;
    bool is_unitary(double tol = 1e-10) const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex scale);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

/// Normalized pure state. Construction rejects amplitude vectors whose
/// squared norm deviates from 1 by more than 1e-12.
class StateVector {
public:
    explicit StateVector(std::vector<Complex> amplitudes);

    static StateVector basis(std::size_t dim, std::size_t index);

    std::size_t dim() const { return amps_.size(); }
    const Complex& operator[](std::size_t i) const { return amps_[i]; }
    const std::vector<Complex>& amplitudes() const { return amps_; }

    /// <this|other>
    Complex inner(const StateVector& other) const;

    /// |psi><psi|
    ComplexMatrix projector() const;

private:
    std::vector<Complex> amps_;
};

/// Hermitian, unit-trace, positive-semidefinite operator. Construction
/// validates all three properties (Hermitian within 1e-12, trace within
/// 1e-12 of 1, eigenvalues >= -1e-10).
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix m);

    static DensityMatrix pure(const StateVector& psi);

    std::size_t dim() const { return m_.rows(); }
    const ComplexMatrix& matrix() const { return m_; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

private:
    ComplexMatrix m_;
};

/// Kronecker (tensor) product; entry (i*p+k, j*q+l) = a(i,j) * b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reduced state on the subsystems listed in `keep` (ascending order).
/// `dims` are the subsystem dimensions whose product must equal rho.dim().
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep);

/// Eigenvalues of a Hermitian matrix, ascending. Cyclic complex Jacobi;
/// fine for the <=16 dimensions used here.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a);

/// Von Neumann entropy in bits: -sum_i lambda_i log2 lambda_i.
/// Eigenvalues in [-1e-10, 0] are treated as 0.
double vn_entropy(const DensityMatrix& rho);

/// Binary entropy h2(q) in bits; h2(0) = h2(1) = 0 exactly.
double binary_entropy(double q);

/// Unique q in [0, 1/2] with h2(q) = y. Bisection, absolute tolerance 1e-12.
double inv_binary_entropy(double y);

/// Tr[rho M] for Hermitian M; the imaginary part is discarded (it vanishes
/// analytically for valid inputs).
double expectation(const DensityMatrix& rho, const ComplexMatrix& m);

/// (1-eta) M + eta V^dag M V: a state error of strength eta folded into the
/// measurement operator. V must be unitary, M Hermitian.
ComplexMatrix effective_povm(const ComplexMatrix& m, const ComplexMatrix& v, double eta);

}  // namespace qkdsc
