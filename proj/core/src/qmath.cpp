#include "qkdsc/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qkdsc {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out(j, i) = std::conj((*this)(i, j));
    return out;
}

Complex ComplexMatrix::trace() const {
    require(square(), "trace: matrix must be square");
    Complex t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
}

bool ComplexMatrix::is_unitary(double tol) const {
    if (!square()) return false;
    const ComplexMatrix prod = adjoint() * (*this);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            const Complex want = (i == j) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
            if (std::abs(prod(i, j) - want) > tol) return false;
        }
    return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "matrix +=: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "matrix -=: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
    for (auto& z : data_) z *= scale;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    if (lhs.cols() != rhs.rows()) throw std::invalid_argument("matrix *: shape mismatch");
    ComplexMatrix out(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i)
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            const Complex a = lhs(i, k);
            if (a == Complex{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
        }
    return out;
}

StateVector::StateVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
    require(!amps_.empty(), "StateVector: empty amplitude vector");
    double norm2 = 0.0;
    for (const auto& a : amps_) norm2 += std::norm(a);
    require(std::abs(norm2 - 1.0) <= 1e-12,
            "StateVector: squared norm " + std::to_string(norm2) + " is not 1");
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
    require(index < dim, "StateVector::basis: index out of range");
    std::vector<Complex> a(dim, Complex{0.0, 0.0});
    a[index] = 1.0;
    return StateVector(std::move(a));
}

Complex StateVector::inner(const StateVector& other) const {
    require(dim() == other.dim(), "StateVector::inner: dimension mismatch");
    Complex acc = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) acc += std::conj(amps_[i]) * other.amps_[i];
    return acc;
}

ComplexMatrix StateVector::projector() const {
    ComplexMatrix p(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j)
            p(i, j) = amps_[i] * std::conj(amps_[j]);
    return p;
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    require(m_.square() && m_.rows() > 0, "DensityMatrix: matrix must be square");
    require(m_.is_hermitian(1e-12), "DensityMatrix: not Hermitian within 1e-12");
    require(std::abs(m_.trace() - Complex{1.0, 0.0}) <= 1e-12,
            "DensityMatrix: trace differs from 1 by more than 1e-12");
    const auto evs = hermitian_eigenvalues(m_);
    require(evs.front() >= -1e-10,
            "DensityMatrix: negative eigenvalue " + std::to_string(evs.front()));
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
    return DensityMatrix(psi.projector());
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{0.0, 0.0}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep) {
    const std::size_t total =
        std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
    require(total == rho.dim(), "partial_trace: product of dims != rho dimension");
    require(!keep.empty(), "partial_trace: keep set is empty");
    require(std::is_sorted(keep.begin(), keep.end()) &&
                std::adjacent_find(keep.begin(), keep.end()) == keep.end(),
            "partial_trace: keep indices must be sorted and unique");
    require(keep.back() < dims.size(), "partial_trace: keep index out of range");

    std::vector<std::size_t> traced;
    for (std::size_t s = 0; s < dims.size(); ++s)
        if (!std::binary_search(keep.begin(), keep.end(), s)) traced.push_back(s);

    // Row-major strides: subsystem 0 is the most significant factor.
    std::vector<std::size_t> stride(dims.size(), 1);
    for (std::size_t s = dims.size(); s-- > 1;) stride[s - 1] = stride[s] * dims[s];

    std::size_t dim_keep = 1, dim_traced = 1;
    for (auto s : keep) dim_keep *= dims[s];
    for (auto s : traced) dim_traced *= dims[s];

    // Flat index over a subsystem subset -> contribution to the full index.
    auto expand = [&](std::size_t flat, const std::vector<std::size_t>& subs) {
        std::size_t full = 0;
        for (std::size_t k = subs.size(); k-- > 0;) {
            const std::size_t s = subs[k];
            full += (flat % dims[s]) * stride[s];
            flat /= dims[s];
        }
        return full;
    };

    ComplexMatrix out(dim_keep, dim_keep);
    for (std::size_t a = 0; a < dim_keep; ++a) {
        const std::size_t arow = expand(a, keep);
        for (std::size_t b = 0; b < dim_keep; ++b) {
            const std::size_t bcol = expand(b, keep);
            Complex acc = 0.0;
            for (std::size_t t = 0; t < dim_traced; ++t) {
                const std::size_t off = expand(t, traced);
                acc += rho(arow + off, bcol + off);
            }
            out(a, b) = acc;
        }
    }
    return DensityMatrix(std::move(out));
}

// Cyclic Jacobi diagonalization for complex Hermitian matrices. Each sweep
// zeroes every off-diagonal element once via a unitary plane rotation; the
// off-diagonal mass is strictly decreasing, and for n <= 16 a handful of
// sweeps reaches machine precision.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& input) {
    require(input.square() && input.rows() > 0, "hermitian_eigenvalues: matrix must be square");
    const double scale = std::max(input.max_abs(), 1.0);
    require(input.is_hermitian(1e-12 * scale), "hermitian_eigenvalues: matrix not Hermitian");

    const std::size_t n = input.rows();
    ComplexMatrix a = input;

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    constexpr int kMaxSweeps = 60;
    for (int sweep = 0; sweep < kMaxSweeps && off_norm() > 1e-14 * scale; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-300) continue;
                const Complex phase = apq / r;  // e^{i arg(apq)}

                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * r);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // Columns p,q of the rotation: J(p,p)=c, J(p,q)=s,
                // J(q,p)=-s*conj(phase), J(q,q)=c*conj(phase).
                const Complex jqp = -s * std::conj(phase);
                const Complex jqq = c * std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp + jqp * akq;
                    a(k, q) = s * akp + jqq * akq;
                    a(p, k) = std::conj(a(k, p));
                    a(q, k) = std::conj(a(k, q));
                }
                a(p, p) = Complex{app - t * r, 0.0};
                a(q, q) = Complex{aqq + t * r, 0.0};
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }

    std::vector<double> evs(n);
    for (std::size_t i = 0; i < n; ++i) evs[i] = a(i, i).real();
    std::sort(evs.begin(), evs.end());
    return evs;
}

double vn_entropy(const DensityMatrix& rho) {
    double s = 0.0;
    for (double ev : hermitian_eigenvalues(rho.matrix())) {
        if (ev < -1e-10)
            throw std::invalid_argument("vn_entropy: eigenvalue " + std::to_string(ev) +
                                        " below -1e-10");
        if (ev <= 0.0) continue;  // 0 log 0 := 0; [-1e-10, 0] clamped to 0
        s -= ev * std::log2(ev);
    }
    return s;
}

double binary_entropy(double q) {
    if (!(q >= 0.0 && q <= 1.0))
        throw std::domain_error("binary_entropy: argument " + std::to_string(q) +
                                " outside [0, 1]");
    if (q == 0.0 || q == 1.0) return 0.0;
    return -q * std::log2(q) - (1.0 - q) * std::log2(1.0 - q);
}

double inv_binary_entropy(double y) {
    if (!(y >= 0.0 && y <= 1.0))
        throw std::domain_error("inv_binary_entropy: argument " + std::to_string(y) +
                                " outside [0, 1]");
    if (y == 0.0) return 0.0;
    if (y == 1.0) return 0.5;

    double lo = 0.0, hi = 0.5;
    for (int i = 0; i < 200 && (hi - lo) > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (binary_entropy(mid) < y)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double expectation(const DensityMatrix& rho, const ComplexMatrix& m) {
    require(m.square() && m.rows() == rho.dim(), "expectation: dimension mismatch");
    const double scale = std::max(m.max_abs(), 1.0);
    require(m.is_hermitian(1e-12 * scale), "expectation: observable not Hermitian");
    Complex acc = 0.0;
    for (std::size_t i = 0; i < rho.dim(); ++i)
        for (std::size_t j = 0; j < rho.dim(); ++j) acc += rho(i, j) * m(j, i);
    return acc.real();
}

ComplexMatrix effective_povm(const ComplexMatrix& m, const ComplexMatrix& v, double eta) {
    require(m.square() && v.square() && m.rows() == v.rows(),
            "effective_povm: dimension mismatch");
    const double scale = std::max(m.max_abs(), 1.0);
    require(m.is_hermitian(1e-12 * scale), "effective_povm: M not Hermitian");
    require(v.is_unitary(1e-10), "effective_povm: V not unitary");
    require(eta >= 0.0 && eta <= 1.0, "effective_povm: eta outside [0, 1]");
    ComplexMatrix rotated = v.adjoint() * m * v;
    ComplexMatrix out = m;
    out *= Complex{1.0 - eta, 0.0};
    rotated *= Complex{eta, 0.0};
    out += rotated;
    return out;
}

}  // namespace qkdsc
