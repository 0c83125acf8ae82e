#include "qkdsc/sidechannel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qkdsc {

namespace {

constexpr std::size_t kLetters = 4;

double clamp_delta(double d) { return std::clamp(d, 0.0, 0.5); }

}  // namespace

SideChannelGram SideChannelGram::from_matrix(ComplexMatrix g) {
    if (!(g.rows() == kLetters && g.cols() == kLetters))
        throw std::invalid_argument("SideChannelGram: matrix must be 4x4");
    if (!g.is_hermitian(1e-12))
        throw std::invalid_argument("SideChannelGram: matrix not Hermitian within 1e-12");
    for (std::size_t i = 0; i < kLetters; ++i)
        if (std::abs(g(i, i) - Complex{1.0, 0.0}) > 1e-12)
            throw std::invalid_argument("SideChannelGram: diagonal entry " + std::to_string(i) +
                                        " differs from 1");
    const auto evs = hermitian_eigenvalues(g);
    if (evs.front() < -1e-10)
        throw std::invalid_argument("SideChannelGram: not positive semidefinite, min eigenvalue " +
                                    std::to_string(evs.front()));
    return SideChannelGram(std::move(g));
}

SideChannelGram SideChannelGram::uniform(double s) {
    if (!(s >= 0.0 && s <= 1.0))
        throw std::invalid_argument("SideChannelGram::uniform: overlap outside [0, 1]");
    ComplexMatrix g(kLetters, kLetters);
    for (std::size_t i = 0; i < kLetters; ++i)
        for (std::size_t j = 0; j < kLetters; ++j) g(i, j) = (i == j) ? 1.0 : s;
    return SideChannelGram(std::move(g));
}

// Outer-product Cholesky with diagonal pivoting. Row i of the factor,
// conjugated, is the vector for letter i: <v_i|v_j> = G(i,j). Pivoting makes
// rank-deficient PSD Gram matrices (e.g. identical states) factor cleanly.
SideChannelStates embed_states(const SideChannelGram& gram) {
    const ComplexMatrix& g = gram.matrix();
    const std::size_t n = kLetters;

    ComplexMatrix factor(n, n);
    std::vector<double> residual(n);
    std::vector<bool> used(n, false);
    std::vector<std::size_t> pivots;
    for (std::size_t i = 0; i < n; ++i) residual[i] = g(i, i).real();

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = n;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i)
            if (!used[i] && residual[i] > best) {
                best = residual[i];
                p = i;
            }
        if (best < -1e-10) {
            const auto evs = hermitian_eigenvalues(g);
            throw std::invalid_argument("embed_states: Gram not PSD, min eigenvalue " +
                                        std::to_string(evs.front()));
        }
        if (best <= 1e-14) break;  // remaining rows already fully represented
        used[p] = true;
        pivots.push_back(p);
        const double diag = std::sqrt(best);
        factor(p, col) = diag;
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i]) continue;
            Complex acc = g(i, p);
            for (std::size_t j = 0; j < col; ++j) acc -= factor(i, j) * std::conj(factor(p, j));
            factor(i, col) = acc / diag;
            residual[i] -= std::norm(factor(i, col));
        }
    }

    SideChannelStates out;
    out.states.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Complex> amps(n);
        for (std::size_t j = 0; j < n; ++j) amps[j] = std::conj(factor(i, j));
        out.states.emplace_back(std::move(amps));
    }
    return out;
}

Imbalance imbalance_from_gram(const SideChannelGram& gram) {
    const ComplexMatrix& g = gram.matrix();
    double cross = 0.0;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 2; j < 4; ++j) cross += g(i, j).real();
    return Imbalance{clamp_delta((4.0 - cross) / 8.0)};
}

Imbalance imbalance_uniform(double s) {
    if (!(s >= 0.0 && s <= 1.0))
        throw std::invalid_argument("imbalance_uniform: overlap outside [0, 1]");
    return Imbalance{clamp_delta((1.0 - s) / 2.0)};
}

double hom_visibility(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    if (rho1.dim() != rho2.dim())
        throw std::invalid_argument("hom_visibility: dimension mismatch");
    Complex acc = 0.0;
    for (std::size_t i = 0; i < rho1.dim(); ++i)
        for (std::size_t j = 0; j < rho1.dim(); ++j) acc += rho1(i, j) * rho2(j, i);
    return acc.real();
}

Imbalance imbalance_from_visibility(double v, double mu) {
    if (!(v >= 0.0)) throw std::domain_error("imbalance_from_visibility: visibility < 0");
    if (!(mu > 0.0)) throw std::domain_error("imbalance_from_visibility: mu must be positive");
    const double x = std::exp(mu * (std::sqrt(2.0 * v) - 1.0));
    if (x > 1.0)
        throw std::domain_error(
            "imbalance_from_visibility: v = " + std::to_string(v) +
            " puts the acos argument above 1; the bound is defined for v <= 0.5");
    const double angle = 2.0 * std::acos((1.0 + x) / 2.0) + std::acos(x);
    return Imbalance{clamp_delta(0.5 * (1.0 - std::cos(angle)))};
}

}  // namespace qkdsc
