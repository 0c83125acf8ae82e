#include "qkdsc/sidechannel.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

using namespace qkdsc;

namespace {

double overlap_error(const SideChannelStates& sc, const ComplexMatrix& gram) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            worst = std::max(worst, std::abs(sc.states[i].inner(sc.states[j]) - gram(i, j)));
    return worst;
}

}  // namespace

TEST_CASE("embedding an identity Gram gives orthonormal vectors") {
    const auto gram = SideChannelGram::from_matrix(ComplexMatrix::identity(4));
    const auto sc = embed_states(gram);
    CHECK(overlap_error(sc, gram.matrix()) < 1e-12);
}

TEST_CASE("embedding the all-ones Gram gives identical vectors") {
    const auto gram = SideChannelGram::uniform(1.0);
    const auto sc = embed_states(gram);
    for (std::size_t i = 1; i < 4; ++i)
        CHECK(std::abs(sc.states[0].inner(sc.states[i]) - Complex{1.0, 0.0}) < 1e-14);
}

TEST_CASE("embedding reconstructs a uniform overlap of 0.9") {
    const auto gram = SideChannelGram::uniform(0.9);
    const auto sc = embed_states(gram);
    CHECK(overlap_error(sc, gram.matrix()) < 1e-10);
}

TEST_CASE("embedding reconstructs random PSD Gram matrices") {
    // Gram matrices built from random unit vectors are PSD by construction
    // and give an independent reconstruction target.
    std::mt19937 rng(31);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<StateVector> vecs;
        for (int i = 0; i < 4; ++i) vecs.push_back(qkdsc::testing::random_state(rng, 4));
        ComplexMatrix g(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) g(i, j) = vecs[i].inner(vecs[j]);
        const auto gram = SideChannelGram::from_matrix(std::move(g));
        CHECK(overlap_error(embed_states(gram), gram.matrix()) < 1e-10);
    }
}

TEST_CASE("non-PSD Gram matrices are rejected with the offending eigenvalue") {
    ComplexMatrix g(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) g(i, j) = (i == j) ? 1.0 : ((i + j) % 2 ? 0.9 : -0.9);
    CHECK_THROWS_WITH_AS(static_cast<void>(SideChannelGram::from_matrix(g)),
                         doctest::Contains("min eigenvalue"), std::invalid_argument);
}

TEST_CASE("gram validation rejects bad shapes, diagonals and hermiticity") {
    CHECK_THROWS_AS(static_cast<void>(SideChannelGram::from_matrix(ComplexMatrix::identity(3))),
                    std::invalid_argument);

    ComplexMatrix off_diag = ComplexMatrix::identity(4);
    off_diag(2, 2) = 0.5;
    CHECK_THROWS_AS(static_cast<void>(SideChannelGram::from_matrix(off_diag)),
                    std::invalid_argument);

    ComplexMatrix non_herm = ComplexMatrix::identity(4);
    non_herm(0, 1) = Complex{0.1, 0.0};
    non_herm(1, 0) = Complex{0.3, 0.0};
    CHECK_THROWS_AS(static_cast<void>(SideChannelGram::from_matrix(non_herm)),
                    std::invalid_argument);
}

TEST_CASE("imbalance from the Gram matrix") {
    // All cross-basis overlaps 1: no leakage.
    CHECK(imbalance_from_gram(SideChannelGram::uniform(1.0)).delta == 0.0);

    // Uniform overlap S: delta = (1 - S)/2; orthogonal states saturate at 1/2.
    CHECK(imbalance_from_gram(SideChannelGram::uniform(0.0)).delta ==
          doctest::Approx(0.5).epsilon(1e-15));
    for (double s : {0.2, 0.6, 0.9, 0.98}) {
        CHECK(imbalance_from_gram(SideChannelGram::uniform(s)).delta ==
              doctest::Approx(imbalance_uniform(s).delta).epsilon(1e-15));
    }

    // Cross-basis overlaps summing to 1 + 1 + 1 + 0.8 = 3.8 give
    // (4 - 3.8)/8 = 0.025; realized here with the PSD uniform Gram of the
    // same cross sum (four overlaps of 0.95).
    CHECK(imbalance_from_gram(SideChannelGram::uniform(0.95)).delta ==
          doctest::Approx(0.025).epsilon(1e-14));

    // Nonuniform case against a direct evaluation of the formula.
    std::mt19937 rng(33);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<StateVector> vecs;
        for (int i = 0; i < 4; ++i) vecs.push_back(qkdsc::testing::random_state(rng, 4));
        ComplexMatrix g(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) g(i, j) = vecs[i].inner(vecs[j]);
        const double cross_sum = (g(0, 2) + g(0, 3) + g(1, 2) + g(1, 3)).real();
        const double expected = std::clamp((4.0 - cross_sum) / 8.0, 0.0, 0.5);
        const auto gram = SideChannelGram::from_matrix(std::move(g));
        CHECK(imbalance_from_gram(gram).delta == doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("uniform imbalance endpoints and arithmetic") {
    CHECK(imbalance_uniform(1.0).delta == 0.0);
    CHECK(imbalance_uniform(0.0).delta == 0.5);
    CHECK(imbalance_uniform(0.98).delta == doctest::Approx(0.01).epsilon(1e-14));
    CHECK_THROWS_AS(imbalance_uniform(1.5), std::invalid_argument);
}

TEST_CASE("HOM visibility of pure and mixed states") {
    std::mt19937 rng(32);
    const auto psi = qkdsc::testing::random_state(rng, 2);
    const auto pure = DensityMatrix::pure(psi);
    CHECK(hom_visibility(pure, pure) == doctest::Approx(1.0).epsilon(1e-12));

    const auto zero = DensityMatrix::pure(StateVector::basis(2, 0));
    const auto one = DensityMatrix::pure(StateVector::basis(2, 1));
    CHECK(hom_visibility(zero, one) == doctest::Approx(0.0).epsilon(1e-14));

    ComplexMatrix half = ComplexMatrix::identity(2);
    half *= Complex{0.5, 0.0};
    CHECK(hom_visibility(DensityMatrix(std::move(half)), zero) ==
          doctest::Approx(0.5).epsilon(1e-14));

    // Symmetry on random pairs.
    for (int rep = 0; rep < 10; ++rep) {
        const auto r1 = qkdsc::testing::random_density(rng, 3);
        const auto r2 = qkdsc::testing::random_density(rng, 3);
        CHECK(std::abs(hom_visibility(r1, r2) - hom_visibility(r2, r1)) < 1e-12);
    }

    CHECK_THROWS_AS(hom_visibility(zero, qkdsc::testing::random_density(rng, 3)),
                    std::invalid_argument);
}

TEST_CASE("visibility to imbalance mapping") {
    // Perfect weak-coherent-pulse visibility: no imbalance, exactly.
    CHECK(imbalance_from_visibility(0.5, 0.5).delta == 0.0);
    CHECK(imbalance_from_visibility(0.5, 2.0).delta == 0.0);

    // Zero visibility at mu = 0.5: the raw bound exceeds 1/2 and clamps.
    // Raw value of the formula: 0.792300541032.
    CHECK(imbalance_from_visibility(0.0, 0.5).delta == 0.5);

    // Direct evaluation at v = 0.45, mu = 0.5.
    const double x = std::exp(0.5 * (std::sqrt(0.9) - 1.0));
    const double direct = 0.5 * (1.0 - std::cos(2.0 * std::acos((1.0 + x) / 2.0) + std::acos(x)));
    CHECK(direct == doctest::Approx(0.072234764063).epsilon(1e-9));
    CHECK(imbalance_from_visibility(0.45, 0.5).delta == doctest::Approx(direct).epsilon(1e-12));
    CHECK(imbalance_from_visibility(0.45, 0.5).delta > 0.0);

    // Monotone non-increasing in v on a 100-point grid.
    double prev = 1.0;
    for (int i = 0; i <= 100; ++i) {
        const double v = 0.5 * i / 100.0;
        const double d = imbalance_from_visibility(v, 0.5).delta;
        CHECK(d <= prev + 1e-15);
        CHECK(d >= 0.0);
        CHECK(d <= 0.5);
        prev = d;
    }

    // The bound is only defined up to v = 1/2 for weak coherent pulses.
    CHECK_THROWS_AS(imbalance_from_visibility(0.6, 0.5), std::domain_error);
    CHECK_THROWS_AS(imbalance_from_visibility(-0.1, 0.5), std::domain_error);
    CHECK_THROWS_AS(imbalance_from_visibility(0.3, 0.0), std::domain_error);
}
