#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "confgraph/algebra.hpp"
#include "confgraph/random.hpp"
#include "oracles.hpp"

namespace confgraph {
namespace {

const Complex I(0.0, 1.0);

StateVector vec(std::initializer_list<Complex> xs) {
    StateVector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (Complex x : xs) {
        v(i++) = x;
    }
    return v;
}

TEST(Tolerance, DefaultAndRange) {
    EXPECT_DOUBLE_EQ(Tolerance().eps(), 1e-9);
    EXPECT_DOUBLE_EQ(Tolerance(0.0).eps(), 0.0);
    EXPECT_THROW(Tolerance(-1e-12), std::invalid_argument);
    EXPECT_THROW(Tolerance(1.0), std::invalid_argument);
    EXPECT_THROW(Tolerance(std::nan("")), std::invalid_argument);
}

TEST(InnerProduct, BasisVectors) {
    EXPECT_EQ(inner_product(vec({1, 0}), vec({0, 1})), Complex(0));
    EXPECT_EQ(inner_product(vec({1, 0}), vec({1, 0})), Complex(1));
}

TEST(InnerProduct, ConjugateLinearInFirstArgument) {
    const double s = 1.0 / std::sqrt(2.0);
    EXPECT_LT(std::abs(inner_product(vec({s, I * s}), vec({s, -I * s}))), 1e-15);
    // <i e0 | e0> = -i
    EXPECT_EQ(inner_product(vec({I, 0}), vec({1, 0})), -I);
}

TEST(InnerProduct, DimensionMismatchThrows) {
    EXPECT_THROW(inner_product(vec({1, 0}), vec({1, 0, 0})), DimensionError);
}

TEST(IsUnitary, Examples) {
    EXPECT_TRUE(is_unitary(Matrix::Identity(2, 2)));
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 2.0;
    EXPECT_FALSE(is_unitary(d));
    Matrix h(2, 2);
    h << 1.0, 1.0, 1.0, -1.0;
    h /= std::sqrt(2.0);
    EXPECT_TRUE(is_unitary(h));
    EXPECT_THROW(is_unitary(Matrix::Zero(2, 3)), DimensionError);
}

TEST(IsUnitary, HaarSamples) {
    Rng rng(7);
    for (int d = 1; d <= 6; ++d) {
        EXPECT_TRUE(is_unitary(haar_unitary(d, rng)));
    }
}

TEST(OrthonormalSpan, Examples) {
    std::vector<StateVector> dup = {vec({1, 0}), vec({1, 0})};
    EXPECT_EQ(orthonormal_span(dup).size(), 1u);

    std::vector<StateVector> both = {vec({1, 0}), vec({0, 1})};
    const auto b = orthonormal_span(both);
    ASSERT_EQ(b.size(), 2u);
    EXPECT_LT(std::abs(inner_product(b[0], b[1])), 1e-15);

    const double s = 1.0 / std::sqrt(2.0);
    std::vector<StateVector> three = {vec({s, s, 0}), vec({s, -s, 0}), vec({1, 0, 0})};
    EXPECT_EQ(orthonormal_span(three).size(), 2u);
    EXPECT_EQ(oracle::row_reduction_rank(three, 1e-9), 2u);

    EXPECT_TRUE(orthonormal_span({}).empty());
}

TEST(OrthonormalSpan, RankMatchesRowReductionOnRandomSpans) {
    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const Eigen::Index d = 2 + trial % 5;
        const Eigen::Index r = 1 + trial % d;
        // Vectors drawn from an r-dimensional subspace, plus repeats.
        std::vector<StateVector> gens;
        for (Eigen::Index i = 0; i < r; ++i) {
            gens.push_back(complex_gaussian(d, rng));
        }
        std::vector<StateVector> vs = gens;
        for (int k = 0; k < 3; ++k) {
            StateVector mix = StateVector::Zero(d);
            for (const auto& g : gens) {
                mix += complex_gaussian(1, rng)(0) * g;
            }
            vs.push_back(mix);
        }
        const auto basis = orthonormal_span(vs);
        EXPECT_EQ(basis.size(), oracle::row_reduction_rank(vs, 1e-9));
        EXPECT_EQ(static_cast<Eigen::Index>(basis.size()), r);
        const Matrix b = basis_matrix(basis);
        EXPECT_LT(max_abs(b.adjoint() * b - Matrix::Identity(r, r)), 1e-12);
    }
}

TEST(ProjectorOnto, Examples) {
    std::vector<StateVector> e0 = {vec({1, 0})};
    Matrix expect0 = Matrix::Zero(2, 2);
    expect0(0, 0) = 1.0;
    EXPECT_LT(max_abs(projector_onto(e0) - expect0), 1e-15);

    std::vector<StateVector> full = {vec({0, 0, 1}), vec({1, 0, 0}), vec({0, 1, 0})};
    EXPECT_LT(max_abs(projector_onto(full) - Matrix::Identity(3, 3)), 1e-15);

    const double s = 1.0 / std::sqrt(2.0);
    std::vector<StateVector> plus = {vec({s, s})};
    Matrix half = Matrix::Constant(2, 2, 0.5);
    EXPECT_LT(max_abs(projector_onto(plus) - half), 1e-15);
}

TEST(ProjectorOnto, RejectsNonOrthonormal) {
    std::vector<StateVector> bad = {vec({1, 0}), vec({1, 1})};
    EXPECT_THROW(projector_onto(bad), DimensionError);
    std::vector<StateVector> unnormalized = {vec({2, 0})};
    EXPECT_THROW(projector_onto(unnormalized), DimensionError);
    EXPECT_THROW(projector_onto({}), DimensionError);
}

TEST(ProjectorOnto, IdempotentAndSelfAdjoint) {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<StateVector> vs = {complex_gaussian(5, rng), complex_gaussian(5, rng)};
        const Matrix p = projector_onto(orthonormal_span(vs));
        EXPECT_LT(max_abs(p * p - p), 1e-12);
        EXPECT_LT(max_abs(p - p.adjoint()), 1e-15);
        EXPECT_NEAR(p.trace().real(), 2.0, 1e-12);
    }
}

TEST(Density, Checks) {
    Rng rng(5);
    const Matrix rho = random_density(4, rng);
    EXPECT_TRUE(is_density_operator(rho));
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
    EXPECT_GE(min_hermitian_eigenvalue(rho), -1e-12);

    Matrix neg = Matrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    EXPECT_FALSE(is_density_operator(neg));
    EXPECT_NEAR(min_hermitian_eigenvalue(neg), -0.5, 1e-12);

    const StateVector psi = random_unit_vector(3, rng);
    EXPECT_TRUE(is_density_operator(pure_state(psi)));
}

TEST(Requirements, NormalizationAndShape) {
    EXPECT_NO_THROW(require_normalized(vec({0.6, 0.8 * I}), Tolerance(), "state"));
    EXPECT_THROW(require_normalized(vec({1, 1}), Tolerance(), "state"), DimensionError);
    EXPECT_NO_THROW(require_square(Matrix::Identity(3, 3), 3, "m"));
    EXPECT_THROW(require_square(Matrix::Identity(3, 3), 2, "m"), DimensionError);
}

}  // namespace
}  // namespace confgraph
