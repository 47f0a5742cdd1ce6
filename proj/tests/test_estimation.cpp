#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "confgraph/channel.hpp"
#include "confgraph/estimation.hpp"
#include "confgraph/random.hpp"
#include "systems.hpp"

namespace confgraph {
namespace {

using testkit::System;

SubspaceFamily family_of(const System& sys) {
    return component_subspaces(sys.rep, sys.seed, build_graph(sys.rep, sys.seed));
}

Matrix z6_xi() {
    const StateVector eta = StateVector::Ones(3);
    return eta * eta.adjoint() / 6.0;
}

PovmErrorKind povm_error_kind(const ProjectiveRep& rep, const Matrix& xi, double* residual = nullptr) {
    try {
        validate_povm(rep, xi);
    } catch (const PovmError& e) {
        if (residual) {
            *residual = e.residual();
        }
        return e.kind();
    }
    ADD_FAILURE() << "POVM accepted";
    return PovmErrorKind::Shape;
}

TEST(ValidatePovm, Z6Seed) {
    const System sys = testkit::z6_phase();
    const auto povm = validate_povm(sys.rep, z6_xi());
    EXPECT_EQ(povm.elements().size(), 6u);
    EXPECT_LT(povm.completeness_residual(), 1e-12);
    EXPECT_GE(povm.min_eigenvalue(), -1e-12);
    Matrix sum = Matrix::Zero(3, 3);
    for (const auto& p : povm.elements()) {
        sum += p;
    }
    EXPECT_LT(max_abs(sum - Matrix::Identity(3, 3)), 1e-12);
}

TEST(ValidatePovm, ScaledIdentityAlwaysValid) {
    Rng rng(67);
    for (std::size_t i = 0; i < 10; ++i) {
        const System sys = testkit::random_system(rng, i);
        const Matrix xi = Matrix::Identity(sys.rep.dim(), sys.rep.dim()) / static_cast<double>(sys.group->order());
        EXPECT_NO_THROW(validate_povm(sys.rep, xi)) << sys.name;
    }
}

TEST(ValidatePovm, Errors) {
    const System sys = testkit::z6_phase();
    double residual = 0.0;
    EXPECT_EQ(povm_error_kind(sys.rep, z6_xi() * 6.0, &residual), PovmErrorKind::Incomplete);
    EXPECT_NEAR(residual, 5.0, 1e-12);
    EXPECT_EQ(povm_error_kind(sys.rep, Matrix::Identity(2, 2)), PovmErrorKind::Shape);
    Matrix negative = Matrix::Identity(3, 3) / 6.0;
    negative(0, 0) = -0.1;
    EXPECT_EQ(povm_error_kind(sys.rep, negative), PovmErrorKind::NotPositive);
    Matrix skew = Matrix::Identity(3, 3) / 6.0;
    skew(0, 1) = 0.1;
    EXPECT_EQ(povm_error_kind(sys.rep, skew), PovmErrorKind::NotPositive);
}

TEST(CostFunction, DeltaAndInvariance) {
    const FiniteGroup z3 = cyclic_group(3);
    const auto delta = CostFunction::delta(z3);
    EXPECT_EQ(delta(1, 1), 0.0);
    EXPECT_EQ(delta(1, 2), 1.0);

    // c(guess, truth) = w(truth - guess) is left invariant on an abelian group.
    std::vector<std::vector<double>> circ = {{0, 1, 2}, {2, 0, 1}, {1, 2, 0}};
    EXPECT_NO_THROW(CostFunction::from_matrix(z3, circ));
    std::vector<std::vector<double>> bad = {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}};
    EXPECT_THROW(CostFunction::from_matrix(z3, bad), CostError);
    EXPECT_THROW(CostFunction::from_matrix(z3, {{0, 1}, {1, 0}}), CostError);
}

TEST(EvaluateCost, Z6DeltaIsHalf) {
    const System sys = testkit::z6_phase();
    const auto povm = validate_povm(sys.rep, z6_xi());
    const auto report = evaluate_cost(sys.rep, sys.seed, povm, CostFunction::delta(*sys.group));
    EXPECT_NEAR(report.worst_case, 0.5, 1e-9);
    EXPECT_LE(report.spread, 1e-9);
    // Closed form: <phi_g|P(k)|phi_g> = 3 |f(k - g)|^2 / 6.
    const auto f = characteristic_function(sys.rep, sys.seed);
    for (Element g = 0; g < 6; ++g) {
        double expect = 0.0;
        for (Element k = 0; k < 6; ++k) {
            if (k != g) {
                expect += 3.0 * std::norm(f((k + 6 - g) % 6)) / 6.0;
            }
        }
        EXPECT_NEAR(report.per_element[g], expect, 1e-12);
    }
}

TEST(EvaluateCost, OrthonormalOrbitIsZero) {
    const System sys = testkit::z3_regular();
    const Matrix xi = 3.0 / 3.0 * pure_state(sys.seed);
    const auto povm = validate_povm(sys.rep, xi);
    const auto report = evaluate_cost(sys.rep, sys.seed, povm, CostFunction::delta(*sys.group));
    EXPECT_NEAR(report.worst_case, 0.0, 1e-12);
}

TEST(EvaluateCost, ZeroCostIsZero) {
    const System sys = testkit::z6_phase();
    const auto zero = CostFunction::from_matrix(*sys.group, std::vector<std::vector<double>>(6, std::vector<double>(6, 0.0)));
    const auto report = evaluate_cost(sys.rep, sys.seed, validate_povm(sys.rep, z6_xi()), zero);
    EXPECT_EQ(report.worst_case, 0.0);
}

TEST(EvaluateCost, CovariantPovmHasFlatProfile) {
    Rng rng(71);
    for (std::size_t i = 0; i < 10; ++i) {
        const System sys = testkit::random_system(rng, i);
        const Eigen::Index d = sys.rep.dim();
        const Matrix xi = Matrix::Identity(d, d) / static_cast<double>(sys.group->order());
        const auto report =
            evaluate_cost(sys.rep, sys.seed, validate_povm(sys.rep, xi), CostFunction::delta(*sys.group));
        EXPECT_LE(report.spread, 1e-9) << sys.name;
    }
}

TEST(SyndromeReduce, Z6SecretFour) {
    const System sys = testkit::z6_phase();
    const auto family = family_of(sys);
    const auto r = syndrome_reduce(sys.rep, sys.seed, family, 4);
    EXPECT_EQ(r.coset_label, "1");
    EXPECT_EQ(family[r.component].members, (std::vector<Element>{1, 4}));
    EXPECT_EQ(r.representative, 1u);
    EXPECT_EQ(r.residual_element, 3u);
    EXPECT_LE(r.non_disturbance_residual, 1e-9);
    EXPECT_NEAR(r.phase_overlap, 1.0, 1e-9);
    ASSERT_EQ(r.reduced_state.size(), 1);
    EXPECT_NEAR(std::abs(r.reduced_state(0)), 1.0, 1e-9);
}

TEST(SyndromeReduce, IdentitySecret) {
    const System sys = testkit::z6_phase();
    const auto r = syndrome_reduce(sys.rep, sys.seed, family_of(sys), 0);
    EXPECT_EQ(r.representative, 0u);
    EXPECT_EQ(r.residual_element, 0u);
    EXPECT_NEAR(std::abs(r.reduced_state(0)), 1.0, 1e-12);
}

TEST(SyndromeReduce, S3ThreeCycle) {
    const System sys = testkit::s3_permutation();
    const auto family = family_of(sys);
    const auto& names = sys.group->names();
    const Element c = static_cast<Element>(std::find(names.begin(), names.end(), "(1 2 3)") - names.begin());
    const auto r = syndrome_reduce(sys.rep, sys.seed, family, c);
    const auto& h = family[0].members;
    EXPECT_NE(std::find(h.begin(), h.end(), r.residual_element), h.end());
    EXPECT_EQ(sys.group->mul(r.representative, r.residual_element), c);
    EXPECT_EQ(r.reduced_state.size(), 1);
    EXPECT_LE(r.non_disturbance_residual, 1e-9);
}

TEST(SyndromeReduce, NoCaptureThrows) {
    const System sys = testkit::z6_phase();
    std::vector<Subspace> subs(1);
    subs[0].label = "0";
    subs[0].members = {0, 3};
    subs[0].basis = {testkit::unit({1.0, 0.0, 0.0})};
    subs[0].projector = pure_state(subs[0].basis[0]);
    const SubspaceFamily wrong(3, subs);
    EXPECT_THROW(syndrome_reduce(sys.rep, sys.seed, wrong, 1), ReductionError);
    const auto report = verify_reduction(sys.rep, sys.seed, wrong);
    EXPECT_EQ(report.verdict, Verdict::Fail);
    EXPECT_FALSE(report.error.empty());
}

TEST(ReducedProblem, Z6) {
    const System sys = testkit::z6_phase();
    const auto family = family_of(sys);
    const auto reduced = reduced_problem(sys.rep, sys.seed, Subset(*sys.group, {0, 3}), family);
    EXPECT_EQ(reduced.members, (std::vector<Element>{0, 3}));
    EXPECT_EQ(reduced.rep.dim(), 1);
    for (Element i = 0; i < 2; ++i) {
        EXPECT_LT(std::abs(reduced.rep.matrix(i)(0, 0) - Complex(1.0)), 1e-12);
    }
}

TEST(ReducedProblem, SingleComponentEquivalentToRestriction) {
    const System sys = testkit::z3_invariant();
    const auto family = family_of(sys);
    const auto reduced = reduced_problem(sys.rep, sys.seed, Subset(*sys.group, {0, 1, 2}), family);
    EXPECT_EQ(reduced.rep.dim(), 1);
    EXPECT_EQ(reduced.subgroup->order(), 3u);
    // Restriction of U to the orbit span, expressed in the S_H basis.
    for (Element g = 0; g < 3; ++g) {
        const Matrix restricted = reduced.basis.adjoint() * sys.rep.matrix(g) * reduced.basis;
        EXPECT_LT(max_abs(restricted - reduced.rep.matrix(g)), 1e-12);
    }
}

TEST(ReducedProblem, Z2Dim3Trivial) {
    const System sys = testkit::z2_dim3();
    const auto family = family_of(sys);
    const auto reduced = reduced_problem(sys.rep, sys.seed, Subset(*sys.group, {0}), family);
    EXPECT_EQ(reduced.subgroup->order(), 1u);
    EXPECT_EQ(reduced.rep.dim(), 1);
    EXPECT_THROW(reduced_problem(sys.rep, sys.seed, Subset(*sys.group, {0, 1}), family), ReductionError);
}

TEST(LiftReducedPovm, Z6MatchesReducedCost) {
    const System sys = testkit::z6_phase();
    const auto family = family_of(sys);
    const auto reduced = reduced_problem(sys.rep, sys.seed, Subset(*sys.group, {0, 3}), family);
    Matrix half(1, 1);
    half(0, 0) = 0.5;
    const auto reduced_povm = validate_povm(reduced.rep, half);
    const auto reduced_cost = evaluate_cost(reduced.rep, reduced.seed, reduced_povm,
                                            CostFunction::delta(*reduced.subgroup));
    const auto lifted = lift_reduced_povm(sys.rep, family, reduced, reduced_povm.elements());
    Matrix sum = Matrix::Zero(3, 3);
    for (const auto& p : lifted) {
        sum += p;
        EXPECT_GE(min_hermitian_eigenvalue(p), -1e-12);
    }
    EXPECT_LT(max_abs(sum - Matrix::Identity(3, 3)), 1e-12);
    const auto full_cost = evaluate_cost(sys.rep, sys.seed, lifted, CostFunction::delta(*sys.group));
    EXPECT_NEAR(reduced_cost.worst_case, 0.5, 1e-9);
    EXPECT_NEAR(full_cost.worst_case, reduced_cost.worst_case, 1e-9);
}

TEST(LiftReducedPovm, IncompleteFamilyStillComplete) {
    const System sys = testkit::z2_dim3();
    const auto family = family_of(sys);
    const auto reduced = reduced_problem(sys.rep, sys.seed, Subset(*sys.group, {0}), family);
    const std::vector<Matrix> one = {Matrix::Identity(1, 1)};
    const auto lifted = lift_reduced_povm(sys.rep, family, reduced, one);
    Matrix sum = Matrix::Zero(3, 3);
    for (const auto& p : lifted) {
        sum += p;
    }
    EXPECT_LT(max_abs(sum - Matrix::Identity(3, 3)), 1e-12);
    const auto cost = evaluate_cost(sys.rep, sys.seed, lifted, CostFunction::delta(*sys.group));
    EXPECT_NEAR(cost.worst_case, 0.0, 1e-12);
}

TEST(VerifyReduction, BundledAndRandomPass) {
    for (const auto& sys : testkit::bundled_systems()) {
        const auto report = verify_reduction(sys.rep, sys.seed, family_of(sys));
        EXPECT_EQ(report.verdict, Verdict::Pass) << sys.name << ": " << report.error;
        EXPECT_EQ(report.results.size(), sys.group->order());
    }
    Rng rng(73);
    for (std::size_t i = 0; i < 15; ++i) {
        const System sys = testkit::random_system(rng, i);
        const auto report = verify_reduction(sys.rep, sys.seed, family_of(sys));
        EXPECT_EQ(report.verdict, Verdict::Pass) << sys.name << ": " << report.error;
    }
}

}  // namespace
}  // namespace confgraph
