#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "confgraph/random.hpp"
#include "confgraph/subspace.hpp"
#include "oracles.hpp"
#include "systems.hpp"

namespace confgraph {
namespace {

using testkit::System;
using testkit::unit;

SubspaceFamily family_of(const System& sys) {
    return component_subspaces(sys.rep, sys.seed, build_graph(sys.rep, sys.seed));
}

Subspace line(const std::string& label, const StateVector& v) {
    Subspace s;
    s.label = label;
    s.basis = {v};
    s.projector = pure_state(v);
    return s;
}

TEST(ComponentSubspaces, Z6Lines) {
    const System sys = testkit::z6_phase();
    const auto family = family_of(sys);
    ASSERT_EQ(family.size(), 3u);
    const double third = 2.0 * std::numbers::pi / 3.0;
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_EQ(family[k].dim(), 1);
        EXPECT_EQ(family[k].label, std::to_string(k));
        const StateVector expect =
            unit({1.0, std::polar(1.0, third * static_cast<double>(k)), std::polar(1.0, 2.0 * third * static_cast<double>(k))});
        EXPECT_NEAR(std::abs(family[k].basis[0].dot(expect)), 1.0, 1e-12);
    }
    EXPECT_TRUE(family.is_complete());
    EXPECT_EQ(family.index_of_element(4), 1u);
}

TEST(ComponentSubspaces, KleinRays) {
    const System sys = testkit::klein_pauli();
    const auto family = family_of(sys);
    ASSERT_EQ(family.size(), 2u);
    EXPECT_NEAR(std::abs(family[0].basis[0](0)), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(family[1].basis[0](1)), 1.0, 1e-12);
}

TEST(ComponentSubspaces, RegularCase) {
    const System sys = testkit::z3_regular();
    const auto family = family_of(sys);
    ASSERT_EQ(family.size(), 3u);
    for (const auto& s : family.subspaces()) {
        EXPECT_EQ(s.dim(), 1);
    }
}

TEST(ComponentSubspaces, DimensionsMatchRankOracle) {
    Rng rng(41);
    for (std::size_t i = 0; i < 20; ++i) {
        const System sys = testkit::random_system(rng, i);
        const auto graph = build_graph(sys.rep, sys.seed);
        const auto family = component_subspaces(sys.rep, sys.seed, graph);
        const auto states = orbit(sys.rep, sys.seed);
        for (std::size_t k = 0; k < family.size(); ++k) {
            std::vector<StateVector> vs;
            for (Element x : graph.components()[k]) {
                vs.push_back(states[x]);
            }
            EXPECT_EQ(static_cast<std::size_t>(family[k].dim()), oracle::row_reduction_rank(vs, 1e-9)) << sys.name;
        }
    }
}

TEST(SubspaceFamily, RejectsOverlap) {
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<Subspace> subs = {line("a", unit({1.0, 0.0})), line("b", unit({s, s}))};
    try {
        SubspaceFamily(2, subs);
        FAIL();
    } catch (const SubspaceError& e) {
        const std::string what = e.what();
        EXPECT_NE(what.find("a and b"), std::string::npos) << what;
    }
    std::vector<Subspace> too_many = {line("a", unit({1.0, 0.0})), line("b", unit({0.0, 1.0})),
                                      line("c", unit({0.0, 1.0}))};
    EXPECT_THROW(SubspaceFamily(2, too_many), SubspaceError);
}

TEST(Decohere, OrbitStatesFixed) {
    for (const auto& sys : testkit::bundled_systems()) {
        const auto family = family_of(sys);
        for (const auto& phi : orbit(sys.rep, sys.seed)) {
            const Matrix rho = pure_state(phi);
            EXPECT_LE(max_abs(decohere(family, rho) - rho), 1e-9) << sys.name;
        }
    }
}

TEST(Decohere, SupportedInsideOneSubspace) {
    const System sys = testkit::s3_permutation();
    const auto family = family_of(sys);
    Rng rng(43);
    for (const auto& s : family.subspaces()) {
        StateVector psi = StateVector::Zero(sys.rep.dim());
        for (const auto& b : s.basis) {
            psi += complex_gaussian(1, rng)(0) * b;
        }
        psi.normalize();
        const Matrix rho = pure_state(psi);
        EXPECT_LT(max_abs(decohere(family, rho) - rho), 1e-12);
    }
}

TEST(Decohere, CrossTermsRemoved) {
    const System sys = testkit::klein_pauli();
    const auto family = family_of(sys);
    const StateVector b1 = family[0].basis[0];
    const StateVector b2 = family[1].basis[0];
    const StateVector psi = (b1 + b2) / std::sqrt(2.0);
    const Matrix expect = 0.5 * (pure_state(b1) + pure_state(b2));
    EXPECT_LT(max_abs(decohere(family, pure_state(psi)) - expect), 1e-12);
}

TEST(CompleteFamily, AlreadyComplete) {
    const auto family = family_of(testkit::z6_phase());
    const auto completed = complete_family(family);
    EXPECT_EQ(completed.size(), 3u);
}

TEST(CompleteFamily, AppendsRest) {
    std::vector<Subspace> one = {line("0", unit({1.0, 1.0, 0.0}))};
    const SubspaceFamily family(3, one);
    const auto completed = complete_family(family);
    ASSERT_EQ(completed.size(), 2u);
    EXPECT_EQ(completed[1].label, kRestLabel);
    EXPECT_EQ(completed[1].dim(), 2);
    EXPECT_TRUE(completed[1].members.empty());
    EXPECT_TRUE(completed.is_complete());
    EXPECT_FALSE(family.is_complete());
}

TEST(CompleteFamily, RandomFamiliesBecomeComplete) {
    Rng rng(47);
    for (std::size_t i = 0; i < 30; ++i) {
        const System sys = testkit::random_system(rng, i);
        const auto completed = complete_family(family_of(sys));
        EXPECT_TRUE(completed.is_complete()) << sys.name;
        EXPECT_EQ(completed.total_dim(), sys.rep.dim()) << sys.name;
        const Matrix rho = random_density(sys.rep.dim(), rng);
        const Matrix once = decohere(completed, rho);
        EXPECT_LT(max_abs(decohere(completed, once) - once), 1e-9) << sys.name;
        EXPECT_NEAR(once.trace().real(), 1.0, 1e-9) << sys.name;
    }
}

TEST(VerifyDecoherence, BundledPass) {
    for (const auto& sys : testkit::bundled_systems()) {
        Rng rng(kDefaultRngSeed);
        const auto report = verify_decoherence(sys.rep, sys.seed, family_of(sys), rng);
        EXPECT_EQ(report.verdict, Verdict::Pass) << sys.name;
        EXPECT_LE(report.max_fixed_point_residual, 1e-9);
        EXPECT_LE(report.idempotence_residual, 1e-9);
    }
}

TEST(VerifyDecoherence, WrongFamilyFails) {
    // A family that splits the Z_6 seed direction away: the seed is not fixed.
    const System sys = testkit::z6_phase();
    std::vector<Subspace> subs = {line("x", unit({1.0, 0.0, 0.0})), line("y", unit({0.0, 1.0, 0.0}))};
    const SubspaceFamily wrong(3, subs);
    Rng rng(1);
    const auto report = verify_decoherence(sys.rep, sys.seed, wrong, rng);
    EXPECT_EQ(report.verdict, Verdict::Fail);
    EXPECT_GT(report.max_fixed_point_residual, 0.1);
}

}  // namespace
}  // namespace confgraph
