#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "confgraph/algebra.hpp"
#include "confgraph/graph.hpp"
#include "confgraph/random.hpp"
#include "confgraph/representation.hpp"
#include "confgraph/subspace.hpp"

namespace confgraph {

class ChannelError : public Error {
public:
    using Error::Error;
};

/// Completely positive trace-preserving map rho -> sum_i K_i rho K_i^dagger.
class QuantumChannel {
public:
    /// Throws ChannelError unless every K_i is d x d and
    /// ||sum_i K_i^dagger K_i - I||_max <= eps.
    static QuantumChannel from_kraus(std::vector<Matrix> kraus, Tolerance tol = {});

    /// Kraus operators {P_k} of a complete subspace family: the decoherence
    /// map as a channel.
    static QuantumChannel from_family(const SubspaceFamily& family, Tolerance tol = {});

    Eigen::Index dim() const noexcept { return dim_; }
    const std::vector<Matrix>& kraus() const noexcept { return kraus_; }
    double trace_preservation_residual() const noexcept { return tp_residual_; }

private:
    QuantumChannel() = default;

    Eigen::Index dim_ = 0;
    std::vector<Matrix> kraus_;
    double tp_residual_ = 0.0;
};

Matrix apply(const QuantumChannel& channel, const Matrix& rho);

/// J = sum_ij |i><j| (x) C(|i><j|), a d^2 x d^2 matrix with
/// J(i d + a, j d + b) = C(|i><j|)(a, b).
Matrix choi_matrix(const QuantumChannel& channel);

/// C(rho)(a, b) = sum_ij rho(i, j) J(i d + a, j d + b).
Matrix apply_via_choi(const Matrix& choi, const Matrix& rho);

/// Positive semidefinite with Tr_out J = I, each within eps.
bool is_valid_choi(const Matrix& choi, Eigen::Index dim, Tolerance tol = {});

struct CovarianceReport {
    bool covariant = false;
    /// max over g of ||Choi(C o U_g) - Choi(U_g o C)||_max
    double max_residual = 0.0;
    Element worst_element = 0;
};

/// C o U_g == U_g o C for every g, compared on Choi matrices.
CovarianceReport is_covariant(const QuantumChannel& channel, const ProjectiveRep& rep, Tolerance tol = {});

/// ||C(psi psi^dagger) - psi psi^dagger||_max
double fixed_point_residual(const QuantumChannel& channel, const StateVector& psi);

bool is_pure_fixed_point(const QuantumChannel& channel, const StateVector& psi, Tolerance tol = {});

struct DfsOptions {
    std::size_t trials = 100;
    std::uint64_t rng_seed = kDefaultRngSeed;
    /// Acceptance threshold on every per-state residual.
    double residual_threshold = 1e-8;
};

struct ComponentDfsResult {
    std::string label;
    std::vector<Element> members;
    Eigen::Index dim = 0;
    std::size_t trials = 0;
    /// max over Haar-random psi in S_k of ||C(psi psi^dagger) - psi psi^dagger||_max
    double max_random_residual = 0.0;
    /// max over basis pairs of ||C(|b_i><b_j|) - |b_i><b_j|||_max
    double max_matrix_unit_residual = 0.0;
};

struct DfsReport {
    Verdict verdict = Verdict::PremiseFailed;
    bool covariant = false;
    double covariance_residual = 0.0;
    bool seed_fixed = false;
    double seed_residual = 0.0;
    std::uint64_t rng_seed = 0;
    double residual_threshold = 0.0;
    /// Empty when a premise failed.
    std::vector<ComponentDfsResult> components;
};

/// Checks that every component subspace of the confusability graph of
/// (rep, seed) is decoherence free for a covariant channel fixing the seed.
/// Premises are re-checked first; when either fails no trials run.
DfsReport verify_dfs(const QuantumChannel& channel, const ProjectiveRep& rep, const StateVector& seed,
                     const DfsOptions& options = {}, Tolerance tol = {});

struct OrbitFixedPointReport {
    bool covariant = false;
    bool seed_fixed = false;
    double max_residual = 0.0;
    /// Orbit elements g whose state U_g seed is not fixed.
    std::vector<Element> violators;
    /// Covariance and a fixed seed imply an empty violator list.
    bool consistent = false;
};

OrbitFixedPointReport orbit_fixed_points(const QuantumChannel& channel, const ProjectiveRep& rep,
                                         const StateVector& seed, Tolerance tol = {});

}  // namespace confgraph
