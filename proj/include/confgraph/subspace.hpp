#pragma once

#include <string>
#include <vector>

#include "confgraph/algebra.hpp"
#include "confgraph/graph.hpp"
#include "confgraph/random.hpp"
#include "confgraph/representation.hpp"

namespace confgraph {

inline constexpr const char* kRestLabel = "rest";

/// One member S_k of a subspace family.
struct Subspace {
    std::string label;
    /// Group elements whose orbit vectors span S_k; empty for the complement.
    std::vector<Element> members;
    std::vector<StateVector> basis;
    Matrix projector;

    Eigen::Index dim() const noexcept { return static_cast<Eigen::Index>(basis.size()); }
};

class SubspaceError : public Error {
public:
    using Error::Error;
};

/// Mutually orthogonal subspaces of C^d with their projectors.
class SubspaceFamily {
public:
    /// Validates mutual orthogonality (||P_k P_l||_max <= 10 eps) and total
    /// dimension; throws SubspaceError naming the offending pair.
    SubspaceFamily(Eigen::Index ambient_dim, std::vector<Subspace> subspaces, Tolerance tol = {});

    Eigen::Index ambient_dim() const noexcept { return ambient_dim_; }
    const std::vector<Subspace>& subspaces() const noexcept { return subspaces_; }
    std::size_t size() const noexcept { return subspaces_.size(); }
    const Subspace& operator[](std::size_t k) const { return subspaces_[k]; }
    /// Index of the subspace whose members include g, or size() if none.
    std::size_t index_of_element(Element g) const;
    Eigen::Index total_dim() const;
    /// sum_k P_k == I within 10 eps.
    bool is_complete(Tolerance tol = {}) const;

private:
    Eigen::Index ambient_dim_;
    std::vector<Subspace> subspaces_;
};

/// S_k = span{ U_x seed : x in component k }, one subspace per graph
/// component, labelled by component index. Basis vectors are ordered by the
/// smallest element whose orbit vector contributed them.
SubspaceFamily component_subspaces(const ProjectiveRep& rep, const StateVector& seed,
                                   const ConfusabilityGraph& graph, Tolerance tol = {});

/// sum_k P_k rho P_k, without renormalization.
Matrix decohere(const SubspaceFamily& family, const Matrix& rho);

/// Appends the orthogonal complement I - sum_k P_k as subspace "rest" when it
/// has rank >= 1, so that decohere becomes trace preserving.
SubspaceFamily complete_family(const SubspaceFamily& family, Tolerance tol = {});

/// Numerical check that the decoherence map leaves every orbit state alone
/// and that its completion is idempotent and trace preserving.
struct DecoherenceReport {
    Verdict verdict = Verdict::Fail;
    double threshold = 1e-9;
    double max_fixed_point_residual = 0.0;
    Element worst_element = 0;
    double idempotence_residual = 0.0;
    double trace_defect = 0.0;
    std::size_t probes = 0;
};

DecoherenceReport verify_decoherence(const ProjectiveRep& rep, const StateVector& seed,
                                     const SubspaceFamily& family, Rng& rng, std::size_t probes = 4,
                                     double threshold = 1e-9, Tolerance tol = {});

}  // namespace confgraph
