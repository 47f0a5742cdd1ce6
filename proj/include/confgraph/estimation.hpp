#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "confgraph/algebra.hpp"
#include "confgraph/graph.hpp"
#include "confgraph/group.hpp"
#include "confgraph/representation.hpp"
#include "confgraph/subspace.hpp"

namespace confgraph {

enum class PovmErrorKind { Shape, NotPositive, Incomplete };

class PovmError : public Error {
public:
    PovmError(PovmErrorKind kind, const std::string& what, double residual)
        : Error(what), kind_(kind), residual_(residual) {}
    PovmErrorKind kind() const noexcept { return kind_; }
    /// Completeness residual or most negative eigenvalue, depending on kind.
    double residual() const noexcept { return residual_; }

private:
    PovmErrorKind kind_;
    double residual_;
};

/// Covariant POVM P(g) = U_g xi U_g^dagger over a finite group.
class CovariantPovm {
public:
    const Matrix& seed_operator() const noexcept { return seed_operator_; }
    const std::vector<Matrix>& elements() const noexcept { return elements_; }
    /// ||sum_g P(g) - I||_max
    double completeness_residual() const noexcept { return completeness_residual_; }
    double min_eigenvalue() const noexcept { return min_eigenvalue_; }

private:
    friend CovariantPovm validate_povm(const ProjectiveRep&, const Matrix&, Tolerance);

    Matrix seed_operator_;
    std::vector<Matrix> elements_;
    double completeness_residual_ = 0.0;
    double min_eigenvalue_ = 0.0;
};

/// Builds every P(g) and checks xi >= -eps (Hermitian within eps) and
/// completeness within eps. Throws PovmError.
CovariantPovm validate_povm(const ProjectiveRep& rep, const Matrix& seed_operator, Tolerance tol = {});

class CostError : public Error {
public:
    using Error::Error;
};

/// Cost c(guess, truth) with c(h guess, h truth) == c(guess, truth) exactly.
class CostFunction {
public:
    /// 1 - [guess == truth]
    static CostFunction delta(const FiniteGroup& group);
    /// values[guess][truth]. Throws CostError for a wrong shape, non-finite
    /// entries or a failure of left invariance.
    static CostFunction from_matrix(const FiniteGroup& group, const std::vector<std::vector<double>>& values);

    std::size_t order() const noexcept { return order_; }
    double operator()(Element guess, Element truth) const { return values_[guess * order_ + truth]; }

private:
    CostFunction() = default;

    std::size_t order_ = 0;
    std::vector<double> values_;
};

struct CostReport {
    /// max over g of per_element[g]
    double worst_case = 0.0;
    /// per_element[g] = sum_guess c(guess, g) <phi_g|P(guess)|phi_g>
    std::vector<double> per_element;
    /// max - min of per_element; zero for covariant POVMs with invariant costs.
    double spread = 0.0;
};

/// Worst-case expected cost over the orbit, for an arbitrary POVM indexed by
/// group elements.
CostReport evaluate_cost(const ProjectiveRep& rep, const StateVector& seed, std::span<const Matrix> povm,
                         const CostFunction& cost, Tolerance tol = {});

CostReport evaluate_cost(const ProjectiveRep& rep, const StateVector& seed, const CovariantPovm& povm,
                         const CostFunction& cost, Tolerance tol = {});

class ReductionError : public Error {
public:
    using Error::Error;
};

/// The estimation problem restricted to the identity component H acting on
/// S_H = span{ U_h seed : h in H }.
struct ReducedProblem {
    std::shared_ptr<const FiniteGroup> subgroup;
    /// members[i] is the element of G at local index i.
    std::vector<Element> members;
    /// d x dim(S_H), orthonormal columns.
    Matrix basis;
    /// B^dagger U_h B for h in H.
    ProjectiveRep rep;
    /// B^dagger seed.
    StateVector seed;
};

/// Compresses U restricted to H onto S_H. Throws RepError if a compressed
/// matrix is not unitary (S_H not invariant, a tolerance failure).
ReducedProblem reduced_problem(const ProjectiveRep& rep, const StateVector& seed, const Subset& h,
                               const SubspaceFamily& family, Tolerance tol = {});

struct ReductionResult {
    Element secret = 0;
    std::size_t component = 0;
    std::string coset_label;
    /// Canonical coset representative: the minimal element index.
    Element representative = 0;
    /// representative^-1 secret, an element of H.
    Element residual_element = 0;
    /// U_rep^dagger U_secret seed in the S_H basis.
    StateVector reduced_state;
    /// ||P_k phi_g - phi_g||
    double non_disturbance_residual = 0.0;
    /// |<phi_h | U_rep^dagger phi_g>|, 1 when the states agree up to phase.
    double phase_overlap = 0.0;
};

/// Identifies the coset of `secret` by the subspace that captures its orbit
/// state, undoes the coset representative and checks that the result is
/// U_h seed up to a global phase. Throws ReductionError when no component
/// captures the state or the result is not the expected state.
ReductionResult syndrome_reduce(const ProjectiveRep& rep, const StateVector& seed, const SubspaceFamily& family,
                                const ReducedProblem& reduced, Element secret, Tolerance tol = {});

ReductionResult syndrome_reduce(const ProjectiveRep& rep, const StateVector& seed, const SubspaceFamily& family,
                                Element secret, Tolerance tol = {});

/// The two-stage strategy as one POVM on the full space: measure the coset
/// subspaces, then apply the reduced POVM after undoing the representative.
/// Element g~ h gets U_g~ B Q(h) B^dagger U_g~^dagger; the complement of the
/// family (if any) is added to the identity's effect so the result is
/// complete.
std::vector<Matrix> lift_reduced_povm(const ProjectiveRep& rep, const SubspaceFamily& family,
                                      const ReducedProblem& reduced, std::span<const Matrix> reduced_povm);

struct ReductionReport {
    Verdict verdict = Verdict::Fail;
    double threshold = 1e-9;
    std::size_t subgroup_order = 0;
    Eigen::Index reduced_dim = 0;
    double max_non_disturbance_residual = 0.0;
    /// max over secrets of 1 - |<phi_h | U_rep^dagger phi_g>|
    double max_phase_defect = 0.0;
    std::vector<ReductionResult> results;
    std::string error;
};

/// Runs syndrome_reduce for every secret element.
ReductionReport verify_reduction(const ProjectiveRep& rep, const StateVector& seed, const SubspaceFamily& family,
                                 double threshold = 1e-9, Tolerance tol = {});

}  // namespace confgraph
