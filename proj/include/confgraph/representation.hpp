#pragma once

#include <memory>
#include <vector>

#include "confgraph/algebra.hpp"
#include "confgraph/group.hpp"

namespace confgraph {

enum class RepErrorKind {
    Shape,            // wrong matrix count, non-square or mismatched dimensions
    NonUnitary,
    DegenerateTrace,  // |tr(U_gh^dagger U_g U_h)| < d (1 - 1e-6): not a phase multiple
    CocycleResidual,  // best unit phase still leaves a residual above tolerance
};

class RepError : public Error {
public:
    RepError(RepErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}
    RepErrorKind kind() const noexcept { return kind_; }

private:
    RepErrorKind kind_;
};

/// A unitary projective representation g -> U_g with U_g U_h = w(g,h) U_gh.
///
/// U_e is normalized to the exact identity, so w(e, g) = w(g, e) = 1.
class ProjectiveRep {
public:
    /// Checks unitarity of every matrix and extracts the cocycle by the trace
    /// phase w(g,h) = tr(U_gh^dagger U_g U_h) / |tr(...)|.
    static ProjectiveRep validate(std::shared_ptr<const FiniteGroup> group, std::vector<Matrix> matrices,
                                  Tolerance tol = {});

    const FiniteGroup& group() const noexcept { return *group_; }
    const std::shared_ptr<const FiniteGroup>& group_ptr() const noexcept { return group_; }
    Eigen::Index dim() const noexcept { return dim_; }
    const Matrix& matrix(Element g) const { return matrices_[g]; }
    const std::vector<Matrix>& matrices() const noexcept { return matrices_; }
    Complex cocycle(Element g, Element h) const { return cocycle_[g * group_->order() + h]; }
    /// Largest ||U_g U_h - w U_gh||_max observed during validation.
    double cocycle_residual() const noexcept { return cocycle_residual_; }
    /// Some |w(g,h) - 1| > eps. A nontrivial cocycle may still be a coboundary.
    bool has_nontrivial_cocycle(Tolerance tol = {}) const;

private:
    ProjectiveRep() = default;

    std::shared_ptr<const FiniteGroup> group_;
    Eigen::Index dim_ = 0;
    std::vector<Matrix> matrices_;
    std::vector<Complex> cocycle_;
    double cocycle_residual_ = 0.0;
};

inline ProjectiveRep validate_rep(std::shared_ptr<const FiniteGroup> group, std::vector<Matrix> matrices,
                                  Tolerance tol = {}) {
    return ProjectiveRep::validate(std::move(group), std::move(matrices), tol);
}

/// f(g) = <seed|U_g|seed>, indexed by element.
struct CharacteristicFunction {
    std::vector<Complex> values;

    Complex operator()(Element g) const { return values[g]; }
    std::size_t size() const noexcept { return values.size(); }
};

/// U_g seed for every g, in element order.
std::vector<StateVector> orbit(const ProjectiveRep& rep, const StateVector& seed, Tolerance tol = {});

CharacteristicFunction characteristic_function(const ProjectiveRep& rep, const StateVector& seed,
                                               Tolerance tol = {});

/// max over g, h of |f(h^-1 g h) - f(g)|, conjugating through the Cayley table.
double class_function_defect(const FiniteGroup& group, const CharacteristicFunction& f);

/// class_function_defect <= eps.
bool is_class_state(const ProjectiveRep& rep, const StateVector& seed, Tolerance tol = {});

}  // namespace confgraph
