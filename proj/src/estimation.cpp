#include "confgraph/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace confgraph {

CovariantPovm validate_povm(const ProjectiveRep& rep, const Matrix& seed_operator, Tolerance tol) {
    const Eigen::Index d = rep.dim();
    if (seed_operator.rows() != d || seed_operator.cols() != d) {
        std::ostringstream msg;
        msg << "POVM seed must be " << d << "x" << d << ", got " << seed_operator.rows() << "x" << seed_operator.cols();
        throw PovmError(PovmErrorKind::Shape, msg.str(), 0.0);
    }
    const double hermitian_defect = max_abs(seed_operator - seed_operator.adjoint());
    if (hermitian_defect > tol.eps()) {
        std::ostringstream msg;
        msg << "POVM seed is not Hermitian (defect " << hermitian_defect << ")";
        throw PovmError(PovmErrorKind::NotPositive, msg.str(), hermitian_defect);
    }
    CovariantPovm povm;
    povm.min_eigenvalue_ = min_hermitian_eigenvalue(seed_operator);
    if (povm.min_eigenvalue_ < -tol.eps()) {
        std::ostringstream msg;
        msg << "POVM seed has negative eigenvalue " << povm.min_eigenvalue_;
        throw PovmError(PovmErrorKind::NotPositive, msg.str(), povm.min_eigenvalue_);
    }
    povm.seed_operator_ = seed_operator;
    povm.elements_.reserve(rep.group().order());
    Matrix sum = Matrix::Zero(d, d);
    for (const auto& u : rep.matrices()) {
        povm.elements_.push_back(u * seed_operator * u.adjoint());
        sum += povm.elements_.back();
    }
    povm.completeness_residual_ = max_abs(sum - Matrix::Identity(d, d));
    if (povm.completeness_residual_ > tol.eps()) {
        std::ostringstream msg;
        msg << "covariant POVM is incomplete (||sum_g P(g) - I||_max = " << povm.completeness_residual_ << ")";
        throw PovmError(PovmErrorKind::Incomplete, msg.str(), povm.completeness_residual_);
    }
    return povm;
}

CostFunction CostFunction::delta(const FiniteGroup& group) {
    CostFunction c;
    c.order_ = group.order();
    c.values_.assign(c.order_ * c.order_, 1.0);
    for (Element g = 0; g < c.order_; ++g) {
        c.values_[g * c.order_ + g] = 0.0;
    }
    return c;
}

CostFunction CostFunction::from_matrix(const FiniteGroup& group, const std::vector<std::vector<double>>& values) {
    const std::size_t n = group.order();
    if (values.size() != n) {
        throw CostError("cost matrix must have one row per group element");
    }
    CostFunction c;
    c.order_ = n;
    c.values_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (values[i].size() != n) {
            std::ostringstream msg;
            msg << "cost matrix row " << i << " has " << values[i].size() << " entries, expected " << n;
            throw CostError(msg.str());
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (!std::isfinite(values[i][j])) {
                throw CostError("cost matrix has non-finite entries");
            }
            c.values_[i * n + j] = values[i][j];
        }
    }
    for (Element h = 0; h < n; ++h) {
        for (Element guess = 0; guess < n; ++guess) {
            for (Element truth = 0; truth < n; ++truth) {
                if (c(group.mul(h, guess), group.mul(h, truth)) != c(guess, truth)) {
                    std::ostringstream msg;
                    msg << "cost is not left-invariant: c(" << group.mul(h, guess) << ", " << group.mul(h, truth)
                        << ") != c(" << guess << ", " << truth << ")";
                    throw CostError(msg.str());
                }
            }
        }
    }
    return c;
}

CostReport evaluate_cost(const ProjectiveRep& rep, const StateVector& seed, std::span<const Matrix> povm,
                         const CostFunction& cost, Tolerance tol) {
    const std::size_t n = rep.group().order();
    if (povm.size() != n || cost.order() != n) {
        throw DimensionError("POVM and cost must be indexed by the group elements");
    }
    for (const auto& e : povm) {
        require_square(e, rep.dim(), "POVM element");
    }
    const auto states = orbit(rep, seed, tol);
    CostReport report;
    report.per_element.resize(n);
    for (Element truth = 0; truth < n; ++truth) {
        double total = 0.0;
        for (Element guess = 0; guess < n; ++guess) {
            const double c = cost(guess, truth);
            if (c != 0.0) {
                total += c * states[truth].dot(povm[guess] * states[truth]).real();
            }
        }
        report.per_element[truth] = total;
    }
    const auto [lo, hi] = std::minmax_element(report.per_element.begin(), report.per_element.end());
    report.worst_case = *hi;
    report.spread = *hi - *lo;
    return report;
}

CostReport evaluate_cost(const ProjectiveRep& rep, const StateVector& seed, const CovariantPovm& povm,
                         const CostFunction& cost, Tolerance tol) {
    return evaluate_cost(rep, seed, std::span<const Matrix>(povm.elements()), cost, tol);
}

namespace {

const Subspace& identity_subspace(const SubspaceFamily& family) {
    const std::size_t k = family.index_of_element(FiniteGroup::identity);
    if (k == family.size()) {
        throw ReductionError("subspace family has no component containing the identity");
    }
    return family[k];
}

}  // namespace

ReducedProblem reduced_problem(const ProjectiveRep& rep, const StateVector& seed, const Subset& h,
                               const SubspaceFamily& family, Tolerance tol) {
    const Subspace& s_h = identity_subspace(family);
    if (s_h.members != h.members()) {
        throw ReductionError("identity subspace members differ from the given subgroup");
    }
    auto subgroup = std::make_shared<const FiniteGroup>(rep.group().restrict_to(h));
    const Matrix basis = basis_matrix(s_h.basis);
    std::vector<Matrix> compressed;
    compressed.reserve(h.size());
    for (Element x : h) {
        compressed.push_back(basis.adjoint() * rep.matrix(x) * basis);
    }
    ProjectiveRep reduced_rep = ProjectiveRep::validate(subgroup, std::move(compressed), tol);
    StateVector reduced_seed = basis.adjoint() * seed;
    return ReducedProblem{std::move(subgroup), h.members(), basis, std::move(reduced_rep), std::move(reduced_seed)};
}

ReductionResult syndrome_reduce(const ProjectiveRep& rep, const StateVector& seed, const SubspaceFamily& family,
                                const ReducedProblem& reduced, Element secret, Tolerance tol) {
    const FiniteGroup& grp = rep.group();
    if (secret >= grp.order()) {
        throw ReductionError("secret element out of range");
    }
    const StateVector phi = rep.matrix(secret) * seed;

    // Projective measurement on the component subspaces: the outcome is
    // deterministic when exactly one P_k captures the full norm.
    const double capture_tol = 10.0 * tol.eps();
    ReductionResult result;
    result.secret = secret;
    std::size_t found = family.size();
    for (std::size_t k = 0; k < family.size(); ++k) {
        if (family[k].members.empty()) {
            continue;
        }
        const StateVector projected = family[k].projector * phi;
        if (std::abs(projected.norm() - 1.0) <= capture_tol) {
            if (found != family.size()) {
                throw ReductionError("more than one component captures the orbit state");
            }
            found = k;
            result.non_disturbance_residual = (projected - phi).norm();
        }
    }
    if (found == family.size()) {
        std::ostringstream msg;
        msg << "no component captures the orbit state of element " << secret;
        throw ReductionError(msg.str());
    }
    const Subspace& coset = family[found];
    if (std::find(coset.members.begin(), coset.members.end(), secret) == coset.members.end()) {
        std::ostringstream msg;
        msg << "element " << secret << " was captured by component " << coset.label << " which does not contain it";
        throw ReductionError(msg.str());
    }
    result.component = found;
    result.coset_label = coset.label;
    result.representative = coset.members.front();
    result.residual_element = grp.mul(grp.inverse(result.representative), secret);

    const StateVector undone = rep.matrix(result.representative).adjoint() * phi;
    const StateVector expected = rep.matrix(result.residual_element) * seed;
    result.phase_overlap = std::abs(expected.dot(undone));
    if (std::abs(result.phase_overlap - 1.0) > capture_tol) {
        std::ostringstream msg;
        msg << "undoing representative " << result.representative << " does not give phi_h for h = "
            << result.residual_element << " (|overlap| = " << result.phase_overlap << ")";
        throw ReductionError(msg.str());
    }
    result.reduced_state = reduced.basis.adjoint() * undone;
    if (std::abs(result.reduced_state.norm() - 1.0) > capture_tol) {
        throw ReductionError("reduced state does not lie in the identity subspace");
    }
    return result;
}

ReductionResult syndrome_reduce(const ProjectiveRep& rep, const StateVector& seed, const SubspaceFamily& family,
                                Element secret, Tolerance tol) {
    const Subspace& s_h = identity_subspace(family);
    const ReducedProblem reduced =
        reduced_problem(rep, seed, Subset(rep.group(), s_h.members), family, tol);
    return syndrome_reduce(rep, seed, family, reduced, secret, tol);
}

std::vector<Matrix> lift_reduced_povm(const ProjectiveRep& rep, const SubspaceFamily& family,
                                      const ReducedProblem& reduced, std::span<const Matrix> reduced_povm) {
    const FiniteGroup& grp = rep.group();
    if (reduced_povm.size() != reduced.members.size()) {
        throw DimensionError("reduced POVM must have one element per subgroup element");
    }
    const Eigen::Index d = rep.dim();
    std::vector<Matrix> lifted(grp.order(), Matrix::Zero(d, d));
    Matrix covered = Matrix::Zero(d, d);
    for (const auto& s : family.subspaces()) {
        if (s.members.empty()) {
            continue;
        }
        const Element representative = s.members.front();
        const Matrix carry = rep.matrix(representative) * reduced.basis;
        for (std::size_t i = 0; i < reduced.members.size(); ++i) {
            const Element g = grp.mul(representative, reduced.members[i]);
            lifted[g] = carry * reduced_povm[i] * carry.adjoint();
        }
        covered += s.projector;
    }
    lifted[FiniteGroup::identity] += Matrix::Identity(d, d) - covered;
    return lifted;
}

ReductionReport verify_reduction(const ProjectiveRep& rep, const StateVector& seed, const SubspaceFamily& family,
                                 double threshold, Tolerance tol) {
    ReductionReport report;
    report.threshold = threshold;
    try {
        const Subspace& s_h = identity_subspace(family);
        const ReducedProblem reduced =
            reduced_problem(rep, seed, Subset(rep.group(), s_h.members), family, tol);
        report.subgroup_order = reduced.members.size();
        report.reduced_dim = reduced.basis.cols();
        for (Element g = 0; g < rep.group().order(); ++g) {
            ReductionResult r = syndrome_reduce(rep, seed, family, reduced, g, tol);
            report.max_non_disturbance_residual = std::max(report.max_non_disturbance_residual,
                                                           r.non_disturbance_residual);
            report.max_phase_defect = std::max(report.max_phase_defect, std::abs(1.0 - r.phase_overlap));
            report.results.push_back(std::move(r));
        }
    } catch (const Error& e) {
        report.error = e.what();
        report.verdict = Verdict::Fail;
        return report;
    }
    const bool ok = report.max_non_disturbance_residual <= threshold && report.max_phase_defect <= threshold;
    report.verdict = ok ? Verdict::Pass : Verdict::Fail;
    return report;
}

}  // namespace confgraph
