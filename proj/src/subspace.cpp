#include "confgraph/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace confgraph {

SubspaceFamily::SubspaceFamily(Eigen::Index ambient_dim, std::vector<Subspace> subspaces, Tolerance tol)
    : ambient_dim_(ambient_dim), subspaces_(std::move(subspaces)) {
    for (const auto& s : subspaces_) {
        require_square(s.projector, ambient_dim_, "projector of subspace " + s.label);
    }
    if (total_dim() > ambient_dim_) {
        std::ostringstream msg;
        msg << "subspace dimensions sum to " << total_dim() << " > ambient dimension " << ambient_dim_;
        throw SubspaceError(msg.str());
    }
    const double bound = 10.0 * tol.eps();
    for (std::size_t k = 0; k < subspaces_.size(); ++k) {
        for (std::size_t l = k + 1; l < subspaces_.size(); ++l) {
            const double overlap = max_abs(subspaces_[k].projector * subspaces_[l].projector);
            if (overlap > bound) {
                std::ostringstream msg;
                msg << "subspaces " << subspaces_[k].label << " and " << subspaces_[l].label
                    << " are not orthogonal (||P_k P_l||_max = " << overlap << ")";
                throw SubspaceError(msg.str());
            }
        }
    }
}

std::size_t SubspaceFamily::index_of_element(Element g) const {
    for (std::size_t k = 0; k < subspaces_.size(); ++k) {
        const auto& m = subspaces_[k].members;
        if (std::find(m.begin(), m.end(), g) != m.end()) {
            return k;
        }
    }
    return subspaces_.size();
}

Eigen::Index SubspaceFamily::total_dim() const {
    Eigen::Index total = 0;
    for (const auto& s : subspaces_) {
        total += s.dim();
    }
    return total;
}

bool SubspaceFamily::is_complete(Tolerance tol) const {
    Matrix sum = Matrix::Zero(ambient_dim_, ambient_dim_);
    for (const auto& s : subspaces_) {
        sum += s.projector;
    }
    return max_abs(sum - Matrix::Identity(ambient_dim_, ambient_dim_)) <= 10.0 * tol.eps();
}

SubspaceFamily component_subspaces(const ProjectiveRep& rep, const StateVector& seed,
                                   const ConfusabilityGraph& graph, Tolerance tol) {
    if (rep.group().order() != graph.group().order()) {
        throw DimensionError("graph was built over a different group");
    }
    const auto states = orbit(rep, seed, tol);
    std::vector<Subspace> subspaces;
    subspaces.reserve(graph.components().size());
    for (std::size_t k = 0; k < graph.components().size(); ++k) {
        const auto& block = graph.components()[k];
        std::vector<StateVector> vectors;
        vectors.reserve(block.size());
        for (Element x : block) {
            vectors.push_back(states[x]);
        }
        Subspace s;
        s.label = std::to_string(k);
        s.members = block;
        s.basis = orthonormal_span(vectors, tol);
        s.projector = projector_onto(s.basis, tol);
        subspaces.push_back(std::move(s));
    }
    return SubspaceFamily(rep.dim(), std::move(subspaces), tol);
}

Matrix decohere(const SubspaceFamily& family, const Matrix& rho) {
    require_square(rho, family.ambient_dim(), "density operator");
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (const auto& s : family.subspaces()) {
        out += s.projector * rho * s.projector;
    }
    return out;
}

SubspaceFamily complete_family(const SubspaceFamily& family, Tolerance tol) {
    const Eigen::Index d = family.ambient_dim();
    if (family.total_dim() >= d) {
        return family;
    }
    Matrix rest = Matrix::Identity(d, d);
    for (const auto& s : family.subspaces()) {
        rest -= s.projector;
    }
    // Columns of the complement projector span its range. Taking the longest
    // columns first keeps the rank decision away from round-off sized vectors.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return rest.col(a).norm() > rest.col(b).norm(); });
    std::vector<StateVector> columns;
    for (Eigen::Index c : order) {
        columns.emplace_back(rest.col(c));
    }
    // A complement direction has a column of norm >= 1/sqrt(d); residuals at
    // round-off scale are not new directions.
    const Tolerance rank_tol(std::max(tol.eps(), 1e-7));
    auto basis = orthonormal_span(columns, rank_tol);
    const auto expected = static_cast<std::size_t>(d - family.total_dim());
    if (basis.size() > expected) {
        basis.resize(expected);
    }
    if (basis.empty()) {
        return family;
    }
    std::vector<Subspace> subspaces = family.subspaces();
    Subspace s;
    s.label = kRestLabel;
    s.basis = std::move(basis);
    s.projector = projector_onto(s.basis, tol);
    subspaces.push_back(std::move(s));
    return SubspaceFamily(d, std::move(subspaces), tol);
}

DecoherenceReport verify_decoherence(const ProjectiveRep& rep, const StateVector& seed,
                                     const SubspaceFamily& family, Rng& rng, std::size_t probes, double threshold,
                                     Tolerance tol) {
    DecoherenceReport report;
    report.threshold = threshold;
    report.probes = probes;
    const auto states = orbit(rep, seed, tol);
    for (Element x = 0; x < states.size(); ++x) {
        const Matrix rho = pure_state(states[x]);
        const double residual = max_abs(decohere(family, rho) - rho);
        if (residual > report.max_fixed_point_residual) {
            report.max_fixed_point_residual = residual;
            report.worst_element = x;
        }
    }
    const SubspaceFamily complete = complete_family(family, tol);
    for (std::size_t i = 0; i < probes; ++i) {
        const Matrix rho = random_density(rep.dim(), rng);
        const Matrix once = decohere(complete, rho);
        const Matrix twice = decohere(complete, once);
        report.idempotence_residual = std::max(report.idempotence_residual, max_abs(twice - once));
        report.trace_defect = std::max(report.trace_defect, std::abs(once.trace() - rho.trace()));
    }
    const bool ok = report.max_fixed_point_residual <= threshold && report.idempotence_residual <= threshold &&
                    report.trace_defect <= threshold;
    report.verdict = ok ? Verdict::Pass : Verdict::Fail;
    return report;
}

}  // namespace confgraph
