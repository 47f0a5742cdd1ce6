#include "confgraph/representation.hpp"

#include <cmath>
#include <sstream>

namespace confgraph {

namespace {

constexpr double kTraceFloor = 1.0 - 1e-6;

}  // namespace

ProjectiveRep ProjectiveRep::validate(std::shared_ptr<const FiniteGroup> group, std::vector<Matrix> matrices,
                                      Tolerance tol) {
    if (!group) {
        throw RepError(RepErrorKind::Shape, "representation needs a group");
    }
    const std::size_t n = group->order();
    if (matrices.size() != n) {
        std::ostringstream msg;
        msg << "expected " << n << " matrices (one per element), got " << matrices.size();
        throw RepError(RepErrorKind::Shape, msg.str());
    }
    const Eigen::Index d = matrices.front().rows();
    if (d == 0) {
        throw RepError(RepErrorKind::Shape, "representation dimension must be positive");
    }
    for (std::size_t g = 0; g < n; ++g) {
        if (matrices[g].rows() != d || matrices[g].cols() != d) {
            std::ostringstream msg;
            msg << "matrix for element " << g << " is " << matrices[g].rows() << "x" << matrices[g].cols()
                << ", expected " << d << "x" << d;
            throw RepError(RepErrorKind::Shape, msg.str());
        }
        if (!matrices[g].allFinite()) {
            std::ostringstream msg;
            msg << "matrix for element " << g << " has non-finite entries";
            throw RepError(RepErrorKind::Shape, msg.str());
        }
        if (!is_unitary(matrices[g], tol)) {
            std::ostringstream msg;
            msg << "matrix for element " << g << " (" << group->name(g) << ") is not unitary";
            throw RepError(RepErrorKind::NonUnitary, msg.str());
        }
    }

    // U_e must be a scalar phase; strip that global phase from every matrix.
    const Matrix& ue = matrices[FiniteGroup::identity];
    const Complex tr_e = ue.trace();
    if (std::abs(tr_e) < static_cast<double>(d) * kTraceFloor) {
        throw RepError(RepErrorKind::DegenerateTrace, "identity matrix is not a multiple of I");
    }
    const Complex phase_e = tr_e / std::abs(tr_e);
    const double e_residual = max_abs(ue - phase_e * Matrix::Identity(d, d));
    if (e_residual > tol.eps()) {
        std::ostringstream msg;
        msg << "identity matrix differs from a phase times I by " << e_residual;
        throw RepError(RepErrorKind::CocycleResidual, msg.str());
    }
    for (auto& m : matrices) {
        m /= phase_e;
    }
    matrices[FiniteGroup::identity] = Matrix::Identity(d, d);

    ProjectiveRep rep;
    rep.group_ = std::move(group);
    rep.dim_ = d;
    rep.cocycle_.resize(n * n);
    const FiniteGroup& grp = *rep.group_;
    const double trace_floor = static_cast<double>(d) * kTraceFloor;
    for (std::size_t g = 0; g < n; ++g) {
        for (std::size_t h = 0; h < n; ++h) {
            const Matrix prod = matrices[g] * matrices[h];
            const Matrix& ugh = matrices[grp.mul(g, h)];
            // tr(A^dagger B) as a Frobenius inner product avoids forming the product.
            const Complex tr = (ugh.conjugate().cwiseProduct(prod)).sum();
            const double mag = std::abs(tr);
            if (mag < trace_floor) {
                std::ostringstream msg;
                msg << "U_" << grp.name(g) << " U_" << grp.name(h) << " is not a phase multiple of U_"
                    << grp.name(grp.mul(g, h)) << " (|trace| = " << mag << ", need >= " << trace_floor << ")";
                throw RepError(RepErrorKind::DegenerateTrace, msg.str());
            }
            const Complex omega = tr / mag;
            const double residual = max_abs(prod - omega * ugh);
            if (residual > tol.eps()) {
                std::ostringstream msg;
                msg << "cocycle residual " << residual << " for pair (" << grp.name(g) << ", " << grp.name(h)
                    << ") exceeds tolerance " << tol.eps();
                throw RepError(RepErrorKind::CocycleResidual, msg.str());
            }
            rep.cocycle_residual_ = std::max(rep.cocycle_residual_, residual);
            rep.cocycle_[g * n + h] = omega;
        }
    }
    rep.matrices_ = std::move(matrices);
    return rep;
}

bool ProjectiveRep::has_nontrivial_cocycle(Tolerance tol) const {
    for (const Complex& w : cocycle_) {
        if (std::abs(w - Complex(1.0, 0.0)) > tol.eps()) {
            return true;
        }
    }
    return false;
}

namespace {

void check_seed(const ProjectiveRep& rep, const StateVector& seed, Tolerance tol) {
    if (seed.size() != rep.dim()) {
        std::ostringstream msg;
        msg << "seed dimension " << seed.size() << " does not match representation dimension " << rep.dim();
        throw DimensionError(msg.str());
    }
    require_normalized(seed, tol, "seed state");
}

}  // namespace

std::vector<StateVector> orbit(const ProjectiveRep& rep, const StateVector& seed, Tolerance tol) {
    check_seed(rep, seed, tol);
    std::vector<StateVector> out;
    out.reserve(rep.group().order());
    for (const auto& u : rep.matrices()) {
        out.emplace_back(u * seed);
    }
    return out;
}

CharacteristicFunction characteristic_function(const ProjectiveRep& rep, const StateVector& seed, Tolerance tol) {
    check_seed(rep, seed, tol);
    CharacteristicFunction f;
    f.values.reserve(rep.group().order());
    for (const auto& u : rep.matrices()) {
        f.values.push_back(seed.dot(u * seed));
    }
    return f;
}

double class_function_defect(const FiniteGroup& group, const CharacteristicFunction& f) {
    double worst = 0.0;
    for (Element g = 0; g < group.order(); ++g) {
        for (Element h = 0; h < group.order(); ++h) {
            worst = std::max(worst, std::abs(f(group.conjugate(g, h)) - f(g)));
        }
    }
    return worst;
}

bool is_class_state(const ProjectiveRep& rep, const StateVector& seed, Tolerance tol) {
    return class_function_defect(rep.group(), characteristic_function(rep, seed, tol)) <= tol.eps();
}

}  // namespace confgraph
