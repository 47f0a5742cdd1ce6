#include "confgraph/algebra.hpp"

#include <cmath>
#include <sstream>

namespace confgraph {

Tolerance::Tolerance(double eps) : eps_(eps) {
    if (!(eps >= 0.0 && eps < 1.0)) {
        std::ostringstream msg;
        msg << "tolerance must satisfy 0 <= eps < 1, got " << eps;
        throw std::invalid_argument(msg.str());
    }
}

double max_abs(const Matrix& m) {
    if (m.size() == 0) {
        return 0.0;
    }
    return m.cwiseAbs().maxCoeff();
}

Complex inner_product(const StateVector& a, const StateVector& b) {
    if (a.size() != b.size()) {
        std::ostringstream msg;
        msg << "inner product of vectors with dimensions " << a.size() << " and " << b.size();
        throw DimensionError(msg.str());
    }
    // Eigen's dot is conjugate-linear in the first argument.
    return a.dot(b);
}

bool is_unitary(const Matrix& m, Tolerance tol) {
    if (m.rows() != m.cols()) {
        throw DimensionError("is_unitary requires a square matrix");
    }
    const Matrix defect = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
    return max_abs(defect) <= tol.eps();
}

std::vector<StateVector> orthonormal_span(std::span<const StateVector> vectors, Tolerance tol) {
    std::vector<StateVector> basis;
    if (vectors.empty()) {
        return basis;
    }
    const Eigen::Index dim = vectors.front().size();
    for (const auto& v : vectors) {
        if (v.size() != dim) {
            throw DimensionError("orthonormal_span: vectors of differing dimension");
        }
        StateVector residual = v;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) {
                residual -= b * b.dot(residual);
            }
        }
        const double norm = residual.norm();
        if (norm > tol.eps()) {
            basis.push_back(residual / norm);
        }
    }
    return basis;
}

Matrix basis_matrix(std::span<const StateVector> basis) {
    if (basis.empty()) {
        throw DimensionError("basis_matrix: empty basis has no dimension");
    }
    Matrix b(basis.front().size(), static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].size() != b.rows()) {
            throw DimensionError("basis_matrix: vectors of differing dimension");
        }
        b.col(static_cast<Eigen::Index>(i)) = basis[i];
    }
    return b;
}

Matrix projector_onto(std::span<const StateVector> basis, Tolerance tol) {
    const Matrix b = basis_matrix(basis);
    const Matrix gram = b.adjoint() * b;
    const double defect = max_abs(gram - Matrix::Identity(gram.rows(), gram.cols()));
    if (defect > 10.0 * tol.eps()) {
        std::ostringstream msg;
        msg << "projector_onto: basis is not orthonormal (Gram defect " << defect << ")";
        throw DimensionError(msg.str());
    }
    return b * b.adjoint();
}

Matrix outer(const StateVector& a, const StateVector& b) {
    return a * b.adjoint();
}

Matrix pure_state(const StateVector& psi) {
    return psi * psi.adjoint();
}

void require_normalized(const StateVector& v, Tolerance tol, std::string_view what) {
    const double defect = std::abs(v.squaredNorm() - 1.0);
    if (defect > tol.eps()) {
        std::ostringstream msg;
        msg << what << " is not normalized (| |v|^2 - 1 | = " << defect << ")";
        throw DimensionError(msg.str());
    }
}

void require_square(const Matrix& m, Eigen::Index dim, std::string_view what) {
    if (m.rows() != dim || m.cols() != dim) {
        std::ostringstream msg;
        msg << what << " must be " << dim << "x" << dim << ", got " << m.rows() << "x" << m.cols();
        throw DimensionError(msg.str());
    }
}

double min_hermitian_eigenvalue(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("min_hermitian_eigenvalue requires a square matrix");
    }
    if (m.size() == 0) {
        return 0.0;
    }
    const Matrix herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

bool is_density_operator(const Matrix& m, Tolerance tol) {
    if (m.rows() != m.cols() || m.size() == 0) {
        return false;
    }
    if (max_abs(m - m.adjoint()) > tol.eps()) {
        return false;
    }
    if (std::abs(m.trace() - Complex(1.0, 0.0)) > tol.eps()) {
        return false;
    }
    return min_hermitian_eigenvalue(m) >= -tol.eps();
}

}  // namespace confgraph
