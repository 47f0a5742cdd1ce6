#pragma once

// Dense complex linear algebra shared by every other module: inner products,
// unitarity checks, orthonormal span extraction and projectors.

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace confgraph {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

/// Absolute threshold on magnitudes, 0 <= eps < 1.
///
/// All orbit vectors are unit norm, so an absolute threshold on |<a|b>| is
/// also a relative one.
class Tolerance {
public:
    static constexpr double kDefaultEps = 1e-9;

    Tolerance() = default;
    explicit Tolerance(double eps);

    double eps() const noexcept { return eps_; }

private:
    double eps_ = kDefaultEps;
};

/// Largest entry magnitude; 0 for an empty matrix.
double max_abs(const Matrix& m);

/// <a|b>, conjugate-linear in the first argument.
Complex inner_product(const StateVector& a, const StateVector& b);

/// max |(m^dagger m - I)_ij| <= eps. Throws DimensionError for non-square input.
bool is_unitary(const Matrix& m, Tolerance tol = {});

/// Orthonormal basis of span(vectors), built by two-pass classical
/// Gram-Schmidt. A vector whose residual after both passes has norm <= eps is
/// treated as linearly dependent and dropped. Output order follows the order
/// of the first vector that contributed each direction.
std::vector<StateVector> orthonormal_span(std::span<const StateVector> vectors, Tolerance tol = {});

/// sum_i |b_i><b_i|. The basis must be non-empty and orthonormal within 10*eps.
Matrix projector_onto(std::span<const StateVector> basis, Tolerance tol = {});

/// Stacks the vectors as the columns of a dim x basis.size() matrix.
Matrix basis_matrix(std::span<const StateVector> basis);

/// |a><b|
Matrix outer(const StateVector& a, const StateVector& b);

/// |psi><psi|
Matrix pure_state(const StateVector& psi);

/// Throws DimensionError unless | ||v||^2 - 1 | <= eps.
void require_normalized(const StateVector& v, Tolerance tol, std::string_view what);

/// Throws DimensionError unless m is dim x dim.
void require_square(const Matrix& m, Eigen::Index dim, std::string_view what);

/// Smallest eigenvalue of the Hermitian part of m.
double min_hermitian_eigenvalue(const Matrix& m);

/// Self-adjoint, unit trace and positive semidefinite, each within eps.
bool is_density_operator(const Matrix& m, Tolerance tol = {});

}  // namespace confgraph
