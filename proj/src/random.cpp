#include "confgraph/random.hpp"

#include <cmath>

namespace confgraph {

StateVector complex_gaussian(Eigen::Index dim, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    StateVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        v(i) = Complex(re, im);
    }
    return v;
}

StateVector random_unit_vector(Eigen::Index dim, Rng& rng) {
    StateVector v = complex_gaussian(dim, rng);
    return v / v.norm();
}

Matrix haar_unitary(Eigen::Index dim, Rng& rng) {
    Matrix ginibre(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        ginibre.col(c) = complex_gaussian(dim, rng);
    }
    Eigen::HouseholderQR<Matrix> qr(ginibre);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double mag = std::abs(r(i, i));
        if (mag > 0.0) {
            q.col(i) *= r(i, i) / mag;
        }
    }
    return q;
}

Matrix random_density(Eigen::Index dim, Rng& rng) {
    Matrix g(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        g.col(c) = complex_gaussian(dim, rng);
    }
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return rho;
}

}  // namespace confgraph
