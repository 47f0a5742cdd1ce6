#pragma once

#include <cstdint>
#include <random>

#include "confgraph/algebra.hpp"

namespace confgraph {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultRngSeed = 20130517;

/// Vector of i.i.d. standard complex Gaussians (unnormalized).
StateVector complex_gaussian(Eigen::Index dim, Rng& rng);

/// Haar-random unit vector.
StateVector random_unit_vector(Eigen::Index dim, Rng& rng);

/// Haar-random unitary: QR of a Ginibre matrix with the R-diagonal phases
/// folded back into Q.
Matrix haar_unitary(Eigen::Index dim, Rng& rng);

/// Full-rank random density operator G G^dagger / tr(G G^dagger).
Matrix random_density(Eigen::Index dim, Rng& rng);

}  // namespace confgraph
