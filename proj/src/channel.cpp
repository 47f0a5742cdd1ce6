#include "confgraph/channel.hpp"

#include <sstream>

namespace confgraph {

QuantumChannel QuantumChannel::from_kraus(std::vector<Matrix> kraus, Tolerance tol) {
    if (kraus.empty()) {
        throw ChannelError("channel needs at least one Kraus operator");
    }
    const Eigen::Index d = kraus.front().rows();
    if (d == 0) {
        throw ChannelError("channel dimension must be positive");
    }
    Matrix sum = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < kraus.size(); ++i) {
        if (kraus[i].rows() != d || kraus[i].cols() != d) {
            std::ostringstream msg;
            msg << "Kraus operator " << i << " is " << kraus[i].rows() << "x" << kraus[i].cols() << ", expected "
                << d << "x" << d;
            throw ChannelError(msg.str());
        }
        if (!kraus[i].allFinite()) {
            std::ostringstream msg;
            msg << "Kraus operator " << i << " has non-finite entries";
            throw ChannelError(msg.str());
        }
        sum += kraus[i].adjoint() * kraus[i];
    }
    QuantumChannel channel;
    channel.dim_ = d;
    channel.tp_residual_ = max_abs(sum - Matrix::Identity(d, d));
    if (channel.tp_residual_ > tol.eps()) {
        std::ostringstream msg;
        msg << "Kraus operators are not trace preserving (||sum K^dagger K - I||_max = " << channel.tp_residual_
            << ")";
        throw ChannelError(msg.str());
    }
    channel.kraus_ = std::move(kraus);
    return channel;
}

QuantumChannel QuantumChannel::from_family(const SubspaceFamily& family, Tolerance tol) {
    std::vector<Matrix> kraus;
    kraus.reserve(family.size());
    for (const auto& s : family.subspaces()) {
        kraus.push_back(s.projector);
    }
    // Same 10 eps slack the family itself is validated with.
    return from_kraus(std::move(kraus), Tolerance(std::min(10.0 * tol.eps(), 0.5)));
}

Matrix apply(const QuantumChannel& channel, const Matrix& rho) {
    require_square(rho, channel.dim(), "channel input");
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (const auto& k : channel.kraus()) {
        out += k * rho * k.adjoint();
    }
    return out;
}

namespace {

Matrix choi_from_kraus(const std::vector<Matrix>& kraus, Eigen::Index d) {
    Matrix choi = Matrix::Zero(d * d, d * d);
    for (const auto& k : kraus) {
        // Column-major storage puts K(a, i) at index i d + a, matching the
        // row index (i, a) of the Choi matrix.
        const Eigen::Map<const StateVector> v(k.data(), d * d);
        choi.noalias() += v * v.adjoint();
    }
    return choi;
}

}  // namespace

Matrix choi_matrix(const QuantumChannel& channel) {
    return choi_from_kraus(channel.kraus(), channel.dim());
}

Matrix apply_via_choi(const Matrix& choi, const Matrix& rho) {
    const Eigen::Index d = rho.rows();
    require_square(choi, d * d, "Choi matrix");
    require_square(rho, d, "channel input");
    Matrix out = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            out += rho(i, j) * choi.block(i * d, j * d, d, d);
        }
    }
    return out;
}

bool is_valid_choi(const Matrix& choi, Eigen::Index dim, Tolerance tol) {
    if (choi.rows() != dim * dim || choi.cols() != dim * dim) {
        return false;
    }
    if (max_abs(choi - choi.adjoint()) > tol.eps() || min_hermitian_eigenvalue(choi) < -tol.eps()) {
        return false;
    }
    // Tracing out the output factor: (Tr_out J)(i, j) = tr C(|i><j|) = delta_ij.
    Matrix reduced(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            reduced(i, j) = choi.block(i * dim, j * dim, dim, dim).trace();
        }
    }
    return max_abs(reduced - Matrix::Identity(dim, dim)) <= tol.eps();
}

CovarianceReport is_covariant(const QuantumChannel& channel, const ProjectiveRep& rep, Tolerance tol) {
    if (channel.dim() != rep.dim()) {
        throw DimensionError("channel and representation dimensions differ");
    }
    const Eigen::Index d = channel.dim();
    CovarianceReport report;
    std::vector<Matrix> before(channel.kraus().size());
    std::vector<Matrix> after(channel.kraus().size());
    for (Element g = 0; g < rep.group().order(); ++g) {
        const Matrix& u = rep.matrix(g);
        for (std::size_t i = 0; i < channel.kraus().size(); ++i) {
            before[i] = channel.kraus()[i] * u;  // C o U_g
            after[i] = u * channel.kraus()[i];   // U_g o C
        }
        const double residual = max_abs(choi_from_kraus(before, d) - choi_from_kraus(after, d));
        if (residual > report.max_residual) {
            report.max_residual = residual;
            report.worst_element = g;
        }
    }
    report.covariant = report.max_residual <= tol.eps();
    return report;
}

double fixed_point_residual(const QuantumChannel& channel, const StateVector& psi) {
    const Matrix rho = pure_state(psi);
    return max_abs(apply(channel, rho) - rho);
}

bool is_pure_fixed_point(const QuantumChannel& channel, const StateVector& psi, Tolerance tol) {
    if (psi.size() != channel.dim()) {
        throw DimensionError("state and channel dimensions differ");
    }
    require_normalized(psi, tol, "candidate fixed point");
    return fixed_point_residual(channel, psi) <= tol.eps();
}

DfsReport verify_dfs(const QuantumChannel& channel, const ProjectiveRep& rep, const StateVector& seed,
                     const DfsOptions& options, Tolerance tol) {
    DfsReport report;
    report.rng_seed = options.rng_seed;
    report.residual_threshold = options.residual_threshold;

    const CovarianceReport cov = is_covariant(channel, rep, tol);
    report.covariant = cov.covariant;
    report.covariance_residual = cov.max_residual;
    report.seed_residual = fixed_point_residual(channel, seed);
    report.seed_fixed = is_pure_fixed_point(channel, seed, tol);
    if (!report.covariant || !report.seed_fixed) {
        report.verdict = Verdict::PremiseFailed;
        return report;
    }

    const ConfusabilityGraph graph = build_graph(rep, seed, tol);
    const SubspaceFamily family = component_subspaces(rep, seed, graph, tol);
    Rng rng(options.rng_seed);
    bool ok = true;
    for (const auto& s : family.subspaces()) {
        ComponentDfsResult result;
        result.label = s.label;
        result.members = s.members;
        result.dim = s.dim();
        result.trials = options.trials;
        const Matrix basis = basis_matrix(s.basis);
        for (std::size_t t = 0; t < options.trials; ++t) {
            StateVector coeffs = complex_gaussian(s.dim(), rng);
            coeffs /= coeffs.norm();
            const StateVector psi = basis * coeffs;
            result.max_random_residual = std::max(result.max_random_residual, fixed_point_residual(channel, psi));
        }
        for (const auto& bi : s.basis) {
            for (const auto& bj : s.basis) {
                const Matrix unit = outer(bi, bj);
                result.max_matrix_unit_residual =
                    std::max(result.max_matrix_unit_residual, max_abs(apply(channel, unit) - unit));
            }
        }
        ok = ok && result.max_random_residual <= options.residual_threshold &&
             result.max_matrix_unit_residual <= options.residual_threshold;
        report.components.push_back(std::move(result));
    }
    report.verdict = ok ? Verdict::Pass : Verdict::Fail;
    return report;
}

OrbitFixedPointReport orbit_fixed_points(const QuantumChannel& channel, const ProjectiveRep& rep,
                                         const StateVector& seed, Tolerance tol) {
    OrbitFixedPointReport report;
    report.covariant = is_covariant(channel, rep, tol).covariant;
    report.seed_fixed = is_pure_fixed_point(channel, seed, tol);
    const auto states = orbit(rep, seed, tol);
    for (Element g = 0; g < states.size(); ++g) {
        const double residual = fixed_point_residual(channel, states[g]);
        report.max_residual = std::max(report.max_residual, residual);
        if (residual > tol.eps()) {
            report.violators.push_back(g);
        }
    }
    report.consistent = !(report.covariant && report.seed_fixed) || report.violators.empty();
    return report;
}

}  // namespace confgraph
