#include "confgraph/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace confgraph {

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
    throw ParseError(where + ": " + what);
}

double number_from_json(const Json& j, const std::string& where) {
    if (!j.is_number()) {
        parse_fail(where, "expected a number");
    }
    const double x = j.get<double>();
    if (!std::isfinite(x)) {
        parse_fail(where, "non-finite number");
    }
    return x;
}

std::size_t count_from_json(const Json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        parse_fail(where, "expected a non-negative integer");
    }
    return j.get<std::size_t>();
}

const Json& require_key(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) {
        parse_fail(where, std::string("missing key \"") + key + "\"");
    }
    return j.at(key);
}

}  // namespace

Complex complex_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) {
        parse_fail(where, "complex scalar must be a two-element array [re, im]");
    }
    return {number_from_json(j[0], where + "[0]"), number_from_json(j[1], where + "[1]")};
}

StateVector vector_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) {
        parse_fail(where, "vector must be a non-empty array of complex scalars");
    }
    StateVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i], where + "[" + std::to_string(i) + "]");
    }
    return v;
}

Matrix matrix_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) {
        parse_fail(where, "matrix must be a non-empty array of rows");
    }
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty()) {
        parse_fail(where + "[0]", "matrix row must be a non-empty array");
    }
    const std::size_t cols = j[0].size();
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string row_where = where + "[" + std::to_string(r) + "]";
        if (!j[r].is_array() || j[r].size() != cols) {
            std::ostringstream msg;
            msg << "row length " << (j[r].is_array() ? j[r].size() : 0) << " differs from " << cols;
            parse_fail(row_where, msg.str());
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                complex_from_json(j[r][c], row_where + "[" + std::to_string(c) + "]");
        }
    }
    return m;
}

Json to_json(Complex z) {
    return Json::array({z.real(), z.imag()});
}

Json to_json(const StateVector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(to_json(v(i)));
    }
    return out;
}

Json to_json(const Matrix& m) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(to_json(m(r, c)));
        }
        out.push_back(std::move(row));
    }
    return out;
}

FiniteGroup group_from_json(const Json& j) {
    if (j.is_string()) {
        return standard_group(j.get<std::string>());
    }
    if (!j.is_object()) {
        parse_fail("group", "expected a standard-group name or an object with a Cayley table");
    }
    const Json& table_json = require_key(j, "table", "group");
    if (!table_json.is_array()) {
        parse_fail("group.table", "expected an array of rows");
    }
    std::vector<std::vector<Element>> table;
    for (std::size_t r = 0; r < table_json.size(); ++r) {
        const std::string where = "group.table[" + std::to_string(r) + "]";
        if (!table_json[r].is_array()) {
            parse_fail(where, "expected an array");
        }
        std::vector<Element> row;
        for (std::size_t c = 0; c < table_json[r].size(); ++c) {
            row.push_back(count_from_json(table_json[r][c], where + "[" + std::to_string(c) + "]"));
        }
        table.push_back(std::move(row));
    }
    if (j.contains("order") && count_from_json(j.at("order"), "group.order") != table.size()) {
        parse_fail("group.order", "does not match the number of table rows");
    }
    const bool trust = j.contains("trust") && j.at("trust").is_boolean() && j.at("trust").get<bool>();
    return FiniteGroup::from_cayley_table(table, trust);
}

std::vector<Matrix> rep_matrices_from_json(const Json& j, std::size_t order) {
    const std::size_t dim = count_from_json(require_key(j, "dim", "rep"), "rep.dim");
    const Json& mats = require_key(j, "matrices", "rep");
    if (!mats.is_array() || mats.size() != order) {
        std::ostringstream msg;
        msg << "expected " << order << " matrices, one per group element";
        parse_fail("rep.matrices", msg.str());
    }
    std::vector<Matrix> out;
    out.reserve(order);
    for (std::size_t g = 0; g < order; ++g) {
        const std::string where = "rep.matrices[" + std::to_string(g) + "]";
        Matrix m = matrix_from_json(mats[g], where);
        if (m.rows() != static_cast<Eigen::Index>(dim) || m.cols() != static_cast<Eigen::Index>(dim)) {
            std::ostringstream msg;
            msg << "matrix is " << m.rows() << "x" << m.cols() << ", expected " << dim << "x" << dim;
            parse_fail(where, msg.str());
        }
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<Matrix> kraus_from_json(const Json& j) {
    const std::size_t dim = count_from_json(require_key(j, "dim", "channel"), "channel.dim");
    const Json& ks = require_key(j, "kraus", "channel");
    if (!ks.is_array() || ks.empty()) {
        parse_fail("channel.kraus", "expected a non-empty array of matrices");
    }
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const std::string where = "channel.kraus[" + std::to_string(i) + "]";
        Matrix m = matrix_from_json(ks[i], where);
        if (m.rows() != static_cast<Eigen::Index>(dim) || m.cols() != static_cast<Eigen::Index>(dim)) {
            parse_fail(where, "Kraus operator does not match channel.dim");
        }
        out.push_back(std::move(m));
    }
    return out;
}

Scene parse_scene(const Json& j, std::optional<double> tol_override) {
    if (!j.is_object()) {
        parse_fail("scene", "expected a JSON object");
    }
    Scene scene;
    if (tol_override) {
        scene.tolerance = Tolerance(*tol_override);
    } else if (j.contains("tolerance")) {
        scene.tolerance = Tolerance(number_from_json(j.at("tolerance"), "tolerance"));
    }
    scene.group = std::make_shared<const FiniteGroup>(group_from_json(require_key(j, "group", "scene")));
    const std::size_t order = scene.group->order();

    // Rep matrices and cost rows are listed in table order; follow the
    // group's re-indexing when its identity was not row 0.
    const FiniteGroup& grp = *scene.group;
    const auto file_matrices = rep_matrices_from_json(require_key(j, "rep", "scene"), order);
    std::vector<Matrix> matrices(order);
    for (Element g = 0; g < order; ++g) {
        matrices[g] = file_matrices[grp.source_index(g)];
    }
    const Eigen::Index d = matrices.front().rows();
    scene.state = vector_from_json(require_key(j, "state", "scene"), "state");
    if (scene.state.size() != d) {
        std::ostringstream msg;
        msg << "state has dimension " << scene.state.size() << " but rep.dim is " << d;
        parse_fail("state", msg.str());
    }
    require_normalized(scene.state, scene.tolerance, "state");

    if (j.contains("channel")) {
        const Json& c = j.at("channel");
        if (c.is_string()) {
            if (c.get<std::string>() != "component_projectors") {
                parse_fail("channel", "unknown channel keyword '" + c.get<std::string>() + "'");
            }
            scene.channel_source = ChannelSource::ComponentProjectors;
        } else {
            auto kraus = kraus_from_json(c);
            if (kraus.front().rows() != d) {
                parse_fail("channel.dim", "does not match rep.dim");
            }
            scene.channel = QuantumChannel::from_kraus(std::move(kraus), scene.tolerance);
            scene.channel_source = ChannelSource::Kraus;
        }
    }
    if (j.contains("povm_seed")) {
        Matrix xi = matrix_from_json(j.at("povm_seed"), "povm_seed");
        if (xi.rows() != d || xi.cols() != d) {
            parse_fail("povm_seed", "must be a rep.dim x rep.dim matrix");
        }
        scene.povm_seed = std::move(xi);
    }
    if (j.contains("cost")) {
        const Json& c = j.at("cost");
        if (c.is_object() && c.contains("kind")) {
            if (c.at("kind") != "delta") {
                parse_fail("cost.kind", "only \"delta\" is supported");
            }
            scene.cost = CostFunction::delta(*scene.group);
        } else if (c.is_object() && c.contains("matrix")) {
            const Json& m = c.at("matrix");
            if (!m.is_array()) {
                parse_fail("cost.matrix", "expected an array of rows");
            }
            std::vector<std::vector<double>> values;
            for (std::size_t r = 0; r < m.size(); ++r) {
                const std::string where = "cost.matrix[" + std::to_string(r) + "]";
                if (!m[r].is_array()) {
                    parse_fail(where, "expected an array");
                }
                std::vector<double> row;
                for (std::size_t col = 0; col < m[r].size(); ++col) {
                    row.push_back(number_from_json(m[r][col], where + "[" + std::to_string(col) + "]"));
                }
                values.push_back(std::move(row));
            }
            const bool square = values.size() == order &&
                                std::all_of(values.begin(), values.end(),
                                            [&](const auto& row) { return row.size() == order; });
            if (square) {
                std::vector<std::vector<double>> reindexed = values;
                for (Element g = 0; g < order; ++g) {
                    for (Element h = 0; h < order; ++h) {
                        reindexed[g][h] = values[grp.source_index(g)][grp.source_index(h)];
                    }
                }
                values = std::move(reindexed);
            }
            scene.cost = CostFunction::from_matrix(grp, values);
        } else {
            parse_fail("cost", "expected {\"kind\": \"delta\"} or {\"matrix\": [[...]]}");
        }
    }
    scene.rep = ProjectiveRep::validate(scene.group, std::move(matrices), scene.tolerance);
    return scene;
}

Scene load_scene(const std::filesystem::path& path, std::optional<double> tol_override) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open scene file " + path.string());
    }
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return parse_scene(j, tol_override);
}

std::optional<QuantumChannel> scene_channel(const Scene& scene) {
    switch (scene.channel_source) {
        case ChannelSource::None:
            return std::nullopt;
        case ChannelSource::Kraus:
            return scene.channel;
        case ChannelSource::ComponentProjectors: {
            const ConfusabilityGraph graph = build_graph(*scene.rep, scene.state, scene.tolerance);
            const SubspaceFamily family =
                complete_family(component_subspaces(*scene.rep, scene.state, graph, scene.tolerance),
                                scene.tolerance);
            return QuantumChannel::from_family(family, scene.tolerance);
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

Json to_json(const Partition& p) {
    Json out = Json::array();
    for (const auto& block : p) {
        out.push_back(block);
    }
    return out;
}

namespace {

Json optional_pair(const std::optional<std::pair<Element, Element>>& p) {
    if (!p) {
        return nullptr;
    }
    return Json::array({p->first, p->second});
}

}  // namespace

Json graph_to_json(const ConfusabilityGraph& graph) {
    const FiniteGroup& grp = graph.group();
    const std::size_t n = grp.order();
    Json out;
    out["group"] = grp.description();
    out["order"] = n;
    out["names"] = grp.names();
    out["tolerance"] = graph.tolerance().eps();
    Json overlaps = Json::array();
    for (Element g = 0; g < n; ++g) {
        overlaps.push_back(std::abs(graph.characteristic()(g)));
    }
    out["overlap_magnitudes"] = std::move(overlaps);
    out["connect_set"] = graph.connect_set().members();
    Json near = Json::array();
    for (const auto& w : graph.near_threshold()) {
        near.push_back({{"element", w.element}, {"magnitude", w.magnitude}});
    }
    out["near_threshold"] = std::move(near);
    Json adjacency = Json::array();
    for (Element g = 0; g < n; ++g) {
        Json row = Json::array();
        for (Element h = 0; h < n; ++h) {
            row.push_back(graph.adjacent(g, h) ? 1 : 0);
        }
        adjacency.push_back(std::move(row));
    }
    out["adjacency"] = std::move(adjacency);
    out["edge_count"] = graph.edge_count();
    out["components"] = to_json(graph.components());
    out["identity_component"] = graph.identity_component();
    return out;
}

Json family_to_json(const SubspaceFamily& family) {
    Json out;
    out["ambient_dim"] = family.ambient_dim();
    Json labels = Json::array();
    Json dims = Json::array();
    Json subspaces = Json::array();
    for (const auto& s : family.subspaces()) {
        labels.push_back(s.label);
        dims.push_back(s.dim());
        Json basis = Json::array();
        for (const auto& b : s.basis) {
            basis.push_back(to_json(b));
        }
        subspaces.push_back({{"label", s.label},
                             {"members", s.members},
                             {"dim", s.dim()},
                             {"basis", std::move(basis)},
                             {"projector", to_json(s.projector)}});
    }
    out["labels"] = std::move(labels);
    out["dims"] = std::move(dims);
    out["subspaces"] = std::move(subspaces);
    return out;
}

Json to_json(const Prop1Report& r) {
    return {{"verdict", to_string(r.verdict)},
            {"adjacency_left_invariant", r.adjacency_left_invariant},
            {"subgroup_closed", r.subgroup_closed},
            {"partition_matches_cosets", r.partition_matches_cosets},
            {"identity_component", r.identity_component.members()},
            {"cosets", to_json(r.cosets)},
            {"counterexample", optional_pair(r.counterexample)},
            {"detail", r.detail}};
}

Json to_json(const Prop2Report& r) {
    return {{"verdict", to_string(r.verdict)},
            {"class_state", r.class_state},
            {"class_function_defect", r.class_function_defect},
            {"normal", r.normal},
            {"left_equals_right", r.left_equals_right},
            {"projective_phase_caveat", r.projective_phase_caveat},
            {"identity_component", r.identity_component.members()}};
}

Json to_json(const DecoherenceReport& r) {
    return {{"verdict", to_string(r.verdict)},
            {"threshold", r.threshold},
            {"max_fixed_point_residual", r.max_fixed_point_residual},
            {"worst_element", r.worst_element},
            {"idempotence_residual", r.idempotence_residual},
            {"trace_defect", r.trace_defect},
            {"probes", r.probes}};
}

Json to_json(const DfsReport& r) {
    Json components = Json::array();
    for (const auto& c : r.components) {
        components.push_back({{"label", c.label},
                              {"members", c.members},
                              {"dim", c.dim},
                              {"trials", c.trials},
                              {"max_random_residual", c.max_random_residual},
                              {"max_matrix_unit_residual", c.max_matrix_unit_residual}});
    }
    return {{"verdict", to_string(r.verdict)},
            {"covariant", r.covariant},
            {"covariance_residual", r.covariance_residual},
            {"seed_fixed", r.seed_fixed},
            {"seed_residual", r.seed_residual},
            {"rng_seed", r.rng_seed},
            {"residual_threshold", r.residual_threshold},
            {"components", std::move(components)}};
}

Json to_json(const OrbitFixedPointReport& r) {
    return {{"covariant", r.covariant},
            {"seed_fixed", r.seed_fixed},
            {"max_residual", r.max_residual},
            {"violators", r.violators},
            {"consistent", r.consistent}};
}

Json to_json(const ReductionReport& r) {
    Json secrets = Json::array();
    for (const auto& s : r.results) {
        secrets.push_back({{"secret", s.secret},
                           {"coset", s.coset_label},
                           {"representative", s.representative},
                           {"residual_element", s.residual_element},
                           {"non_disturbance_residual", s.non_disturbance_residual},
                           {"phase_overlap", s.phase_overlap}});
    }
    Json out = {{"verdict", to_string(r.verdict)},
                {"threshold", r.threshold},
                {"subgroup_order", r.subgroup_order},
                {"reduced_dim", r.reduced_dim},
                {"max_non_disturbance_residual", r.max_non_disturbance_residual},
                {"max_phase_defect", r.max_phase_defect},
                {"secrets", std::move(secrets)}};
    if (!r.error.empty()) {
        out["error"] = r.error;
    }
    return out;
}

Json to_json(const CostReport& r) {
    return {{"worst_case_cost", r.worst_case}, {"per_element_cost", r.per_element}, {"cost_spread", r.spread}};
}

}  // namespace confgraph
