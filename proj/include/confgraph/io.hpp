#pragma once

// JSON interchange: complex scalars are [re, im] pairs, matrices are arrays
// of rows, and a scene file bundles every input of an experiment.

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "confgraph/algebra.hpp"
#include "confgraph/channel.hpp"
#include "confgraph/estimation.hpp"
#include "confgraph/graph.hpp"
#include "confgraph/group.hpp"
#include "confgraph/representation.hpp"
#include "confgraph/subspace.hpp"

namespace confgraph {

using Json = nlohmann::ordered_json;

class ParseError : public Error {
public:
    using Error::Error;
};

Complex complex_from_json(const Json& j, const std::string& where);
StateVector vector_from_json(const Json& j, const std::string& where);
Matrix matrix_from_json(const Json& j, const std::string& where);

Json to_json(Complex z);
Json to_json(const StateVector& v);
Json to_json(const Matrix& m);

/// A standard-group name ("cyclic 6", "klein", "cyclic 2 x symmetric 3") or
/// { "order": n, "table": [[...], ...], "trust": false }.
FiniteGroup group_from_json(const Json& j);

/// { "dim": d, "matrices": [ matrix per element ] }
std::vector<Matrix> rep_matrices_from_json(const Json& j, std::size_t order);

/// { "dim": d, "kraus": [ matrix, ... ] }
std::vector<Matrix> kraus_from_json(const Json& j);

enum class ChannelSource {
    None,
    Kraus,
    /// "channel": "component_projectors" builds the completed decoherence map
    /// of the scene's own confusability graph.
    ComponentProjectors,
};

struct Scene {
    std::shared_ptr<const FiniteGroup> group;
    std::optional<ProjectiveRep> rep;
    StateVector state;
    Tolerance tolerance;
    ChannelSource channel_source = ChannelSource::None;
    std::optional<QuantumChannel> channel;
    std::optional<Matrix> povm_seed;
    std::optional<CostFunction> cost;
};

/// Parses and validates a scene. Dimensions are checked for mutual
/// consistency before anything is returned. `tol_override` replaces the
/// scene's "tolerance" entry. Throws ParseError or the validating module's
/// error type.
Scene parse_scene(const Json& j, std::optional<double> tol_override = std::nullopt);
Scene load_scene(const std::filesystem::path& path, std::optional<double> tol_override = std::nullopt);

/// The scene's channel, building the component-projector channel on demand.
std::optional<QuantumChannel> scene_channel(const Scene& scene);

Json to_json(const Partition& p);
Json graph_to_json(const ConfusabilityGraph& graph);
Json family_to_json(const SubspaceFamily& family);
Json to_json(const Prop1Report& r);
Json to_json(const Prop2Report& r);
Json to_json(const DecoherenceReport& r);
Json to_json(const DfsReport& r);
Json to_json(const OrbitFixedPointReport& r);
Json to_json(const ReductionReport& r);
Json to_json(const CostReport& r);

}  // namespace confgraph
