#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "confgraph/group.hpp"
#include "confgraph/representation.hpp"

namespace confgraph {

/// An element whose overlap magnitude |f(g)| lies in (eps/10, eps]: treated as
/// orthogonal, but close enough to the threshold that the component structure
/// could change under a different tolerance.
struct NearThreshold {
    Element element;
    double magnitude;
};

/// Confusability graph of the orbit {U_g seed}: g ~ h iff |<phi_g|phi_h>| > eps.
///
/// Because <phi_g|phi_h> = (unit phase) * f(g^-1 h) for a projective rep, the
/// adjacency depends only on |f|, which is insensitive to the cocycle. Only
/// |G| inner products are evaluated: adjacency(g, h) = [g^-1 h in D] with
/// connect set D = { g : |f(g)| > eps }.
class ConfusabilityGraph {
public:
    /// Graph from an explicit row-major n x n adjacency relation. Components
    /// come from union-find over every listed edge. Used for fixtures that
    /// perturb a built graph; build_graph is the normal entry point.
    static ConfusabilityGraph from_adjacency(std::shared_ptr<const FiniteGroup> group,
                                             std::vector<std::uint8_t> adjacency, CharacteristicFunction f,
                                             Tolerance tol = {});

    const FiniteGroup& group() const noexcept { return *group_; }
    const std::shared_ptr<const FiniteGroup>& group_ptr() const noexcept { return group_; }
    Tolerance tolerance() const noexcept { return tol_; }

    bool adjacent(Element g, Element h) const { return adjacency_[g * group_->order() + h] != 0; }
    const std::vector<std::uint8_t>& adjacency() const noexcept { return adjacency_; }
    /// Number of unordered edges {g, h} with g != h.
    std::size_t edge_count() const;

    const CharacteristicFunction& characteristic() const noexcept { return f_; }
    const Subset& connect_set() const noexcept { return connect_set_; }
    const std::vector<NearThreshold>& near_threshold() const noexcept { return near_threshold_; }

    /// Canonical partition: sorted members, blocks ordered by minimal element.
    const Partition& components() const noexcept { return components_; }
    std::size_t component_of(Element g) const { return component_index_[g]; }
    /// The block containing the identity (always components()[0]).
    const std::vector<Element>& identity_component() const { return components_.front(); }

private:
    ConfusabilityGraph() = default;
    friend ConfusabilityGraph build_graph(const ProjectiveRep&, const StateVector&, Tolerance);
    void set_components(Partition blocks);
    void classify_overlaps();

    std::shared_ptr<const FiniteGroup> group_;
    Tolerance tol_;
    std::vector<std::uint8_t> adjacency_;
    CharacteristicFunction f_;
    Subset connect_set_;
    std::vector<NearThreshold> near_threshold_;
    Partition components_;
    std::vector<std::size_t> component_index_;
};

ConfusabilityGraph build_graph(const ProjectiveRep& rep, const StateVector& seed, Tolerance tol = {});

class GraphConsistencyError : public Error {
public:
    using Error::Error;
};

/// H = generated_subgroup(connect_set). Throws GraphConsistencyError if it
/// differs from the union-find component of the identity.
Subset identity_subgroup(const ConfusabilityGraph& graph);

enum class Verdict { Pass, Fail, NotApplicable, PremiseFailed };

const char* to_string(Verdict v);

/// Identity component is a subgroup and the components are its left cosets.
struct Prop1Report {
    Verdict verdict = Verdict::Fail;
    bool adjacency_left_invariant = false;
    bool subgroup_closed = false;
    bool partition_matches_cosets = false;
    Subset identity_component;
    Partition cosets;
    /// First offending pair, if any.
    std::optional<std::pair<Element, Element>> counterexample;
    std::string detail;
};

Prop1Report verify_prop1(const ConfusabilityGraph& graph);

/// For class states, the identity component is normal: left and right coset
/// partitions coincide. Not applicable when the seed is not a class state.
struct Prop2Report {
    Verdict verdict = Verdict::Fail;
    bool class_state = false;
    double class_function_defect = 0.0;
    bool normal = false;
    bool left_equals_right = false;
    /// The rep has a nontrivial cocycle; the class property was tested on f
    /// under the U_e = I convention only.
    bool projective_phase_caveat = false;
    Subset identity_component;
};

Prop2Report verify_prop2(const ProjectiveRep& rep, const StateVector& seed, const ConfusabilityGraph& graph);

/// Graphviz rendering with one cluster per component. Vertex and edge order
/// are fixed by element indices, so equal graphs give byte-identical output.
std::string to_dot(const ConfusabilityGraph& graph);

}  // namespace confgraph
