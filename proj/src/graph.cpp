#include "confgraph/graph.hpp"

#include <cmath>
#include <sstream>

#include "confgraph/union_find.hpp"

namespace confgraph {

void ConfusabilityGraph::set_components(Partition blocks) {
    components_ = canonicalize(std::move(blocks));
    component_index_.assign(group_->order(), 0);
    for (std::size_t k = 0; k < components_.size(); ++k) {
        for (Element g : components_[k]) {
            component_index_[g] = k;
        }
    }
}

void ConfusabilityGraph::classify_overlaps() {
    const double eps = tol_.eps();
    std::vector<Element> connect;
    near_threshold_.clear();
    for (Element g = 0; g < f_.size(); ++g) {
        const double mag = std::abs(f_(g));
        if (mag > eps) {
            connect.push_back(g);
        } else if (mag > eps / 10.0) {
            near_threshold_.push_back({g, mag});
        }
    }
    connect_set_ = Subset(*group_, std::move(connect));
}

ConfusabilityGraph ConfusabilityGraph::from_adjacency(std::shared_ptr<const FiniteGroup> group,
                                                      std::vector<std::uint8_t> adjacency, CharacteristicFunction f,
                                                      Tolerance tol) {
    const std::size_t n = group->order();
    if (adjacency.size() != n * n || f.size() != n) {
        throw DimensionError("adjacency or characteristic function does not match group order");
    }
    ConfusabilityGraph graph;
    graph.group_ = std::move(group);
    graph.tol_ = tol;
    graph.adjacency_ = std::move(adjacency);
    graph.f_ = std::move(f);
    graph.classify_overlaps();
    DisjointSets sets(n);
    for (Element g = 0; g < n; ++g) {
        for (Element h = 0; h < n; ++h) {
            if (graph.adjacent(g, h)) {
                sets.unite(g, h);
            }
        }
    }
    graph.set_components(sets.blocks());
    return graph;
}

std::size_t ConfusabilityGraph::edge_count() const {
    const std::size_t n = group_->order();
    std::size_t count = 0;
    for (Element g = 0; g < n; ++g) {
        for (Element h = g + 1; h < n; ++h) {
            count += adjacent(g, h) ? 1 : 0;
        }
    }
    return count;
}

ConfusabilityGraph build_graph(const ProjectiveRep& rep, const StateVector& seed, Tolerance tol) {
    ConfusabilityGraph graph;
    graph.group_ = rep.group_ptr();
    graph.tol_ = tol;
    graph.f_ = characteristic_function(rep, seed, tol);
    graph.classify_overlaps();

    const FiniteGroup& grp = rep.group();
    const std::size_t n = grp.order();
    std::vector<std::uint8_t> in_connect(n, 0);
    for (Element d : graph.connect_set_) {
        in_connect[d] = 1;
    }
    graph.adjacency_.assign(n * n, 0);
    for (Element g = 0; g < n; ++g) {
        const Element g_inv = grp.inverse(g);
        for (Element h = 0; h < n; ++h) {
            graph.adjacency_[g * n + h] = in_connect[grp.mul(g_inv, h)];
        }
    }

    // Every edge has the form {g, g d} with d in the connect set.
    DisjointSets sets(n);
    for (Element g = 0; g < n; ++g) {
        for (Element d : graph.connect_set_) {
            sets.unite(g, grp.mul(g, d));
        }
    }
    graph.set_components(sets.blocks());
    return graph;
}

Subset identity_subgroup(const ConfusabilityGraph& graph) {
    const FiniteGroup& grp = graph.group();
    Subset h = generated_subgroup(grp, graph.connect_set());
    if (h.members() != graph.identity_component()) {
        std::ostringstream msg;
        msg << "subgroup generated by the connect set has " << h.size()
            << " elements but the identity component has " << graph.identity_component().size()
            << "; adjacency is inconsistent with the overlap threshold";
        throw GraphConsistencyError(msg.str());
    }
    return h;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass:
            return "pass";
        case Verdict::Fail:
            return "fail";
        case Verdict::NotApplicable:
            return "not applicable";
        case Verdict::PremiseFailed:
            return "premise failed";
    }
    return "unknown";
}

Prop1Report verify_prop1(const ConfusabilityGraph& graph) {
    const FiniteGroup& grp = graph.group();
    const std::size_t n = grp.order();
    Prop1Report report;
    report.identity_component = Subset(grp, graph.identity_component());
    const Subset& h = report.identity_component;

    auto fail = [&](Element a, Element b, std::string why) {
        if (!report.counterexample) {
            report.counterexample = std::make_pair(a, b);
            report.detail = std::move(why);
        }
    };

    // Adjacency must be symmetric and left-invariant: adj(g, h) == adj(e, g^-1 h).
    report.adjacency_left_invariant = true;
    for (Element g = 0; g < n && report.adjacency_left_invariant; ++g) {
        for (Element x = 0; x < n; ++x) {
            const bool edge = graph.adjacent(g, x);
            if (edge != graph.adjacent(x, g) ||
                edge != graph.adjacent(FiniteGroup::identity, grp.mul(grp.inverse(g), x))) {
                report.adjacency_left_invariant = false;
                fail(g, x, "adjacency is not symmetric and left-invariant at this pair");
                break;
            }
        }
    }

    report.subgroup_closed = true;
    for (Element a : h) {
        if (!h.contains(grp.inverse(a))) {
            report.subgroup_closed = false;
            fail(a, grp.inverse(a), "identity component is not closed under inverse");
            break;
        }
        for (Element b : h) {
            if (!h.contains(grp.mul(a, b))) {
                report.subgroup_closed = false;
                fail(a, b, "identity component is not closed under product");
                break;
            }
        }
        if (!report.subgroup_closed) {
            break;
        }
    }

    if (report.subgroup_closed) {
        report.cosets = left_cosets(grp, h);
        report.partition_matches_cosets = report.cosets == graph.components();
        if (!report.partition_matches_cosets) {
            for (Element a = 0; a < n && !report.counterexample; ++a) {
                for (Element b = a + 1; b < n; ++b) {
                    const bool same_component = graph.component_of(a) == graph.component_of(b);
                    if (same_component != h.contains(grp.mul(grp.inverse(a), b))) {
                        fail(a, b,
                             same_component ? "pair shares a component but lies in different left cosets"
                                            : "pair shares a left coset but lies in different components");
                        break;
                    }
                }
            }
        }
    }

    const bool ok = report.adjacency_left_invariant && report.subgroup_closed && report.partition_matches_cosets;
    report.verdict = ok ? Verdict::Pass : Verdict::Fail;
    return report;
}

Prop2Report verify_prop2(const ProjectiveRep& rep, const StateVector& seed, const ConfusabilityGraph& graph) {
    const Tolerance tol = graph.tolerance();
    const FiniteGroup& grp = rep.group();
    Prop2Report report;
    report.identity_component = Subset(grp, graph.identity_component());
    report.class_function_defect = class_function_defect(grp, characteristic_function(rep, seed, tol));
    report.class_state = report.class_function_defect <= tol.eps();
    report.projective_phase_caveat = rep.has_nontrivial_cocycle(tol);

    const Subset& h = report.identity_component;
    if (is_subgroup(grp, h)) {
        report.normal = is_normal(grp, h);
        report.left_equals_right = left_cosets(grp, h) == right_cosets(grp, h);
    }
    if (!report.class_state) {
        report.verdict = Verdict::NotApplicable;
    } else {
        report.verdict = report.normal && report.left_equals_right ? Verdict::Pass : Verdict::Fail;
    }
    return report;
}

std::string to_dot(const ConfusabilityGraph& graph) {
    const FiniteGroup& grp = graph.group();
    const std::size_t n = grp.order();
    std::ostringstream out;
    out << "graph confusability {\n";
    out << "  label=\"" << grp.description() << ": " << graph.components().size() << " components\";\n";
    out << "  node [shape=circle];\n";
    for (std::size_t k = 0; k < graph.components().size(); ++k) {
        out << "  subgraph cluster_" << k << " {\n";
        out << "    label=\"component " << k << "\";\n";
        for (Element g : graph.components()[k]) {
            out << "    " << g << " [label=\"" << g;
            if (grp.name(g) != std::to_string(g)) {
                out << ": " << grp.name(g);
            }
            out << "\"];\n";
        }
        out << "  }\n";
    }
    for (Element g = 0; g < n; ++g) {
        for (Element h = g + 1; h < n; ++h) {
            if (graph.adjacent(g, h)) {
                out << "  " << g << " -- " << h << ";\n";
            }
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace confgraph
