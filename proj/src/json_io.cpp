#include "kmatch/json_io.hpp"

#include <fstream>

namespace kmatch {

OrderedJson graph_to_json(const Graph& g) {
    OrderedJson j;
    j["vertices"] = g.vertices();
    auto edges = OrderedJson::array();
    for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
    j["edges"] = edges;
    return j;
}

Graph graph_from_json(const OrderedJson& j) {
    std::vector<std::string> vs = j.at("vertices").get<std::vector<std::string>>();
    std::vector<Edge> es;
    for (const auto& e : j.at("edges"))
        es.push_back(make_edge(e.at(0).get<std::string>(), e.at(1).get<std::string>()));
    return Graph(vs, es);
}

OrderedJson complex_to_json(const SimplicialComplex& cx) {
    OrderedJson j;
    j["vertices"] = cx.labels();
    auto facets = OrderedJson::array();
    for (Mask m : cx.maximal_faces()) facets.push_back(cx.labels_of(m));
    j["facets"] = facets;
    return j;
}

SimplicialComplex complex_from_json(const OrderedJson& j) {
    std::vector<std::string> labels = j.at("vertices").get<std::vector<std::string>>();
    std::vector<std::vector<std::string>> facets;
    for (const auto& f : j.at("facets")) facets.push_back(f.get<std::vector<std::string>>());
    return SimplicialComplex::from_facets(labels, facets);
}

OrderedJson profile_to_json(const BettiProfile& p) {
    OrderedJson j;
    if (p.void_complex) {
        j["void_complex"] = true;
        return j;
    }
    OrderedJson betti = OrderedJson::object();
    for (const auto& [d, b] : p.betti) betti[std::to_string(d)] = b;
    OrderedJson torsion = OrderedJson::object();
    for (const auto& [d, t] : p.torsion) torsion[std::to_string(d)] = t;
    j["betti"] = betti;
    j["torsion"] = torsion;
    return j;
}

OrderedJson sphere_wedge_to_json(const SphereWedge& w) {
    OrderedJson j = OrderedJson::object();
    for (const auto& [d, n] : w.spheres) j[std::to_string(d)] = n;
    return j;
}

OrderedJson morse_vector_to_json(const MorseVector& v) {
    OrderedJson j;
    OrderedJson crit = OrderedJson::object();
    for (const auto& [d, c] : v.critical_by_dim) crit[std::to_string(d)] = c;
    j["critical_by_dim"] = crit;
    j["empty_face_paired"] = v.empty_face_paired;
    return j;
}

OrderedJson matching_to_json(const FacePoset& poset, const MorseMatching& m) {
    const SimplicialComplex& cx = poset.complex();
    OrderedJson pairs = OrderedJson::array();
    for (auto [lo, hi] : m.pairs())
        pairs.push_back({cx.labels_of(poset.face(lo)), cx.labels_of(poset.face(hi))});
    OrderedJson crit = OrderedJson::array();
    for (int id : m.critical()) crit.push_back(cx.labels_of(poset.face(id)));
    OrderedJson j;
    j["pairs"] = pairs;
    j["critical"] = crit;
    return j;
}

namespace {

const char* kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::Root: return "root";
        case NodeKind::FreeLeaf: return "free-leaf";
        case NodeKind::PivotChild: return "pivot-child";
        case NodeKind::TentativeLeft: return "tentative-left";
        case NodeKind::TentativeRight: return "tentative-right";
    }
    return "?";
}

OrderedJson node_to_json(const MatchingTree& tree, int id) {
    const SigmaNode& nd = tree.nodes[id];
    OrderedJson j;
    j["kind"] = kind_name(nd.kind);
    if (nd.kind != NodeKind::FreeLeaf) {
        auto labels_of = [&](Mask m) {
            std::vector<std::string> out;
            for (Mask bits = m; bits; bits &= bits - 1)
                out.push_back(tree.vertex_labels[__builtin_ctzll(bits)]);
            return out;
        };
        j["A"] = labels_of(nd.A);
        j["B"] = labels_of(nd.B);
    }
    if (nd.applied_rule != 0) {
        j["rule"] = nd.applied_rule;
        j["rule_vertex"] = tree.vertex_labels[nd.rule_vertex];
        if (nd.match_vertex >= 0) j["match_vertex"] = tree.vertex_labels[nd.match_vertex];
        OrderedJson children = OrderedJson::array();
        for (int c : nd.children) children.push_back(node_to_json(tree, c));
        j["children"] = children;
    } else if (nd.kind != NodeKind::FreeLeaf) {
        j["leaf"] = "critical";
    }
    return j;
}

}  // namespace

OrderedJson tree_to_json(const MatchingTree& tree) { return node_to_json(tree, 0); }

Graph load_graph_arg(const std::string& arg) {
    if (arg.find(".json") != std::string::npos) {
        std::ifstream in(arg);
        if (!in) throw std::invalid_argument("cannot open graph file " + arg);
        OrderedJson j;
        in >> j;
        return graph_from_json(j);
    }
    return build_named(arg);
}

}  // namespace kmatch
