// Finite simple labeled graphs and the constructions/surgeries used by the
// rest of the library: named families, subdivision, leaf operations, wedge,
// whiskering, clawing, line graphs, claw units and clawed build scripts.
#pragma once

#include <optional>
#include <map>
#include <string>
#include <vector>

namespace kmatch {

// Undirected edge with a stable label. Endpoints are stored with u < v.
// Labels survive surgeries that reroute endpoints (leaf identification,
// wedging), which is what makes face-for-face complex identities testable.
struct Edge {
    std::string u;
    std::string v;
    std::string label;
};

// Immutable simple graph. Vertices and edges iterate in sorted order
// (vertices by id, edges by label); all surgeries return new graphs.
class Graph {
public:
    Graph() = default;
    // Validates: no loops, no parallel edges, unique labels, endpoints declared.
    Graph(std::vector<std::string> vertices, std::vector<Edge> edges);

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    bool has_vertex(const std::string& v) const;
    bool has_edge(const std::string& u, const std::string& v) const;
    int degree(const std::string& v) const;
    int max_degree() const;
    std::vector<std::string> neighbors(const std::string& v) const;
    std::vector<std::string> leaves() const;
    bool is_leaf(const std::string& v) const { return degree(v) == 1; }

    std::vector<std::string> edge_labels() const;
    const Edge& edge_by_label(const std::string& label) const;
    std::optional<Edge> edge_between(const std::string& u, const std::string& v) const;

    bool operator==(const Graph& other) const;

private:
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
};

// Convenience: edge with the default label "u-v" (endpoints sorted).
Edge make_edge(std::string u, std::string v);
Edge make_edge(std::string u, std::string v, std::string label);

// ---- named families ------------------------------------------------------

Graph path_graph(int n);                  // n edges, vertices p0..pn; P0 = one vertex
Graph cycle_graph(int n);                 // n >= 3
Graph star_graph(int m);                  // K_{1,m}: center "c", leaves v1..vm
Graph complete_graph(int n);
Graph complete_bipartite_graph(int m, int n);
Graph edgeless_graph(int n);
// Wheel on n >= 4 vertices: hub "h", rim r0..r_{n-2}; legs l0..l_{n-2} with
// li = {h, ri}; cycle edges c0..c_{n-2} with ci between legs l_{i-1} and l_i.
Graph wheel_graph(int n);
// Perfect m-caterpillar of length n: spine s1..sn, m legs per spine vertex.
Graph caterpillar_graph(int n, int m);
// Whiskered cycle with paper-style edge labels: cycle edges "1".."n", whisker
// "x:i:j" at the vertex shared by cycle edges i and j.
Graph whiskered_cycle_graph(int n);
Graph clawed_path_graph(int n);           // claw(P_n)
Graph clawed_cycle_graph(int n);          // claw(C_n)

// Parses builder strings such as "wheel:5", "clawed-path:2", "caterpillar:3:2".
Graph build_named(const std::string& spec);

// ---- surgeries ------------------------------------------------------------

// Replaces {u,v} by u - sub:u:v - v.
Graph subdivide_edge(const Graph& g, const std::string& u, const std::string& v);
// Adds vertex leaf:v:k (k = first unused index) and the edge to it.
Graph attach_leaf(const Graph& g, const std::string& v);
// Identifies two leaves into a new vertex named "u~v"; edge labels preserved.
Graph identify_leaves(const Graph& g, const std::string& u, const std::string& v);
// One-point union: v1 in g and v2 in g2 become a single vertex (named after v1).
Graph wedge_at(const Graph& g, const Graph& g2, const std::string& v1, const std::string& v2);
// Attaches one leaf to every vertex.
Graph whisker_all(const Graph& g);
// Subdivides every edge, then attaches leaves until every original vertex has
// degree 3. Requires max degree <= 3.
Graph claw(const Graph& g);
// Vertices = edge labels of g, adjacent iff the edges share an endpoint.
Graph line_graph(const Graph& g);

// ---- claw units -----------------------------------------------------------

// Claw unit: a K_{1,3} subgraph whose center has degree exactly 3 and whose
// other three vertices have degree <= 2 in the host graph.
struct ClawUnit {
    std::string center;
    std::vector<std::string> edge_labels;  // the 3 incident edges, sorted
    std::vector<std::string> tips;         // the 3 non-center endpoints, sorted
    bool has_leaf = false;                 // some tip has degree 1
};

// All induced claw units, sorted by center label.
std::vector<ClawUnit> find_claw_units(const Graph& g);
// True when the units cover every edge and pairwise share at most one vertex.
bool is_claw_decomposable(const Graph& g);

// ---- clawed non-separable construction ------------------------------------

struct ClawedBuildStep {
    std::string leaf1;
    std::string leaf2;
    int path_len = 1;  // length of the core path whose clawed version is glued
};

struct ClawedBuildScript {
    int cycle_len = 3;
    std::vector<ClawedBuildStep> steps;
};

// Deterministic replay: start from claw(C_n), then for each step glue a clawed
// path of the given length by identifying one end leaf with each named leaf.
// New vertices of step k are prefixed "s<k>:". Throws if a step references a
// vertex that is not a leaf of the graph built so far.
Graph build_clawed_nonseparable(const ClawedBuildScript& script);

// One replay step: glue a fresh clawed path (vertices prefixed "s<step_no>:")
// onto the named leaves of g.
Graph glue_clawed_path(const Graph& g, const ClawedBuildStep& step, int step_no);

}  // namespace kmatch
