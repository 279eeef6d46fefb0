#include "kmatch/graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

namespace kmatch {

namespace {

std::string default_label(const std::string& u, const std::string& v) {
    return u <= v ? u + "-" + v : v + "-" + u;
}

}  // namespace

Edge make_edge(std::string u, std::string v) {
    std::string label = default_label(u, v);
    return make_edge(std::move(u), std::move(v), std::move(label));
}

Edge make_edge(std::string u, std::string v, std::string label) {
    if (v < u) std::swap(u, v);
    return Edge{std::move(u), std::move(v), std::move(label)};
}

Graph::Graph(std::vector<std::string> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    std::sort(vertices_.begin(), vertices_.end());
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
        throw std::invalid_argument("graph: duplicate vertex id");
    for (Edge& e : edges_) {
        if (e.v < e.u) std::swap(e.u, e.v);
        if (e.u == e.v) throw std::invalid_argument("graph: loop at " + e.u);
        if (!std::binary_search(vertices_.begin(), vertices_.end(), e.u) ||
            !std::binary_search(vertices_.begin(), vertices_.end(), e.v))
            throw std::invalid_argument("graph: edge endpoint not declared: " + e.u + "," + e.v);
        if (e.label.empty()) e.label = default_label(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return a.label < b.label; });
    for (std::size_t i = 1; i < edges_.size(); ++i)
        if (edges_[i].label == edges_[i - 1].label)
            throw std::invalid_argument("graph: duplicate edge label " + edges_[i].label);
    std::set<std::pair<std::string, std::string>> seen;
    for (const Edge& e : edges_)
        if (!seen.insert({e.u, e.v}).second)
            throw std::invalid_argument("graph: parallel edge " + e.u + "," + e.v);
}

bool Graph::has_vertex(const std::string& v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool Graph::has_edge(const std::string& u, const std::string& v) const {
    return edge_between(u, v).has_value();
}

int Graph::degree(const std::string& v) const {
    int d = 0;
    for (const Edge& e : edges_)
        if (e.u == v || e.v == v) ++d;
    return d;
}

int Graph::max_degree() const {
    int best = 0;
    for (const auto& v : vertices_) best = std::max(best, degree(v));
    return best;
}

std::vector<std::string> Graph::neighbors(const std::string& v) const {
    std::vector<std::string> out;
    for (const Edge& e : edges_) {
        if (e.u == v) out.push_back(e.v);
        if (e.v == v) out.push_back(e.u);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> Graph::leaves() const {
    std::vector<std::string> out;
    for (const auto& v : vertices_)
        if (degree(v) == 1) out.push_back(v);
    return out;
}

std::vector<std::string> Graph::edge_labels() const {
    std::vector<std::string> out;
    out.reserve(edges_.size());
    for (const Edge& e : edges_) out.push_back(e.label);
    return out;
}

const Edge& Graph::edge_by_label(const std::string& label) const {
    for (const Edge& e : edges_)
        if (e.label == label) return e;
    throw std::invalid_argument("graph: no edge labeled " + label);
}

std::optional<Edge> Graph::edge_between(const std::string& u, const std::string& v) const {
    for (const Edge& e : edges_)
        if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return e;
    return std::nullopt;
}

bool Graph::operator==(const Graph& other) const {
    if (vertices_ != other.vertices_ || edges_.size() != other.edges_.size()) return false;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& a = edges_[i];
        const Edge& b = other.edges_[i];
        if (a.u != b.u || a.v != b.v || a.label != b.label) return false;
    }
    return true;
}

// ---- named families ------------------------------------------------------

Graph path_graph(int n) {
    if (n < 0) throw std::invalid_argument("path: length must be >= 0");
    std::vector<std::string> vs;
    std::vector<Edge> es;
    for (int i = 0; i <= n; ++i) vs.push_back("p" + std::to_string(i));
    for (int i = 0; i < n; ++i) es.push_back(make_edge(vs[i], vs[i + 1]));
    return Graph(vs, es);
}

Graph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle: need n >= 3");
    std::vector<std::string> vs;
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i) vs.push_back("u" + std::to_string(i));
    for (int i = 0; i < n; ++i) es.push_back(make_edge(vs[i], vs[(i + 1) % n]));
    return Graph(vs, es);
}

Graph star_graph(int m) {
    if (m < 1) throw std::invalid_argument("star: need m >= 1");
    std::vector<std::string> vs = {"c"};
    std::vector<Edge> es;
    for (int i = 1; i <= m; ++i) {
        vs.push_back("v" + std::to_string(i));
        es.push_back(make_edge("c", "v" + std::to_string(i)));
    }
    return Graph(vs, es);
}

Graph complete_graph(int n) {
    if (n < 1) throw std::invalid_argument("complete: need n >= 1");
    std::vector<std::string> vs;
    std::vector<Edge> es;
    for (int i = 1; i <= n; ++i) vs.push_back("v" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.push_back(make_edge(vs[i], vs[j]));
    return Graph(vs, es);
}

Graph complete_bipartite_graph(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("complete bipartite: need m,n >= 1");
    std::vector<std::string> vs;
    std::vector<Edge> es;
    for (int i = 1; i <= m; ++i) vs.push_back("a" + std::to_string(i));
    for (int j = 1; j <= n; ++j) vs.push_back("b" + std::to_string(j));
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= n; ++j)
            es.push_back(make_edge("a" + std::to_string(i), "b" + std::to_string(j)));
    return Graph(vs, es);
}

Graph edgeless_graph(int n) {
    if (n < 1) throw std::invalid_argument("edgeless: need n >= 1");
    std::vector<std::string> vs;
    for (int i = 1; i <= n; ++i) vs.push_back("v" + std::to_string(i));
    return Graph(vs, {});
}

Graph wheel_graph(int n) {
    if (n < 4) throw std::invalid_argument("wheel: need n >= 4");
    int m = n - 1;  // rim length
    std::vector<std::string> vs = {"h"};
    for (int i = 0; i < m; ++i) vs.push_back("r" + std::to_string(i));
    std::vector<Edge> es;
    for (int i = 0; i < m; ++i)
        es.push_back(make_edge("h", "r" + std::to_string(i), "l" + std::to_string(i)));
    // ci shares a vertex with legs l_{i-1} and l_i, so ci = {r_{i-1}, r_i}.
    for (int i = 0; i < m; ++i) {
        int prev = (i + m - 1) % m;
        es.push_back(make_edge("r" + std::to_string(prev), "r" + std::to_string(i),
                               "c" + std::to_string(i)));
    }
    return Graph(vs, es);
}

Graph caterpillar_graph(int n, int m) {
    if (n < 1 || m < 1) throw std::invalid_argument("caterpillar: need n,m >= 1");
    std::vector<std::string> vs;
    std::vector<Edge> es;
    for (int i = 1; i <= n; ++i) vs.push_back("s" + std::to_string(i));
    for (int i = 1; i < n; ++i)
        es.push_back(make_edge("s" + std::to_string(i), "s" + std::to_string(i + 1)));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= m; ++j) {
            std::string leg = "s" + std::to_string(i) + ":g" + std::to_string(j);
            vs.push_back(leg);
            es.push_back(make_edge("s" + std::to_string(i), leg));
        }
    return Graph(vs, es);
}

Graph whiskered_cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("whiskered cycle: need n >= 3");
    std::vector<std::string> vs;
    std::vector<Edge> es;
    // Vertex qi sits between cycle edges i and i+1 (edge n wraps to edge 1).
    for (int i = 1; i <= n; ++i) vs.push_back("q" + std::to_string(i));
    for (int i = 1; i <= n; ++i) {
        std::string a = "q" + std::to_string(i == 1 ? n : i - 1);
        std::string b = "q" + std::to_string(i);
        es.push_back(make_edge(a, b, std::to_string(i)));
    }
    for (int i = 1; i <= n; ++i) {
        std::string w = "w" + std::to_string(i);
        vs.push_back(w);
        std::string label = i < n ? "x:" + std::to_string(i) + ":" + std::to_string(i + 1)
                                  : "x:1:" + std::to_string(n);
        es.push_back(make_edge("q" + std::to_string(i), w, label));
    }
    return Graph(vs, es);
}

Graph clawed_path_graph(int n) { return claw(path_graph(n)); }

Graph clawed_cycle_graph(int n) { return claw(cycle_graph(n)); }

Graph build_named(const std::string& spec) {
    std::string s = spec;
    if (!s.empty() && s.front() == ':') s.erase(s.begin());
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find(':', pos);
        if (next == std::string::npos) {
            parts.push_back(s.substr(pos));
            break;
        }
        parts.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    if (parts.empty()) throw std::invalid_argument("empty graph spec");
    auto arg = [&](std::size_t i) {
        if (i >= parts.size()) throw std::invalid_argument("graph spec " + spec + ": missing parameter");
        return std::stoi(parts[i]);
    };
    const std::string& family = parts[0];
    if (family == "path") return path_graph(arg(1));
    if (family == "cycle") return cycle_graph(arg(1));
    if (family == "star") return star_graph(arg(1));
    if (family == "complete") return complete_graph(arg(1));
    if (family == "complete-bipartite") return complete_bipartite_graph(arg(1), arg(2));
    if (family == "edgeless") return edgeless_graph(arg(1));
    if (family == "wheel") return wheel_graph(arg(1));
    if (family == "caterpillar") return caterpillar_graph(arg(1), arg(2));
    if (family == "whiskered-cycle") return whiskered_cycle_graph(arg(1));
    if (family == "clawed-path") return clawed_path_graph(arg(1));
    if (family == "clawed-cycle") return clawed_cycle_graph(arg(1));
    throw std::invalid_argument("unknown graph family: " + family);
}

// ---- surgeries ------------------------------------------------------------

Graph subdivide_edge(const Graph& g, const std::string& u, const std::string& v) {
    auto e = g.edge_between(u, v);
    if (!e) throw std::invalid_argument("subdivide: no edge " + u + "," + v);
    std::string w = "sub:" + e->u + ":" + e->v;
    std::vector<std::string> vs = g.vertices();
    vs.push_back(w);
    std::vector<Edge> es;
    for (const Edge& f : g.edges())
        if (f.label != e->label) es.push_back(f);
    es.push_back(make_edge(e->u, w));
    es.push_back(make_edge(w, e->v));
    return Graph(vs, es);
}

Graph attach_leaf(const Graph& g, const std::string& v) {
    if (!g.has_vertex(v)) throw std::invalid_argument("attach_leaf: no vertex " + v);
    int k = 0;
    while (g.has_vertex("leaf:" + v + ":" + std::to_string(k))) ++k;
    std::string w = "leaf:" + v + ":" + std::to_string(k);
    std::vector<std::string> vs = g.vertices();
    vs.push_back(w);
    std::vector<Edge> es = g.edges();
    es.push_back(make_edge(v, w));
    return Graph(vs, es);
}

Graph identify_leaves(const Graph& g, const std::string& u, const std::string& v) {
    if (!g.is_leaf(u)) throw std::invalid_argument("identify_leaves: " + u + " is not a leaf");
    if (!g.is_leaf(v)) throw std::invalid_argument("identify_leaves: " + v + " is not a leaf");
    if (u == v) throw std::invalid_argument("identify_leaves: u and v must differ");
    if (g.vertex_count() < 3)
        throw std::invalid_argument("identify_leaves: graph needs at least 3 vertices");
    std::string merged = u + "~" + v;
    std::vector<std::string> vs;
    for (const auto& x : g.vertices())
        if (x != u && x != v) vs.push_back(x);
    vs.push_back(merged);
    std::vector<Edge> es;
    for (const Edge& e : g.edges()) {
        std::string a = (e.u == u || e.u == v) ? merged : e.u;
        std::string b = (e.v == u || e.v == v) ? merged : e.v;
        es.push_back(make_edge(a, b, e.label));
    }
    return Graph(vs, es);  // loop/parallel checks reject adjacent or co-attached leaves
}

Graph wedge_at(const Graph& g, const Graph& g2, const std::string& v1, const std::string& v2) {
    if (!g.has_vertex(v1)) throw std::invalid_argument("wedge: no vertex " + v1);
    if (!g2.has_vertex(v2)) throw std::invalid_argument("wedge: no vertex " + v2);
    for (const auto& x : g2.vertices())
        if (g.has_vertex(x)) throw std::invalid_argument("wedge: vertex sets overlap at " + x);
    std::vector<std::string> vs = g.vertices();
    for (const auto& x : g2.vertices())
        if (x != v2) vs.push_back(x);
    std::vector<Edge> es = g.edges();
    for (const Edge& e : g2.edges()) {
        std::string a = e.u == v2 ? v1 : e.u;
        std::string b = e.v == v2 ? v1 : e.v;
        es.push_back(make_edge(a, b, e.label));
    }
    return Graph(vs, es);
}

Graph whisker_all(const Graph& g) {
    Graph out = g;
    for (const auto& v : g.vertices()) out = attach_leaf(out, v);
    return out;
}

Graph claw(const Graph& g) {
    for (const auto& v : g.vertices())
        if (g.degree(v) > 3)
            throw std::invalid_argument("claw: vertex " + v + " has degree > 3");
    Graph out = g;
    for (const Edge& e : g.edges()) out = subdivide_edge(out, e.u, e.v);
    for (const auto& v : g.vertices()) {
        int need = 3 - g.degree(v);
        for (int i = 0; i < need; ++i) out = attach_leaf(out, v);
    }
    return out;
}

Graph line_graph(const Graph& g) {
    std::vector<std::string> vs = g.edge_labels();
    std::vector<Edge> es;
    const auto& edges = g.edges();
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            const Edge& a = edges[i];
            const Edge& b = edges[j];
            if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v)
                es.push_back(make_edge(a.label, b.label));
        }
    return Graph(vs, es);
}

// ---- claw units -----------------------------------------------------------

std::vector<ClawUnit> find_claw_units(const Graph& g) {
    std::vector<ClawUnit> out;
    for (const auto& c : g.vertices()) {
        if (g.degree(c) != 3) continue;
        std::vector<std::string> nb = g.neighbors(c);
        bool ok = true;
        for (const auto& x : nb)
            if (g.degree(x) > 2) ok = false;
        if (!ok) continue;
        ClawUnit unit;
        unit.center = c;
        unit.tips = nb;
        for (const auto& x : nb) {
            unit.edge_labels.push_back(g.edge_between(c, x)->label);
            if (g.degree(x) == 1) unit.has_leaf = true;
        }
        std::sort(unit.edge_labels.begin(), unit.edge_labels.end());
        out.push_back(std::move(unit));
    }
    return out;
}

bool is_claw_decomposable(const Graph& g) {
    std::vector<ClawUnit> units = find_claw_units(g);
    std::set<std::string> covered;
    for (const ClawUnit& u : units)
        for (const auto& l : u.edge_labels)
            if (!covered.insert(l).second) return false;  // shared edge
    if (covered.size() != g.edge_count()) return false;
    for (std::size_t i = 0; i < units.size(); ++i)
        for (std::size_t j = i + 1; j < units.size(); ++j) {
            std::vector<std::string> a = units[i].tips, b = units[j].tips;
            a.push_back(units[i].center);
            b.push_back(units[j].center);
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            std::vector<std::string> common;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(common));
            if (common.size() > 1) return false;
        }
    return true;
}

// ---- clawed non-separable construction ------------------------------------

Graph glue_clawed_path(const Graph& g, const ClawedBuildStep& step, int step_no) {
    if (step.path_len < 1)
        throw std::invalid_argument("clawed build: path length must be >= 1");
    if (!g.has_vertex(step.leaf1) || !g.is_leaf(step.leaf1))
        throw std::invalid_argument("clawed build: " + step.leaf1 + " is not a leaf");
    if (!g.has_vertex(step.leaf2) || !g.is_leaf(step.leaf2))
        throw std::invalid_argument("clawed build: " + step.leaf2 + " is not a leaf");
    if (step.leaf1 == step.leaf2)
        throw std::invalid_argument("clawed build: the two leaves must differ");
    Graph cp = clawed_path_graph(step.path_len);
    std::string prefix = "s" + std::to_string(step_no) + ":";
    std::vector<std::string> vs;
    for (const auto& v : cp.vertices()) vs.push_back(prefix + v);
    std::vector<Edge> es;
    for (const Edge& e : cp.edges())
        es.push_back(make_edge(prefix + e.u, prefix + e.v, prefix + e.label));
    cp = Graph(vs, es);
    // One leaf hanging off each end of the core path, smallest label first.
    auto end_leaf = [&](const std::string& core_end) {
        for (const auto& v : cp.vertices())
            if (cp.is_leaf(v) && cp.neighbors(v)[0] == prefix + core_end) return v;
        throw std::logic_error("clawed build: end leaf not found");
    };
    std::string a = end_leaf("p0");
    std::string b = end_leaf("p" + std::to_string(step.path_len));
    // Disjoint union, then identify the designated end leaves with the
    // chosen leaves of the running graph.
    std::vector<std::string> uv = g.vertices();
    for (const auto& v : cp.vertices()) uv.push_back(v);
    std::vector<Edge> ue = g.edges();
    for (const Edge& e : cp.edges()) ue.push_back(e);
    Graph u(uv, ue);
    u = identify_leaves(u, step.leaf1, a);
    return identify_leaves(u, step.leaf2, b);
}

Graph build_clawed_nonseparable(const ClawedBuildScript& script) {
    Graph g = clawed_cycle_graph(script.cycle_len);
    int step_no = 0;
    for (const ClawedBuildStep& step : script.steps) g = glue_clawed_path(g, step, ++step_no);
    return g;
}

}  // namespace kmatch
