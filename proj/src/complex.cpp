#include "kmatch/complex.hpp"

#include <algorithm>
#include <set>

namespace kmatch {

namespace {

void check_vertex_limit(std::size_t n) {
    if (n > 64)
        throw std::invalid_argument("complex: more than 64 vertices (" + std::to_string(n) +
                                    ") is not supported");
}

void check_enumeration_budget(std::size_t n_bits, std::uint64_t budget) {
    if (n_bits >= 63 || (std::uint64_t{1} << n_bits) > budget)
        throw BudgetError(n_bits >= 63 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_bits),
                          budget);
}

}  // namespace

SimplicialComplex::SimplicialComplex(std::vector<std::string> labels, std::vector<Mask> faces,
                                     bool close_downward)
    : labels_(std::move(labels)) {
    check_vertex_limit(labels_.size());
    if (!std::is_sorted(labels_.begin(), labels_.end()) ||
        std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end())
        throw std::invalid_argument("complex: labels must be sorted and distinct");

    std::set<Mask> all(faces.begin(), faces.end());
    all.insert(0);
    if (close_downward) {
        // Peeling one vertex at a time reaches every subset.
        std::vector<Mask> stack(all.begin(), all.end());
        while (!stack.empty()) {
            Mask m = stack.back();
            stack.pop_back();
            for (Mask bits = m; bits; bits &= bits - 1) {
                Mask sub = m & ~(bits & -bits);
                if (all.insert(sub).second) stack.push_back(sub);
            }
        }
    }

    int max_card = 0;
    for (Mask m : all) max_card = std::max(max_card, card(m));
    faces_.assign(max_card + 1, {});
    for (Mask m : all) faces_[card(m)].push_back(m);
    for (auto& bucket : faces_) std::sort(bucket.begin(), bucket.end());
    face_count_ = all.size();

    // Downward closure is an invariant, not a convention: verify exhaustively.
    for (const auto& bucket : faces_)
        for (Mask m : bucket)
            for (Mask bits = m; bits; bits &= bits - 1)
                if (!contains(m & ~(bits & -bits)))
                    throw std::invalid_argument("complex: face family not closed under subsets");
}

SimplicialComplex SimplicialComplex::from_facets(
    std::vector<std::string> labels, const std::vector<std::vector<std::string>>& facets) {
    std::sort(labels.begin(), labels.end());
    SimplicialComplex tmp(labels, {});
    std::vector<Mask> faces;
    for (const auto& f : facets) faces.push_back(tmp.mask_of(f));
    return SimplicialComplex(labels, faces, /*close_downward=*/true);
}

bool SimplicialComplex::contains(Mask m) const {
    int c = card(m);
    if (c >= static_cast<int>(faces_.size())) return false;
    const auto& bucket = faces_[c];
    return std::binary_search(bucket.begin(), bucket.end(), m);
}

std::size_t SimplicialComplex::index_of(Mask m) const {
    const auto& bucket = faces_.at(card(m));
    auto it = std::lower_bound(bucket.begin(), bucket.end(), m);
    if (it == bucket.end() || *it != m)
        throw std::invalid_argument("complex: face not present");
    return static_cast<std::size_t>(it - bucket.begin());
}

int SimplicialComplex::vertex_index(const std::string& label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label)
        throw std::invalid_argument("complex: no vertex labeled " + label);
    return static_cast<int>(it - labels_.begin());
}

Mask SimplicialComplex::mask_of(const std::vector<std::string>& verts) const {
    Mask m = 0;
    for (const auto& v : verts) m |= Mask{1} << vertex_index(v);
    return m;
}

std::vector<std::string> SimplicialComplex::labels_of(Mask m) const {
    std::vector<std::string> out;
    for (Mask bits = m; bits; bits &= bits - 1)
        out.push_back(labels_[__builtin_ctzll(bits)]);
    return out;
}

std::vector<Mask> SimplicialComplex::maximal_faces() const {
    std::vector<Mask> out;
    for (const auto& bucket : faces_)
        for (Mask m : bucket) {
            bool maximal = true;
            for (int v = 0; v < vertex_count() && maximal; ++v)
                if (!(m >> v & 1) && contains(m | Mask{1} << v)) maximal = false;
            if (maximal) out.push_back(m);
        }
    return out;
}

long long SimplicialComplex::reduced_euler() const {
    long long chi = 0;
    for (const auto& bucket : faces_)
        for (Mask m : bucket) chi += (card(m) % 2 == 0) ? -1 : 1;  // dim = card-1
    return chi;
}

// ---- builders --------------------------------------------------------------

namespace {

// Depth-first subset enumeration over edge indices with per-vertex counters;
// branches that would violate a cap are never entered.
struct EdgeSubsetEnumerator {
    const std::vector<std::pair<int, int>>& endpoints;  // vertex indices per edge
    std::vector<int> caps;
    std::vector<int> load;
    std::vector<Mask> faces;

    void run(int n_edges) {
        faces.push_back(0);
        dfs(0, 0, n_edges);
    }

    void dfs(int from, Mask cur, int n_edges) {
        for (int j = from; j < n_edges; ++j) {
            auto [a, b] = endpoints[j];
            if (load[a] + 1 > caps[a] || load[b] + 1 > caps[b]) continue;
            ++load[a];
            ++load[b];
            faces.push_back(cur | Mask{1} << j);
            dfs(j + 1, cur | Mask{1} << j, n_edges);
            --load[a];
            --load[b];
        }
    }
};

}  // namespace

DegreeBound uniform_bound(const Graph& g, int k) {
    DegreeBound b;
    for (const auto& v : g.vertices()) b[v] = k;
    return b;
}

SimplicialComplex bounded_degree_complex(const Graph& g, const DegreeBound& bound,
                                         std::uint64_t budget) {
    for (const auto& v : g.vertices()) {
        auto it = bound.find(v);
        if (it == bound.end())
            throw std::invalid_argument("bounded degree complex: no cap for vertex " + v);
        if (it->second < 0)
            throw std::invalid_argument("bounded degree complex: negative cap at " + v);
    }
    check_vertex_limit(g.edge_count());
    check_enumeration_budget(g.edge_count(), budget);

    std::vector<std::string> labels = g.edge_labels();
    std::sort(labels.begin(), labels.end());
    std::map<std::string, int> vidx;
    int nv = 0;
    for (const auto& v : g.vertices()) vidx[v] = nv++;

    std::vector<std::pair<int, int>> endpoints(labels.size());
    SimplicialComplex shell(labels, {});
    for (const Edge& e : g.edges())
        endpoints[shell.vertex_index(e.label)] = {vidx[e.u], vidx[e.v]};

    EdgeSubsetEnumerator enumerator{endpoints, std::vector<int>(nv), std::vector<int>(nv), {}};
    for (const auto& v : g.vertices()) enumerator.caps[vidx[v]] = bound.at(v);
    enumerator.run(static_cast<int>(labels.size()));
    return SimplicialComplex(labels, std::move(enumerator.faces));
}

SimplicialComplex matching_complex(const Graph& g, int k, std::uint64_t budget) {
    if (k < 1) throw std::invalid_argument("matching complex: need k >= 1");
    return bounded_degree_complex(g, uniform_bound(g, k), budget);
}

SimplicialComplex independence_complex(const Graph& g, std::uint64_t budget) {
    check_vertex_limit(g.vertex_count());
    check_enumeration_budget(g.vertex_count(), budget);
    std::vector<std::string> labels = g.vertices();
    SimplicialComplex shell(labels, {});
    int n = static_cast<int>(labels.size());
    std::vector<Mask> adj(n, 0);
    for (const Edge& e : g.edges()) {
        int a = shell.vertex_index(e.u);
        int b = shell.vertex_index(e.v);
        adj[a] |= Mask{1} << b;
        adj[b] |= Mask{1} << a;
    }
    std::vector<Mask> faces = {0};
    // Iterative DFS: extend an independent set by any later, non-adjacent vertex.
    struct Item { Mask set; Mask blocked; int from; };
    std::vector<Item> stack = {{0, 0, 0}};
    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        for (int v = it.from; v < n; ++v) {
            if (it.blocked >> v & 1) continue;
            Mask next = it.set | Mask{1} << v;
            faces.push_back(next);
            stack.push_back({next, it.blocked | adj[v], v + 1});
        }
    }
    return SimplicialComplex(labels, std::move(faces));
}

SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b,
                       std::uint64_t budget) {
    std::vector<std::string> labels = a.labels();
    for (const auto& l : b.labels()) labels.push_back(l);
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
        throw std::invalid_argument("join: label sets must be disjoint");
    check_vertex_limit(labels.size());
    if (a.face_count() > budget / std::max<std::size_t>(b.face_count(), 1))
        throw BudgetError(a.face_count() * static_cast<std::uint64_t>(b.face_count()), budget);

    SimplicialComplex shell(labels, {});
    auto remap = [&](const SimplicialComplex& src) {
        std::vector<int> perm(src.vertex_count());
        for (int i = 0; i < src.vertex_count(); ++i)
            perm[i] = shell.vertex_index(src.labels()[i]);
        return perm;
    };
    std::vector<int> pa = remap(a), pb = remap(b);
    auto lift = [](Mask m, const std::vector<int>& perm) {
        Mask out = 0;
        for (Mask bits = m; bits; bits &= bits - 1)
            out |= Mask{1} << perm[__builtin_ctzll(bits)];
        return out;
    };
    std::vector<Mask> faces;
    faces.reserve(a.face_count() * b.face_count());
    for (const auto& bucket_a : a.faces_by_card())
        for (Mask fa : bucket_a) {
            Mask la = lift(fa, pa);
            for (const auto& bucket_b : b.faces_by_card())
                for (Mask fb : bucket_b) faces.push_back(la | lift(fb, pb));
        }
    return SimplicialComplex(labels, std::move(faces));
}

SimplicialComplex m_point_suspension(const SimplicialComplex& a, int m, std::uint64_t budget) {
    if (m < 1) throw std::invalid_argument("m-point suspension: need m >= 1");
    std::vector<std::string> pts;
    std::vector<Mask> faces = {0};
    for (int i = 1; i <= m; ++i) {
        pts.push_back("pt:" + std::to_string(i));
        faces.push_back(Mask{1} << (i - 1));
    }
    std::sort(pts.begin(), pts.end());
    return join(a, SimplicialComplex(pts, faces), budget);
}

SimplicialComplex full_simplex(std::vector<std::string> labels) {
    std::sort(labels.begin(), labels.end());
    Mask top = labels.empty() ? 0 : (Mask{1} << labels.size()) - 1;
    return SimplicialComplex(labels, {top}, /*close_downward=*/true);
}

SimplicialComplex simplex_boundary(std::vector<std::string> labels) {
    std::sort(labels.begin(), labels.end());
    if (labels.empty()) throw std::invalid_argument("simplex boundary: need vertices");
    Mask top = (Mask{1} << labels.size()) - 1;
    std::vector<Mask> facets;
    for (std::size_t i = 0; i < labels.size(); ++i) facets.push_back(top & ~(Mask{1} << i));
    return SimplicialComplex(labels, facets, /*close_downward=*/true);
}

}  // namespace kmatch
