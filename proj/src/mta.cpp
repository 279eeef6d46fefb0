#include "kmatch/mta.hpp"

#include <algorithm>
#include <stdexcept>

namespace kmatch {

std::vector<Mask> MatchingTree::critical_cells() const {
    std::vector<Mask> out;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        const SigmaNode& nd = nodes[i];
        if (nd.kind == NodeKind::FreeLeaf || !nd.children.empty() || nd.applied_rule != 0)
            continue;
        out.push_back(nd.A);
    }
    return out;
}

std::map<int, long> MatchingTree::critical_by_dim() const {
    std::map<int, long> out;
    for (Mask m : critical_cells()) out[card(m) - 1] += 1;
    return out;
}

PivotPolicy default_policy() {
    return [](Mask A, Mask B, const std::vector<Mask>& adj,
              const std::vector<std::string>&) {
        Mask used = A | B;
        int best = -1, best_deg = -1;
        for (int v = 0; v < static_cast<int>(adj.size()); ++v) {
            if (used >> v & 1) continue;
            int deg = card(adj[v] & ~used);
            if (best < 0 || deg < best_deg) {
                best = v;
                best_deg = deg;
            }
        }
        return best;
    };
}

PivotPolicy wheel_policy(int n) {
    if (n < 4) throw std::invalid_argument("wheel_policy: need n >= 4");
    return [n](Mask A, Mask B, const std::vector<Mask>& adj,
               const std::vector<std::string>& labels) {
        Mask used = A | B;
        auto pick = [&](char prefix) {
            int best = -1;
            long best_idx = 0;
            for (int v = 0; v < static_cast<int>(labels.size()); ++v) {
                if (used >> v & 1) continue;
                if (labels[v].empty() || labels[v][0] != prefix) continue;
                long idx = std::stol(labels[v].substr(1));
                if (best < 0 || idx < best_idx) {
                    best = v;
                    best_idx = idx;
                }
            }
            return best;
        };
        int leg = pick('l');
        if (leg >= 0) return leg;
        int cyc = pick('c');
        if (cyc >= 0) return cyc;
        return default_policy()(A, B, adj, labels);
    };
}

namespace {

struct MtaBuilder {
    const std::vector<Mask>& adj;
    const std::vector<std::string>& labels;
    const PivotPolicy& policy;
    Mask full;
    std::vector<SigmaNode>& nodes;

    int build(Mask A, Mask B, NodeKind kind) {
        if (A & B) throw std::logic_error("mta: A and B intersect");
        for (Mask bits = A; bits; bits &= bits - 1) {
            int v = __builtin_ctzll(bits);
            if (adj[v] & A) throw std::logic_error("mta: A is not independent");
            if (adj[v] & ~B) throw std::logic_error("mta: N(A) not contained in B");
        }
        int id = static_cast<int>(nodes.size());
        nodes.push_back(SigmaNode{A, B, kind, 0, -1, -1, {}});
        if ((A | B) == full) return id;  // |Sigma(A,B)| == 1, a critical leaf

        Mask used = A | B;
        // Rule 1: a free vertex pairs everything here away.
        for (int v = 0; v < static_cast<int>(adj.size()); ++v) {
            if (used >> v & 1) continue;
            if ((adj[v] & ~used) == 0) {
                nodes[id].applied_rule = 1;
                nodes[id].rule_vertex = v;
                int child = static_cast<int>(nodes.size());
                nodes.push_back(SigmaNode{0, 0, NodeKind::FreeLeaf, 0, -1, -1, {}});
                nodes[id].children.push_back(child);
                return id;
            }
        }
        // Rule 2: a pivot with a single live neighbor forces that neighbor in.
        for (int v = 0; v < static_cast<int>(adj.size()); ++v) {
            if (used >> v & 1) continue;
            Mask live = adj[v] & ~used;
            if (card(live) == 1) {
                int w = __builtin_ctzll(live);
                nodes[id].applied_rule = 2;
                nodes[id].rule_vertex = v;
                nodes[id].match_vertex = w;
                int child = build(A | Mask{1} << w, B | (adj[w] & ~A), NodeKind::PivotChild);
                nodes[id].children.push_back(child);
                return id;
            }
        }
        // Rule 3: split on a tentative pivot.
        int v = policy(A, B, adj, labels);
        if (v < 0 || (used >> v & 1))
            throw std::invalid_argument("mta: policy returned an unusable vertex");
        nodes[id].applied_rule = 3;
        nodes[id].rule_vertex = v;
        int left = build(A, B | Mask{1} << v, NodeKind::TentativeLeft);
        nodes[id].children.push_back(left);
        int right = build(A | Mask{1} << v, B | (adj[v] & ~A), NodeKind::TentativeRight);
        nodes[id].children.push_back(right);
        return id;
    }
};

}  // namespace

MatchingTree run_mta(const Graph& g, const PivotPolicy& policy) {
    MatchingTree tree;
    tree.vertex_labels = g.vertices();
    int n = static_cast<int>(tree.vertex_labels.size());
    if (n > 64) throw std::invalid_argument("mta: more than 64 vertices");
    tree.adjacency.assign(n, 0);
    auto index_of = [&](const std::string& v) {
        return static_cast<int>(std::lower_bound(tree.vertex_labels.begin(),
                                                 tree.vertex_labels.end(), v) -
                                tree.vertex_labels.begin());
    };
    for (const Edge& e : g.edges()) {
        int a = index_of(e.u), b = index_of(e.v);
        tree.adjacency[a] |= Mask{1} << b;
        tree.adjacency[b] |= Mask{1} << a;
    }
    Mask full = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
    MtaBuilder builder{tree.adjacency, tree.vertex_labels, policy, full, tree.nodes};
    builder.build(0, 0, NodeKind::Root);
    return tree;
}

MorseMatching tree_matching(const MatchingTree& tree, const FacePoset& poset) {
    MorseMatching m;
    m.partner.assign(poset.size(), -1);
    for (int id = 0; id < poset.size(); ++id) {
        Mask face = poset.face(id);
        int at = 0;
        while (true) {
            const SigmaNode& nd = tree.nodes[at];
            if (nd.applied_rule == 1) {
                Mask other = face ^ Mask{1} << nd.rule_vertex;
                m.partner[id] = poset.id_of(other);
                break;
            }
            if (nd.applied_rule == 2) {
                if (face >> nd.match_vertex & 1) {
                    at = nd.children[0];
                    continue;
                }
                Mask other = face ^ Mask{1} << nd.rule_vertex;
                m.partner[id] = poset.id_of(other);
                break;
            }
            if (nd.applied_rule == 3) {
                at = face >> nd.rule_vertex & 1 ? nd.children[1] : nd.children[0];
                continue;
            }
            if (face != nd.A) throw std::logic_error("mta: leaf face differs from its A-set");
            break;  // critical
        }
    }
    for (int id = 0; id < poset.size(); ++id) {
        int p = m.partner[id];
        if (p >= 0 && m.partner[p] != id)
            throw std::logic_error("mta: extracted matching is not an involution");
    }
    return m;
}

MorseVector post_cancel(const MatchingTree& tree, const FacePoset& poset,
                        const std::vector<std::pair<Mask, Mask>>& cancel_pairs) {
    MorseMatching m = tree_matching(tree, poset);
    for (auto [a, b] : cancel_pairs) {
        Mask lo = card(a) <= card(b) ? a : b;
        Mask hi = card(a) <= card(b) ? b : a;
        if (card(hi) - card(lo) != 1 || (lo & ~hi))
            throw std::invalid_argument("post_cancel: pair is not a cover relation");
        int li = poset.id_of(lo), hi_id = poset.id_of(hi);
        if (m.partner[li] >= 0 || m.partner[hi_id] >= 0)
            throw std::invalid_argument("post_cancel: pair touches a non-critical face");
        m.partner[li] = hi_id;
        m.partner[hi_id] = li;
    }
    AcyclicityCertificate cert = verify_acyclic(poset, m);
    if (!cert.acyclic)
        throw std::invalid_argument("post_cancel: extended matching has an alternating cycle");
    return morse_vector(poset, m);
}

}  // namespace kmatch
