// Matching Tree Algorithm on independence complexes: Sigma(A, B) nodes,
// pluggable tentative-pivot policies, tree-to-matching extraction and
// post-hoc cancellation of critical cells.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kmatch/complex.hpp"
#include "kmatch/graph.hpp"
#include "kmatch/morse.hpp"

namespace kmatch {

enum class NodeKind { Root, FreeLeaf, PivotChild, TentativeLeft, TentativeRight };

// One Sigma(A, B) node. A is forced in, B forced out; invariants
// A ∩ B = ∅, N(A) ⊆ B, A independent. applied_rule is 1 (free vertex),
// 2 (pivot) or 3 (tentative pivot) at internal nodes, 0 at leaves.
struct SigmaNode {
    Mask A = 0;
    Mask B = 0;
    NodeKind kind = NodeKind::Root;
    int applied_rule = 0;
    int rule_vertex = -1;   // free vertex, pivot, or tentative pivot
    int match_vertex = -1;  // rule 2 only
    std::vector<int> children;

    bool is_empty_leaf() const { return kind == NodeKind::FreeLeaf; }
};

struct MatchingTree {
    std::vector<std::string> vertex_labels;  // sorted vertex order of the host graph
    std::vector<Mask> adjacency;             // neighbor masks, aligned with labels
    std::vector<SigmaNode> nodes;            // nodes[0] is the root

    // A-sets of the non-empty non-root leaves, in traversal order.
    std::vector<Mask> critical_cells() const;
    std::map<int, long> critical_by_dim() const;  // dimension = |A| - 1
};

// Chooses the tentative pivot among vertices not yet in A ∪ B.
using PivotPolicy =
    std::function<int(Mask A, Mask B, const std::vector<Mask>& adjacency,
                      const std::vector<std::string>& labels)>;

// Lowest-label vertex of minimum remaining degree.
PivotPolicy default_policy();

// Policy for the line graph of the wheel on n vertices: exhausts the leg
// vertices l0, l1, ... as tentative pivots before touching the outer cycle.
PivotPolicy wheel_policy(int n);

MatchingTree run_mta(const Graph& g, const PivotPolicy& policy = default_policy());

// The acyclic matching the tree induces on the face poset of Ind(g).
MorseMatching tree_matching(const MatchingTree& tree, const FacePoset& poset);

// Extends the tree's matching by explicitly pairing critical cells. Each pair
// must be a cover between critical cells and the extended matching must stay
// acyclic; throws otherwise.
MorseVector post_cancel(const MatchingTree& tree, const FacePoset& poset,
                        const std::vector<std::pair<Mask, Mask>>& cancel_pairs);

}  // namespace kmatch
