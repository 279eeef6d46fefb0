// Face posets and discrete Morse matchings: toggling, repeated toggling,
// claw-induced matchings, patchwork unions, acyclicity certificates and
// Morse vectors.
#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "kmatch/complex.hpp"
#include "kmatch/graph.hpp"

namespace kmatch {

// View of a complex's face poset with flat face ids, ordered by
// (cardinality, mask). Id 0 is the empty face, which participates by default.
// The complex must outlive the poset.
class FacePoset {
public:
    explicit FacePoset(const SimplicialComplex& cx);

    const SimplicialComplex& complex() const { return *cx_; }
    int size() const { return total_; }
    Mask face(int id) const;
    int id_of(Mask m) const;
    int face_card(int id) const;
    // Down-covers: remove one vertex. Up-covers: add one vertex, if present.
    std::vector<int> down_covers(int id) const;
    std::vector<int> up_covers(int id) const;

private:
    const SimplicialComplex* cx_;
    std::vector<std::size_t> offset_;  // flat id of first face of each cardinality
    int total_ = 0;
};

// Partial matching on a face poset. partner[id] == -1 marks a critical face.
struct MorseMatching {
    std::vector<int> partner;

    std::vector<std::pair<int, int>> pairs() const;  // (lower, upper), by lower id
    std::vector<int> critical() const;
    std::size_t pair_count() const;
};

using FacePredicate = std::function<bool(Mask)>;

// Pairs a <-> a ∪ {v} whenever both lie in the (optional) subposet.
MorseMatching toggle(const FacePoset& poset, int vertex, const FacePredicate& within = {});

// Repeated toggling: stage i claims every yet-unstaged face α with v_i ∈ α or
// α ∪ {v_i} in the subposet, then toggles v_i within that stage. The union is
// acyclic by the patchwork argument.
MorseMatching toggle_sequence(const FacePoset& poset, const std::vector<int>& vertices,
                              const FacePredicate& within = {});

// Toggles each vertex in turn on whatever is still unmatched. Unlike
// toggle_sequence this is not covered by the patchwork argument, so callers
// must certify the result with verify_acyclic.
MorseMatching greedy_toggle_sequence(const FacePoset& poset, const std::vector<int>& vertices,
                                     const FacePredicate& within = {});

// Claw-induced matching on M2(g): toggles one chosen edge per induced claw
// unit (by center label order). `toggle_choice` maps unit center -> edge
// label; units without an entry use their smallest edge label.
struct ClawInducedResult {
    MorseMatching matching;
    std::vector<ClawUnit> units;
    std::vector<std::string> toggle_edges;  // aligned with units
    bool complete = false;                  // no critical pair can still be matched
};
ClawInducedResult claw_induced_matching(const Graph& g, const SimplicialComplex& m2,
                                        const FacePoset& poset,
                                        const std::map<std::string, std::string>& toggle_choice = {});

// Acyclicity certificate: either a linear extension in which matched pairs
// are consecutive, or an explicit alternating cycle (faces, in order).
struct AcyclicityCertificate {
    bool acyclic = false;
    std::vector<int> linear_extension;
    std::vector<int> cycle;
};
AcyclicityCertificate verify_acyclic(const FacePoset& poset, const MorseMatching& m);

// Critical-face counts per dimension (the empty face counts at dimension -1).
struct MorseVector {
    std::map<int, long> critical_by_dim;
    bool empty_face_paired = false;

    long at(int dim) const {
        auto it = critical_by_dim.find(dim);
        return it == critical_by_dim.end() ? 0 : it->second;
    }
    // Cell counts of the homotopy-equivalent complex: critical faces of
    // dimension >= 0, plus one extra 0-cell when the empty face was paired.
    std::map<int, long> cells_by_dim() const;
    long long reduced_euler() const;  // alternating sum including dim -1
    long total_critical() const;
};
MorseVector morse_vector(const FacePoset& poset, const MorseMatching& m);

// True when no two critical faces form a cover pair.
bool is_complete(const FacePoset& poset, const MorseMatching& m);

// Union of per-stratum matchings along an order-preserving partition
// (stratum_of_face indexed by flat face id; covers may only go weakly up).
using StratumBuilder = std::function<MorseMatching(const FacePoset&, const FacePredicate&)>;
MorseMatching patchwork(const FacePoset& poset, const std::vector<int>& stratum_of_face,
                        const std::vector<StratumBuilder>& builders);
StratumBuilder toggle_builder(std::vector<int> vertices);

}  // namespace kmatch
