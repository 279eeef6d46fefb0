// Explicit simplicial complexes over up to 64 labeled vertices, with the
// matching / bounded-degree / independence complex builders and the join.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmatch/graph.hpp"

namespace kmatch {

// A face is a bitmask over the complex's vertex order.
using Mask = std::uint64_t;

inline int card(Mask m) { return __builtin_popcountll(m); }

// Thrown when an enumeration or face family would exceed the configured
// budget. `required` is the budget that would have been needed.
class BudgetError : public std::runtime_error {
public:
    BudgetError(std::uint64_t required, std::uint64_t limit)
        : std::runtime_error("budget exceeded: needs " + std::to_string(required) +
                             " candidates, limit " + std::to_string(limit)),
          required(required),
          limit(limit) {}
    std::uint64_t required;
    std::uint64_t limit;
};

constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

// Finite abstract simplicial complex with explicitly stored faces. The empty
// face is always present; downward closure is verified on construction.
class SimplicialComplex {
public:
    // The void complex {∅} on no vertices.
    SimplicialComplex() : SimplicialComplex({}, {}) {}
    // `faces` need not contain the empty face or be closed under subsets when
    // `close_downward` is set; otherwise closure is checked and violations throw.
    SimplicialComplex(std::vector<std::string> labels, std::vector<Mask> faces,
                      bool close_downward = false);

    static SimplicialComplex from_facets(std::vector<std::string> labels,
                                         const std::vector<std::vector<std::string>>& facets);

    const std::vector<std::string>& labels() const { return labels_; }
    int vertex_count() const { return static_cast<int>(labels_.size()); }

    // faces_by_card()[c] = sorted masks of cardinality c (dimension c-1).
    const std::vector<std::vector<Mask>>& faces_by_card() const { return faces_; }
    std::size_t face_count() const { return face_count_; }
    int dim() const { return static_cast<int>(faces_.size()) - 2; }
    bool is_void() const { return dim() == -1; }

    bool contains(Mask m) const;
    // Index of a face within its cardinality bucket; throws if absent.
    std::size_t index_of(Mask m) const;

    int vertex_index(const std::string& label) const;
    Mask mask_of(const std::vector<std::string>& verts) const;
    std::vector<std::string> labels_of(Mask m) const;

    std::vector<Mask> maximal_faces() const;
    long long reduced_euler() const;  // sum over faces of (-1)^dim, empty face included

    bool operator==(const SimplicialComplex& other) const {
        return labels_ == other.labels_ && faces_ == other.faces_;
    }

private:
    std::vector<std::string> labels_;          // sorted
    std::vector<std::vector<Mask>> faces_;     // by cardinality, each sorted
    std::size_t face_count_ = 0;
};

// Vertices are the edge labels of g; faces are edge sets in which every graph
// vertex is covered at most k times.
SimplicialComplex matching_complex(const Graph& g, int k,
                                   std::uint64_t budget = kDefaultBudget);

// Per-vertex degree caps; every graph vertex must have a cap.
using DegreeBound = std::map<std::string, int>;
DegreeBound uniform_bound(const Graph& g, int k);

SimplicialComplex bounded_degree_complex(const Graph& g, const DegreeBound& bound,
                                         std::uint64_t budget = kDefaultBudget);

// Vertices of g; faces are independent sets.
SimplicialComplex independence_complex(const Graph& g,
                                       std::uint64_t budget = kDefaultBudget);

// Faces are unions of one face from each side; label sets must be disjoint.
SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b,
                       std::uint64_t budget = kDefaultBudget);

// Join with m isolated points labeled "pt:1".."pt:m".
SimplicialComplex m_point_suspension(const SimplicialComplex& a, int m,
                                     std::uint64_t budget = kDefaultBudget);

// Full simplex / its boundary on the given labels (test and base-case helpers).
SimplicialComplex full_simplex(std::vector<std::string> labels);
SimplicialComplex simplex_boundary(std::vector<std::string> labels);

}  // namespace kmatch
