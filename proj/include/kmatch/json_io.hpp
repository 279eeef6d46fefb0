// Wire formats: graphs, complexes (facets only), Betti profiles, Morse data
// and matching trees. Uses ordered JSON throughout so reports are byte-stable.
#pragma once

#include "json.hpp"  // vendored nlohmann single header

#include "kmatch/homology.hpp"
#include "kmatch/morse.hpp"
#include "kmatch/mta.hpp"

namespace kmatch {

using OrderedJson = nlohmann::ordered_json;

OrderedJson graph_to_json(const Graph& g);
Graph graph_from_json(const OrderedJson& j);

// {"vertices": [...], "facets": [[...], ...]}; closure is recomputed on load.
OrderedJson complex_to_json(const SimplicialComplex& cx);
SimplicialComplex complex_from_json(const OrderedJson& j);

// {"betti": {"0": b0, ...}, "torsion": {"1": [3], ...}}
OrderedJson profile_to_json(const BettiProfile& p);

OrderedJson sphere_wedge_to_json(const SphereWedge& w);
OrderedJson morse_vector_to_json(const MorseVector& v);

// Pairs plus critical faces, as sorted label lists.
OrderedJson matching_to_json(const FacePoset& poset, const MorseMatching& m);

// Nested Sigma(A, B) nodes with rule tags.
OrderedJson tree_to_json(const MatchingTree& tree);

// Resolves a graph argument: builder string ("wheel:5") or a JSON file path.
Graph load_graph_arg(const std::string& arg);

}  // namespace kmatch
