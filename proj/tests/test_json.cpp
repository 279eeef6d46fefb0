#include "doctest.h"
#include "kmatch/json_io.hpp"
#include "kmatch/predictions.hpp"

using namespace kmatch;

TEST_SUITE_BEGIN("json");

TEST_CASE("graphs round-trip through the wire format") {
    Graph g = wheel_graph(5);
    Graph back = graph_from_json(graph_to_json(g));
    // Custom labels are not on the wire; structure must survive.
    CHECK(back.vertices() == g.vertices());
    CHECK(back.edge_count() == g.edge_count());
    for (const Edge& e : g.edges()) CHECK(back.has_edge(e.u, e.v));
}

TEST_CASE("complexes serialize facets only and close downward on load") {
    SimplicialComplex cx = matching_complex(star_graph(3), 2);
    OrderedJson j = complex_to_json(cx);
    CHECK(j.at("facets").size() == 3);  // boundary of a triangle
    CHECK(complex_from_json(j) == cx);
}

TEST_CASE("matching dump lists pairs and critical faces") {
    SimplicialComplex bd = simplex_boundary({"x", "y", "z"});
    FacePoset poset(bd);
    MorseMatching m = toggle(poset, bd.vertex_index("x"));
    OrderedJson j = matching_to_json(poset, m);
    const char* expected =
        R"({"pairs":[[[],["x"]],[["y"],["x","y"]],[["z"],["x","z"]]],"critical":[["y","z"]]})";
    CHECK(j.dump() == expected);
}

TEST_CASE("matching trees serialize with rule tags") {
    MatchingTree tree = run_mta(cycle_graph(4));
    OrderedJson j = tree_to_json(tree);
    CHECK(j.at("kind") == "root");
    CHECK(j.at("rule") == 3);  // the square starts with a tentative pivot
    std::string flat = j.dump();
    CHECK(flat.find("\"leaf\":\"critical\"") != std::string::npos);
    // Identical runs produce identical bytes.
    CHECK(tree_to_json(run_mta(cycle_graph(4))).dump() == flat);
}

TEST_CASE("profile serialization is stable") {
    BettiProfile p;
    p.betti[1] = 2;
    p.torsion[1] = {3};
    CHECK(profile_to_json(p).dump() == R"({"betti":{"1":2},"torsion":{"1":[3]}})");
    BettiProfile v;
    v.void_complex = true;
    CHECK(profile_to_json(v).dump() == R"({"void_complex":true})");
}

TEST_SUITE_END();
