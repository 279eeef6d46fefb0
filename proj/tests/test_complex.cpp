#include <algorithm>

#include "doctest.h"
#include "kmatch/complex.hpp"
#include "test_util.hpp"

using namespace kmatch;

namespace {

// The running five-edge example: a path of three edges with two extra edges
// fanned out at each end, labeled a..e.
Graph fan_graph() {
    return Graph({"m1", "m2", "t1", "t2", "t3", "t4"},
                 {make_edge("m1", "t1", "a"), make_edge("m1", "t2", "b"),
                  make_edge("m1", "m2", "c"), make_edge("m2", "t3", "d"),
                  make_edge("m2", "t4", "e")});
}

std::vector<std::vector<std::string>> sorted_label_faces(const SimplicialComplex& cx,
                                                         const std::vector<Mask>& masks) {
    std::vector<std::vector<std::string>> out;
    for (Mask m : masks) out.push_back(cx.labels_of(m));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("complex");

TEST_CASE("two-matching complex of the fan example has the five known facets") {
    SimplicialComplex m2 = matching_complex(fan_graph(), 2);
    auto facets = sorted_label_faces(m2, m2.maximal_faces());
    std::vector<std::vector<std::string>> expected = {
        {"a", "b", "d", "e"}, {"a", "c", "d"}, {"a", "c", "e"}, {"b", "c", "d"}, {"b", "c", "e"}};
    CHECK(facets == expected);
    SimplicialComplex m1 = matching_complex(fan_graph(), 1);
    for (const auto& bucket : m1.faces_by_card())
        for (Mask f : bucket) CHECK(m2.contains(f));
}

TEST_CASE("claw two-matchings form the boundary of a triangle") {
    Graph k13 = star_graph(3);
    SimplicialComplex m2 = matching_complex(k13, 2);
    CHECK(m2 == simplex_boundary(k13.edge_labels()));

    SimplicialComplex m1k2 = matching_complex(path_graph(1), 1);
    CHECK(m1k2.face_count() == 2);  // the empty face and one vertex
}

TEST_CASE("bounded degree complexes specialize and degenerate correctly") {
    Graph g1 = caterpillar_graph(1, 3);
    DegreeBound bound = uniform_bound(g1, 2);
    bound["s1"] = 1;
    SimplicialComplex bd = bounded_degree_complex(g1, bound);
    // Capping the unique spine vertex at one admits only single edges.
    CHECK(bd.dim() == 0);
    CHECK(bd.face_count() == 4);

    Graph fan = fan_graph();
    CHECK(bounded_degree_complex(fan, uniform_bound(fan, 2)) == matching_complex(fan, 2));

    SimplicialComplex zero = bounded_degree_complex(fan, uniform_bound(fan, 0));
    CHECK(zero.is_void());
    CHECK(zero.face_count() == 1);

    DegreeBound missing;
    CHECK_THROWS_AS(bounded_degree_complex(fan, missing), std::invalid_argument);
}

TEST_CASE("independence complexes") {
    SimplicialComplex c3 = independence_complex(cycle_graph(3));
    CHECK(c3.dim() == 0);
    CHECK(c3.face_count() == 4);

    Graph w5 = wheel_graph(5);
    CHECK(independence_complex(line_graph(w5)) == matching_complex(w5, 1));
}

TEST_CASE("one-matchings equal independent sets of the line graph") {
    testutil::Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = testutil::random_graph(rng, 4 + static_cast<int>(rng.below(3)),
                                         3 + static_cast<int>(rng.below(5)));
        if (g.edge_count() == 0) continue;
        CHECK(matching_complex(g, 1) == independence_complex(line_graph(g)));
    }
}

TEST_CASE("matching complexes grow with k and stabilize at the maximum degree") {
    Graph w4 = wheel_graph(4);
    SimplicialComplex prev = matching_complex(w4, 1);
    for (int k = 2; k <= w4.max_degree() + 1; ++k) {
        SimplicialComplex next = matching_complex(w4, k);
        for (const auto& bucket : prev.faces_by_card())
            for (Mask f : bucket) CHECK(next.contains(f));
        if (k > w4.max_degree()) CHECK(next == prev);
        prev = next;
    }
}

TEST_CASE("join multiplies faces and the wedge identity holds face-for-face") {
    SimplicialComplex s0a({"a1", "a2"}, {1, 2});
    SimplicialComplex s0b({"b1", "b2"}, {1, 2});
    SimplicialComplex j = join(s0a, s0b);
    CHECK(j.face_count() == 9);
    CHECK(j.dim() == 1);

    // Wedging two claws at a leaf: two-matchings of the wedge are exactly
    // unions of two-matchings of the sides.
    Graph a({"c", "x1", "x2", "x3"}, {make_edge("c", "x1", "a1"), make_edge("c", "x2", "a2"),
                                      make_edge("c", "x3", "a3")});
    Graph b({"d", "y1", "y2", "y3"}, {make_edge("d", "y1", "b1"), make_edge("d", "y2", "b2"),
                                      make_edge("d", "y3", "b3")});
    Graph wedge = wedge_at(a, b, "x1", "y1");
    CHECK(matching_complex(wedge, 2) == join(matching_complex(a, 2), matching_complex(b, 2)));

    CHECK_THROWS_AS(join(s0a, s0a), std::invalid_argument);
}

TEST_CASE("leaf identification preserves the two-matching complex face-for-face") {
    testutil::Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = testutil::random_bounded_tree(rng, 5 + static_cast<int>(rng.below(4)), 3);
        auto leaves = g.leaves();
        if (leaves.size() < 2) continue;
        std::size_t i = rng.below(leaves.size());
        std::size_t j = rng.below(leaves.size() - 1);
        if (j >= i) ++j;
        // Skip identifications that would create loops or parallel edges.
        if (g.neighbors(leaves[i])[0] == leaves[j] || g.neighbors(leaves[j])[0] == leaves[i])
            continue;
        if (g.neighbors(leaves[i])[0] == g.neighbors(leaves[j])[0]) continue;
        Graph merged = identify_leaves(g, leaves[i], leaves[j]);
        CHECK(matching_complex(g, 2) == matching_complex(merged, 2));
    }
}

TEST_CASE("m-point suspension joins with discrete points") {
    SimplicialComplex s0({"a1", "a2"}, {1, 2});
    SimplicialComplex susp = m_point_suspension(s0, 3);
    CHECK(susp.face_count() == 3 * 4);
    CHECK(susp.dim() == 1);
}

TEST_CASE("budgets fail loudly") {
    CHECK_THROWS_AS(matching_complex(complete_graph(8), 2, 1 << 20), BudgetError);
    try {
        matching_complex(complete_graph(8), 2, 1 << 20);
    } catch (const BudgetError& e) {
        CHECK(e.required == (std::uint64_t{1} << 28));
        CHECK(e.limit == (1u << 20));
    }
    CHECK_THROWS_AS(independence_complex(complete_graph(30), 1 << 24), BudgetError);
}

TEST_CASE("construction validates downward closure") {
    CHECK_THROWS_AS(SimplicialComplex({"a", "b"}, {3}), std::invalid_argument);
    SimplicialComplex closed = SimplicialComplex({"a", "b"}, {3}, /*close_downward=*/true);
    CHECK(closed.face_count() == 4);
    SimplicialComplex from = SimplicialComplex::from_facets({"b", "a"}, {{"a", "b"}});
    CHECK(from == closed);
}

TEST_SUITE_END();
