#include <algorithm>

#include "doctest.h"
#include "kmatch/homology.hpp"
#include "kmatch/morse.hpp"
#include "test_util.hpp"

using namespace kmatch;

namespace {

Graph paw_graph() {
    return Graph({"top1", "top2", "mid", "tail"},
                 {make_edge("top1", "top2", "e"), make_edge("mid", "top1", "y"),
                  make_edge("mid", "top2", "z"), make_edge("mid", "tail", "x")});
}

void check_morse_against_homology(const SimplicialComplex& cx, const FacePoset& poset,
                                  const MorseMatching& m) {
    AcyclicityCertificate cert = verify_acyclic(poset, m);
    REQUIRE(cert.acyclic);
    MorseVector vec = morse_vector(poset, m);
    BettiProfile profile = betti(cx);
    for (const auto& [dim, b] : profile.betti) CHECK(vec.at(dim) >= b);
    CHECK(vec.reduced_euler() == cx.reduced_euler());
}

}  // namespace

TEST_SUITE_BEGIN("morse");

TEST_CASE("toggling a triangle boundary leaves the opposite edge") {
    SimplicialComplex bd = simplex_boundary({"x", "y", "z"});
    FacePoset poset(bd);
    MorseMatching m = toggle(poset, bd.vertex_index("x"));
    std::vector<int> crit = m.critical();
    REQUIRE(crit.size() == 1);
    CHECK(bd.labels_of(poset.face(crit[0])) == std::vector<std::string>{"y", "z"});
    MorseVector vec = morse_vector(poset, m);
    CHECK(vec.empty_face_paired);
    CHECK(vec.at(1) == 1);
    CHECK(vec.cells_by_dim() == std::map<int, long>{{0, 1}, {1, 1}});
    check_morse_against_homology(bd, poset, m);
}

TEST_CASE("toggling a cone point matches everything") {
    SimplicialComplex full = full_simplex({"a", "b"});
    FacePoset poset(full);
    MorseMatching m = toggle(poset, full.vertex_index("a"));
    CHECK(m.critical().empty());
    CHECK(morse_vector(poset, m).empty_face_paired);
}

TEST_CASE("toggling the tail edge of the paw leaves the upper ideal over {y,z}") {
    SimplicialComplex m2 = matching_complex(paw_graph(), 2);
    FacePoset poset(m2);
    MorseMatching m = toggle(poset, m2.vertex_index("x"));
    Mask yz = m2.mask_of({"y", "z"});
    std::vector<Mask> crit;
    for (int id : m.critical()) crit.push_back(poset.face(id));
    std::sort(crit.begin(), crit.end());
    std::vector<Mask> ideal;
    for (const auto& bucket : m2.faces_by_card())
        for (Mask f : bucket)
            if ((f & yz) == yz) ideal.push_back(f);
    std::sort(ideal.begin(), ideal.end());
    CHECK(crit == ideal);
    CHECK(crit.size() == 2);  // {y,z} and {e,y,z}
}

TEST_CASE("repeated toggling on whiskered cycles isolates the full cycle") {
    Graph wc6 = whiskered_cycle_graph(6);
    SimplicialComplex m2 = matching_complex(wc6, 2);
    FacePoset poset(m2);
    MorseMatching m = toggle_sequence(
        poset, {m2.vertex_index("x:1:2"), m2.vertex_index("x:3:4"), m2.vertex_index("x:5:6")});
    std::vector<int> crit = m.critical();
    REQUIRE(crit.size() == 1);
    CHECK(m2.labels_of(poset.face(crit[0])) ==
          std::vector<std::string>{"1", "2", "3", "4", "5", "6"});
    check_morse_against_homology(m2, poset, m);

    Graph wc3 = whiskered_cycle_graph(3);
    SimplicialComplex t = matching_complex(wc3, 2);
    FacePoset tposet(t);
    MorseMatching tm =
        toggle_sequence(tposet, {t.vertex_index("x:1:2"), t.vertex_index("x:2:3")});
    std::vector<int> tcrit = tm.critical();
    REQUIRE(tcrit.size() == 1);
    CHECK(t.labels_of(tposet.face(tcrit[0])) == std::vector<std::string>{"1", "2", "3"});
    check_morse_against_homology(t, tposet, tm);
}

TEST_CASE("claw-induced matchings are order-robust and complete on clawed graphs") {
    Graph cp1 = clawed_path_graph(1);
    SimplicialComplex m2 = matching_complex(cp1, 2);
    FacePoset poset(m2);
    ClawInducedResult res = claw_induced_matching(cp1, m2, poset);
    CHECK(res.complete);
    std::vector<int> crit = res.matching.critical();
    REQUIRE(crit.size() == 1);
    CHECK(poset.face_card(crit[0]) == 4);
    MorseVector vec = morse_vector(poset, res.matching);
    CHECK(vec.at(3) == 1);
    CHECK(vec.empty_face_paired);
    check_morse_against_homology(m2, poset, res.matching);

    // On a longer clawed path: any toggle order yields the same unmatched set.
    Graph cp2 = clawed_path_graph(2);
    SimplicialComplex c2 = matching_complex(cp2, 2);
    FacePoset p2(c2);
    std::vector<ClawUnit> units = find_claw_units(cp2);
    REQUIRE(units.size() == 3);
    std::vector<int> toggles;
    for (const auto& u : units) toggles.push_back(c2.vertex_index(u.edge_labels.front()));
    std::sort(toggles.begin(), toggles.end());
    std::vector<std::vector<int>> critical_sets;
    do {
        MorseMatching m = toggle_sequence(p2, toggles);
        critical_sets.push_back(m.critical());
    } while (std::next_permutation(toggles.begin(), toggles.end()));
    for (const auto& c : critical_sets) CHECK(c == critical_sets.front());

    // Different toggle-edge choices leave critical cells of the same shape.
    std::map<std::string, std::string> alt;
    for (const auto& u : units) alt[u.center] = u.edge_labels.back();
    ClawInducedResult res_alt = claw_induced_matching(cp2, c2, p2, alt);
    ClawInducedResult res_def = claw_induced_matching(cp2, c2, p2);
    CHECK(res_alt.matching.critical().size() == res_def.matching.critical().size());
    CHECK(res_alt.complete);

    std::map<std::string, std::string> bogus = {{units[0].center, "no-such-edge"}};
    CHECK_THROWS_AS(claw_induced_matching(cp2, c2, p2, bogus), std::invalid_argument);
}

TEST_CASE("acyclicity verification produces extensions and cycle witnesses") {
    SimplicialComplex bd = simplex_boundary({"x", "y", "z"});
    FacePoset poset(bd);
    MorseMatching m = toggle(poset, bd.vertex_index("x"));
    AcyclicityCertificate cert = verify_acyclic(poset, m);
    REQUIRE(cert.acyclic);
    CHECK(cert.linear_extension.size() == static_cast<std::size_t>(poset.size()));
    // Matched pairs appear consecutively in the extension.
    for (std::size_t i = 0; i < cert.linear_extension.size(); ++i) {
        int id = cert.linear_extension[i];
        int p = m.partner[id];
        if (p >= 0 && poset.face_card(p) > poset.face_card(id))
            CHECK(cert.linear_extension[i + 1] == p);
    }

    // A doubly-matched face is rejected outright.
    MorseMatching bad;
    bad.partner.assign(poset.size(), -1);
    int xid = poset.id_of(bd.mask_of({"x"}));
    int yid = poset.id_of(bd.mask_of({"y"}));
    int xyid = poset.id_of(bd.mask_of({"x", "y"}));
    bad.partner[xid] = xyid;
    bad.partner[xyid] = yid;
    bad.partner[yid] = xyid;
    CHECK_THROWS_AS(verify_acyclic(poset, bad), std::invalid_argument);

    // The standard alternating cycle around a square's edge ring.
    SimplicialComplex square = SimplicialComplex::from_facets(
        {"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"a", "d"}});
    FacePoset sq(square);
    MorseMatching cyc;
    cyc.partner.assign(sq.size(), -1);
    auto pair = [&](std::vector<std::string> lo, std::vector<std::string> hi) {
        int a = sq.id_of(square.mask_of(lo));
        int b = sq.id_of(square.mask_of(hi));
        cyc.partner[a] = b;
        cyc.partner[b] = a;
    };
    pair({"a"}, {"a", "b"});
    pair({"b"}, {"b", "c"});
    pair({"c"}, {"c", "d"});
    pair({"d"}, {"a", "d"});
    AcyclicityCertificate witness = verify_acyclic(sq, cyc);
    CHECK_FALSE(witness.acyclic);
    CHECK(witness.cycle.size() >= 4);
    CHECK_THROWS_AS(morse_vector(sq, cyc), std::invalid_argument);
}

TEST_CASE("patchwork unions respect strata") {
    SimplicialComplex bd = simplex_boundary({"x", "y", "z"});
    FacePoset poset(bd);
    // One stratum holding everything behaves like a plain toggle.
    std::vector<int> one(poset.size(), 0);
    MorseMatching whole = patchwork(poset, one, {toggle_builder({bd.vertex_index("x")})});
    MorseMatching plain = toggle(poset, bd.vertex_index("x"));
    CHECK(whole.partner == plain.partner);

    // A stratum map that sends a face below its subface is rejected.
    std::vector<int> bad(poset.size(), 0);
    bad[poset.id_of(bd.mask_of({"x", "y"}))] = 0;
    bad[poset.id_of(bd.mask_of({"x"}))] = 1;
    CHECK_THROWS_AS(patchwork(poset, bad, {toggle_builder({}), toggle_builder({})}),
                    std::invalid_argument);
}

TEST_CASE("morse data of random independence complexes bounds homology") {
    testutil::Rng rng(31);
    for (int trial = 0; trial < 15; ++trial) {
        Graph g = testutil::random_graph(rng, 5 + static_cast<int>(rng.below(3)),
                                         4 + static_cast<int>(rng.below(6)));
        SimplicialComplex ind = independence_complex(g);
        FacePoset poset(ind);
        std::vector<int> vs;
        for (int i = 0; i < ind.vertex_count() && i < 3; ++i) vs.push_back(i);
        MorseMatching m = toggle_sequence(poset, vs);
        check_morse_against_homology(ind, poset, m);
    }
}

TEST_SUITE_END();
