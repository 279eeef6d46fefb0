#include <algorithm>

#include "doctest.h"
#include "kmatch/predictions.hpp"
#include "test_util.hpp"

using namespace kmatch;

TEST_SUITE_BEGIN("predictions");

TEST_CASE("family table") {
    CHECK(predict_family("wheel-M2", {4}).wedge == SphereWedge{{{2, 3}}});
    CHECK(predict_family("wheel-M2", {5}).wedge == SphereWedge{{{3, 2}}});
    CHECK(predict_family("wheel-M2", {6}).kind == Prediction::Kind::Contractible);
    CHECK(predict_family("clawed-path", {2}).wedge == SphereWedge::single(5));
    CHECK(predict_family("clawed-cycle", {3}).wedge == SphereWedge::single(5));
    CHECK(predict_family("whiskered-cycle", {6}).wedge == SphereWedge::single(5));
    CHECK(predict_family("whiskered-cycle", {5}).wedge == SphereWedge::single(4));
    CHECK(predict_family("wheel-M1", {6}).wedge == SphereWedge{{{1, 6}}});
    CHECK(predict_family("wheel-M1", {5}).wedge == SphereWedge{{{1, 3}}});
    CHECK(predict_family("wheel-M1", {7}).wedge == SphereWedge{{{1, 2}}});
    CHECK(predict_family("cycle-M1", {6}).wedge == SphereWedge{{{1, 2}}});
    CHECK(predict_family("star-M1", {3}).wedge == SphereWedge{{{0, 2}}});
    CHECK(predict_family("star-M2", {3}).wedge == SphereWedge{{{1, 1}}});
    CHECK(predict_family("star-M2", {2}).kind == Prediction::Kind::Contractible);
    CHECK(predict_family("caterpillar-M1", {3, 1}).wedge == SphereWedge{{{0, 2}}});
    CHECK(predict_family("nonesuch", {}).kind == Prediction::Kind::Unknown);
    CHECK_THROWS_AS(predict_family("wheel-M1", {}), std::invalid_argument);
}

TEST_CASE("graph-level rules") {
    CHECK(predict_graph_m2(path_graph(3)).kind == Prediction::Kind::Contractible);
    CHECK(predict_graph_m2(clawed_cycle_graph(3)).wedge == SphereWedge::single(5));
    CHECK(predict_graph_m2(complete_graph(5)).kind == Prediction::Kind::Unknown);
}

TEST_CASE("caterpillar tables follow the recurrences and flag the closed forms") {
    CaterpillarTables t3 = caterpillar_tables(3, 4);
    CHECK(t3.x == 2);
    CHECK(t3.y == 1);
    CHECK(t3.bd_totals[0] == 2);
    CHECK(t3.m2_totals[0] == 1);
    CHECK(t3.bd_totals[1] == 4);
    CHECK(t3.m2_totals[1] == 5);
    CHECK(t3.a_minus_matches);
    CHECK_FALSE(t3.a_plus_matches);
    CHECK(t3.a_plus_first_mismatch == 2);
    CHECK_FALSE(t3.b_series_equals_a_series);
    CHECK(t3.b_vs_a_first_mismatch == 0);
    // The printed bivariate series reproduces the bounded-degree table, not
    // the two-matching table.
    CHECK(t3.bivariate_matches_alpha);
    CHECK_FALSE(t3.bivariate_matches_beta);
    CHECK(t3.unit_bivariate_is_binomial);

    CaterpillarTables t2 = caterpillar_tables(2, 4);
    CHECK(t2.y == 0);
    CHECK(t2.m2_totals[0] == 0);  // the length-1 case is contractible
    CHECK(t2.m2_totals[1] == 1);

    // Per-dimension tables sum to the totals and stay positive for m >= 3.
    for (int i = 0; i < 4; ++i) {
        long long sum = 0;
        for (const auto& [j, v] : t3.beta[i]) {
            CHECK(v > 0);
            sum += v;
        }
        CHECK(sum == t3.m2_totals[i]);
    }
}

TEST_CASE("tower profiles match direct homology of small caterpillars") {
    for (int m : {2, 3})
        for (int n : {1, 2}) {
            auto [bd_pred, m2_pred] = bd_m2_towers(m, n);
            Graph g = caterpillar_graph(n, m);
            BettiProfile m2 = betti(matching_complex(g, 2));
            CHECK(m2 == m2_pred);
            BettiProfile bd = betti(bounded_degree_complex(g, caterpillar_bd_bound(g, n)));
            CHECK(bd == bd_pred);
        }
    auto [bd31, m231] = bd_m2_towers(3, 1);
    CHECK(bd31.betti == std::map<int, long>{{0, 2}});
    CHECK(m231.betti == std::map<int, long>{{1, 1}});
    auto [bd32, m232] = bd_m2_towers(3, 2);
    CHECK(m232.total() == 5);
}

TEST_CASE("attaching sites of a bare clawed cycle") {
    Graph cc3 = clawed_cycle_graph(3);
    SimplicialComplex m2 = matching_complex(cc3, 2);
    FacePoset poset(m2);
    std::map<std::string, std::string> leaf_toggles;
    for (const ClawUnit& u : find_claw_units(cc3))
        for (const auto& tip : u.tips)
            if (cc3.degree(tip) == 1)
                leaf_toggles[u.center] = cc3.edge_between(u.center, tip)->label;
    ClawInducedResult matching = claw_induced_matching(cc3, m2, poset, leaf_toggles);
    REQUIRE(matching.complete);
    SiteReport rep = attaching_site_analysis(cc3, m2, poset, matching);
    CHECK(rep.claw_count == 3);
    CHECK(rep.candidate_count == 3);
    CHECK(rep.site_count == 3);

    // Every classified site keeps the homotopy profile when a leaf lands
    // there; the non-sites would collapse it (none exist here).
    BettiProfile before = betti(m2);
    for (const auto& [v, site] : rep.classification) {
        BettiProfile after = betti(matching_complex(attach_leaf(cc3, v), 2));
        if (site)
            CHECK(after == before);
        else
            CHECK(after.all_zero());
    }
}

TEST_CASE("a leaf at a toggle-incident vertex can preserve the profile") {
    // Classification depends on the chosen toggles, the homotopy type does
    // not: with the cycle-side edges at sub:u0:u1 paired as toggles, that
    // vertex has no critical edge, yet attaching a leaf there keeps the
    // single 5-sphere (reduced Euler characteristic -1, so provably not
    // contractible). Pinned as observed behavior.
    Graph cc3 = clawed_cycle_graph(3);
    std::map<std::string, std::string> toggles;
    toggles["u0"] = cc3.edge_between("u0", "sub:u0:u1")->label;
    toggles["u1"] = cc3.edge_between("u1", "sub:u0:u1")->label;
    for (const auto& n : cc3.neighbors("u2"))
        if (cc3.degree(n) == 1) toggles["u2"] = cc3.edge_between("u2", n)->label;
    SimplicialComplex m2 = matching_complex(cc3, 2);
    FacePoset poset(m2);
    ClawInducedResult res = claw_induced_matching(cc3, m2, poset, toggles);
    REQUIRE(res.complete);
    SiteReport rep = attaching_site_analysis(cc3, m2, poset, res);
    REQUIRE_FALSE(rep.classification.at("sub:u0:u1"));

    SimplicialComplex leafed = matching_complex(attach_leaf(cc3, "sub:u0:u1"), 2);
    CHECK(leafed.reduced_euler() == -1);
    BettiProfile after = betti(leafed);
    CHECK(after == betti(m2));
    CHECK_FALSE(after.all_zero());
}

TEST_CASE("toggle pairing reaches the site bound on scripted graphs") {
    ClawedBuildScript bare{4, {}};
    ToggleAssignment a = maximize_sites(bare);
    CHECK(a.claw_count == 4);
    CHECK(a.site_count == 4);
    CHECK(a.site_count == a.candidate_count);

    Graph cc3 = clawed_cycle_graph(3);
    auto leaves = cc3.leaves();
    ClawedBuildScript theta{3, {{leaves[0], leaves[1], 1}}};
    ToggleAssignment t = maximize_sites(theta);
    CHECK(t.claw_count == 5);
    CHECK(t.site_count == 5);
    CHECK(t.paired_at.size() == 2);
}

TEST_CASE("combinatorial site counts agree with the critical-cell analysis") {
    Graph cc3 = clawed_cycle_graph(3);
    auto leaves = cc3.leaves();
    ClawedBuildScript script{3, {{leaves[0], leaves[1], 1}}};
    ToggleAssignment a = maximize_sites(script);
    Graph g = build_clawed_nonseparable(script);
    SimplicialComplex m2 = matching_complex(g, 2);
    FacePoset poset(m2);
    ClawInducedResult matching = claw_induced_matching(g, m2, poset, a.toggles);
    REQUIRE(matching.complete);
    SiteReport rep = attaching_site_analysis(g, m2, poset, matching);
    CHECK(rep.site_count == a.site_count);
    CHECK(rep.claw_count == a.claw_count);
    CHECK(rep.candidate_count == a.candidate_count);
}

TEST_CASE("the pairing algorithm beats random toggle choices") {
    testutil::Rng rng(61);
    for (int trial = 0; trial < 4; ++trial) {
        ClawedBuildScript script;
        script.cycle_len = 3 + static_cast<int>(rng.below(2));
        Graph g = clawed_cycle_graph(script.cycle_len);
        int steps = 1 + static_cast<int>(rng.below(2));
        for (int s = 0; s < steps; ++s) {
            auto ls = g.leaves();
            if (ls.size() < 2) break;
            std::size_t i = rng.below(ls.size());
            std::size_t j = rng.below(ls.size() - 1);
            if (j >= i) ++j;
            ClawedBuildStep step{ls[i], ls[j], 1 + static_cast<int>(rng.below(2))};
            script.steps.push_back(step);
            g = glue_clawed_path(g, step, s + 1);
        }
        ToggleAssignment best = maximize_sites(script);
        CHECK(best.site_count <= best.claw_count);
        std::vector<ClawUnit> units = find_claw_units(g);
        for (int r = 0; r < 50; ++r) {
            std::map<std::string, std::string> random_toggles;
            for (const ClawUnit& u : units)
                random_toggles[u.center] = u.edge_labels[rng.below(3)];
            CHECK(count_sites(g, random_toggles) <= best.site_count);
        }
    }
}

TEST_CASE("k-matching sequences end at the first cone") {
    KMatchingSequence w4 = k_matching_sequence(wheel_graph(4));
    REQUIRE(w4.cone_k == 3);
    CHECK(w4.profiles[0].betti == std::map<int, long>{{0, 2}});
    CHECK(w4.profiles[1].betti == std::map<int, long>{{2, 3}});
    CHECK(w4.profiles[2].all_zero());

    KMatchingSequence k2 = k_matching_sequence(path_graph(1));
    REQUIRE(k2.cone_k == 1);
    CHECK(k2.profiles[0].all_zero());

    CHECK_THROWS_AS(k_matching_sequence(edgeless_graph(2)), std::invalid_argument);
}

TEST_CASE("connectivity bound versus the measured sphere dimension") {
    ConnectivityGapReport cp1 = jonsson_gap(clawed_path_graph(1));
    CHECK(cp1.connectivity_bound == 1);
    CHECK(cp1.measured_lowest_nonzero == 3);
    CHECK(cp1.sphere_dimension == 3);
    CHECK(cp1.gap == 2);

    ConnectivityGapReport cp0 = jonsson_gap(clawed_path_graph(0));
    CHECK(cp0.connectivity_bound == 0);
    CHECK(cp0.measured_lowest_nonzero == 1);

    ConnectivityGapReport cc3 = jonsson_gap(clawed_cycle_graph(3));
    CHECK(cc3.connectivity_bound == 2);
    CHECK(cc3.measured_lowest_nonzero == 5);

    CHECK_THROWS_AS(jonsson_gap(complete_graph(4)), std::invalid_argument);
}

TEST_CASE("wheel pipelines at the small end") {
    WheelM1Result w4 = wheel_m1_pipeline(4);
    CHECK(w4.raw_critical == std::map<int, long>{{0, 2}});
    CHECK_FALSE(w4.cancelled);

    WheelM1Result w5 = wheel_m1_pipeline(5);
    CHECK(w5.raw_critical == std::map<int, long>{{0, 1}, {1, 4}});
    CHECK(w5.cancelled);
    CHECK(w5.final_vector.critical_by_dim == std::map<int, long>{{1, 3}});

    WheelM2Result m2w4 = wheel_m2_pipeline(4);
    CHECK(m2w4.vector.critical_by_dim == std::map<int, long>{{2, 3}});
    CHECK(m2w4.vector.empty_face_paired);

    WheelM2Result m2w5 = wheel_m2_pipeline(5);
    CHECK(m2w5.vector.critical_by_dim == std::map<int, long>{{3, 2}});
}

TEST_CASE("bridges force contractible two-matching complexes") {
    testutil::Rng rng(71);
    int tested = 0;
    for (int trial = 0; trial < 40 && tested < 12; ++trial) {
        Graph g = testutil::random_graph(rng, 5 + static_cast<int>(rng.below(3)),
                                         4 + static_cast<int>(rng.below(6)));
        bool has_low_edge = false;
        for (const Edge& e : g.edges())
            if (g.degree(e.u) <= 2 && g.degree(e.v) <= 2) has_low_edge = true;
        if (!has_low_edge || g.edge_count() == 0) continue;
        ++tested;
        CHECK(betti(matching_complex(g, 2)).all_zero());
    }
    CHECK(tested > 0);
}

TEST_SUITE_END();
