#include <algorithm>

#include "doctest.h"
#include "kmatch/homology.hpp"
#include "test_util.hpp"

using namespace kmatch;

namespace {

Graph fan_graph() {
    return Graph({"m1", "m2", "t1", "t2", "t3", "t4"},
                 {make_edge("m1", "t1", "a"), make_edge("m1", "t2", "b"),
                  make_edge("m1", "m2", "c"), make_edge("m2", "t3", "d"),
                  make_edge("m2", "t4", "e")});
}

// Minimal six-vertex triangulation of the projective plane.
SimplicialComplex projective_plane() {
    std::vector<std::vector<std::string>> facets = {
        {"1", "2", "3"}, {"1", "2", "4"}, {"1", "3", "5"}, {"1", "4", "6"}, {"1", "5", "6"},
        {"2", "3", "6"}, {"2", "4", "5"}, {"2", "5", "6"}, {"3", "4", "5"}, {"3", "4", "6"}};
    return SimplicialComplex::from_facets({"1", "2", "3", "4", "5", "6"}, facets);
}

}  // namespace

TEST_SUITE_BEGIN("homology");

TEST_CASE("smith normal form of small explicit matrices") {
    SnfSummary d26 = smith_normal_form(SparseIntMatrix::from_dense({{2, 0}, {0, 6}}));
    CHECK(d26.rank == 2);
    REQUIRE(d26.nontrivial_factors.size() == 2);
    CHECK(d26.nontrivial_factors[0] == 2);
    CHECK(d26.nontrivial_factors[1] == 6);

    SnfSummary m = smith_normal_form(SparseIntMatrix::from_dense({{1, 2}, {3, 4}}));
    CHECK(m.rank == 2);
    REQUIRE(m.nontrivial_factors.size() == 1);
    CHECK(m.nontrivial_factors[0] == 2);

    // gcd structure wins over the diagonal: diag entries (4, 6) ~ (2, 12).
    SnfSummary g = smith_normal_form(SparseIntMatrix::from_dense({{4, 0}, {0, 6}}));
    REQUIRE(g.nontrivial_factors.size() == 2);
    CHECK(g.nontrivial_factors[0] == 2);
    CHECK(g.nontrivial_factors[1] == 12);

    SnfSummary zero = smith_normal_form(SparseIntMatrix::from_dense({{0, 0}, {0, 0}}));
    CHECK(zero.rank == 0);
    CHECK(zero.nontrivial_factors.empty());
}

TEST_CASE("the three rank routes agree on random matrices") {
    testutil::Rng rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        int nr = 1 + static_cast<int>(rng.below(7));
        int nc = 1 + static_cast<int>(rng.below(7));
        std::vector<std::vector<long long>> rows(nr, std::vector<long long>(nc));
        for (auto& r : rows)
            for (auto& x : r) x = static_cast<long long>(rng.below(7)) - 3;
        SparseIntMatrix m = SparseIntMatrix::from_dense(rows);
        long snf_rank = smith_normal_form(m).rank;
        CHECK(snf_rank == rank_over_rationals(m));
        CHECK(snf_rank >= rank_mod_p(m, 1009));
    }
}

TEST_CASE("reference complexes have the expected reduced homology") {
    BettiProfile circle = betti(simplex_boundary({"x", "y", "z"}));
    CHECK(circle.betti == std::map<int, long>{{1, 1}});
    CHECK(circle.torsion_free());

    BettiProfile disk = betti(full_simplex({"x", "y", "z"}));
    CHECK(disk.all_zero());

    SimplicialComplex s0a({"a1", "a2"}, {1, 2});
    SimplicialComplex s0b({"b1", "b2"}, {1, 2});
    BettiProfile s1 = betti(join(s0a, s0b));
    CHECK(s1.betti == std::map<int, long>{{1, 1}});

    BettiProfile pt = betti(full_simplex({"v"}));
    CHECK(pt.all_zero());

    BettiProfile void_profile = betti(SimplicialComplex());
    CHECK(void_profile.void_complex);
    CHECK(void_profile.betti_at(-1) == 1);

    BettiProfile two_points = betti(SimplicialComplex({"a", "b"}, {1, 2}));
    CHECK(two_points.betti == std::map<int, long>{{0, 1}});
}

TEST_CASE("torsion is detected exactly") {
    BettiProfile rp2 = betti(projective_plane());
    CHECK(rp2.betti.empty());
    REQUIRE(rp2.torsion.size() == 1);
    CHECK(rp2.torsion.at(1) == std::vector<long long>{2});
}

TEST_CASE("the fan example is a two-sphere") {
    BettiOptions opts;
    opts.rational_check_cols = 10000;
    BettiProfile p = betti(matching_complex(fan_graph(), 2), opts);
    CHECK(p.betti == std::map<int, long>{{2, 1}});
    CHECK(p.torsion_free());
    CHECK(p.reduced_euler() == matching_complex(fan_graph(), 2).reduced_euler());
}

TEST_CASE("profile matching against sphere wedges") {
    BettiProfile p;
    p.betti[3] = 2;
    CHECK(profile_matches(p, SphereWedge{{{3, 2}}}).match);

    BettiProfile zero;
    CHECK(profile_matches(zero, SphereWedge::point()).match);

    BettiProfile one;
    one.betti[1] = 1;
    MatchReport rep = profile_matches(one, SphereWedge{{{2, 1}}});
    CHECK_FALSE(rep.match);
    CHECK(rep.detail.find("dim") != std::string::npos);

    BettiProfile torn;
    torn.betti[1] = 1;
    torn.torsion[1] = {3};
    CHECK_FALSE(profile_matches(torn, SphereWedge{{{1, 1}}}).match);
}

TEST_CASE("join shift identity") {
    Graph k13 = star_graph(3);
    SimplicialComplex a = matching_complex(k13, 2);
    Graph k13b({"d", "y1", "y2", "y3"}, {make_edge("d", "y1", "b1"), make_edge("d", "y2", "b2"),
                                         make_edge("d", "y3", "b3")});
    SimplicialComplex b = matching_complex(k13b, 2);
    JoinShiftReport rep = join_shift_check(a, b);
    CHECK(rep.checked);
    CHECK(rep.match);
    BettiProfile joined = betti(join(a, b));
    CHECK(joined.betti == std::map<int, long>{{3, 1}});

    // Three-point suspension doubles the count one dimension up.
    SimplicialComplex s0({"a1", "a2"}, {1, 2});
    BettiProfile susp = betti(m_point_suspension(s0, 3));
    CHECK(susp.betti == std::map<int, long>{{1, 2}});
    CHECK(suspension_profile(betti(s0), 3) == susp);

    BettiProfile cone = betti(m_point_suspension(full_simplex({"v"}), 2));
    CHECK(cone.all_zero());

    JoinShiftReport skipped = join_shift_check(projective_plane(), s0);
    CHECK_FALSE(skipped.checked);
}

TEST_CASE("claw decomposition shows up as a degree shift in homology") {
    // One claw unit contributes an S^1 join factor: the paw's two-matching
    // complex has the profile of S^1 joined with the complex of the rest
    // (a single point, so everything cancels).
    Graph paw({"top1", "top2", "mid", "tail"},
              {make_edge("top1", "top2", "e"), make_edge("mid", "top1", "y"),
               make_edge("mid", "top2", "z"), make_edge("mid", "tail", "x")});
    BettiProfile rest = betti(matching_complex(
        Graph({"top1", "top2", "tail"}, {make_edge("top1", "top2", "e")}), 2));
    BettiProfile s1;
    s1.betti[1] = 1;
    CHECK(betti(matching_complex(paw, 2)) == join_profile(s1, rest));

    // A clawed path decomposes completely; the remainder is the void complex,
    // which acts as the join identity.
    BettiProfile s3;
    s3.betti[3] = 1;
    BettiProfile void_rest = betti(SimplicialComplex());
    CHECK(betti(matching_complex(clawed_path_graph(1), 2)) == join_profile(s3, void_rest));
}

TEST_CASE("homology is invariant under relabeling") {
    Graph g = wheel_graph(5);
    SimplicialComplex m2 = matching_complex(g, 2);
    std::vector<std::string> renamed;
    for (const auto& l : m2.labels()) renamed.push_back("zz:" + l);
    std::vector<Mask> faces;
    for (const auto& bucket : m2.faces_by_card())
        for (Mask f : bucket) faces.push_back(f);
    // The prefixed labels keep the same relative order, so masks transfer.
    std::sort(renamed.begin(), renamed.end());
    SimplicialComplex relabeled(renamed, faces);
    CHECK(betti(m2) == betti(relabeled));
}

TEST_CASE("independence complexes of cycles match the known wedges") {
    for (int n = 3; n <= 8; ++n) {
        BettiProfile p = betti(independence_complex(cycle_graph(n)));
        int nu = n >= 4 ? (n - 2) / 3 : 0;
        std::map<int, long> expect{{nu, n % 3 == 0 ? 2 : 1}};
        CHECK(p.betti == expect);
        CHECK(p.torsion_free());
    }
}

TEST_SUITE_END();
