// Closed-form homotopy descriptors for the supported graph families, the
// caterpillar recurrence tables with closed-form comparison, tower profiles
// for bounded-degree/2-matching complexes, attaching-site analysis and the
// toggle-pairing site maximization, k-matching sequences, and the wheel
// verification pipelines.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kmatch/complex.hpp"
#include "kmatch/graph.hpp"
#include "kmatch/homology.hpp"
#include "kmatch/morse.hpp"
#include "kmatch/mta.hpp"

namespace kmatch {

struct Prediction {
    enum class Kind { Wedge, Contractible, Unknown } kind = Kind::Unknown;
    SphereWedge wedge;  // meaningful for Wedge; empty wedge == point

    static Prediction wedge_of(SphereWedge w) { return {Kind::Wedge, std::move(w)}; }
    static Prediction contractible() { return {Kind::Contractible, {}}; }
    static Prediction unknown() { return {Kind::Unknown, {}}; }
    std::string to_string() const;
};

// Families: clawed-path, clawed-cycle, whiskered-cycle, wheel-M1, wheel-M2,
// cycle-M1, star-M1, star-M2, caterpillar-M1, caterpillar-M2, caterpillar-BD.
Prediction predict_family(const std::string& family, const std::vector<int>& params);

// Graph-level rules: an edge with both endpoint degrees <= 2 forces a
// contractible 2-matching complex; a clawed graph gives a single sphere of
// dimension 2|E|/3 - 1.
Prediction predict_graph_m2(const Graph& g);

// ---- caterpillar tables -----------------------------------------------------

struct CaterpillarTables {
    int m = 0;
    long long x = 0;  // m - 1
    long long y = 0;  // binomial(m-1, 2)
    // totals[i] = sphere count for caterpillar length i+1.
    std::vector<long long> bd_totals;   // A_i
    std::vector<long long> m2_totals;   // B_i
    // tables[i][j] = spheres of dimension j (BD resp. M2 of length i+1).
    std::vector<std::map<int, long long>> alpha;
    std::vector<std::map<int, long long>> beta;

    // Closed-form comparisons, reported term by term.
    bool a_minus_matches = false;        // x / (1 - (1+y)t - (x^2-y)t^2)
    bool a_plus_matches = false;         // x / (1 - (1+y)t + (x^2-y)t^2)
    int a_plus_first_mismatch = -1;
    bool b_series_equals_a_series = false;  // the printed claim A(t) = B(t)
    int b_vs_a_first_mismatch = -1;
    bool bivariate_matches_beta = false;    // x / (1 - rt - (x^2-y)r^2t^3 - yrt^2) vs beta
    bool bivariate_matches_alpha = false;   // ... vs alpha
    // Coefficient of r^i t^j in the bivariate closed form at x = y = 1 equals
    // binomial(i, j-i) (checked over the computed window).
    bool unit_bivariate_is_binomial = false;
};

CaterpillarTables caterpillar_tables(int m, int depth);

// Tower profiles for BD(G_n) and M2(G_n) of the perfect m-caterpillar,
// produced by iterating the wedge/suspension/join decompositions at the
// homology level from the length-1 base cases.
std::pair<BettiProfile, BettiProfile> bd_m2_towers(int m, int n);

// BD(G_n): degree cap 1 at the far spine end, 2 everywhere else.
DegreeBound caterpillar_bd_bound(const Graph& caterpillar, int n);

// ---- attaching sites --------------------------------------------------------

struct SiteReport {
    long claw_count = 0;       // T
    long leaf_count = 0;       // L
    long candidate_count = 0;  // (3T - L) / 2
    long site_count = 0;
    // degree-2 vertex -> is an attaching site (both incident edges critical)
    std::map<std::string, bool> classification;
};

// Classifies every degree-2 vertex of a clawed graph under a complete
// claw-induced matching: a site iff some critical cell contains both
// incident edges. Throws if the matching is not complete.
SiteReport attaching_site_analysis(const Graph& g, const SimplicialComplex& m2,
                                   const FacePoset& poset, const ClawInducedResult& matching);

struct ToggleAssignment {
    std::map<std::string, std::string> toggles;    // unit center -> toggle edge label
    std::map<std::string, std::string> paired_at;  // unit center -> shared vertex
    long claw_count = 0;
    long leaf_count = 0;
    long candidate_count = 0;
    long site_count = 0;
};

// Replays a clawed build script, choosing leaf edges as toggles and pairing
// toggle edges of consumed leaf-claws at shared vertices (leaf-claws incident
// to exactly one previously chosen leaf-claw first; ties by center label).
ToggleAssignment maximize_sites(const ClawedBuildScript& script);

// Site count of an arbitrary toggle assignment (degree-2 vertices with
// neither incident edge toggled).
long count_sites(const Graph& g, const std::map<std::string, std::string>& toggles);

// ---- sequences and bounds ---------------------------------------------------

struct KMatchingSequence {
    int cone_k = 0;  // smallest k with an edge whose endpoints both have degree <= k
    std::vector<BettiProfile> profiles;  // index 0 is M_1
};
KMatchingSequence k_matching_sequence(const Graph& g, std::uint64_t budget = kDefaultBudget);

struct ConnectivityGapReport {
    long long connectivity_bound = 0;   // |E|/3 - 1
    long long stated_dimension = 0;     // |E|/3 (as printed alongside the bound)
    long long sphere_dimension = 0;     // 2|E|/3 - 1
    int measured_lowest_nonzero = 0;
    long long gap = 0;                  // measured - bound
    BettiProfile profile;
};
ConnectivityGapReport jonsson_gap(const Graph& clawed_graph,
                                  std::uint64_t budget = kDefaultBudget);

// ---- wheel pipelines --------------------------------------------------------

struct WheelM1Result {
    Graph line;                       // line graph of the wheel
    SimplicialComplex ind;            // its independence complex
    MatchingTree tree;
    std::map<int, long> raw_critical; // per dimension, before cancellation
    MorseVector final_vector;         // after cancellation when n = 2 mod 3
    bool cancelled = false;
};
WheelM1Result wheel_m1_pipeline(int n, std::uint64_t budget = kDefaultBudget);

struct WheelM2Result {
    SimplicialComplex m2;
    MorseMatching matching;
    MorseVector vector;
};
WheelM2Result wheel_m2_pipeline(int n, std::uint64_t budget = kDefaultBudget);

}  // namespace kmatch
