// Reduced integral simplicial homology via Smith normal form, Betti/torsion
// profiles, and wedge-of-spheres matching.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kmatch/complex.hpp"
#include "kmatch/snf.hpp"

namespace kmatch {

// Reduced integral homology summary. `betti` holds the nonzero reduced Betti
// numbers by dimension; `torsion` the invariant factors > 1 by dimension.
// The void complex {∅} is flagged and carries its unit of homology in
// dimension -1.
struct BettiProfile {
    std::map<int, long> betti;
    std::map<int, std::vector<long long>> torsion;
    bool void_complex = false;

    long betti_at(int dim) const {
        auto it = betti.find(dim);
        return it == betti.end() ? 0 : it->second;
    }
    bool torsion_free() const { return torsion.empty(); }
    bool all_zero() const { return betti.empty() && torsion.empty(); }
    long total() const;
    std::optional<int> lowest_nonzero() const;
    long long reduced_euler() const;  // alternating sum of reduced Betti numbers

    bool operator==(const BettiProfile& o) const {
        return betti == o.betti && torsion == o.torsion && void_complex == o.void_complex;
    }
};

// Boundary matrix of k-chains (faces of cardinality k+1) over (k-1)-chains,
// with the augmentation map at k = 0. Signs follow the sorted-vertex
// convention: removing the i-th smallest vertex contributes (-1)^i.
SparseIntMatrix boundary_matrix(const SimplicialComplex& cx, int k);

struct BettiOptions {
    std::uint64_t face_budget = kDefaultBudget;
    // d∘d = 0 is checked exhaustively up to this many faces, sampled above.
    std::size_t boundary_check_limit = 1u << 20;
    // Cross-check SNF ranks against the rational route up to this many columns.
    std::size_t rational_check_cols = 0;  // 0 = off
};

BettiProfile betti(const SimplicialComplex& cx, const BettiOptions& opts = {});

// Multiset of sphere dimensions; empty means a point (contractible claim).
struct SphereWedge {
    std::map<int, long> spheres;

    static SphereWedge point() { return {}; }
    static SphereWedge single(int dim) { return {{{dim, 1}}}; }
    bool is_point() const { return spheres.empty(); }
    long total() const;
    std::string to_string() const;
    bool operator==(const SphereWedge& o) const { return spheres == o.spheres; }
};

struct MatchReport {
    bool match = false;
    std::string detail;
};

// True iff the profile is torsion-free and its Betti numbers are exactly the
// claimed sphere multiplicities.
MatchReport profile_matches(const BettiProfile& profile, const SphereWedge& claim);

// Verifies that reduced Betti numbers of join(a, b) equal the degree-shifted
// convolution of the factors' Betti numbers. Skipped (with report) if either
// factor has torsion.
struct JoinShiftReport {
    bool checked = false;
    bool match = false;
    std::string detail;
};
JoinShiftReport join_shift_check(const SimplicialComplex& a, const SimplicialComplex& b,
                                 std::uint64_t budget = kDefaultBudget);

// Degree-shifted convolution underlying the join identity (and, with a
// wedge-of-points factor, the m-point suspension rule).
BettiProfile join_profile(const BettiProfile& a, const BettiProfile& b);
BettiProfile suspension_profile(const BettiProfile& a, int m_points = 2);
BettiProfile wedge_profile(const BettiProfile& a, const BettiProfile& b);

}  // namespace kmatch
