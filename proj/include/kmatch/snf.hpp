// Exact integer matrix reduction: Smith normal form (rank + invariant
// factors) for the sparse boundary matrices produced by the homology module,
// and an independent rank computation over the rationals for cross-checks.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace kmatch {

// Column-major sparse integer matrix; each column holds (row, value) pairs
// sorted by row index.
struct SparseIntMatrix {
    int n_rows = 0;
    int n_cols = 0;
    std::vector<std::vector<std::pair<int, long long>>> cols;

    static SparseIntMatrix from_dense(const std::vector<std::vector<long long>>& rows);
    std::size_t entry_count() const;
};

struct SnfSummary {
    long rank = 0;
    // Invariant factors greater than 1, in divisibility order.
    std::vector<mpz_class> nontrivial_factors;
};

// Exact Smith normal form summary. Unit pivots are eliminated sparsely with
// overflow-checked 64-bit arithmetic (falling back to arbitrary-precision
// integers if anything overflows); whatever remains is finished by a dense
// arbitrary-precision reduction with full pivoting.
SnfSummary smith_normal_form(const SparseIntMatrix& m);

// Rank over Q via sparse exact rational elimination. A second route used to
// cross-check the SNF ranks; deliberately uses different arithmetic and a
// different pivot rule.
long rank_over_rationals(const SparseIntMatrix& m);

// Rank over Z/pZ. Fast diagnostic only; never feeds certified results.
long rank_mod_p(const SparseIntMatrix& m, unsigned p);

}  // namespace kmatch
