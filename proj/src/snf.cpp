#include "kmatch/snf.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace kmatch {

SparseIntMatrix SparseIntMatrix::from_dense(const std::vector<std::vector<long long>>& rows) {
    SparseIntMatrix m;
    m.n_rows = static_cast<int>(rows.size());
    m.n_cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    m.cols.resize(m.n_cols);
    for (int i = 0; i < m.n_rows; ++i)
        for (int j = 0; j < m.n_cols; ++j)
            if (rows[i][j] != 0) m.cols[j].push_back({i, rows[i][j]});
    return m;
}

std::size_t SparseIntMatrix::entry_count() const {
    std::size_t n = 0;
    for (const auto& c : cols) n += c.size();
    return n;
}

namespace {

struct Overflow : std::runtime_error {
    Overflow() : std::runtime_error("int64 overflow during elimination") {}
};

// Thin wrapper so the sparse eliminator can run on checked 64-bit integers
// first and on mpz_class only when needed.
struct CheckedInt {
    long long v = 0;
    CheckedInt() = default;
    CheckedInt(long long x) : v(x) {}
    bool is_zero() const { return v == 0; }
    bool is_unit() const { return v == 1 || v == -1; }
    CheckedInt operator*(const CheckedInt& o) const {
        long long r;
        if (__builtin_mul_overflow(v, o.v, &r)) throw Overflow();
        return r;
    }
    CheckedInt operator-(const CheckedInt& o) const {
        long long r;
        if (__builtin_sub_overflow(v, o.v, &r)) throw Overflow();
        return r;
    }
    mpz_class to_mpz() const { return mpz_class(static_cast<long>(v)); }
};

struct BigInt {
    mpz_class v;
    BigInt() = default;
    BigInt(long long x) : v(static_cast<long>(x)) {}  // LP64: long holds all of long long
    bool is_zero() const { return v == 0; }
    bool is_unit() const { return v == 1 || v == -1; }
    BigInt operator*(const BigInt& o) const { BigInt r; r.v = v * o.v; return r; }
    BigInt operator-(const BigInt& o) const { BigInt r; r.v = v - o.v; return r; }
    mpz_class to_mpz() const { return v; }
};

// Dense Smith normal form with full pivoting over arbitrary-precision
// integers. Used for whatever the sparse phase leaves behind; returns all
// nonzero diagonal entries (not yet divisibility-sorted).
std::vector<mpz_class> dense_snf_diagonal(std::vector<std::vector<mpz_class>> a) {
    std::vector<mpz_class> diag;
    std::size_t nr = a.size();
    std::size_t nc = nr ? a[0].size() : 0;
    std::size_t t = 0;
    while (true) {
        // Smallest nonzero entry in the remaining block becomes the pivot.
        std::size_t pi = nr, pj = nc;
        mpz_class best;
        for (std::size_t i = t; i < nr; ++i)
            for (std::size_t j = t; j < nc; ++j) {
                if (a[i][j] == 0) continue;
                mpz_class mag = abs(a[i][j]);
                if (pi == nr || mag < best) {
                    best = mag;
                    pi = i;
                    pj = j;
                }
            }
        if (pi == nr) break;
        std::swap(a[t], a[pi]);
        for (std::size_t i = 0; i < nr; ++i) std::swap(a[i][t], a[i][pj]);

        bool stable = false;
        while (!stable) {
            stable = true;
            for (std::size_t i = t + 1; i < nr; ++i) {
                if (a[i][t] == 0) continue;
                mpz_class q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < nc; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) {
                    std::swap(a[t], a[i]);  // remainder is strictly smaller
                    stable = false;
                }
            }
            for (std::size_t j = t + 1; j < nc; ++j) {
                if (a[t][j] == 0) continue;
                mpz_class q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < nr; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) {
                    for (std::size_t i = 0; i < nr; ++i) std::swap(a[i][t], a[i][j]);
                    stable = false;
                }
            }
            if (!stable) continue;
            // Pivot must divide the rest of the block; fold in a bad row if not.
            for (std::size_t i = t + 1; i < nr && stable; ++i)
                for (std::size_t j = t + 1; j < nc && stable; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        for (std::size_t jj = t; jj < nc; ++jj) a[t][jj] += a[i][jj];
                        stable = false;
                    }
        }
        diag.push_back(abs(a[t][t]));
        ++t;
        if (t >= nr || t >= nc) {
            // No block left; remaining entries are gone by construction.
            break;
        }
    }
    return diag;
}

// Sparse elimination of +-1 pivots, greedy by Markowitz cost. Returns the
// number of pivots eliminated plus the leftover submatrix (re-indexed dense).
template <typename Z>
struct SparseEliminator {
    int nr, nc;
    std::vector<std::vector<std::pair<int, Z>>> col;  // sorted by row
    std::vector<std::vector<int>> row_cols;           // may contain stale entries
    std::vector<int> row_nnz;
    std::vector<char> row_alive, col_alive;
    long rank = 0;

    using Cand = std::tuple<long long, int, int>;  // (cost, row, col)
    std::priority_queue<Cand, std::vector<Cand>, std::greater<Cand>> heap;

    explicit SparseEliminator(const SparseIntMatrix& m)
        : nr(m.n_rows),
          nc(m.n_cols),
          col(m.n_cols),
          row_cols(m.n_rows),
          row_nnz(m.n_rows, 0),
          row_alive(m.n_rows, 1),
          col_alive(m.n_cols, 1) {
        for (int j = 0; j < nc; ++j) {
            col[j].reserve(m.cols[j].size());
            for (auto [i, v] : m.cols[j]) {
                col[j].push_back({i, Z(v)});
                row_cols[i].push_back(j);
                ++row_nnz[i];
            }
        }
    }

    const Z* find_entry(int j, int i) const {
        const auto& c = col[j];
        auto it = std::lower_bound(c.begin(), c.end(), i,
                                   [](const std::pair<int, Z>& e, int r) { return e.first < r; });
        if (it != c.end() && it->first == i) return &it->second;
        return nullptr;
    }

    long long cost_of(int i, int j) const {
        return static_cast<long long>(row_nnz[i] - 1) *
               static_cast<long long>(col[j].size() - 1);
    }

    void seed() {
        for (int j = 0; j < nc; ++j) push_candidates(j);
    }

    void push_candidates(int j) {
        if (!col_alive[j]) return;
        long long best = -1;
        int best_row = -1;
        for (const auto& [i, v] : col[j]) {
            if (!v.is_unit()) continue;
            long long c = cost_of(i, j);
            if (best_row < 0 || c < best) {
                best = c;
                best_row = i;
            }
        }
        if (best_row >= 0) heap.push({best, best_row, j});
    }

    bool rescan() {
        bool found = false;
        for (int j = 0; j < nc; ++j)
            if (col_alive[j] && !col[j].empty()) {
                for (const auto& [i, v] : col[j])
                    if (v.is_unit()) {
                        heap.push({cost_of(i, j), i, j});
                        found = true;
                        break;
                    }
            }
        return found;
    }

    void run() {
        seed();
        while (true) {
            if (heap.empty() && !rescan()) break;
            auto [cost, r, c] = heap.top();
            heap.pop();
            if (!row_alive[r] || !col_alive[c]) continue;
            const Z* pv = find_entry(c, r);
            if (!pv || !pv->is_unit()) continue;
            long long actual = cost_of(r, c);
            if (actual > cost) {
                heap.push({actual, r, c});
                continue;
            }
            eliminate(r, c, *pv);
            ++rank;
        }
    }

    void eliminate(int r, int c, Z pivot) {
        // pivot is +-1, so the multiplier for column j is entry(j,r) * pivot.
        std::vector<int> touched = row_cols[r];
        for (int j : touched) {
            if (j == c || !col_alive[j]) continue;
            const Z* e = find_entry(j, r);
            if (!e) continue;  // stale
            Z factor = *e * pivot;
            subtract_scaled(j, factor, c, r);
        }
        // Retire the pivot row and column.
        for (const auto& [i, v] : col[c]) {
            if (i == r) continue;
            --row_nnz[i];
        }
        col[c].clear();
        col[c].shrink_to_fit();
        col_alive[c] = 0;
        row_alive[r] = 0;
        row_cols[r].clear();
        row_cols[r].shrink_to_fit();
        row_nnz[r] = 0;
    }

    // col[j] -= factor * col[c]; row `skip` (the pivot row) cancels exactly.
    void subtract_scaled(int j, const Z& factor, int c, int skip) {
        const auto& src = col[c];
        const auto& dst = col[j];
        std::vector<std::pair<int, Z>> out;
        out.reserve(dst.size() + src.size());
        std::size_t a = 0, b = 0;
        bool new_units = false;
        while (a < dst.size() || b < src.size()) {
            int ra = a < dst.size() ? dst[a].first : nr;
            int rb = b < src.size() ? src[b].first : nr;
            if (ra < rb) {
                out.push_back(dst[a++]);
            } else if (rb < ra) {
                if (rb == skip) { ++b; continue; }
                Z nv = Z(0) - (factor * src[b].second);
                if (!nv.is_zero()) {
                    out.push_back({rb, nv});
                    ++row_nnz[rb];
                    row_cols[rb].push_back(j);
                    if (nv.is_unit()) new_units = true;
                }
                ++b;
            } else {
                if (ra == skip) { ++a; ++b; continue; }
                Z nv = dst[a].second - factor * src[b].second;
                if (nv.is_zero()) {
                    --row_nnz[ra];
                } else {
                    out.push_back({ra, nv});
                    if (nv.is_unit() && !dst[a].second.is_unit()) new_units = true;
                }
                ++a;
                ++b;
            }
        }
        col[j] = std::move(out);
        if (new_units) push_candidates(j);
    }

    // Remaining alive entries as a dense arbitrary-precision block.
    std::vector<std::vector<mpz_class>> leftover() const {
        std::vector<int> rmap(nr, -1), cmap;
        int r_cnt = 0;
        std::vector<std::vector<mpz_class>> dense;
        for (int j = 0; j < nc; ++j) {
            if (!col_alive[j] || col[j].empty()) continue;
            cmap.push_back(j);
            for (const auto& [i, v] : col[j])
                if (rmap[i] < 0) rmap[i] = r_cnt++;
        }
        if (cmap.empty()) return dense;
        dense.assign(r_cnt, std::vector<mpz_class>(cmap.size(), 0));
        for (std::size_t jj = 0; jj < cmap.size(); ++jj)
            for (const auto& [i, v] : col[cmap[jj]]) dense[rmap[i]][jj] = v.to_mpz();
        return dense;
    }
};

template <typename Z>
SnfSummary snf_with(const SparseIntMatrix& m) {
    SparseEliminator<Z> elim(m);
    elim.run();
    SnfSummary out;
    out.rank = elim.rank;
    std::vector<mpz_class> diag = dense_snf_diagonal(elim.leftover());
    out.rank += static_cast<long>(diag.size());
    // Fold in the unit pivots and normalize to the divisibility chain.
    std::vector<mpz_class> factors(static_cast<std::size_t>(elim.rank), 1);
    for (const auto& d : diag) factors.push_back(d);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < factors.size(); ++i)
            for (std::size_t j = i + 1; j < factors.size(); ++j)
                if (factors[j] % factors[i] != 0) {
                    mpz_class g = gcd(factors[i], factors[j]);
                    mpz_class l = factors[i] / g * factors[j];
                    factors[i] = g;
                    factors[j] = l;
                    changed = true;
                }
    }
    std::sort(factors.begin(), factors.end());
    for (const auto& f : factors)
        if (f > 1) out.nontrivial_factors.push_back(f);
    return out;
}

}  // namespace

SnfSummary smith_normal_form(const SparseIntMatrix& m) {
    try {
        return snf_with<CheckedInt>(m);
    } catch (const Overflow&) {
        return snf_with<BigInt>(m);
    }
}

long rank_over_rationals(const SparseIntMatrix& m) {
    // Column-major elimination over exact rationals; pivot rule: shortest
    // remaining column, lowest live row within it.
    int nr = m.n_rows;
    std::vector<std::vector<std::pair<int, mpq_class>>> col(m.n_cols);
    for (int j = 0; j < m.n_cols; ++j)
        for (auto [i, v] : m.cols[j])
            col[j].emplace_back(i, mpq_class(static_cast<long>(v)));
    std::vector<char> row_done(nr, 0), col_done(m.n_cols, 0);
    long rank = 0;
    while (true) {
        int best_col = -1;
        std::size_t best_size = 0;
        for (int j = 0; j < m.n_cols; ++j) {
            if (col_done[j] || col[j].empty()) continue;
            if (best_col < 0 || col[j].size() < best_size) {
                best_col = j;
                best_size = col[j].size();
            }
        }
        if (best_col < 0) break;
        int prow = col[best_col].front().first;
        mpq_class pval = col[best_col].front().second;
        ++rank;
        col_done[best_col] = 1;
        row_done[prow] = 1;
        for (int j = 0; j < m.n_cols; ++j) {
            if (col_done[j] || col[j].empty()) continue;
            auto it = std::lower_bound(
                col[j].begin(), col[j].end(), prow,
                [](const std::pair<int, mpq_class>& e, int r) { return e.first < r; });
            if (it == col[j].end() || it->first != prow) continue;
            mpq_class f = it->second / pval;
            std::vector<std::pair<int, mpq_class>> out;
            out.reserve(col[j].size() + col[best_col].size());
            std::size_t a = 0, b = 0;
            const auto& dst = col[j];
            const auto& src = col[best_col];
            while (a < dst.size() || b < src.size()) {
                int ra = a < dst.size() ? dst[a].first : nr;
                int rb = b < src.size() ? src[b].first : nr;
                if (ra < rb) {
                    if (!row_done[ra]) out.push_back(dst[a]);
                    ++a;
                } else if (rb < ra) {
                    if (!row_done[rb]) {
                        mpq_class nv = -f * src[b].second;
                        if (nv != 0) out.push_back({rb, nv});
                    }
                    ++b;
                } else {
                    if (!row_done[ra]) {
                        mpq_class nv = dst[a].second - f * src[b].second;
                        if (nv != 0) out.push_back({ra, nv});
                    }
                    ++a;
                    ++b;
                }
            }
            col[j] = std::move(out);
        }
        col[best_col].clear();
    }
    return rank;
}

long rank_mod_p(const SparseIntMatrix& m, unsigned p) {
    if (p < 2) throw std::invalid_argument("rank_mod_p: need p >= 2");
    std::vector<std::vector<unsigned>> rows(m.n_rows, std::vector<unsigned>(m.n_cols, 0));
    for (int j = 0; j < m.n_cols; ++j)
        for (auto [i, v] : m.cols[j]) {
            long long r = v % static_cast<long long>(p);
            if (r < 0) r += p;
            rows[i][j] = static_cast<unsigned>(r);
        }
    auto inv = [&](unsigned a) {
        unsigned r = 1, b = a, e = p - 2;  // p assumed prime for diagnostics
        while (e) {
            if (e & 1) r = static_cast<unsigned>(1ull * r * b % p);
            b = static_cast<unsigned>(1ull * b * b % p);
            e >>= 1;
        }
        return r;
    };
    long rank = 0;
    int lead = 0;
    for (int j = 0; j < m.n_cols && lead < m.n_rows; ++j) {
        int piv = -1;
        for (int i = lead; i < m.n_rows; ++i)
            if (rows[i][j]) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(rows[piv], rows[lead]);
        unsigned pi = inv(rows[lead][j]);
        for (int i = 0; i < m.n_rows; ++i) {
            if (i == lead || !rows[i][j]) continue;
            unsigned f = static_cast<unsigned>(1ull * rows[i][j] * pi % p);
            for (int jj = j; jj < m.n_cols; ++jj)
                rows[i][jj] =
                    static_cast<unsigned>((rows[i][jj] + 1ull * (p - f) * rows[lead][jj]) % p);
        }
        ++lead;
        ++rank;
    }
    return rank;
}

}  // namespace kmatch
