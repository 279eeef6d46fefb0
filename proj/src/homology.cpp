#include "kmatch/homology.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

namespace kmatch {

long BettiProfile::total() const {
    long t = 0;
    for (const auto& [d, b] : betti) t += b;
    return t;
}

std::optional<int> BettiProfile::lowest_nonzero() const {
    std::optional<int> out;
    if (!betti.empty()) out = betti.begin()->first;
    if (!torsion.empty() && (!out || torsion.begin()->first < *out)) out = torsion.begin()->first;
    return out;
}

long long BettiProfile::reduced_euler() const {
    long long chi = 0;
    for (const auto& [d, b] : betti) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(b);
    return chi;
}

SparseIntMatrix boundary_matrix(const SimplicialComplex& cx, int k) {
    if (k < 0) throw std::invalid_argument("boundary_matrix: need k >= 0");
    const auto& buckets = cx.faces_by_card();
    SparseIntMatrix m;
    m.n_rows = k < static_cast<int>(buckets.size()) ? static_cast<int>(buckets[k].size()) : 0;
    m.n_cols = k + 1 < static_cast<int>(buckets.size())
                   ? static_cast<int>(buckets[k + 1].size())
                   : 0;
    m.cols.resize(m.n_cols);
    if (m.n_cols == 0) return m;
    const auto& rows = buckets[k];
    const auto& cols = buckets[k + 1];
    for (int j = 0; j < m.n_cols; ++j) {
        Mask face = cols[j];
        int pos = 0;
        for (Mask bits = face; bits; bits &= bits - 1, ++pos) {
            Mask sub = face & ~(bits & -bits);
            auto it = std::lower_bound(rows.begin(), rows.end(), sub);
            if (it == rows.end() || *it != sub)
                throw std::logic_error("boundary_matrix: missing subface");
            m.cols[j].push_back({static_cast<int>(it - rows.begin()), pos % 2 == 0 ? 1 : -1});
        }
        std::sort(m.cols[j].begin(), m.cols[j].end());
    }
    return m;
}

namespace {

// Exact check that the composite of two consecutive boundary maps vanishes.
void check_composition_zero(const SparseIntMatrix& lower, const SparseIntMatrix& upper,
                            std::size_t stride) {
    for (std::size_t j = 0; j < upper.cols.size(); j += stride) {
        std::map<int, long long> acc;
        for (auto [i, v] : upper.cols[j])
            for (auto [r, w] : lower.cols[i]) acc[r] += v * w;
        for (const auto& [r, total] : acc)
            if (total != 0) throw std::logic_error("boundary composition is not zero");
    }
}

struct ChainOverflow : std::runtime_error {
    ChainOverflow() : std::runtime_error("coefficient overflow during chain reduction") {}
};

// Homology-preserving elimination on the whole augmented chain complex.
// Removing a unit pair a < b rewrites boundaries only inside b's dimension,
// deletes the b-entries one dimension up and the a-column one dimension down
// with no arithmetic, so singleton-boundary cascades (seeded by the
// augmentation) run with zero fill. Whatever survives is handed to the exact
// Smith normal form.
class ChainReducer {
public:
    explicit ChainReducer(const SimplicialComplex& cx) : cx_(&cx) {
        offset_.push_back(0);
        for (const auto& bucket : cx.faces_by_card())
            offset_.push_back(offset_.back() + static_cast<int>(bucket.size()));
        n_ = offset_.back();
        card_.resize(n_);
        bnd_.resize(n_);
        cob_.resize(n_);
        cob_deg_.assign(n_, 0);
        alive_.assign(n_, 1);
        const auto& buckets = cx.faces_by_card();
        for (int c = 0; c < static_cast<int>(buckets.size()); ++c) {
            const auto& lower = c > 0 ? buckets[c - 1] : buckets[0];
            for (std::size_t i = 0; i < buckets[c].size(); ++i) {
                int id = offset_[c] + static_cast<int>(i);
                card_[id] = c;
                if (c == 0) continue;
                Mask face = buckets[c][i];
                int pos = 0;
                for (Mask bits = face; bits; bits &= bits - 1, ++pos) {
                    Mask sub = face & ~(bits & -bits);
                    auto it = std::lower_bound(lower.begin(), lower.end(), sub);
                    int sid = offset_[c - 1] + static_cast<int>(it - lower.begin());
                    bnd_[id].push_back({sid, pos % 2 == 0 ? 1 : -1});
                }
                std::sort(bnd_[id].begin(), bnd_[id].end());
                for (auto [s, v] : bnd_[id]) {
                    cob_[s].push_back(id);
                    ++cob_deg_[s];
                }
            }
        }
    }

    void run() {
        for (int id = 0; id < n_; ++id)
            if (is_coreduction(id)) q0_.push_back(id);
        while (true) {
            if (!q0_.empty()) {
                int b = q0_.front();
                q0_.pop_front();
                if (alive_[b] && is_coreduction(b)) eliminate(bnd_[b][0].first, b);
                continue;
            }
            if (!q1_.empty()) {
                int a = q1_.front();
                q1_.pop_front();
                if (!alive_[a] || cob_deg_[a] != 1) continue;
                int b = unique_coface(a);
                if (b >= 0 && unit_coeff(b, a)) eliminate(a, b);
                continue;
            }
            if (!refill_markowitz()) break;
        }
    }

    std::vector<long> alive_counts() const {
        std::vector<long> counts(offset_.size() - 1, 0);
        for (int id = 0; id < n_; ++id)
            if (alive_[id]) ++counts[card_[id]];
        return counts;
    }

    // Leftover boundary matrix from cardinality c cells to cardinality c-1.
    SparseIntMatrix leftover_matrix(int c) const {
        std::vector<int> row_index(n_, -1);
        int nr = 0;
        for (int id = 0; id < n_; ++id)
            if (alive_[id] && card_[id] == c - 1) row_index[id] = nr++;
        SparseIntMatrix m;
        m.n_rows = nr;
        for (int id = 0; id < n_; ++id) {
            if (!alive_[id] || card_[id] != c) continue;
            std::vector<std::pair<int, long long>> col;
            for (auto [s, v] : bnd_[id]) col.push_back({row_index[s], v});
            std::sort(col.begin(), col.end());
            m.cols.push_back(std::move(col));
        }
        m.n_cols = static_cast<int>(m.cols.size());
        return m;
    }

private:
    bool is_coreduction(int b) const {
        return alive_[b] && bnd_[b].size() == 1 &&
               (bnd_[b][0].second == 1 || bnd_[b][0].second == -1);
    }

    int unique_coface(int a) {
        int found = -1;
        auto& list = cob_[a];
        std::size_t w = 0;
        for (std::size_t r = 0; r < list.size(); ++r) {
            int c = list[r];
            if (!alive_[c] || !has_entry(c, a)) continue;
            list[w++] = c;
            found = c;
        }
        list.resize(w);
        return w == 1 ? found : -1;
    }

    bool has_entry(int c, int a) const {
        const auto& col = bnd_[c];
        auto it = std::lower_bound(col.begin(), col.end(), std::make_pair(a, INT32_MIN));
        return it != col.end() && it->first == a;
    }

    bool unit_coeff(int c, int a) const {
        const auto& col = bnd_[c];
        auto it = std::lower_bound(col.begin(), col.end(), std::make_pair(a, INT32_MIN));
        return it != col.end() && it->first == a && (it->second == 1 || it->second == -1);
    }

    int32_t coeff(int c, int a) const {
        const auto& col = bnd_[c];
        auto it = std::lower_bound(col.begin(), col.end(), std::make_pair(a, INT32_MIN));
        return it != col.end() && it->first == a ? it->second : 0;
    }

    void note_deg_drop(int x) {
        if (--cob_deg_[x] == 1 && alive_[x]) q1_.push_back(x);
    }

    void eliminate(int a, int b) {
        int32_t lam = coeff(b, a);
        // Rewrite the other boundaries that hit a.
        std::vector<int32_t> holders;
        holders.swap(cob_[a]);
        for (int c : holders) {
            if (!alive_[c] || c == b) continue;
            int32_t f = coeff(c, a);
            if (f == 0) continue;
            subtract_scaled(c, f * lam, b, a);  // lam is +-1 so f/lam == f*lam
        }
        // One dimension up: b's entries disappear with no arithmetic.
        for (int d : cob_[b]) {
            if (!alive_[d]) continue;
            auto& col = bnd_[d];
            auto it = std::lower_bound(col.begin(), col.end(), std::make_pair(b, INT32_MIN));
            if (it == col.end() || it->first != b) continue;
            col.erase(it);
            if (is_coreduction(d)) q0_.push_back(d);
        }
        // Retire both cells and the coboundary degrees they supported.
        for (auto [x, v] : bnd_[b])
            if (x != a) note_deg_drop(x);
        for (auto [y, v] : bnd_[a]) note_deg_drop(y);
        alive_[a] = alive_[b] = 0;
        release(bnd_[a]);
        release(bnd_[b]);
        release(cob_[a]);
        release(cob_[b]);
        ++eliminated_;
    }

    // bnd[c] -= f * bnd[b]; the pivot row a cancels exactly.
    void subtract_scaled(int c, int64_t f, int b, int a) {
        const auto& src = bnd_[b];
        const auto& dst = bnd_[c];
        std::vector<std::pair<int32_t, int32_t>> out;
        out.reserve(dst.size() + src.size());
        std::size_t i = 0, j = 0;
        while (i < dst.size() || j < src.size()) {
            int ra = i < dst.size() ? dst[i].first : n_;
            int rb = j < src.size() ? src[j].first : n_;
            if (ra < rb) {
                out.push_back(dst[i++]);
            } else if (rb < ra) {
                if (rb != a) {
                    int64_t nv = -f * src[j].second;
                    if (nv < INT32_MIN || nv > INT32_MAX) throw ChainOverflow();
                    if (nv != 0) {
                        out.push_back({rb, static_cast<int32_t>(nv)});
                        cob_[rb].push_back(c);
                        ++cob_deg_[rb];
                    }
                }
                ++j;
            } else {
                if (ra != a) {
                    int64_t nv = static_cast<int64_t>(dst[i].second) - f * src[j].second;
                    if (nv < INT32_MIN || nv > INT32_MAX) throw ChainOverflow();
                    if (nv != 0)
                        out.push_back({ra, static_cast<int32_t>(nv)});
                    else
                        note_deg_drop(ra);
                } else {
                    --cob_deg_[ra];  // a is going away with the pair
                }
                ++i;
                ++j;
            }
        }
        bnd_[c] = std::move(out);
        if (is_coreduction(c)) q0_.push_back(c);
    }

    bool refill_markowitz() {
        // No zero-fill moves left: eliminate the cheapest unit entry, then
        // return to the queues.
        long long best_cost = 0;
        int best_a = -1, best_b = -1;
        for (int b = 0; b < n_; ++b) {
            if (!alive_[b] || bnd_[b].empty()) continue;
            for (auto [x, v] : bnd_[b]) {
                if (v != 1 && v != -1) continue;
                long long cost = static_cast<long long>(bnd_[b].size() - 1) *
                                 std::max<long long>(cob_deg_[x] - 1, 0);
                if (best_a < 0 || cost < best_cost) {
                    best_cost = cost;
                    best_a = x;
                    best_b = b;
                }
            }
        }
        if (best_a < 0) return false;
        eliminate(best_a, best_b);
        return true;
    }

    static void release(std::vector<std::pair<int32_t, int32_t>>& v) {
        std::vector<std::pair<int32_t, int32_t>>().swap(v);
    }
    static void release(std::vector<int32_t>& v) { std::vector<int32_t>().swap(v); }

    const SimplicialComplex* cx_;
    std::vector<int> offset_;
    int n_ = 0;
    std::vector<int32_t> card_;
    std::vector<std::vector<std::pair<int32_t, int32_t>>> bnd_;
    std::vector<std::vector<int32_t>> cob_;
    std::vector<int32_t> cob_deg_;
    std::vector<char> alive_;
    std::deque<int32_t> q0_, q1_;
    long eliminated_ = 0;
};

}  // namespace

namespace {

void check_boundaries(const SimplicialComplex& cx, std::size_t stride) {
    SparseIntMatrix prev;
    for (int k = 0; k <= cx.dim(); ++k) {
        SparseIntMatrix bk = boundary_matrix(cx, k);
        if (k > 0) check_composition_zero(prev, bk, stride);
        prev = std::move(bk);
    }
}

// Assembles the profile from per-cardinality cell counts, ranks and factors;
// ranks[c] is the rank of the map from cardinality c to cardinality c-1.
BettiProfile profile_from_ranks(const std::vector<long>& cells, const std::vector<long>& ranks,
                                const std::vector<std::vector<long long>>& factors) {
    BettiProfile profile;
    int max_card = static_cast<int>(cells.size());
    for (int c = 0; c < max_card; ++c) {
        int dim = c - 1;
        long r_down = c >= 1 ? ranks[c] : 0;
        long r_up = c + 1 < static_cast<int>(ranks.size()) ? ranks[c + 1] : 0;
        long b = cells[c] - r_down - r_up;
        if (b < 0) throw std::logic_error("betti: negative rank arithmetic");
        if (b > 0) profile.betti[dim] = b;
        if (c + 1 < static_cast<int>(factors.size()) && !factors[c + 1].empty())
            profile.torsion[dim] = factors[c + 1];
    }
    return profile;
}

void collect_factors(const SnfSummary& snf, std::vector<long long>& out) {
    for (const auto& f : snf.nontrivial_factors) {
        if (!f.fits_slong_p())
            throw std::runtime_error("betti: torsion coefficient exceeds 64 bits");
        out.push_back(f.get_si());
    }
}

// Direct per-matrix route; exact on anything, but slower than the chain
// reducer on large complexes. Used as the overflow fallback.
BettiProfile betti_by_matrix(const SimplicialComplex& cx, const BettiOptions& opts) {
    int top = cx.dim();
    std::vector<long> cells(top + 2, 0), ranks(top + 3, 0);
    std::vector<std::vector<long long>> factors(top + 3);
    const auto& buckets = cx.faces_by_card();
    for (int c = 0; c < static_cast<int>(buckets.size()); ++c)
        cells[c] = static_cast<long>(buckets[c].size());
    for (int k = 0; k <= top; ++k) {
        SparseIntMatrix bk = boundary_matrix(cx, k);
        SnfSummary snf = smith_normal_form(bk);
        ranks[k + 1] = snf.rank;
        collect_factors(snf, factors[k + 1]);
        if (opts.rational_check_cols > 0 &&
            bk.n_cols <= static_cast<int>(opts.rational_check_cols) &&
            rank_over_rationals(bk) != snf.rank)
            throw std::logic_error("betti: rational rank disagrees with SNF rank");
    }
    return profile_from_ranks(cells, ranks, factors);
}

}  // namespace

BettiProfile betti(const SimplicialComplex& cx, const BettiOptions& opts) {
    if (cx.face_count() > opts.face_budget)
        throw BudgetError(cx.face_count(), opts.face_budget);

    BettiProfile profile;
    if (cx.is_void()) {
        profile.void_complex = true;
        profile.betti[-1] = 1;
        return profile;
    }

    std::size_t check_stride =
        cx.face_count() <= opts.boundary_check_limit
            ? 1
            : std::max<std::size_t>(2, cx.face_count() / opts.boundary_check_limit);
    check_boundaries(cx, check_stride);

    try {
        ChainReducer reducer(cx);
        reducer.run();
        std::vector<long> cells = reducer.alive_counts();
        int max_card = static_cast<int>(cells.size());
        std::vector<long> ranks(max_card + 1, 0);
        std::vector<std::vector<long long>> factors(max_card + 1);
        SparseIntMatrix prev;
        for (int c = 1; c < max_card; ++c) {
            SparseIntMatrix m = reducer.leftover_matrix(c);
            if (c > 1) check_composition_zero(prev, m, 1);
            SnfSummary snf = smith_normal_form(m);
            ranks[c] = snf.rank;
            collect_factors(snf, factors[c]);
            if (opts.rational_check_cols > 0 &&
                m.n_cols <= static_cast<int>(opts.rational_check_cols) &&
                rank_over_rationals(m) != snf.rank)
                throw std::logic_error("betti: rational rank disagrees with SNF rank");
            prev = std::move(m);
        }
        return profile_from_ranks(cells, ranks, factors);
    } catch (const ChainOverflow&) {
        return betti_by_matrix(cx, opts);
    }
}

long SphereWedge::total() const {
    long t = 0;
    for (const auto& [d, n] : spheres) t += n;
    return t;
}

std::string SphereWedge::to_string() const {
    if (spheres.empty()) return "pt";
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, n] : spheres) {
        for (long i = 0; i < n; ++i) {
            if (!first) os << " v ";
            os << "S^" << d;
            first = false;
        }
    }
    return os.str();
}

MatchReport profile_matches(const BettiProfile& profile, const SphereWedge& claim) {
    MatchReport rep;
    std::ostringstream os;
    bool ok = true;
    if (!profile.torsion_free()) {
        ok = false;
        os << "torsion present;";
    }
    std::map<int, long> want = claim.spheres;
    for (const auto& [d, b] : profile.betti) {
        auto it = want.find(d);
        long expect = it == want.end() ? 0 : it->second;
        if (b != expect) {
            ok = false;
            os << " dim " << d << ": computed " << b << ", claimed " << expect << ";";
        }
        if (it != want.end()) want.erase(it);
    }
    for (const auto& [d, n] : want) {
        ok = false;
        os << " dim " << d << ": computed 0, claimed " << n << ";";
    }
    rep.match = ok;
    rep.detail = ok ? "profile matches " + claim.to_string() : os.str();
    return rep;
}

BettiProfile join_profile(const BettiProfile& a, const BettiProfile& b) {
    // The void complex is the join identity; its unit sits in dimension -1.
    auto reduced = [](const BettiProfile& p) {
        std::map<int, long> out = p.betti;
        if (p.void_complex) out[-1] = 1;
        return out;
    };
    BettiProfile out;
    for (const auto& [i, x] : reduced(a))
        for (const auto& [j, y] : reduced(b)) {
            int d = i + j + 1;
            long v = x * y;
            if (v != 0) out.betti[d] += v;
        }
    if (out.betti.count(-1)) {
        out.void_complex = true;  // both factors void
    }
    return out;
}

BettiProfile suspension_profile(const BettiProfile& a, int m_points) {
    BettiProfile pts;
    if (m_points > 1) pts.betti[0] = m_points - 1;
    else pts.betti.clear();  // one point: contractible
    return join_profile(a, pts);
}

BettiProfile wedge_profile(const BettiProfile& a, const BettiProfile& b) {
    BettiProfile out = a;
    out.void_complex = false;
    for (const auto& [d, v] : b.betti) out.betti[d] += v;
    for (const auto& [d, t] : b.torsion) {
        auto& dst = out.torsion[d];
        dst.insert(dst.end(), t.begin(), t.end());
        std::sort(dst.begin(), dst.end());
    }
    return out;
}

JoinShiftReport join_shift_check(const SimplicialComplex& a, const SimplicialComplex& b,
                                 std::uint64_t budget) {
    JoinShiftReport rep;
    BettiOptions opts;
    opts.face_budget = budget;
    BettiProfile pa = betti(a, opts);
    BettiProfile pb = betti(b, opts);
    if (!pa.torsion_free() || !pb.torsion_free()) {
        rep.checked = false;
        rep.detail = "torsion present in a factor; degree-shift check skipped";
        return rep;
    }
    BettiProfile predicted = join_profile(pa, pb);
    BettiProfile actual = betti(join(a, b, budget), opts);
    rep.checked = true;
    rep.match = predicted == actual;
    rep.detail = rep.match ? "join profile equals shifted convolution"
                           : "join profile differs from shifted convolution";
    return rep;
}

}  // namespace kmatch
