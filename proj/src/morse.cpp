#include "kmatch/morse.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace kmatch {

FacePoset::FacePoset(const SimplicialComplex& cx) : cx_(&cx) {
    offset_.push_back(0);
    for (const auto& bucket : cx.faces_by_card())
        offset_.push_back(offset_.back() + bucket.size());
    total_ = static_cast<int>(offset_.back());
}

Mask FacePoset::face(int id) const {
    auto it = std::upper_bound(offset_.begin(), offset_.end(), static_cast<std::size_t>(id));
    int c = static_cast<int>(it - offset_.begin()) - 1;
    return cx_->faces_by_card()[c][id - offset_[c]];
}

int FacePoset::id_of(Mask m) const {
    return static_cast<int>(offset_[card(m)] + cx_->index_of(m));
}

int FacePoset::face_card(int id) const {
    auto it = std::upper_bound(offset_.begin(), offset_.end(), static_cast<std::size_t>(id));
    return static_cast<int>(it - offset_.begin()) - 1;
}

std::vector<int> FacePoset::down_covers(int id) const {
    std::vector<int> out;
    Mask m = face(id);
    for (Mask bits = m; bits; bits &= bits - 1) out.push_back(id_of(m & ~(bits & -bits)));
    return out;
}

std::vector<int> FacePoset::up_covers(int id) const {
    std::vector<int> out;
    Mask m = face(id);
    for (int v = 0; v < cx_->vertex_count(); ++v) {
        if (m >> v & 1) continue;
        Mask up = m | Mask{1} << v;
        if (cx_->contains(up)) out.push_back(id_of(up));
    }
    return out;
}

std::vector<std::pair<int, int>> MorseMatching::pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < static_cast<int>(partner.size()); ++i)
        if (partner[i] > i) out.push_back({i, partner[i]});
    return out;
}

std::vector<int> MorseMatching::critical() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(partner.size()); ++i)
        if (partner[i] < 0) out.push_back(i);
    return out;
}

std::size_t MorseMatching::pair_count() const {
    std::size_t n = 0;
    for (int p : partner)
        if (p >= 0) ++n;
    return n / 2;
}

MorseMatching toggle(const FacePoset& poset, int vertex, const FacePredicate& within) {
    return toggle_sequence(poset, {vertex}, within);
}

MorseMatching toggle_sequence(const FacePoset& poset, const std::vector<int>& vertices,
                              const FacePredicate& within) {
    const SimplicialComplex& cx = poset.complex();
    if (!vertices.empty()) {
        int nv = cx.vertex_count();
        for (int v : vertices)
            if (v < 0 || v >= nv) throw std::invalid_argument("toggle: vertex out of range");
    }
    int n = poset.size();
    MorseMatching m;
    m.partner.assign(n, -1);
    std::vector<int> stage(n, -1);
    auto in_sub = [&](Mask f) { return !within || within(f); };

    for (std::size_t s = 0; s < vertices.size(); ++s) {
        Mask vbit = Mask{1} << vertices[s];
        // Claim the stage: faces containing v, or extendable by v inside the
        // subposet, that no earlier stage touched.
        for (int id = 0; id < n; ++id) {
            if (stage[id] >= 0) continue;
            Mask f = poset.face(id);
            if (!in_sub(f)) continue;
            if (f & vbit) {
                stage[id] = static_cast<int>(s);
            } else {
                Mask up = f | vbit;
                if (cx.contains(up) && in_sub(up)) stage[id] = static_cast<int>(s);
            }
        }
        for (int id = 0; id < n; ++id) {
            if (stage[id] != static_cast<int>(s)) continue;
            Mask f = poset.face(id);
            if (f & vbit) continue;
            Mask up = f | vbit;
            if (!cx.contains(up) || !in_sub(up)) continue;
            int upid = poset.id_of(up);
            if (stage[upid] != static_cast<int>(s)) continue;
            m.partner[id] = upid;
            m.partner[upid] = id;
        }
    }
    return m;
}

MorseMatching greedy_toggle_sequence(const FacePoset& poset, const std::vector<int>& vertices,
                                     const FacePredicate& within) {
    const SimplicialComplex& cx = poset.complex();
    int n = poset.size();
    MorseMatching m;
    m.partner.assign(n, -1);
    auto in_sub = [&](Mask f) { return !within || within(f); };
    for (int v : vertices) {
        Mask vbit = Mask{1} << v;
        for (int id = 0; id < n; ++id) {
            if (m.partner[id] >= 0) continue;
            Mask f = poset.face(id);
            if ((f & vbit) || !in_sub(f)) continue;
            Mask up = f | vbit;
            if (!cx.contains(up) || !in_sub(up)) continue;
            int upid = poset.id_of(up);
            if (m.partner[upid] >= 0) continue;
            m.partner[id] = upid;
            m.partner[upid] = id;
        }
    }
    return m;
}

ClawInducedResult claw_induced_matching(const Graph& g, const SimplicialComplex& m2,
                                        const FacePoset& poset,
                                        const std::map<std::string, std::string>& toggle_choice) {
    ClawInducedResult res;
    res.units = find_claw_units(g);
    std::vector<int> toggles;
    for (const ClawUnit& unit : res.units) {
        std::string edge = unit.edge_labels.front();
        auto it = toggle_choice.find(unit.center);
        if (it != toggle_choice.end()) {
            edge = it->second;
            if (std::find(unit.edge_labels.begin(), unit.edge_labels.end(), edge) ==
                unit.edge_labels.end())
                throw std::invalid_argument("claw_induced_matching: " + edge +
                                            " is not an edge of the unit at " + unit.center);
        }
        res.toggle_edges.push_back(edge);
        toggles.push_back(m2.vertex_index(edge));
    }
    res.matching = toggle_sequence(poset, toggles);
    res.complete = is_complete(poset, res.matching);
    return res;
}

namespace {

void validate_matching(const FacePoset& poset, const MorseMatching& m) {
    int n = poset.size();
    if (static_cast<int>(m.partner.size()) != n)
        throw std::invalid_argument("matching: size does not fit poset");
    for (int i = 0; i < n; ++i) {
        int p = m.partner[i];
        if (p < 0) continue;
        if (p >= n || m.partner[p] != i)
            throw std::invalid_argument("matching: partner map is not an involution");
        if (p == i) throw std::invalid_argument("matching: face paired with itself");
        Mask a = poset.face(i), b = poset.face(p);
        Mask lo = card(a) < card(b) ? a : b;
        Mask hi = card(a) < card(b) ? b : a;
        if (card(hi) - card(lo) != 1 || (lo & ~hi))
            throw std::invalid_argument("matching: pair is not a cover relation");
    }
}

}  // namespace

AcyclicityCertificate verify_acyclic(const FacePoset& poset, const MorseMatching& m) {
    validate_matching(poset, m);
    int n = poset.size();

    // Contract matched pairs; an edge A -> B says "group A precedes group B"
    // and comes from an unmatched cover between their faces.
    std::vector<int> group(n, -1);
    std::vector<std::pair<int, int>> rep;  // (lower face, upper face or -1)
    for (int i = 0; i < n; ++i) {
        if (group[i] >= 0) continue;
        int p = m.partner[i];
        if (p < 0) {
            group[i] = static_cast<int>(rep.size());
            rep.push_back({i, -1});
        } else {
            int lo = poset.face_card(i) < poset.face_card(p) ? i : p;
            int hi = lo == i ? p : i;
            group[lo] = group[hi] = static_cast<int>(rep.size());
            rep.push_back({lo, hi});
        }
    }
    int gn = static_cast<int>(rep.size());
    struct Arc {
        int to;
        int from_face;
        int to_face;
    };
    std::vector<std::vector<Arc>> adj(gn);
    std::vector<int> indeg(gn, 0);
    for (int id = 0; id < n; ++id)
        for (int up : poset.up_covers(id)) {
            if (m.partner[id] == up) continue;
            int a = group[id], b = group[up];
            if (a == b) continue;
            adj[a].push_back({b, id, up});
            ++indeg[b];
        }

    std::deque<int> queue;
    for (int gidx = 0; gidx < gn; ++gidx)
        if (indeg[gidx] == 0) queue.push_back(gidx);
    std::vector<int> order;
    while (!queue.empty()) {
        int gidx = queue.front();
        queue.pop_front();
        order.push_back(gidx);
        for (const Arc& arc : adj[gidx])
            if (--indeg[arc.to] == 0) queue.push_back(arc.to);
    }

    AcyclicityCertificate cert;
    if (static_cast<int>(order.size()) == gn) {
        cert.acyclic = true;
        for (int gidx : order) {
            cert.linear_extension.push_back(rep[gidx].first);
            if (rep[gidx].second >= 0) cert.linear_extension.push_back(rep[gidx].second);
        }
        return cert;
    }

    // Shortest cycle through any still-cyclic group, searched by BFS.
    std::vector<char> in_cycle_part(gn, 0);
    for (int gidx = 0; gidx < gn; ++gidx)
        if (indeg[gidx] > 0) in_cycle_part[gidx] = 1;
    std::vector<int> best_groups;
    for (int s = 0; s < gn; ++s) {
        if (!in_cycle_part[s]) continue;
        std::vector<int> prev(gn, -2);
        std::deque<int> bfs = {s};
        prev[s] = -1;
        int found = -1;
        while (!bfs.empty() && found < 0) {
            int at = bfs.front();
            bfs.pop_front();
            for (const Arc& arc : adj[at]) {
                if (!in_cycle_part[arc.to]) continue;
                if (arc.to == s) {
                    found = at;
                    break;
                }
                if (prev[arc.to] == -2) {
                    prev[arc.to] = at;
                    bfs.push_back(arc.to);
                }
            }
        }
        if (found < 0) continue;
        std::vector<int> groups = {s};
        for (int at = found; at != -1 && at != s; at = prev[at]) groups.push_back(at);
        std::reverse(groups.begin() + 1, groups.end());
        if (best_groups.empty() || groups.size() < best_groups.size()) best_groups = groups;
    }
    // Expand the group cycle into the alternating walk a1 < u(a1) > a2 < ...;
    // only matched pairs can be traversed upward, so every group is a pair.
    for (int gidx : best_groups) {
        if (rep[gidx].second < 0)
            throw std::logic_error("verify_acyclic: cycle through an unmatched face");
        cert.cycle.push_back(rep[gidx].first);
        cert.cycle.push_back(rep[gidx].second);
    }
    cert.acyclic = false;
    return cert;
}

MorseVector morse_vector(const FacePoset& poset, const MorseMatching& m) {
    if (!verify_acyclic(poset, m).acyclic)
        throw std::invalid_argument("morse_vector: matching is not acyclic");
    MorseVector v;
    long criticals = 0;
    for (int id = 0; id < poset.size(); ++id) {
        if (m.partner[id] >= 0) continue;
        ++criticals;
        v.critical_by_dim[poset.face_card(id) - 1] += 1;
    }
    int empty_id = poset.id_of(0);
    v.empty_face_paired = m.partner[empty_id] >= 0;
    if (criticals + 2 * static_cast<long>(m.pair_count()) !=
        static_cast<long>(poset.size()))
        throw std::logic_error("morse_vector: criticals + 2*pairs != faces");
    return v;
}

std::map<int, long> MorseVector::cells_by_dim() const {
    std::map<int, long> out;
    for (const auto& [d, c] : critical_by_dim)
        if (d >= 0) out[d] = c;
    if (empty_face_paired) out[0] += 1;
    return out;
}

long long MorseVector::reduced_euler() const {
    long long chi = 0;
    for (const auto& [d, c] : critical_by_dim)
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(c);
    return chi;
}

long MorseVector::total_critical() const {
    long t = 0;
    for (const auto& [d, c] : critical_by_dim) t += c;
    return t;
}

bool is_complete(const FacePoset& poset, const MorseMatching& m) {
    for (int id = 0; id < poset.size(); ++id) {
        if (m.partner[id] >= 0) continue;
        for (int up : poset.up_covers(id))
            if (m.partner[up] < 0) return false;
    }
    return true;
}

MorseMatching patchwork(const FacePoset& poset, const std::vector<int>& stratum_of_face,
                        const std::vector<StratumBuilder>& builders) {
    int n = poset.size();
    if (static_cast<int>(stratum_of_face.size()) != n)
        throw std::invalid_argument("patchwork: stratum map does not fit poset");
    for (int id = 0; id < n; ++id)
        for (int up : poset.up_covers(id))
            if (stratum_of_face[id] > stratum_of_face[up])
                throw std::invalid_argument("patchwork: strata are not order-compatible");

    MorseMatching out;
    out.partner.assign(n, -1);
    for (std::size_t s = 0; s < builders.size(); ++s) {
        FacePredicate pred = [&, s](Mask f) {
            return stratum_of_face[poset.id_of(f)] == static_cast<int>(s);
        };
        MorseMatching part = builders[s](poset, pred);
        for (int id = 0; id < n; ++id) {
            int p = part.partner[id];
            if (p < 0) continue;
            if (stratum_of_face[id] != static_cast<int>(s) ||
                stratum_of_face[p] != static_cast<int>(s))
                throw std::invalid_argument("patchwork: stratum matching leaks outside");
            if (out.partner[id] >= 0 && out.partner[id] != p)
                throw std::invalid_argument("patchwork: face matched twice");
            out.partner[id] = p;
        }
    }
    return out;
}

StratumBuilder toggle_builder(std::vector<int> vertices) {
    return [vertices](const FacePoset& poset, const FacePredicate& pred) {
        return toggle_sequence(poset, vertices, pred);
    };
}

}  // namespace kmatch
