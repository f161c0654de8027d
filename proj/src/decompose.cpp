#include "ldc/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

namespace ldc {

namespace {

template <typename F>
void for_each_t_subset(const std::vector<Vertex>& vertices, int t, F&& fn) {
    int q = static_cast<int>(vertices.size());
    std::vector<int> idx(static_cast<std::size_t>(t));
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<Vertex> subset(static_cast<std::size_t>(t));
    while (true) {
        for (int j = 0; j < t; ++j)
            subset[static_cast<std::size_t>(j)] = vertices[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
        fn(subset);
        int j = t - 1;
        while (j >= 0 && idx[static_cast<std::size_t>(j)] == q - t + j) --j;
        if (j < 0) break;
        ++idx[static_cast<std::size_t>(j)];
        for (int m = j + 1; m < t; ++m)
            idx[static_cast<std::size_t>(m)] = idx[static_cast<std::size_t>(m) - 1] + 1;
    }
}

struct HeapEntry {
    std::int64_t count;
    std::vector<Vertex> q_set;
    // Max count first; among equal counts the lexicographically smallest Q.
    bool operator<(const HeapEntry& other) const {
        if (count != other.count) return count < other.count;
        return q_set > other.q_set;
    }
};

}  // namespace

std::pair<Piece, std::vector<EdgeIndex>> extract_regular(const Hypergraph& h,
                                                         std::span<const EdgeIndex> current, int t) {
    if (current.empty()) throw std::invalid_argument("extract_regular: current hypergraph is empty");
    if (t < 1 || t > h.q) throw std::invalid_argument("extract_regular: t out of range [1, q]");

    // Co-degree table over all t-subsets of the current edges, plus the edge
    // lists per subset so a whole restriction can be moved in one step.
    std::map<std::vector<Vertex>, std::int64_t> counts;
    std::map<std::vector<Vertex>, std::vector<EdgeIndex>> members;
    for (EdgeIndex idx : current) {
        for_each_t_subset(h.edges[static_cast<std::size_t>(idx)].vertices, t,
                          [&](const std::vector<Vertex>& s) {
                              ++counts[s];
                              members[s].push_back(idx);
                          });
    }

    std::priority_queue<HeapEntry> heap;
    for (const auto& [q_set, count] : counts) heap.push({count, q_set});

    std::int64_t cap_d = 0;
    for (const auto& [q_set, count] : counts) cap_d = std::max(cap_d, count);

    std::vector<char> removed(h.edges.size(), 0);
    Piece piece;
    piece.t = t;

    while (!heap.empty()) {
        HeapEntry top = heap.top();
        auto it = counts.find(top.q_set);
        if (it == counts.end() || it->second != top.count) {  // stale entry
            heap.pop();
            continue;
        }
        if (2 * top.count < cap_d) break;  // residual t-co-degree below D/2
        heap.pop();

        Group group;
        group.q_set = top.q_set;
        for (EdgeIndex idx : members[top.q_set])
            if (!removed[static_cast<std::size_t>(idx)]) group.edges.push_back(idx);
        counts.erase(it);

        for (EdgeIndex idx : group.edges) {
            removed[static_cast<std::size_t>(idx)] = 1;
            for_each_t_subset(h.edges[static_cast<std::size_t>(idx)].vertices, t,
                              [&](const std::vector<Vertex>& s) {
                                  if (s == group.q_set) return;
                                  auto jt = counts.find(s);
                                  if (jt == counts.end()) return;
                                  if (--jt->second == 0)
                                      counts.erase(jt);
                                  else
                                      heap.push({jt->second, s});
                              });
        }
        piece.edges.insert(piece.edges.end(), group.edges.begin(), group.edges.end());
        piece.groups.push_back(std::move(group));
    }

    std::vector<EdgeIndex> residual;
    for (EdgeIndex idx : current)
        if (!removed[static_cast<std::size_t>(idx)]) residual.push_back(idx);
    return {std::move(piece), std::move(residual)};
}

Decomposition decompose(const Hypergraph& h) {
    if (h.q < 3 || h.q % 2 == 0)
        throw std::invalid_argument("decompose requires odd uniformity q >= 3");

    Decomposition out;
    out.source_q = h.q;
    out.source_n = h.n;
    out.source_k = h.k;
    out.source_edges = h.size();
    out.source_hash = content_hash(h);
    if (h.edges.empty()) return out;

    std::vector<EdgeIndex> current(h.edges.size());
    std::iota(current.begin(), current.end(), 0);

    std::int64_t bound = static_cast<std::int64_t>(h.q) *
                             static_cast<std::int64_t>(std::ceil(std::log2(static_cast<double>(h.size())))) + 1;
    while (!current.empty()) {
        CoDegreeProfile profile = co_degree_profile(h, current);
        GammaSequence gamma = gamma_from_profile(profile, h.q, h.n);
        int t = find_good_index(gamma);
        auto [piece, residual] = extract_regular(h, current, t);
        piece.gamma_at_creation = gamma;
        out.pieces.push_back(std::move(piece));
        current = std::move(residual);
        if (static_cast<std::int64_t>(out.pieces.size()) > bound)
            throw std::logic_error("decompose: piece count exceeded q*ceil(log2|H|)+1");
    }
    return out;
}

Decomposition filter_pieces(Decomposition d, double eta) {
    if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("eta must lie in (0, 1)");
    d.eta = eta;
    if (d.pieces.empty()) return d;

    double threshold = eta * static_cast<double>(d.source_edges) / static_cast<double>(d.pieces.size());
    std::vector<Piece> kept;
    for (Piece& p : d.pieces) {
        if (static_cast<double>(p.edges.size()) >= threshold)
            kept.push_back(std::move(p));
        else
            d.leftover.insert(d.leftover.end(), p.edges.begin(), p.edges.end());
    }
    std::sort(d.leftover.begin(), d.leftover.end());
    d.pieces = std::move(kept);
    return d;
}

namespace {

void add_check(PieceReport& report, std::string name, bool ok, std::string detail = {}) {
    report.checks.push_back({std::move(name), ok, std::move(detail)});
    report.ok = report.ok && ok;
}

}  // namespace

PieceReport certify_piece(const Hypergraph& h, const Piece& p) {
    PieceReport report;
    report.ok = true;

    if (p.edges.empty()) {
        add_check(report, "nonempty", false, "piece has no edges");
        return report;
    }
    if (p.t < 1 || p.t > h.q) {
        add_check(report, "t-range", false, "t outside [1, q]");
        return report;
    }

    // Groups must partition the flattened edge list.
    std::multiset<EdgeIndex> flat(p.edges.begin(), p.edges.end());
    std::multiset<EdgeIndex> grouped;
    bool containment = true;
    std::string containment_detail;
    for (const Group& g : p.groups) {
        grouped.insert(g.edges.begin(), g.edges.end());
        if (static_cast<int>(g.q_set.size()) != p.t) {
            containment = false;
            containment_detail = "group q_set has wrong size";
        }
        for (EdgeIndex idx : g.edges) {
            if (idx < 0 || idx >= h.size()) {
                containment = false;
                containment_detail = "edge index out of range";
                continue;
            }
            const auto& vs = h.edges[static_cast<std::size_t>(idx)].vertices;
            if (!std::includes(vs.begin(), vs.end(), g.q_set.begin(), g.q_set.end())) {
                containment = false;
                containment_detail = "edge " + std::to_string(idx) + " does not contain its group Q";
            }
        }
    }
    add_check(report, "group-containment", containment, containment_detail);
    add_check(report, "groups-partition-piece", grouped == flat,
              grouped == flat ? "" : "group edge multiset differs from flattened edge list");

    CoDegreeProfile profile = co_degree_profile(h, p.edges);
    std::int64_t d_t = profile.max_at(p.t);
    report.piece_d_t = d_t;

    bool sizes_ok = true;
    std::string sizes_detail;
    for (std::size_t i = 0; i < p.groups.size(); ++i) {
        auto size = static_cast<std::int64_t>(p.groups[i].edges.size());
        if (2 * size < d_t || size > d_t) {
            sizes_ok = false;
            std::ostringstream msg;
            msg << "group " << i << " size " << size << " outside [d_t/2, d_t] with d_t = " << d_t;
            sizes_detail = msg.str();
        }
    }
    add_check(report, "group-sizes", sizes_ok, sizes_detail);

    std::int64_t p_t = static_cast<std::int64_t>(p.groups.size());
    add_check(report, "group-count", p_t * d_t <= 2 * static_cast<std::int64_t>(p.edges.size()),
              "requires p_t <= 2|piece|/d_t");

    try {
        GammaSequence own = gamma_from_profile(profile, h.q, h.n);
        report.gamma_own = own;
        add_check(report, "good-index-own-gamma", is_good_index(own, p.t).pass);
    } catch (const std::exception& e) {
        add_check(report, "good-index-own-gamma", false, e.what());
    }

    if (static_cast<int>(p.gamma_at_creation.gamma.size()) == h.q) {
        add_check(report, "good-index-creation-gamma",
                  is_good_index(p.gamma_at_creation, p.t).pass);
        if (report.gamma_own) {
            // The piece inherits goodness: gamma'_t = gamma_t and gamma'_i <= gamma_i.
            bool dominated = true;
            for (int i = 1; i <= h.q; ++i)
                dominated = dominated &&
                            report.gamma_own->at(i) <= p.gamma_at_creation.at(i) + 1e-9;
            bool t_equal = std::abs(report.gamma_own->at(p.t) - p.gamma_at_creation.at(p.t)) <= 1e-9;
            add_check(report, "gamma-dominance", dominated && t_equal,
                      "expects gamma'_t = gamma_t and gamma'_i <= gamma_i");
        }
    }

    return report;
}

}  // namespace ldc
