#include "ldc/hypergraph.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace ldc {

void validate(const Hypergraph& h) {
    if (h.q < 2) throw std::invalid_argument("uniformity q must be >= 2");
    if (h.n < 0 || h.k < 0) throw std::invalid_argument("n and k must be non-negative");
    for (std::size_t i = 0; i < h.edges.size(); ++i) {
        const Hyperedge& e = h.edges[i];
        if (static_cast<int>(e.vertices.size()) != h.q)
            throw std::invalid_argument("edge " + std::to_string(i) + ": wrong arity");
        for (std::size_t j = 0; j < e.vertices.size(); ++j) {
            Vertex v = e.vertices[j];
            if (v < 0 || v >= h.n)
                throw std::invalid_argument("edge " + std::to_string(i) + ": vertex out of range");
            if (j > 0 && e.vertices[j - 1] >= v)
                throw std::invalid_argument("edge " + std::to_string(i) +
                                            ": vertices not strictly increasing");
        }
        if (e.color < 0 || e.color >= h.k)
            throw std::invalid_argument("edge " + std::to_string(i) + ": color out of range");
    }
}

namespace {

bool is_blank_or_comment(std::string_view line) {
    for (char c : line) {
        if (c == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::string_view strip_comment(std::string_view line) {
    auto pos = line.find('#');
    return pos == std::string_view::npos ? line : line.substr(0, pos);
}

std::vector<std::string> tokens(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

long parse_int(const std::string& tok, int line_no, const char* what) {
    long value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(line_no, std::string("malformed ") + what + " '" + tok + "'");
    return value;
}

long parse_kv(const std::string& tok, const char* key, int line_no) {
    std::string prefix = std::string(key) + "=";
    if (tok.rfind(prefix, 0) != 0)
        throw ParseError(line_no, "malformed header: expected " + prefix + "<int>, got '" + tok + "'");
    return parse_int(tok.substr(prefix.size()), line_no, key);
}

}  // namespace

Hypergraph parse_hypergraph(std::string_view text) {
    Hypergraph h;
    bool have_header = false;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        std::string_view line = text.substr(start, end == std::string_view::npos ? text.size() - start
                                                                                 : end - start);
        ++line_no;
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;
        if (is_blank_or_comment(line)) continue;
        auto toks = tokens(strip_comment(line));
        if (!have_header) {
            if (toks.size() != 3) throw ParseError(line_no, "malformed header: need q= n= k=");
            long q = parse_kv(toks[0], "q", line_no);
            long n = parse_kv(toks[1], "n", line_no);
            long k = parse_kv(toks[2], "k", line_no);
            if (q < 2) throw ParseError(line_no, "q must be >= 2");
            if (n < 0 || k < 0) throw ParseError(line_no, "n and k must be non-negative");
            h.q = static_cast<int>(q);
            h.n = static_cast<int>(n);
            h.k = static_cast<int>(k);
            have_header = true;
            continue;
        }
        if (static_cast<int>(toks.size()) != h.q + 1)
            throw ParseError(line_no, "wrong arity: expected color + " + std::to_string(h.q) +
                                          " vertices, got " + std::to_string(toks.size()) + " fields");
        Hyperedge e;
        long color = parse_int(toks[0], line_no, "color");
        if (color < 0 || color >= h.k) throw ParseError(line_no, "color out of range [0, k)");
        e.color = static_cast<Color>(color);
        for (int j = 1; j <= h.q; ++j) {
            long v = parse_int(toks[static_cast<std::size_t>(j)], line_no, "vertex");
            if (v < 0 || v >= h.n) throw ParseError(line_no, "vertex out of range [0, n)");
            e.vertices.push_back(static_cast<Vertex>(v));
        }
        std::sort(e.vertices.begin(), e.vertices.end());
        for (int j = 1; j < h.q; ++j)
            if (e.vertices[static_cast<std::size_t>(j)] == e.vertices[static_cast<std::size_t>(j) - 1])
                throw ParseError(line_no, "duplicate vertex in edge");
        h.edges.push_back(std::move(e));
    }
    if (!have_header) throw ParseError(line_no, "missing header line q= n= k=");
    return h;
}

std::string serialize(const Hypergraph& h) {
    std::ostringstream out;
    out << "q=" << h.q << " n=" << h.n << " k=" << h.k << "\n";
    for (const Hyperedge& e : h.edges) {
        out << e.color;
        for (Vertex v : e.vertices) out << ' ' << v;
        out << '\n';
    }
    return out.str();
}

std::string content_hash(const Hypergraph& h) {
    std::string text = serialize(h);
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

std::int64_t co_degree(const Hypergraph& h, std::span<const Vertex> q_set) {
    if (static_cast<int>(q_set.size()) > h.q) return 0;
    std::int64_t count = 0;
    for (const Hyperedge& e : h.edges)
        if (std::includes(e.vertices.begin(), e.vertices.end(), q_set.begin(), q_set.end())) ++count;
    return count;
}

std::int64_t co_degree(const Hypergraph& h, std::span<const EdgeIndex> subset,
                       std::span<const Vertex> q_set) {
    if (static_cast<int>(q_set.size()) > h.q) return 0;
    std::int64_t count = 0;
    for (EdgeIndex idx : subset) {
        const auto& vs = h.edges[static_cast<std::size_t>(idx)].vertices;
        if (std::includes(vs.begin(), vs.end(), q_set.begin(), q_set.end())) ++count;
    }
    return count;
}

namespace {

// Packed subset keys: vertex j of the subset occupies 16 bits, first vertex
// highest, so numeric order on keys equals lexicographic order on subsets.
// Requires n < 2^16 and t <= 8 (hi:lo 64-bit halves).
struct Key128 {
    std::uint64_t hi = 0, lo = 0;
    bool operator==(const Key128&) const = default;
    bool operator<(const Key128& o) const { return hi != o.hi ? hi < o.hi : lo < o.lo; }
};

struct Key128Hash {
    std::size_t operator()(const Key128& k) const {
        std::uint64_t x = k.hi * 0x9e3779b97f4a7c15ULL ^ (k.lo + 0x9e3779b97f4a7c15ULL);
        x ^= x >> 29;
        x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 32;
        return static_cast<std::size_t>(x);
    }
};

Key128 pack_subset(std::span<const Vertex> subset) {
    Key128 key;
    for (std::size_t j = 0; j < subset.size(); ++j) {
        auto v = static_cast<std::uint64_t>(subset[j]);
        if (j < 4)
            key.hi |= v << (16 * (3 - j));
        else
            key.lo |= v << (16 * (7 - j));
    }
    return key;
}

std::vector<Vertex> unpack_subset(Key128 key, int t) {
    std::vector<Vertex> out;
    out.reserve(static_cast<std::size_t>(t));
    for (int j = 0; j < t; ++j) {
        std::uint64_t word = j < 4 ? key.hi : key.lo;
        out.push_back(static_cast<Vertex>((word >> (16 * (j < 4 ? 3 - j : 7 - j))) & 0xffff));
    }
    return out;
}

template <typename F>
void for_each_subset(std::span<const Vertex> vertices, int t, F&& fn) {
    int q = static_cast<int>(vertices.size());
    std::vector<int> idx(static_cast<std::size_t>(t));
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<Vertex> subset(static_cast<std::size_t>(t));
    while (true) {
        for (int j = 0; j < t; ++j)
            subset[static_cast<std::size_t>(j)] = vertices[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
        fn(std::span<const Vertex>(subset));
        int j = t - 1;
        while (j >= 0 && idx[static_cast<std::size_t>(j)] == q - t + j) --j;
        if (j < 0) break;
        ++idx[static_cast<std::size_t>(j)];
        for (int m = j + 1; m < t; ++m)
            idx[static_cast<std::size_t>(m)] = idx[static_cast<std::size_t>(m) - 1] + 1;
    }
}

}  // namespace

CoDegreeProfile co_degree_profile(const Hypergraph& h, std::span<const EdgeIndex> subset) {
    CoDegreeProfile profile;
    profile.d.assign(static_cast<std::size_t>(h.q), 0);
    profile.witnesses.assign(static_cast<std::size_t>(h.q), {});
    if (subset.empty()) return profile;

    bool packable = h.n < (1 << 16) && h.q <= 8;
    for (int t = 1; t <= h.q; ++t) {
        if (packable) {
            std::unordered_map<Key128, std::int64_t, Key128Hash> counts;
            counts.reserve(subset.size() * 2);
            for (EdgeIndex idx : subset) {
                const auto& vs = h.edges[static_cast<std::size_t>(idx)].vertices;
                for_each_subset(vs, t, [&](std::span<const Vertex> s) { ++counts[pack_subset(s)]; });
            }
            Key128 best_key;
            std::int64_t best = 0;
            for (const auto& [key, count] : counts) {
                if (count > best || (count == best && key < best_key)) {
                    best = count;
                    best_key = key;
                }
            }
            profile.d[static_cast<std::size_t>(t) - 1] = best;
            if (best > 0) profile.witnesses[static_cast<std::size_t>(t) - 1] = unpack_subset(best_key, t);
        } else {
            std::map<std::vector<Vertex>, std::int64_t> counts;
            for (EdgeIndex idx : subset) {
                const auto& vs = h.edges[static_cast<std::size_t>(idx)].vertices;
                for_each_subset(vs, t, [&](std::span<const Vertex> s) {
                    ++counts[std::vector<Vertex>(s.begin(), s.end())];
                });
            }
            std::int64_t best = 0;
            std::vector<Vertex> best_set;
            for (const auto& [set, count] : counts) {
                if (count > best) {
                    best = count;
                    best_set = set;
                }
            }
            profile.d[static_cast<std::size_t>(t) - 1] = best;
            if (best > 0) profile.witnesses[static_cast<std::size_t>(t) - 1] = best_set;
        }
    }
    return profile;
}

CoDegreeProfile co_degree_profile(const Hypergraph& h) {
    std::vector<EdgeIndex> all(h.edges.size());
    std::iota(all.begin(), all.end(), 0);
    return co_degree_profile(h, all);
}

std::vector<EdgeIndex> restrict_indices(const Hypergraph& h, std::span<const Vertex> q_set) {
    std::vector<EdgeIndex> out;
    if (static_cast<int>(q_set.size()) > h.q) return out;
    for (std::size_t i = 0; i < h.edges.size(); ++i) {
        const auto& vs = h.edges[i].vertices;
        if (std::includes(vs.begin(), vs.end(), q_set.begin(), q_set.end()))
            out.push_back(static_cast<EdgeIndex>(i));
    }
    return out;
}

Hypergraph restrict_to(const Hypergraph& h, std::span<const Vertex> q_set) {
    Hypergraph out;
    out.q = h.q;
    out.n = h.n;
    out.k = h.k;
    for (EdgeIndex idx : restrict_indices(h, q_set)) out.edges.push_back(h.edges[static_cast<std::size_t>(idx)]);
    return out;
}

MatchingReport validate_matchings(const Hypergraph& h) {
    MatchingReport report;
    // Group edges by color, then look for shared vertices within a class.
    std::vector<std::vector<EdgeIndex>> by_color(static_cast<std::size_t>(std::max(h.k, 0)));
    for (std::size_t i = 0; i < h.edges.size(); ++i)
        by_color[static_cast<std::size_t>(h.edges[i].color)].push_back(static_cast<EdgeIndex>(i));

    for (Color c = 0; c < h.k; ++c) {
        std::unordered_map<Vertex, EdgeIndex> first_seen;
        for (EdgeIndex idx : by_color[static_cast<std::size_t>(c)]) {
            for (Vertex v : h.edges[static_cast<std::size_t>(idx)].vertices) {
                auto [it, inserted] = first_seen.try_emplace(v, idx);
                if (!inserted) report.violations.push_back({c, it->second, idx, v});
            }
        }
    }
    report.all_matchings = report.violations.empty();
    report.properly_colored = report.all_matchings;
    return report;
}

}  // namespace ldc
