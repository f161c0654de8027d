#include "ldc/json_io.hpp"

#include <cmath>
#include <limits>

namespace ldc {

namespace {

Json source_block(int q, int n, int k, std::int64_t edges, const std::string& hash,
                  const std::string& file) {
    Json j{{"q", q}, {"n", n}, {"k", k}, {"edges", edges}, {"hash", hash}};
    if (!file.empty()) j["file"] = file;
    return j;
}

Json gamma_to_json(const GammaSequence& g) {
    return Json{{"q", g.q}, {"log_base", g.log_base}, {"gamma", g.gamma}};
}

GammaSequence gamma_from_json(const Json& j) {
    return make_gamma_sequence(j.at("q").get<int>(), j.at("gamma").get<std::vector<double>>(),
                               j.value("log_base", 0.0));
}

Json piece_to_json(const Piece& p) {
    Json groups = Json::array();
    for (const Group& g : p.groups)
        groups.push_back(Json{{"Q", g.q_set}, {"edges", g.edges}});
    return Json{{"t", p.t},
                {"gamma_at_creation", gamma_to_json(p.gamma_at_creation)},
                {"groups", std::move(groups)}};
}

Piece piece_from_json(const Json& j) {
    Piece p;
    p.t = j.at("t").get<int>();
    p.gamma_at_creation = gamma_from_json(j.at("gamma_at_creation"));
    for (const Json& jg : j.at("groups")) {
        Group g;
        g.q_set = jg.at("Q").get<std::vector<Vertex>>();
        g.edges = jg.at("edges").get<std::vector<EdgeIndex>>();
        p.edges.insert(p.edges.end(), g.edges.begin(), g.edges.end());
        p.groups.push_back(std::move(g));
    }
    return p;
}

Json decomposition_body(const Decomposition& d) {
    Json pieces = Json::array();
    for (const Piece& p : d.pieces) pieces.push_back(piece_to_json(p));
    return Json{{"eta", d.eta}, {"pieces", std::move(pieces)}, {"leftover", d.leftover}};
}

void decomposition_body_from_json(const Json& j, Decomposition& d) {
    d.eta = j.value("eta", 0.0);
    for (const Json& jp : j.at("pieces")) d.pieces.push_back(piece_from_json(jp));
    d.leftover = j.at("leftover").get<std::vector<EdgeIndex>>();
}

}  // namespace

Json decomposition_to_json(const Decomposition& d, const std::string& source_file) {
    Json j = decomposition_body(d);
    j["schema"] = "ldck/decomposition";
    j["version"] = 1;
    j["source"] = source_block(d.source_q, d.source_n, d.source_k, d.source_edges, d.source_hash,
                               source_file);
    return j;
}

Decomposition decomposition_from_json(const Json& j) {
    Decomposition d;
    const Json& src = j.at("source");
    d.source_q = src.at("q").get<int>();
    d.source_n = src.at("n").get<int>();
    d.source_k = src.at("k").get<int>();
    d.source_edges = src.at("edges").get<std::int64_t>();
    d.source_hash = src.at("hash").get<std::string>();
    decomposition_body_from_json(j, d);
    return d;
}

Json evencover_to_json(const Hypergraph& h, const std::optional<EvenCoverCertificate>& cert,
                       const std::string& mode, std::int64_t budget, std::uint64_t seed,
                       const std::string& source_file) {
    Json j{{"schema", "ldck/evencover"},
           {"version", 1},
           {"source", source_block(h.q, h.n, h.k, h.size(), content_hash(h), source_file)},
           {"search", Json{{"mode", mode}, {"budget", budget}, {"seed", seed}}},
           {"found", cert.has_value()}};
    if (cert) {
        Json counts = Json::object();
        for (const auto& [color, count] : cert->color_counts)
            counts[std::to_string(color)] = count;
        Json body{{"edges", cert->edge_indices},
                  {"color_counts", std::move(counts)},
                  {"verified", cert->verified},
                  {"method", cert->method}};
        if (cert->rainbow_color) body["rainbow_color"] = *cert->rainbow_color;
        if (cert->seed) body["seed"] = *cert->seed;
        j["certificate"] = std::move(body);
    }
    return j;
}

namespace {

Json split_to_json(const SplitBound& s) {
    return Json{{"left", s.left},
                {"right", s.right},
                {"row_sum", s.row_sum_bound},
                {"frobenius", s.frobenius_bound},
                {"norm_upper", s.norm_upper},
                {"infty_to_one", s.infty_to_one_upper},
                {"val_f", s.val_f_upper},
                {"power_iteration", s.power_iteration}};
}

SplitBound split_from_json(const Json& j) {
    SplitBound s;
    s.left = j.at("left").get<std::vector<Color>>();
    s.right = j.at("right").get<std::vector<Color>>();
    s.row_sum_bound = j.at("row_sum").get<double>();
    s.frobenius_bound = j.at("frobenius").get<double>();
    s.norm_upper = j.at("norm_upper").get<double>();
    s.infty_to_one_upper = j.at("infty_to_one").get<double>();
    s.val_f_upper = j.at("val_f").get<double>();
    s.power_iteration = j.value("power_iteration", 0.0);
    return s;
}

Json piece_bound_to_json(const PieceBound& b) {
    Json splits = Json::array();
    for (const SplitBound& s : b.splits) splits.push_back(split_to_json(s));
    return Json{{"t", b.t},
                {"piece_size", b.piece_size},
                {"d_t", b.d_t},
                {"ell", b.ell},
                {"N", b.big_n},
                {"D", b.big_d},
                {"splits", std::move(splits)},
                {"val_f_used", b.val_f_used},
                {"trivial_term", b.trivial_term},
                {"main_term", b.main_term},
                {"val_sq_bound", b.val_sq_bound}};
}

PieceBound piece_bound_from_json(const Json& j) {
    PieceBound b;
    b.t = j.at("t").get<int>();
    b.piece_size = j.at("piece_size").get<std::int64_t>();
    b.d_t = j.at("d_t").get<std::int64_t>();
    b.ell = j.at("ell").get<int>();
    b.big_n = j.at("N").get<double>();
    b.big_d = j.at("D").get<double>();
    for (const Json& js : j.at("splits")) b.splits.push_back(split_from_json(js));
    b.val_f_used = j.at("val_f_used").get<double>();
    b.trivial_term = j.at("trivial_term").get<double>();
    b.main_term = j.at("main_term").get<double>();
    b.val_sq_bound = j.at("val_sq_bound").get<double>();
    return b;
}

}  // namespace

Json refutation_to_json(const RefutationCertificate& cert, const std::string& source_file) {
    Json piece_bounds = Json::array();
    for (const PieceBound& b : cert.piece_bounds) piece_bounds.push_back(piece_bound_to_json(b));
    std::vector<int> signs(cert.signs.begin(), cert.signs.end());
    Json j{{"schema", "ldck/refutation"},
           {"version", 1},
           {"source",
            source_block(cert.q, cert.n, cert.k, cert.edge_count, cert.source_hash, source_file)},
           {"params", Json{{"eta", cert.eta},
                           {"ell", cert.ell},
                           {"samples", cert.samples},
                           {"seed", cert.seed},
                           {"W", cert.constant_w}}},
           {"signs", signs},
           {"decomposition", decomposition_body(cert.decomposition)},
           {"piece_bounds", std::move(piece_bounds)},
           {"sum_val_sq", cert.sum_val_sq},
           {"bound_pieces", cert.bound_pieces},
           {"bound_leftover", cert.bound_leftover},
           {"bound_total", cert.bound_total},
           {"diagnostics", Json{{"coupling_slack", cert.coupling_slack}}}};
    if (cert.brute_force_value) j["brute_force_value"] = *cert.brute_force_value;
    if (cert.sound) j["sound"] = *cert.sound;
    return j;
}

RefutationCertificate refutation_from_json(const Json& j) {
    RefutationCertificate cert;
    const Json& src = j.at("source");
    cert.q = src.at("q").get<int>();
    cert.n = src.at("n").get<int>();
    cert.k = src.at("k").get<int>();
    cert.edge_count = src.at("edges").get<std::int64_t>();
    cert.source_hash = src.at("hash").get<std::string>();
    const Json& params = j.at("params");
    cert.eta = params.at("eta").get<double>();
    cert.ell = params.at("ell").get<int>();
    cert.samples = params.at("samples").get<int>();
    cert.seed = params.at("seed").get<std::uint64_t>();
    cert.constant_w = params.value("W", 0.0);
    for (int s : j.at("signs").get<std::vector<int>>())
        cert.signs.push_back(static_cast<std::int8_t>(s));
    cert.decomposition.source_q = cert.q;
    cert.decomposition.source_n = cert.n;
    cert.decomposition.source_k = cert.k;
    cert.decomposition.source_edges = cert.edge_count;
    cert.decomposition.source_hash = cert.source_hash;
    decomposition_body_from_json(j.at("decomposition"), cert.decomposition);
    for (const Json& jb : j.at("piece_bounds"))
        cert.piece_bounds.push_back(piece_bound_from_json(jb));
    cert.sum_val_sq = j.at("sum_val_sq").get<double>();
    cert.bound_pieces = j.at("bound_pieces").get<double>();
    cert.bound_leftover = j.at("bound_leftover").get<double>();
    cert.bound_total = j.at("bound_total").get<double>();
    if (j.contains("brute_force_value"))
        cert.brute_force_value = j.at("brute_force_value").get<std::int64_t>();
    if (j.contains("sound")) cert.sound = j.at("sound").get<bool>();
    cert.coupling_slack = j.at("diagnostics").value("coupling_slack", 0.0);
    return cert;
}

Json profile_to_json(const Hypergraph& h, const std::string& source_file) {
    CoDegreeProfile profile = co_degree_profile(h);
    MatchingReport matchings = validate_matchings(h);
    Json violations = Json::array();
    for (const MatchingViolation& v : matchings.violations)
        violations.push_back(Json{{"color", v.color},
                                  {"first", v.first},
                                  {"second", v.second},
                                  {"shared_vertex", v.shared}});
    Json j{{"schema", "ldck/profile"},
           {"version", 1},
           {"source", source_block(h.q, h.n, h.k, h.size(), content_hash(h), source_file)},
           {"d", profile.d},
           {"witnesses", profile.witnesses},
           {"matchings", Json{{"all_matchings", matchings.all_matchings},
                              {"properly_colored", matchings.properly_colored},
                              {"violations", std::move(violations)}}}};
    if (!h.edges.empty() && h.q % 2 == 1 && h.n >= 2) {
        GammaSequence g = gamma_from_profile(profile, h.q, h.n);
        j["gamma"] = gamma_to_json(g);
        j["good_index"] = find_good_index(g);
        j["all_good_indices"] = all_good_indices(g);
    }
    return j;
}

Json goodindex_report_to_json(const GoodIndexReport& report) {
    auto slacks = [](const std::vector<SlackEntry>& entries) {
        Json out = Json::array();
        for (const SlackEntry& e : entries)
            out.push_back(Json{{"r", e.r}, {"slack", e.slack}, {"ok", e.ok}});
        return out;
    };
    return Json{{"schema", "ldck/goodindex-report"},
                {"version", 1},
                {"t", report.t},
                {"pass", report.pass},
                {"condition1", slacks(report.condition1)},
                {"condition2", slacks(report.condition2)},
                {"condition3", Json{{"slack", report.condition3.slack}, {"ok", report.condition3.ok}}}};
}

Json corpus_sidecar(const NormalLDC& code) {
    Json j{{"schema", "ldck/corpus"},
           {"version", 1},
           {"family", code.family},
           {"k", code.k},
           {"q", code.q},
           {"n", code.n},
           {"hash", content_hash(code.hypergraph)},
           {"rng", NormalLDC::kRngId}};
    if (code.repetitions > 0) j["repetitions"] = code.repetitions;
    if (code.matching_size > 0) j["matching_size"] = code.matching_size;
    if (code.seed) j["seed"] = *code.seed;
    return j;
}

namespace {

bool close(double a, double b, double rel = 1e-9) {
    return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

void check_partition(VerifyResult& result, const Hypergraph& h, const Decomposition& d) {
    std::vector<std::int64_t> seen(h.edges.size(), 0);
    auto mark = [&](EdgeIndex idx, const std::string& where) {
        if (idx < 0 || idx >= h.size())
            result.fail(where + ": edge index " + std::to_string(idx) + " out of range");
        else
            ++seen[static_cast<std::size_t>(idx)];
    };
    for (std::size_t p = 0; p < d.pieces.size(); ++p)
        for (EdgeIndex idx : d.pieces[p].edges) mark(idx, "piece " + std::to_string(p));
    for (EdgeIndex idx : d.leftover) mark(idx, "leftover");
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (seen[i] != 1)
            result.fail("edge " + std::to_string(i) + " covered " + std::to_string(seen[i]) +
                        " times by pieces + leftover");
}

void verify_source(VerifyResult& result, const Json& cert, const Hypergraph& h) {
    const Json& src = cert.at("source");
    if (src.at("hash").get<std::string>() != content_hash(h))
        result.fail("source hash mismatch: certificate does not match the given hypergraph");
    if (src.at("q").get<int>() != h.q || src.at("n").get<int>() != h.n ||
        src.at("k").get<int>() != h.k || src.at("edges").get<std::int64_t>() != h.size())
        result.fail("source header mismatch");
}

void verify_decomposition_body(VerifyResult& result, const Hypergraph& h, const Decomposition& d) {
    check_partition(result, h, d);
    std::int64_t bound = 0;
    if (h.size() > 0)
        bound = static_cast<std::int64_t>(h.q) *
                    static_cast<std::int64_t>(std::ceil(std::log2(static_cast<double>(h.size())))) +
                1;
    if (static_cast<std::int64_t>(d.pieces.size()) > bound)
        result.fail("piece count " + std::to_string(d.pieces.size()) + " exceeds bound " +
                    std::to_string(bound));
    for (std::size_t p = 0; p < d.pieces.size(); ++p) {
        PieceReport report = certify_piece(h, d.pieces[p]);
        if (!report.ok) {
            for (const CheckResult& check : report.checks)
                if (!check.ok)
                    result.fail("piece " + std::to_string(p) + ": " + check.name +
                                (check.detail.empty() ? "" : " (" + check.detail + ")"));
        }
    }
}

void verify_refutation(VerifyResult& result, const Json& cert, const Hypergraph& h) {
    RefutationCertificate stored = refutation_from_json(cert);
    verify_decomposition_body(result, h, stored.decomposition);

    if (stored.piece_bounds.size() != stored.decomposition.pieces.size()) {
        result.fail("piece_bounds and decomposition pieces differ in length");
        return;
    }

    double sum_val_sq = 0;
    for (std::size_t p = 0; p < stored.piece_bounds.size(); ++p) {
        const PieceBound& b = stored.piece_bounds[p];
        const Piece& piece = stored.decomposition.pieces[p];
        auto tag = [&](const std::string& what) {
            return "piece " + std::to_string(p) + ": " + what;
        };
        CoDegreeProfile profile = co_degree_profile(h, piece.edges);
        if (profile.max_at(piece.t) != b.d_t) result.fail(tag("stored d_t mismatch"));
        if (static_cast<std::int64_t>(piece.edges.size()) != b.piece_size)
            result.fail(tag("stored piece size mismatch"));
        double big_n = binomial(2 * static_cast<std::int64_t>(h.n), b.ell).convert_to<double>();
        double big_d = matching_size_D(h.q, piece.t, h.n, b.ell).convert_to<double>();
        if (!close(big_n, b.big_n) || !close(big_d, b.big_d))
            result.fail(tag("stored N or D mismatch"));

        double val_f_used = 0;
        for (std::size_t s = 0; s < b.splits.size(); ++s) {
            const SplitBound& split = b.splits[s];
            SignedKikuchi mat = build_signed(h, piece, stored.signs, split.left, split.right,
                                             b.ell, std::numeric_limits<std::int64_t>::max());
            if (!close(mat.row_sum_bound(), split.row_sum_bound))
                result.fail(tag("split " + std::to_string(s) + ": row-sum bound mismatch"));
            if (!close(mat.frobenius(), split.frobenius_bound))
                result.fail(tag("split " + std::to_string(s) + ": Frobenius bound mismatch"));
            double norm_upper = std::min(mat.row_sum_bound(), mat.frobenius());
            if (!close(norm_upper, split.norm_upper))
                result.fail(tag("split " + std::to_string(s) + ": norm upper mismatch"));
            if (!close(big_n * norm_upper, split.infty_to_one_upper))
                result.fail(tag("split " + std::to_string(s) + ": infty-to-one mismatch"));
            if (!close(big_n * norm_upper / big_d, split.val_f_upper))
                result.fail(tag("split " + std::to_string(s) + ": val_f mismatch"));
            val_f_used = std::max(val_f_used, split.val_f_upper);
        }
        if (!close(val_f_used, b.val_f_used)) result.fail(tag("val_f_used mismatch"));
        double trivial = 2.0 * static_cast<double>(b.piece_size) *
                         static_cast<double>(b.piece_size) / static_cast<double>(b.d_t);
        double main = 8.0 * static_cast<double>(b.piece_size) / static_cast<double>(b.d_t) *
                      val_f_used;
        if (!close(trivial, b.trivial_term)) result.fail(tag("trivial term mismatch"));
        if (!close(main, b.main_term)) result.fail(tag("main term mismatch"));
        if (!close(trivial + main, b.val_sq_bound)) result.fail(tag("val^2 bound mismatch"));
        sum_val_sq += b.val_sq_bound;
    }

    if (!close(sum_val_sq, stored.sum_val_sq)) result.fail("sum of val^2 bounds mismatch");
    double bound_pieces =
        std::sqrt(static_cast<double>(stored.piece_bounds.size()) * sum_val_sq);
    if (!close(bound_pieces, stored.bound_pieces)) result.fail("piece bound mismatch");
    if (!close(static_cast<double>(stored.decomposition.leftover.size()), stored.bound_leftover))
        result.fail("leftover bound mismatch");
    if (!close(stored.bound_pieces + stored.bound_leftover, stored.bound_total))
        result.fail("total bound mismatch");

    if (stored.brute_force_value) {
        if (h.n > 24) {
            result.fail("stored brute-force value but n exceeds the oracle cap");
        } else {
            XorInstance inst = build_xor(h, stored.signs);
            std::int64_t value = brute_force_val(inst);
            if (value != *stored.brute_force_value)
                result.fail("brute-force value mismatch: recomputed " + std::to_string(value) +
                            ", stored " + std::to_string(*stored.brute_force_value));
            bool sound = stored.bound_total >= static_cast<double>(value);
            if (!stored.sound || *stored.sound != sound) result.fail("soundness flag mismatch");
            if (!sound) result.fail("certificate bound is below the exact value");
        }
    }
}

void verify_evencover(VerifyResult& result, const Json& cert, const Hypergraph& h) {
    if (!cert.at("found").get<bool>()) return;
    const Json& body = cert.at("certificate");
    auto indices = body.at("edges").get<std::vector<EdgeIndex>>();
    EvenCoverCertificate recomputed = verify_even_cover(h, indices);
    if (!recomputed.verified) result.fail("stored edge multiset is not an even cover");
    if (body.at("verified").get<bool>() != recomputed.verified)
        result.fail("verified flag mismatch");
    Json recomputed_counts = Json::object();
    for (const auto& [color, count] : recomputed.color_counts)
        recomputed_counts[std::to_string(color)] = count;
    if (body.at("color_counts") != recomputed_counts) result.fail("color counts mismatch");
    bool has_rainbow = body.contains("rainbow_color");
    if (has_rainbow != recomputed.rainbow_color.has_value())
        result.fail("rainbow color presence mismatch");
    else if (has_rainbow && body.at("rainbow_color").get<Color>() != *recomputed.rainbow_color)
        result.fail("rainbow color mismatch");
}

}  // namespace

VerifyResult verify_certificate(const Json& cert, const Hypergraph& h) {
    VerifyResult result;
    std::string schema = cert.value("schema", "");
    verify_source(result, cert, h);
    if (schema == "ldck/decomposition") {
        Decomposition d = decomposition_from_json(cert);
        verify_decomposition_body(result, h, d);
    } else if (schema == "ldck/refutation") {
        verify_refutation(result, cert, h);
    } else if (schema == "ldck/evencover") {
        verify_evencover(result, cert, h);
    } else {
        result.fail("unknown certificate schema '" + schema + "'");
    }
    return result;
}

}  // namespace ldc
