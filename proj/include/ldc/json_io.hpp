#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "ldc/codes.hpp"
#include "ldc/decompose.hpp"
#include "ldc/evencover.hpp"
#include "ldc/refute.hpp"

namespace ldc {

using Json = nlohmann::json;

// All artifacts carry {"schema": "ldck/<kind>", "version": 1}. The optional
// source file hint lets `verify` locate the hypergraph on its own.
Json decomposition_to_json(const Decomposition& d, const std::string& source_file = {});
Decomposition decomposition_from_json(const Json& j);

Json evencover_to_json(const Hypergraph& h, const std::optional<EvenCoverCertificate>& cert,
                       const std::string& mode, std::int64_t budget, std::uint64_t seed,
                       const std::string& source_file = {});

Json refutation_to_json(const RefutationCertificate& cert, const std::string& source_file = {});
RefutationCertificate refutation_from_json(const Json& j);

Json profile_to_json(const Hypergraph& h, const std::string& source_file = {});
Json goodindex_report_to_json(const GoodIndexReport& report);
Json corpus_sidecar(const NormalLDC& code);

struct VerifyResult {
    bool ok = true;
    std::vector<std::string> failures;

    void fail(std::string message) {
        ok = false;
        failures.push_back(std::move(message));
    }
};

// Re-validates a stored certificate of any kind against the hypergraph it
// references: hashes, partitions, per-piece certification, and (for
// refutations) a deterministic recomputation of every bound in the chain.
VerifyResult verify_certificate(const Json& cert, const Hypergraph& h);

}  // namespace ldc
