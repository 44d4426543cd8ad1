#pragma once

#include "synarch/clustering.hpp"
#include "synarch/corpus.hpp"
#include "synarch/hits.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace synarch {

struct QueryParams {
    HitsParams hits;
    ClusterParams clustering;
};

std::vector<FieldError> check(const QueryParams& params);

struct CandidateRow {
    PageId page;
    std::string title;
    double authority = 0.0;
    /// Set when the page is also in the hub set H.
    std::optional<double> hub;
    /// Clusters whose article set contains the page.
    std::vector<ClusterId> clusters;
};

struct HubRow {
    PageId page;
    std::string title;
    double hub = 0.0;
};

struct ResultCluster {
    ClusterId id = 0;
    /// Name of the member category referenced by the most candidates.
    std::string name;
    std::vector<CategoryId> category_ids;
    std::vector<std::string> category_names;
    std::vector<PageId> pages;
    std::size_t articles_count = 0;
    std::size_t edges_count = 0;
    double weight = 0.0;
};

struct SearchResult {
    std::string query;
    PageId source;
    QueryParams params;
    std::vector<CandidateRow> candidates;
    std::vector<HubRow> hubs;
    std::vector<ResultCluster> clusters;
    double objective = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<std::string> diagnostics;
};

/// Adapted HITS search followed by category clustering of the authorities.
/// Deterministic for a fixed corpus, word and params.
SearchResult query(const Corpus& corpus, const std::string& word, const QueryParams& params = {});

nlohmann::ordered_json to_json(const QueryParams& params);
/// Structured payload shared by the CLI and POST /api/search.
nlohmann::ordered_json to_json(const SearchResult& result);

} // namespace synarch
