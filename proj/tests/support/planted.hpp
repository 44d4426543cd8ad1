#pragma once

#include "synarch/pipeline.hpp"

#include "support/oracles.hpp"

#include <vector>

namespace synarch::testing {

struct PlantedScore {
    double purity = 0.0;
    double ari = 0.0;
    std::size_t queries = 0;
};

/// Queries every page of a planted-topic corpus and averages, over queries
/// with at least two candidates, the share of candidates in the source's
/// topic and the adjusted Rand index of clusters against planted topics.
inline PlantedScore planted_score(const Corpus& corpus, std::size_t pages_per_topic, const QueryParams& params = {}) {
    PlantedScore total;
    for (PageIndex p = 0; p < corpus.page_count(); ++p) {
        const auto result = query(corpus, corpus.title(p), params);
        if (result.candidates.size() < 2) continue;
        const auto topic = synthetic_topic(result.source, pages_per_topic);
        std::size_t same = 0;
        std::vector<int> planted, found;
        for (const auto& row : result.candidates) {
            const auto t = synthetic_topic(row.page, pages_per_topic);
            if (t == topic) ++same;
            planted.push_back(static_cast<int>(t));
            found.push_back(row.clusters.empty() ? -1 : static_cast<int>(row.clusters.front()));
        }
        total.purity += static_cast<double>(same) / static_cast<double>(result.candidates.size());
        total.ari += oracle::adjusted_rand_index(planted, found);
        ++total.queries;
    }
    if (total.queries > 0) {
        total.purity /= static_cast<double>(total.queries);
        total.ari /= static_cast<double>(total.queries);
    }
    return total;
}

} // namespace synarch::testing
