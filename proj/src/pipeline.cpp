#include "synarch/pipeline.hpp"

#include "synarch/errors.hpp"

#include <algorithm>

namespace synarch {

std::vector<FieldError> check(const QueryParams& params) {
    auto errors = check(params.hits);
    if (!(params.clustering.max_cluster_weight > 0.0)) {
        errors.push_back({"max_cluster_weight", "must be positive"});
    }
    return errors;
}

SearchResult query(const Corpus& corpus, const std::string& word, const QueryParams& params) {
    if (auto errors = check(params); !errors.empty()) {
        throw ArgumentError("invalid parameter " + errors.front().field + ": " + errors.front().message);
    }
    auto similar = search_similar(corpus, word, params.hits);

    SearchResult result;
    result.query = word;
    result.source = similar.subgraph.source;
    result.params = params;
    result.objective = similar.selection.objective;
    result.iterations = similar.scores.iterations_run;
    result.converged = similar.scores.converged;
    result.diagnostics = std::move(similar.diagnostics);

    std::vector<PageId> candidates;
    for (const auto& a : similar.selection.authorities) candidates.push_back(a.page);

    const auto input = build_category_subgraph(corpus, candidates, params.clustering.include_ancestors);
    const auto graph = build_category_graph(input, params.clustering.max_cluster_weight);
    const auto nodes = cluster_categories(graph);
    const auto articles = articles_from_clusters(nodes, input);

    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& node = nodes[i];
        ResultCluster cluster;
        cluster.id = node.cluster_id;
        cluster.category_ids = node.category_ids;
        cluster.articles_count = node.articles_count;
        cluster.edges_count = node.edges_count;
        cluster.weight = node.weight;
        std::size_t best = 0;
        bool named = false;
        for (auto cat : node.category_ids) {
            const auto& name = corpus.tree().at(cat).name;
            cluster.category_names.push_back(name);
            auto refs = input.article_refs.find(cat);
            const auto count = refs == input.article_refs.end() ? 0 : refs->second.size();
            if (!named || count > best) {
                best = count;
                cluster.name = name;
                named = true;
            }
        }
        // nodes and articles are both ordered by cluster id
        cluster.pages = articles.clusters[i].pages;
        result.clusters.push_back(std::move(cluster));
    }

    for (const auto& a : similar.selection.authorities) {
        CandidateRow row;
        row.page = a.page;
        row.title = corpus.title(corpus.index_of(a.page));
        row.authority = a.score;
        for (const auto& h : similar.selection.hubs) {
            if (h.page == a.page) row.hub = h.score;
        }
        for (const auto& cluster : result.clusters) {
            if (std::binary_search(cluster.pages.begin(), cluster.pages.end(), a.page)) {
                row.clusters.push_back(cluster.id);
            }
        }
        result.candidates.push_back(std::move(row));
    }
    for (const auto& h : similar.selection.hubs) {
        result.hubs.push_back({h.page, corpus.title(corpus.index_of(h.page)), h.score});
    }
    return result;
}

nlohmann::ordered_json to_json(const QueryParams& params) {
    nlohmann::ordered_json j;
    j["top_n"] = params.hits.top_n;
    j["top_m"] = params.hits.top_m;
    j["k"] = params.hits.k;
    j["eps"] = params.hits.eps;
    j["max_iter"] = params.hits.max_iter;
    j["in_cap"] = params.hits.in_cap;
    j["max_cluster_weight"] = params.clustering.max_cluster_weight;
    j["include_ancestors"] = params.clustering.include_ancestors;
    return j;
}

nlohmann::ordered_json to_json(const SearchResult& result) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["query"] = result.query;
    j["source"] = result.source.value;
    j["params"] = to_json(result.params);

    auto& candidates = j["candidates"] = ordered_json::array();
    for (const auto& row : result.candidates) {
        ordered_json c;
        c["page_id"] = row.page.value;
        c["title"] = row.title;
        c["authority"] = row.authority;
        c["hub"] = row.hub ? ordered_json(*row.hub) : ordered_json(nullptr);
        c["clusters"] = row.clusters;
        candidates.push_back(std::move(c));
    }

    auto& hubs = j["hubs"] = ordered_json::array();
    for (const auto& row : result.hubs) {
        hubs.push_back(ordered_json{{"page_id", row.page.value}, {"title", row.title}, {"hub", row.hub}});
    }

    auto& clusters = j["clusters"] = ordered_json::array();
    for (const auto& cluster : result.clusters) {
        ordered_json c;
        c["id"] = cluster.id;
        c["name"] = cluster.name;
        auto& cats = c["categories"] = ordered_json::array();
        for (std::size_t i = 0; i < cluster.category_ids.size(); ++i) {
            cats.push_back(ordered_json{{"id", cluster.category_ids[i].value}, {"name", cluster.category_names[i]}});
        }
        auto& pages = c["pages"] = ordered_json::array();
        for (auto p : cluster.pages) pages.push_back(p.value);
        c["articles_count"] = cluster.articles_count;
        c["edges_count"] = cluster.edges_count;
        c["weight"] = cluster.weight;
        clusters.push_back(std::move(c));
    }

    j["objective"] = result.objective;
    j["iterations"] = result.iterations;
    j["converged"] = result.converged;
    j["diagnostics"] = result.diagnostics;
    return j;
}

} // namespace synarch
