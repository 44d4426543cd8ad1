#include "synarch/clustering.hpp"

#include "synarch/errors.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace synarch {

bool edge_order(const ClusterEdge& a, const ClusterEdge& b) {
    return std::tie(a.weight, a.first, a.second) < std::tie(b.weight, b.first, b.second);
}

CategorySubgraph build_category_subgraph(const Corpus& corpus, const std::vector<PageId>& candidates,
                                         std::size_t include_ancestors) {
    CategorySubgraph input;
    std::set<CategoryId> included;
    for (auto page : candidates) {
        const auto index = corpus.index_of(page);
        for (auto cat : corpus.categories(index)) {
            auto& refs = input.article_refs[cat];
            if (refs.empty() || refs.back() != page) refs.push_back(page);
            included.insert(cat);
        }
    }
    for (auto& [cat, refs] : input.article_refs) {
        std::sort(refs.begin(), refs.end());
        refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
    }

    if (include_ancestors > 0) {
        std::vector<CategoryId> frontier(included.begin(), included.end());
        for (std::size_t level = 0; level < include_ancestors && !frontier.empty(); ++level) {
            std::vector<CategoryId> next;
            for (auto cat : frontier) {
                const auto& parent = corpus.tree().at(cat).parent;
                if (parent && included.insert(*parent).second) next.push_back(*parent);
            }
            frontier = std::move(next);
        }
    }

    input.categories.assign(included.begin(), included.end());
    for (auto cat : input.categories) {
        const auto& parent = corpus.tree().at(cat).parent;
        if (parent && included.count(*parent)) input.category_edges.emplace_back(cat, *parent);
    }
    return input;
}

ClusterGraph build_category_graph(const CategorySubgraph& input, double max_cluster_weight) {
    if (!(max_cluster_weight > 0.0)) throw ArgumentError("max_cluster_weight must be positive");
    ClusterGraph graph;
    graph.max_cluster_weight = max_cluster_weight;
    std::map<ClusterId, double> weights;
    for (auto cat : input.categories) {
        ClusterNode node;
        node.cluster_id = cat.value;
        node.category_ids = {cat};
        auto refs = input.article_refs.find(cat);
        node.articles_count = refs == input.article_refs.end() ? 0 : refs->second.size();
        node.weight = 1.0 + static_cast<double>(node.articles_count);
        weights[node.cluster_id] = node.weight;
        graph.clusters.push_back(std::move(node));
    }
    std::set<std::pair<ClusterId, ClusterId>> seen;
    for (const auto& [child, parent] : input.category_edges) {
        const auto a = std::min(child.value, parent.value);
        const auto b = std::max(child.value, parent.value);
        if (a == b || !seen.emplace(a, b).second) continue;
        graph.edges.push_back({a, b, weights.at(a) + weights.at(b)});
    }
    std::sort(graph.edges.begin(), graph.edges.end(), edge_order);
    return graph;
}

ClusterGraph build_category_graph(const Corpus& corpus, const std::vector<PageId>& candidates,
                                  double max_cluster_weight) {
    return build_category_graph(build_category_subgraph(corpus, candidates), max_cluster_weight);
}

namespace {

class Agglomerator {
public:
    explicit Agglomerator(const ClusterGraph& graph) : limit_(graph.max_cluster_weight) {
        if (!(limit_ > 0.0)) throw ArgumentError("max_cluster_weight must be positive");
        for (const auto& node : graph.clusters) {
            if (node.category_ids.empty()) {
                throw ArgumentError("cluster " + std::to_string(node.cluster_id) + " has no categories");
            }
            if (!clusters_.emplace(node.cluster_id, node).second) {
                throw ArgumentError("duplicate cluster id " + std::to_string(node.cluster_id));
            }
            adjacency_[node.cluster_id];
        }
        for (const auto& edge : graph.edges) {
            const auto a = std::min(edge.first, edge.second);
            const auto b = std::max(edge.first, edge.second);
            if (a == b) throw ArgumentError("self-edge on cluster " + std::to_string(a));
            if (!clusters_.count(a) || !clusters_.count(b)) {
                throw ArgumentError("edge endpoint names no cluster");
            }
            if (adjacency_[a].insert(b).second) {
                adjacency_[b].insert(a);
                sorted_.insert(key(a, b));
            }
        }
    }

    ClusteringRun run() {
        ClusteringRun result;
        while (!sorted_.empty() && std::get<0>(*sorted_.begin()) < limit_) {
            const auto [weight, v1, v2] = *sorted_.begin();
            result.merges.push_back({v1, v2, weight});
            merge(v1, v2);
        }
        for (auto& [id, node] : clusters_) result.clusters.push_back(std::move(node));
        for (const auto& [weight, a, b] : sorted_) result.edges.push_back({a, b, weight});
        return result;
    }

private:
    using Key = std::tuple<double, ClusterId, ClusterId>;

    Key key(ClusterId a, ClusterId b) const {
        if (b < a) std::swap(a, b);
        return {clusters_.at(a).weight + clusters_.at(b).weight, a, b};
    }

    // v1 < v2; v2 is absorbed.
    void merge(ClusterId v1, ClusterId v2) {
        // Drop every sorted entry touching either endpoint while weights are still the old ones.
        for (auto n : adjacency_[v1]) sorted_.erase(key(v1, n));
        for (auto n : adjacency_[v2]) sorted_.erase(key(v2, n));

        auto& survivor = clusters_.at(v1);
        auto& absorbed = clusters_.at(v2);
        survivor.weight += absorbed.weight;
        survivor.articles_count += absorbed.articles_count;
        survivor.edges_count += absorbed.edges_count + 1;
        std::vector<CategoryId> merged;
        std::set_union(survivor.category_ids.begin(), survivor.category_ids.end(),
                       absorbed.category_ids.begin(), absorbed.category_ids.end(), std::back_inserter(merged));
        survivor.category_ids = std::move(merged);

        auto& survivor_adj = adjacency_[v1];
        survivor_adj.erase(v2);
        for (auto n : adjacency_[v2]) {
            if (n == v1) continue;
            auto& other = adjacency_[n];
            other.erase(v2);
            other.insert(v1);
            survivor_adj.insert(n);
        }
        adjacency_.erase(v2);
        clusters_.erase(v2);

        for (auto n : survivor_adj) sorted_.insert(key(v1, n));
    }

    double limit_;
    std::map<ClusterId, ClusterNode> clusters_;
    std::map<ClusterId, std::set<ClusterId>> adjacency_;
    std::set<Key> sorted_;
};

} // namespace

ClusteringRun run_clustering(const ClusterGraph& graph) { return Agglomerator(graph).run(); }

std::vector<ClusterNode> cluster_categories(const ClusterGraph& graph) { return run_clustering(graph).clusters; }

ArticleClusters articles_from_clusters(const std::vector<ClusterNode>& clusters, const CategorySubgraph& input) {
    ArticleClusters result;
    for (const auto& node : clusters) {
        ArticleCluster cluster{node.cluster_id, node.category_ids, {}};
        for (auto cat : node.category_ids) {
            auto refs = input.article_refs.find(cat);
            if (refs == input.article_refs.end()) continue;
            cluster.pages.insert(cluster.pages.end(), refs->second.begin(), refs->second.end());
        }
        std::sort(cluster.pages.begin(), cluster.pages.end());
        cluster.pages.erase(std::unique(cluster.pages.begin(), cluster.pages.end()), cluster.pages.end());
        result.clusters.push_back(std::move(cluster));
    }
    std::sort(result.clusters.begin(), result.clusters.end(),
              [](const ArticleCluster& a, const ArticleCluster& b) { return a.cluster_id < b.cluster_id; });
    return result;
}

} // namespace synarch
