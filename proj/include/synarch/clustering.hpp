#pragma once

#include "synarch/corpus.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace synarch {

using ClusterId = std::uint64_t;

/// Agglomerated categories. A fresh cluster takes the id of its only category.
struct ClusterNode {
    ClusterId cluster_id = 0;
    /// Ascending, duplicate-free.
    std::vector<CategoryId> category_ids;
    /// Referencing articles, summed across merges (an article that references
    /// categories on both sides of a merge counts twice).
    std::size_t articles_count = 0;
    /// Category edges absorbed into the cluster.
    std::size_t edges_count = 0;
    double weight = 0.0;

    bool operator==(const ClusterNode&) const = default;
};

/// Undirected; `first` < `second`. Weight is the sum of its endpoint weights.
struct ClusterEdge {
    ClusterId first = 0;
    ClusterId second = 0;
    double weight = 0.0;

    bool operator==(const ClusterEdge&) const = default;
};

/// Ascending weight, ties by ascending (first, second).
bool edge_order(const ClusterEdge& a, const ClusterEdge& b);

struct ClusterGraph {
    std::vector<ClusterNode> clusters;
    std::vector<ClusterEdge> edges;
    double max_cluster_weight = 20.0;
};

/// Categories referenced by candidate articles, the tree edges between them
/// and the candidates referencing each one.
struct CategorySubgraph {
    std::vector<CategoryId> categories;
    /// (child, parent) pairs.
    std::vector<std::pair<CategoryId, CategoryId>> category_edges;
    std::map<CategoryId, std::vector<PageId>> article_refs;
};

struct ClusterParams {
    double max_cluster_weight = 20.0;
    /// Levels of parent categories pulled in above referenced ones.
    std::size_t include_ancestors = 0;
};

CategorySubgraph build_category_subgraph(const Corpus& corpus, const std::vector<PageId>& candidates,
                                         std::size_t include_ancestors = 0);

/// One singleton cluster per category (weight 1 + referencing articles) and
/// one edge per category-tree edge.
ClusterGraph build_category_graph(const CategorySubgraph& input, double max_cluster_weight);

ClusterGraph build_category_graph(const Corpus& corpus, const std::vector<PageId>& candidates,
                                  double max_cluster_weight);

struct MergeStep {
    ClusterId survivor = 0;
    ClusterId absorbed = 0;
    /// Weight of the consumed edge when it was taken.
    double edge_weight = 0.0;
};

struct ClusteringRun {
    /// Ascending cluster id.
    std::vector<ClusterNode> clusters;
    /// Surviving edges in sorted order.
    std::vector<ClusterEdge> edges;
    std::vector<MergeStep> merges;
};

/// Repeatedly merges across the lightest edge while it is lighter than the
/// graph's max_cluster_weight. The endpoint with the smaller id survives and
/// inherits the other's edges without duplicates or self-edges; every edge at
/// the survivor is then reweighted. Throws ArgumentError on a malformed graph.
ClusteringRun run_clustering(const ClusterGraph& graph);

std::vector<ClusterNode> cluster_categories(const ClusterGraph& graph);

struct ArticleCluster {
    ClusterId cluster_id = 0;
    std::vector<CategoryId> category_ids;
    /// Ascending. May overlap with other clusters' pages.
    std::vector<PageId> pages;
};

struct ArticleClusters {
    std::vector<ArticleCluster> clusters;
};

ArticleClusters articles_from_clusters(const std::vector<ClusterNode>& clusters, const CategorySubgraph& input);

} // namespace synarch
