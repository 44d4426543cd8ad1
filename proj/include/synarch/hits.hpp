#pragma once

#include "synarch/corpus.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace synarch {

struct HitsParams {
    /// N, the size of the authority set A.
    std::size_t top_n = 20;
    /// M, the size of the hub set H.
    std::size_t top_m = 20;
    /// Weight of the authority term in the selection objective.
    double k = 0.5;
    double eps = 1e-8;
    std::size_t max_iter = 100;
    /// Per-root-page cap on in-link expansion of the base set.
    std::size_t in_cap = 50;
};

struct FieldError {
    std::string field;
    std::string message;
};

std::vector<FieldError> check(const HitsParams& params);

/// Subgraph the iteration runs on. `members` and `root` are sorted ascending;
/// `edges` holds every corpus link between members, sorted by (from, to).
struct BaseSubgraph {
    PageId source;
    std::vector<PageId> root;
    std::vector<PageId> members;
    std::vector<std::pair<PageId, PageId>> edges;

    /// Position of `page` in `members`, if present.
    std::optional<std::size_t> position(PageId page) const;
    bool has_edge(PageId from, PageId to) const;
};

/// Scores aligned with BaseSubgraph::members.
struct HitsScores {
    std::vector<PageId> pages;
    std::vector<double> authority;
    std::vector<double> hub;
    std::size_t iterations_run = 0;
    bool converged = false;

    double authority_of(PageId page) const;
    double hub_of(PageId page) const;
};

struct ScoredPage {
    PageId page;
    double score = 0.0;

    bool operator==(const ScoredPage&) const = default;
};

struct CandidateSelection {
    /// A, by descending authority then ascending id.
    std::vector<ScoredPage> authorities;
    /// H, by descending hub score then ascending id.
    std::vector<ScoredPage> hubs;
    double objective = 0.0;
    /// Authorities removed because no hub in H links to both them and the source.
    std::size_t dropped_without_common_hub = 0;
};

std::vector<PageId> build_root_set(const Corpus& corpus, PageId source);

BaseSubgraph build_base_set(const Corpus& corpus, PageId source, const std::vector<PageId>& root,
                            std::size_t in_cap);

/// Alternating authority/hub updates from all-ones vectors, each vector
/// scaled to unit Euclidean norm after every iteration. An iteration updates
/// authorities from the previous hubs, then hubs from the new authorities.
HitsScores iterate_hits(const BaseSubgraph& sub, double eps, std::size_t max_iter);

/// k·ΣA + (1−k)·ΣH. Each sum runs over its list in descending-score order so
/// equal multisets of scores give bit-identical results.
double selection_objective(const std::vector<ScoredPage>& authorities, const std::vector<ScoredPage>& hubs,
                           double k);

/// Top-N authorities (source excluded) and top-M hubs, then drops every
/// authority lacking a hub h in H with links h→source and h→a.
CandidateSelection select_candidates(const HitsScores& scores, const BaseSubgraph& sub,
                                     const HitsParams& params);

/// Greedy top-N/top-M selection before the common-hub filter.
CandidateSelection select_top(const HitsScores& scores, const BaseSubgraph& sub, const HitsParams& params);

struct SimilarPages {
    CandidateSelection selection;
    BaseSubgraph subgraph;
    HitsScores scores;
    std::vector<std::string> diagnostics;
};

/// Root set, base set, iteration and selection for the page titled `word`.
/// Throws NotFoundError with title suggestions when `word` is unknown.
SimilarPages search_similar(const Corpus& corpus, const std::string& word, const HitsParams& params);

} // namespace synarch
